//! Binary coefficient snapshots.
//!
//! A frame is a 40-byte little-endian header followed by the data:
//!
//! | offset | size | content                              |
//! |--------|------|--------------------------------------|
//! | 0      | 4    | magic `OBF1` (field) or `FRC1` (forcing) |
//! | 4      | 4    | reserved, zero                       |
//! | 8      | 8    | `n` as u64                           |
//! | 16     | 8    | box length as f64                    |
//! | 24     | 8    | component count `c` as u64           |
//! | 32     | 8    | time as f64                          |
//!
//! The data holds `c` components, each `n^3` coefficients in row-major mode
//! order, every coefficient written as `(re, im)` f64 pairs. Files may hold
//! several frames back to back.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::ScalarField;

pub const FIELD_MAGIC: [u8; 4] = *b"OBF1";
pub const FORCING_MAGIC: [u8; 4] = *b"FRC1";
pub const HEADER_LEN: usize = 40;
/// Largest `n` accepted by the decoder.
pub const MAX_MODES: u64 = 1024;
pub const MAX_COMPONENTS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnapshotKind {
    Field,
    Forcing,
}

impl SnapshotKind {
    fn magic(self) -> [u8; 4] {
        match self {
            SnapshotKind::Field => FIELD_MAGIC,
            SnapshotKind::Forcing => FORCING_MAGIC,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub kind: SnapshotKind,
    pub n: usize,
    pub box_length: f64,
    pub time: f64,
    pub components: Vec<ScalarField>,
}

impl Snapshot {
    pub fn encoded_len(&self) -> usize {
        HEADER_LEN + self.components.len() * self.n.pow(3) * 16
    }

    pub fn encode(&self, out: &mut impl Write) -> Result<()> {
        for c in &self.components {
            if c.n() != self.n {
                return Err(Error::GridMismatch {
                    field: c.n(),
                    grid: self.n,
                });
            }
        }
        let mut buf = Vec::with_capacity(self.encoded_len());
        buf.extend_from_slice(&self.kind.magic());
        buf.extend_from_slice(&[0u8; 4]);
        buf.extend_from_slice(&(self.n as u64).to_le_bytes());
        buf.extend_from_slice(&self.box_length.to_le_bytes());
        buf.extend_from_slice(&(self.components.len() as u64).to_le_bytes());
        buf.extend_from_slice(&self.time.to_le_bytes());
        for c in &self.components {
            for z in c.coeffs() {
                buf.extend_from_slice(&z.re.to_le_bytes());
                buf.extend_from_slice(&z.im.to_le_bytes());
            }
        }
        out.write_all(&buf)?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut v = Vec::with_capacity(self.encoded_len());
        self.encode(&mut v)?;
        Ok(v)
    }

    /// Decodes one frame from the front of `bytes`, returning it with the
    /// number of bytes consumed.
    pub fn decode(bytes: &[u8]) -> Result<(Snapshot, usize)> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Format(format!(
                "truncated header: {} bytes, need {HEADER_LEN}",
                bytes.len()
            )));
        }
        let kind = match &bytes[0..4] {
            m if m == FIELD_MAGIC => SnapshotKind::Field,
            m if m == FORCING_MAGIC => SnapshotKind::Forcing,
            m => return Err(Error::Format(format!("unknown magic {m:?}"))),
        };
        if bytes[4..8] != [0u8; 4] {
            return Err(Error::Format(format!("reserved header bytes are not zero: {:?}", &bytes[4..8])));
        }
        let word = |o: usize| -> [u8; 8] { bytes[o..o + 8].try_into().unwrap() };
        let n = u64::from_le_bytes(word(8));
        let box_length = f64::from_le_bytes(word(16));
        let count = u64::from_le_bytes(word(24));
        let time = f64::from_le_bytes(word(32));
        if n < 4 || n % 2 != 0 || n > MAX_MODES {
            return Err(Error::Format(format!("invalid mode count n={n}")));
        }
        if !(box_length > 0.0) || !box_length.is_finite() {
            return Err(Error::Format(format!("invalid box length {box_length}")));
        }
        if count == 0 || count > MAX_COMPONENTS {
            return Err(Error::Format(format!("invalid component count {count}")));
        }
        if !time.is_finite() {
            return Err(Error::Format(format!("invalid time {time}")));
        }
        let n = n as usize;
        let modes = n * n * n;
        let need = HEADER_LEN + count as usize * modes * 16;
        if bytes.len() < need {
            return Err(Error::Format(format!(
                "truncated data: {} bytes, need {need}",
                bytes.len()
            )));
        }
        let mut components = Vec::with_capacity(count as usize);
        let mut off = HEADER_LEN;
        for _ in 0..count {
            let mut coeffs = Vec::with_capacity(modes);
            for _ in 0..modes {
                let re = f64::from_le_bytes(word(off));
                let im = f64::from_le_bytes(word(off + 8));
                coeffs.push(Complex64::new(re, im));
                off += 16;
            }
            components.push(ScalarField::from_coeffs(n, coeffs));
        }
        Ok((
            Snapshot {
                kind,
                n,
                box_length,
                time,
                components,
            },
            off,
        ))
    }

    /// Decodes every frame in `bytes`; trailing garbage is an error.
    pub fn decode_all(mut bytes: &[u8]) -> Result<Vec<Snapshot>> {
        let mut frames = Vec::new();
        while !bytes.is_empty() {
            let (s, used) = Snapshot::decode(bytes)?;
            frames.push(s);
            bytes = &bytes[used..];
        }
        Ok(frames)
    }

    pub fn read_all(path: &Path) -> Result<Vec<Snapshot>> {
        Snapshot::decode_all(&std::fs::read(path)?)
    }
}
