//! The checked-in fuzz seeds decode (or fail) without panicking.

use std::fs;
use std::path::{Path, PathBuf};

use oblab::diagnostics::{fit_decay, CsvTable};
use oblab::snapshot::{Snapshot, SnapshotKind};
use oblab::solver::ForcingSeries;
use oblab::FlowState;

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let b = fs::read(&p).unwrap();
            (p, b)
        })
        .collect();
    out.sort();
    out
}

#[test]
fn snapshot_seeds() {
    let mut decoded = 0;
    for (path, bytes) in seeds("decode_snapshot") {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        match Snapshot::decode_all(&bytes) {
            Ok(frames) => {
                decoded += 1;
                let mut again = Vec::new();
                for f in &frames {
                    f.encode(&mut again).unwrap();
                }
                assert_eq!(again, bytes, "{name}");
                if frames[0].kind == SnapshotKind::Field {
                    assert_eq!(FlowState::from_snapshot(&frames[0]).unwrap().time, 0.5);
                } else {
                    let s = ForcingSeries::from_snapshots(&frames, 1.0).unwrap();
                    assert_eq!(s.records.len(), 2);
                }
            }
            Err(e) => assert!(name.starts_with("truncated"), "{name}: {e}"),
        }
    }
    assert_eq!(decoded, 2);
}

#[test]
fn csv_seeds() {
    for (path, bytes) in seeds("read_csv") {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let table = CsvTable::read(bytes.as_slice()).unwrap();
        match name.as_str() {
            "decay.csv" => {
                let fit = fit_decay(&table.series("u_0").unwrap(), None).unwrap();
                assert!((fit.exponent + 0.75).abs() < 1e-3);
            }
            "diagnostics.csv" => {
                let fit = fit_decay(&table.series("norm_u_3").unwrap(), None).unwrap();
                assert!((fit.exponent + 2.25).abs() < 1e-3);
            }
            _ => assert!(table.series("a").is_err(), "{name}"),
        }
    }
}
