#![no_main]
use libfuzzer_sys::fuzz_target;

use oblab::snapshot::{Snapshot, SnapshotKind};
use oblab::solver::ForcingSeries;
use oblab::FlowState;

fuzz_target!(|data: &[u8]| {
    if let Ok((frame, used)) = Snapshot::decode(data) {
        // decoding is lossless
        assert_eq!(frame.to_bytes().unwrap(), &data[..used]);
    }
    if let Ok(frames) = Snapshot::decode_all(data) {
        for f in &frames {
            if f.kind == SnapshotKind::Field {
                let _ = FlowState::from_snapshot(f);
            }
        }
        let _ = ForcingSeries::from_snapshots(&frames, 1.0);
    }
});
