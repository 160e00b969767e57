#![no_main]
use libfuzzer_sys::fuzz_target;

use oblab::diagnostics::{detect_window, fit_decay, CsvTable, WindowRule};

fuzz_target!(|data: &[u8]| {
    let Ok(table) = CsvTable::read(data) else { return };
    for col in table.header.clone() {
        if let Ok(s) = table.series(&col) {
            let _ = fit_decay(&s, None);
            let _ = detect_window(&s, &s, &WindowRule::default());
        }
    }
});
