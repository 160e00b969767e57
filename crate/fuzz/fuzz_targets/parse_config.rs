#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(c) = oblab_cli::parse_config(text) {
            let _ = c.solver_config().validate();
        }
    }
});
