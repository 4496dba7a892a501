#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(module) = prtt_parser::parse_module(text) {
        if module.imports.is_empty() {
            let _ = prtt_parser::resolve(&module);
        }
    }
});
