#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = interweave::parse_grid(text) {
        // anything accepted must survive print and reparse unchanged
        let printed = interweave::to_grid(&m);
        assert_eq!(interweave::parse_grid(&printed).unwrap(), m);
    }
});
