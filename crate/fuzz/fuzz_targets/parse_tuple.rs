#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = interweave::parse_tuple(text) {
        let printed = interweave::to_tuple(&m);
        assert_eq!(interweave::parse_tuple(&printed).unwrap(), m);
    }
});
