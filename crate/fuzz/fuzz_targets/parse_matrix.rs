#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = interweave::parse_matrix(text) {
        // detection must route both printed encodings back to the same matrix
        assert_eq!(interweave::parse_matrix(&interweave::to_grid(&m)).unwrap(), m);
        assert_eq!(interweave::parse_matrix(&interweave::to_tuple(&m)).unwrap(), m);
    }
});
