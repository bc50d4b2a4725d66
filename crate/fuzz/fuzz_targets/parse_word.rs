#![no_main]

use libfuzzer_sys::fuzz_target;
use wg_core::Word;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = text.parse::<Word>() {
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        if let Ok(kernel) = w.kernel() {
            assert_eq!(kernel.ground_size(), w.len());
        }
    }
});
