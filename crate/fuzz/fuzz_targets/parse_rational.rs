#![no_main]

use libfuzzer_sys::fuzz_target;
use wg_core::ExactScalar;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = text.parse::<ExactScalar>() {
        assert_eq!(q.to_string().parse::<ExactScalar>().unwrap(), q);
    }
});
