#![no_main]

use libfuzzer_sys::fuzz_target;
use wg_core::SetPartition;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pi) = text.parse::<SetPartition>() {
        let shown = pi.to_string();
        assert_eq!(shown, text, "accepted text must already be canonical");
        assert_eq!(shown.parse::<SetPartition>().unwrap(), pi);
    }
});
