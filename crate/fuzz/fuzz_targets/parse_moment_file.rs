#![no_main]

use libfuzzer_sys::fuzz_target;
use wg_core::cumulants::{cumulants_to_moments, moments_to_cumulants, MomentFunctional, Species};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = MomentFunctional::from_json_str(text) else { return };
    if m.order_max() > 5 {
        return;
    }
    for species in Species::ALL {
        if let Ok(c) = moments_to_cumulants(species, &m) {
            if species != Species::Half {
                assert_eq!(cumulants_to_moments(&c).unwrap(), m);
            }
        }
    }
});
