#![no_main]

use iquo::builders::b2;
use iquo::morphisms::{find_isomorphism, parse_pin_map, pins_to_partial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(pairs) = parse_pin_map(text) else {
        return;
    };
    let b = b2();
    if let Ok(pins) = pins_to_partial(&pairs, b.len(), b.len()) {
        if let Some(m) = find_isomorphism(&b, &b, &pins) {
            for (a, pin) in pins.iter().enumerate() {
                if let Some(img) = pin {
                    assert_eq!(m.map[a], *img);
                }
            }
        }
    }
});
