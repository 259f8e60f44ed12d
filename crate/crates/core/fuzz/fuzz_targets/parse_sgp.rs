#![no_main]

use iquo::sgp::{parse_sgp, serialize_sgp};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = parse_sgp(text) {
        let again = parse_sgp(&serialize_sgp(&s)).expect("canonical output parses");
        assert_eq!(again, s);
    }
});
