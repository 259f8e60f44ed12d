#![no_main]

use iquo::sgp::{parse_sgp_stream, serialize_sgp_stream};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(items) = parse_sgp_stream(text) {
        let again =
            parse_sgp_stream(&serialize_sgp_stream(&items)).expect("canonical output parses");
        assert_eq!(again, items);
    }
});
