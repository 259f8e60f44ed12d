#![no_main]

use iquo::builders::s1;
use iquo::conditions::{profile, ConditionExpr};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match ConditionExpr::parse(text) {
        Ok(expr) => {
            let _ = expr.eval(&profile(&s1()));
        }
        Err(e) => assert!(e.line >= 1 && e.column >= 1),
    }
});
