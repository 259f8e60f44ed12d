#![no_main]

//! First byte picks the order (1..=6); the rest fill the table row-major,
//! each entry reduced modulo the order.

use iquo::audit::audit_quotient;
use iquo::quotient::build_quotient;
use iquo::FiniteSemigroup;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let n = usize::from(first % 6) + 1;
    if rest.len() < n * n {
        return;
    }
    let table = rest[..n * n].iter().map(|&b| usize::from(b) % n).collect();
    let Ok(s) = FiniteSemigroup::from_table(n, table) else {
        return;
    };
    if let Ok(q) = build_quotient(&s) {
        let report = audit_quotient(&s, &q);
        assert!(report.ok(), "{}", report.to_lines());
    }
});
