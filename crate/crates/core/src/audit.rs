//! Post-hoc checks tying `S` to its quotient `Q`.
//!
//! Each check reports either success or the least counterexample it found,
//! rendered as text. The checks are independent re-derivations; none of them
//! reuses the shortcuts taken while building `Q`.

use std::collections::BTreeSet;

use crate::inverse::primitive_facts_check;
use crate::quotient::{products_all_witnesses, verify_left_i_order, QuotientSemigroup, SigmaPair};
use crate::relations::{green, lambda_rho_tau, starred, BinaryRelation};
use crate::semigroup::{is_homomorphism, Elem, FiniteSemigroup};

/// Exhaustive checks (well-definedness, the eight-variable cancellation
/// scan) only run up to this order.
pub const EXHAUSTIVE_MAX_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCheck {
    pub name: &'static str,
    /// `None` when the check passed.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| c.failure.is_some())
    }

    pub fn get(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match &c.failure {
                None => out.push_str(&format!("{} PASS\n", c.name)),
                Some(w) => out.push_str(&format!("{} FAIL {w}\n", c.name)),
            }
        }
        out
    }

    fn push(&mut self, name: &'static str, failure: Option<String>) {
        self.checks.push(AuditCheck { name, failure });
    }
}

/// Pull a relation on `Q` back along `emb` to a relation on `S`.
fn restrict(n: usize, emb: &[Elem], related: impl Fn(Elem, Elem) -> bool) -> BinaryRelation {
    BinaryRelation::from_fn(n, |a, b| related(emb[a], emb[b]))
}

fn pair_text(p: Option<(Elem, Elem)>) -> Option<String> {
    p.map(|(a, b)| format!("{a} {b}"))
}

/// Relation identities that hold whenever `S` is a left I-order in a
/// primitive inverse `Q` via `emb`:
/// `0 ∈ S`, `L ∩ (S×S) = λ`, straightness, `Sa ≠ 0`, `R ∩ (S×S) = R*`, `ρ ⊆ R*`.
pub fn left_order_identities(
    s: &FiniteSemigroup,
    q: &FiniteSemigroup,
    inv: &[Elem],
    emb: &[Elem],
) -> AuditReport {
    let mut report = AuditReport::default();
    let n = s.len();
    let gq = green(q);
    let lrt = lambda_rho_tau(s);
    let r_star = BinaryRelation::from_partition(&starred(s).r_star);

    report.push(
        "contains_zero",
        (emb.first() != Some(&0)).then(|| "emb(0) is not the zero of Q".to_string()),
    );
    let l_restricted = restrict(n, emb, |x, y| gq.l.same(x, y));
    report.push(
        "l_restricted_eq_lambda",
        pair_text(l_restricted.first_difference(&lrt.lambda)),
    );
    report.push(
        "straight",
        match verify_left_i_order(s, q, inv, emb) {
            Ok(r) if r.straight => None,
            Ok(r) => {
                let k = q
                    .elements()
                    .find(|&k| {
                        let (a, b) = r.decomposition[k];
                        !gq.r.same(emb[a], emb[b])
                    })
                    .unwrap_or(0);
                Some(format!("{k} has no R-related decomposition"))
            }
            Err(e) => Some(e.to_string()),
        },
    );
    report.push(
        "left_nonvanishing",
        s.nonzero()
            .find(|&a| s.nonzero().all(|x| s.mul(x, a) == 0))
            .map(|a| a.to_string()),
    );
    let r_restricted = restrict(n, emb, |x, y| gq.r.same(x, y));
    report.push(
        "r_restricted_eq_r_star",
        pair_text(r_restricted.first_difference(&r_star)),
    );
    report.push(
        "rho_in_r_star",
        pair_text(lrt.rho.pairs().find(|&(a, b)| !r_star.contains(a, b))),
    );
    report
}

/// Consequences in `Q` of `S` being a left I-order: `a⁻¹b ≠ 0` forces
/// `a R b`, and for non-zero `a⁻¹b`, `c⁻¹d` the R- and L-classes of the
/// quotients are decided by λ on `S`.
pub fn quotient_class_criteria(
    s: &FiniteSemigroup,
    q: &FiniteSemigroup,
    inv: &[Elem],
    emb: &[Elem],
) -> AuditReport {
    let mut report = AuditReport::default();
    let gq = green(q);
    let lambda = lambda_rho_tau(s).lambda;
    let frac = |a: Elem, b: Elem| q.mul(inv[emb[a]], emb[b]);

    report.push(
        "nonzero_fraction_r_related",
        s.elements()
            .flat_map(|a| s.elements().map(move |b| (a, b)))
            .find(|&(a, b)| frac(a, b) != 0 && !gq.r.same(emb[a], emb[b]))
            .map(|(a, b)| format!("{a} {b}")),
    );

    let nonzero: Vec<(Elem, Elem)> = s
        .elements()
        .flat_map(|a| s.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| frac(a, b) != 0)
        .collect();
    let mut r_fail = None;
    let mut l_fail = None;
    'outer: for &(a, b) in &nonzero {
        for &(c, d) in &nonzero {
            let (x, y) = (frac(a, b), frac(c, d));
            if r_fail.is_none() && gq.r.same(x, y) != lambda.contains(a, c) {
                r_fail = Some(format!("{a} {b} {c} {d}"));
            }
            if l_fail.is_none() && gq.l.same(x, y) != lambda.contains(b, d) {
                l_fail = Some(format!("{a} {b} {c} {d}"));
            }
            if r_fail.is_some() && l_fail.is_some() {
                break 'outer;
            }
        }
    }
    report.push("fraction_r_iff_lambda", r_fail);
    report.push("fraction_l_iff_lambda", l_fail);
    report
}

/// `xa = yc ≠ 0`, `xb = yd ≠ 0`, `sa = tc ≠ 0`, `sb = td ≠ 0`: the last
/// pair follows from the other three. Returns the least failing
/// `(a, b, c, d, s, t, x, y)`.
pub fn cancellation_witness(s: &FiniteSemigroup) -> Option<[Elem; 8]> {
    let nz: Vec<Elem> = s.nonzero().collect();
    for &a in &nz {
        for &c in &nz {
            // (s, t) with sa = tc ≠ 0, and (x, y) with xa = yc ≠ 0
            let matches: Vec<(Elem, Elem)> = nz
                .iter()
                .flat_map(|&u| nz.iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| {
                    let ua = s.mul(u, a);
                    ua != 0 && ua == s.mul(v, c)
                })
                .collect();
            if matches.is_empty() {
                continue;
            }
            for &b in &nz {
                for &d in &nz {
                    for &(p, t) in &matches {
                        let pb = s.mul(p, b);
                        if pb == 0 || pb != s.mul(t, d) {
                            continue;
                        }
                        for &(x, y) in &matches {
                            let xb = s.mul(x, b);
                            if xb == 0 || xb != s.mul(y, d) {
                                return Some([a, b, c, d, p, t, x, y]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Every check on a built quotient: the primitive inverse facts, θ, the
/// left-order identities, the class criteria, the pair identities, and
/// (for `|S| ≤ EXHAUSTIVE_MAX_ORDER`) well-definedness over every
/// representative and witness together with the cancellation scan.
pub fn audit_quotient(s: &FiniteSemigroup, quotient: &QuotientSemigroup) -> AuditReport {
    let q = quotient.semigroup();
    let inv = quotient.inverse();
    let theta = quotient.theta();
    let mut report = AuditReport::default();

    let associativity = q.elements().find_map(|a| {
        q.elements().find_map(|b| {
            q.elements()
                .find(|&c| q.mul(q.mul(a, b), c) != q.mul(a, q.mul(b, c)))
                .map(|c| format!("{a} {b} {c}"))
        })
    });
    report.push("associative", associativity);

    let facts = primitive_facts_check(q, inv);
    report.push(
        "categorical",
        facts.categorical.map(|(a, b, c)| format!("{a} {b} {c}")),
    );
    report.push(
        "idempotents_orthogonal",
        pair_text(facts.idempotents_orthogonal),
    );
    report.push(
        "idempotents_act_trivially",
        pair_text(facts.idempotents_act_trivially),
    );
    report.push("local_identities", pair_text(facts.local_identities));
    report.push("products_match", pair_text(facts.products_match));

    let distinct: BTreeSet<Elem> = theta.iter().copied().collect();
    report.push(
        "theta_monomorphism",
        if !is_homomorphism(s, q, theta) {
            Some("not a homomorphism".into())
        } else if distinct.len() != theta.len() {
            Some("not injective".into())
        } else {
            None
        },
    );

    report
        .checks
        .extend(left_order_identities(s, q, inv, theta).checks);
    report
        .checks
        .extend(quotient_class_criteria(s, q, inv, theta).checks);

    let sigma_star: Vec<SigmaPair> = quotient
        .partition()
        .classes()
        .iter()
        .skip(1)
        .flatten()
        .copied()
        .collect();
    report.push(
        "theta_fraction_is_pair",
        sigma_star
            .iter()
            .find(|p| q.mul(inv[theta[p.a]], theta[p.b]) != quotient.class_of(p.a, p.b).unwrap())
            .map(|p| p.to_string()),
    );

    let idem_sources: BTreeSet<Elem> = s
        .nonzero()
        .map(|a| q.mul(inv[theta[a]], theta[a]))
        .collect();
    report.push(
        "idempotent_source",
        q.idempotents()
            .into_iter()
            .find(|&e| e != 0 && !idem_sources.contains(&e))
            .map(|e| e.to_string()),
    );

    report.push(
        "pair_left_translate",
        sigma_star.iter().find_map(|p| {
            s.nonzero()
                .filter(|&x| s.mul(x, p.a) != 0)
                .find(|&x| {
                    let moved = quotient.class_of(s.mul(x, p.a), s.mul(x, p.b));
                    moved.is_some() && moved != quotient.class_of(p.a, p.b)
                })
                .map(|x| format!("{p} {x}"))
        }),
    );

    if s.len() <= EXHAUSTIVE_MAX_ORDER {
        report.push(
            "cancellation",
            cancellation_witness(s).map(|w| {
                w.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }),
        );
        let sim = quotient.partition();
        let well_defined = q.elements().find_map(|i| {
            q.elements().find_map(|j| {
                let all = products_all_witnesses(s, sim, i, j);
                (all != BTreeSet::from([Some(q.mul(i, j))])).then(|| format!("{i} {j}"))
            })
        });
        report.push("well_defined", well_defined);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{b2, c2z, example_fixture, s1, GroupTable};
    use crate::inverse::inverse_profile;
    use crate::quotient::build_quotient;

    #[test]
    fn fixtures_pass_full_audit() {
        let fixtures = [
            s1(),
            c2z(),
            b2(),
            example_fixture(&GroupTable::cyclic(2), 2, 1).unwrap().0,
            FiniteSemigroup::trivial(),
        ];
        for s in fixtures {
            let quotient = build_quotient(&s).unwrap();
            let report = audit_quotient(&s, &quotient);
            assert!(report.ok(), "{}", report.to_lines());
            assert!(report.get("well_defined").is_some());
        }
    }

    #[test]
    fn inclusion_of_s1_into_b2() {
        let b = b2();
        let inv = inverse_profile(&b).inv_map.unwrap();
        let r = left_order_identities(&s1(), &b, &inv, &[0, 1, 2]);
        assert!(r.ok(), "{}", r.to_lines());
        assert!(quotient_class_criteria(&s1(), &b, &inv, &[0, 1, 2]).ok());
    }

    #[test]
    fn non_order_is_reported() {
        // {0, (2,e,2)} inside B2 does not reach (1,e,1)
        let b = b2();
        let inv = inverse_profile(&b).inv_map.unwrap();
        let s = FiniteSemigroup::from_table(2, vec![0, 0, 0, 1]).unwrap();
        let r = left_order_identities(&s, &b, &inv, &[0, 4]);
        assert!(r.get("straight").unwrap().failure.is_some());
    }

    #[test]
    fn cancellation_on_fixtures() {
        assert_eq!(cancellation_witness(&s1()), None);
        assert_eq!(cancellation_witness(&b2()), None);
        // smallest failure among tables of order <= 4
        let s =
            FiniteSemigroup::from_table(4, vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1])
                .unwrap();
        assert_eq!(cancellation_witness(&s), Some([2, 2, 3, 2, 3, 3, 3, 2]));
    }

    #[test]
    fn report_lines() {
        let mut r = AuditReport::default();
        r.push("x", None);
        r.push("y", Some("1 2".into()));
        assert_eq!(r.to_lines(), "x PASS\ny FAIL 1 2\n");
        assert!(!r.ok());
    }
}
