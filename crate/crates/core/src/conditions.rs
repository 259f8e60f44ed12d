//! Decision procedures for the named conditions on a semigroup with zero.
//!
//! | name     | condition                                                  |
//! |----------|------------------------------------------------------------|
//! | `A`      | categorical at 0: `ab ≠ 0`, `bc ≠ 0` imply `abc ≠ 0`        |
//! | `B`      | 0-cancellative                                              |
//! | `C`      | λ is transitive (`C_dual`: ρ)                              |
//! | `D`      | `Sa ≠ 0` for every `a ∈ S*` (`D_dual`: `aS ≠ 0`)           |
//! | `E`      | ρ equals "some `x` has `xa ≠ 0` and `xb ≠ 0`" (`E_dual` dual) |
//! | `STAR`   | every `a` has local identities `ea = a = af`               |
//!
//! All witnesses are the lexicographically least failing tuple.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::relations::{
    lambda_rho_tau, relation_properties, starred, BinaryRelation, LambdaRhoTau, StarredRelations,
};
use crate::semigroup::{Elem, FiniteSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    A,
    B,
    C,
    D,
    CDual,
    DDual,
    E,
    EDual,
    Star,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::A,
        Condition::B,
        Condition::C,
        Condition::D,
        Condition::CDual,
        Condition::DDual,
        Condition::E,
        Condition::EDual,
        Condition::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::A => "A",
            Condition::B => "B",
            Condition::C => "C",
            Condition::D => "D",
            Condition::CDual => "C_dual",
            Condition::DDual => "D_dual",
            Condition::E => "E",
            Condition::EDual => "E_dual",
            Condition::Star => "STAR",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Condition::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown condition {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Least counterexample when `holds` is false.
    pub witness: Option<Vec<Elem>>,
}

impl Verdict {
    fn from_witness(witness: Option<Vec<Elem>>) -> Self {
        Verdict {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Which theorem-level conclusions the verdicts support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    /// A ∧ B ∧ C ∧ D: a primitive inverse semigroup of left I-quotients exists.
    pub left_quotient: bool,
    /// A ∧ B ∧ C_dual ∧ D_dual: the right-handed analogue.
    pub right_quotient: bool,
    /// A ∧ B ∧ C ∧ D ∧ C_dual ∧ D_dual.
    pub two_sided_by_duals: bool,
    /// A ∧ B ∧ C ∧ D ∧ D_dual ∧ (R* ⊆ ρ).
    pub two_sided_by_r_star: bool,
    /// A ∧ B ∧ D ∧ D_dual ∧ E ∧ E_dual.
    pub two_sided_by_e: bool,
    /// A ∧ B ∧ STAR, equivalent to being primitive adequate.
    pub primitive_adequate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    verdicts: [Verdict; 9],
    /// Whether `R* ⊆ ρ`, with the least pair of `R*` outside `ρ` otherwise.
    pub r_star_in_rho: Verdict,
    pub summary: Summary,
}

impl ConditionReport {
    pub fn verdict(&self, c: Condition) -> &Verdict {
        &self.verdicts[c.index()]
    }

    pub fn holds(&self, c: Condition) -> bool {
        self.verdict(c).holds
    }

    pub fn all(&self, cs: &[Condition]) -> bool {
        cs.iter().all(|&c| self.holds(c))
    }

    pub fn verdicts(&self) -> impl Iterator<Item = (Condition, &Verdict)> {
        Condition::ALL
            .into_iter()
            .map(move |c| (c, self.verdict(c)))
    }

    /// One line per condition: `NAME PASS` or `NAME FAIL witness x y ...`,
    /// with elements named through `s`.
    pub fn to_lines(&self, s: &FiniteSemigroup) -> String {
        let mut out = String::new();
        for (c, v) in self.verdicts() {
            out.push_str(c.name());
            if v.holds {
                out.push_str(" PASS");
            } else {
                out.push_str(" FAIL");
                if let Some(w) = &v.witness {
                    out.push_str(" witness");
                    for &x in w {
                        out.push(' ');
                        out.push_str(&s.name(x));
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

pub const LEFT_CONDITIONS: [Condition; 4] =
    [Condition::A, Condition::B, Condition::C, Condition::D];

pub fn check_a(s: &FiniteSemigroup) -> Verdict {
    let mut witness = None;
    'scan: for a in s.elements() {
        for b in s.elements() {
            let ab = s.mul(a, b);
            if ab == 0 {
                continue;
            }
            for c in s.elements() {
                if s.mul(b, c) != 0 && s.mul(ab, c) == 0 {
                    witness = Some(vec![a, b, c]);
                    break 'scan;
                }
            }
        }
    }
    Verdict::from_witness(witness)
}

/// Least `(a, b, c)` with `b ≠ c` and `ab = ac ≠ 0` or `ba = ca ≠ 0`.
pub fn check_b(s: &FiniteSemigroup) -> Verdict {
    let mut witness = None;
    'scan: for a in s.elements() {
        for b in s.elements() {
            for c in s.elements() {
                if b == c {
                    continue;
                }
                let left = s.mul(a, b) == s.mul(a, c) && s.mul(a, b) != 0;
                let right = s.mul(b, a) == s.mul(c, a) && s.mul(b, a) != 0;
                if left || right {
                    witness = Some(vec![a, b, c]);
                    break 'scan;
                }
            }
        }
    }
    Verdict::from_witness(witness)
}

fn check_transitive(r: &BinaryRelation) -> Verdict {
    Verdict::from_witness(
        relation_properties(r)
            .not_transitive_at
            .map(|(a, b, c)| vec![a, b, c]),
    )
}

pub fn check_c(s: &FiniteSemigroup) -> Verdict {
    check_transitive(&lambda_rho_tau(s).lambda)
}

pub fn check_c_dual(s: &FiniteSemigroup) -> Verdict {
    check_transitive(&lambda_rho_tau(s).rho)
}

/// `Sa ≠ 0` for all `a ∈ S*`. The zero is excluded: `S0 = 0` always.
pub fn check_d(s: &FiniteSemigroup) -> Verdict {
    Verdict::from_witness(
        s.nonzero()
            .find(|&a| s.elements().all(|x| s.mul(x, a) == 0))
            .map(|a| vec![a]),
    )
}

pub fn check_d_dual(s: &FiniteSemigroup) -> Verdict {
    Verdict::from_witness(
        s.nonzero()
            .find(|&a| s.elements().all(|x| s.mul(a, x) == 0))
            .map(|a| vec![a]),
    )
}

/// `{(0,0)} ∪ {(a,b) ∈ S*×S* : ∃x, xa ≠ 0 ∧ xb ≠ 0}` (left) or with `ax`, `bx` (right).
fn common_nonannihilator(s: &FiniteSemigroup, left: bool) -> BinaryRelation {
    let prod = |x: Elem, a: Elem| if left { s.mul(x, a) } else { s.mul(a, x) };
    BinaryRelation::from_fn(s.len(), |a, b| {
        if a == 0 || b == 0 {
            a == 0 && b == 0
        } else {
            s.elements().any(|x| prod(x, a) != 0 && prod(x, b) != 0)
        }
    })
}

fn check_e_with(s: &FiniteSemigroup, lrt: &LambdaRhoTau) -> Verdict {
    let other = common_nonannihilator(s, true);
    Verdict::from_witness(lrt.rho.first_difference(&other).map(|(a, b)| vec![a, b]))
}

fn check_e_dual_with(s: &FiniteSemigroup, lrt: &LambdaRhoTau) -> Verdict {
    let other = common_nonannihilator(s, false);
    Verdict::from_witness(lrt.lambda.first_difference(&other).map(|(a, b)| vec![a, b]))
}

pub fn check_e(s: &FiniteSemigroup) -> Verdict {
    check_e_with(s, &lambda_rho_tau(s))
}

pub fn check_e_dual(s: &FiniteSemigroup) -> Verdict {
    check_e_dual_with(s, &lambda_rho_tau(s))
}

/// Every `a` has some `e` with `ea = a` and some `f` with `af = a`.
pub fn check_star(s: &FiniteSemigroup) -> Verdict {
    Verdict::from_witness(
        s.elements()
            .find(|&a| {
                !s.elements().any(|e| s.mul(e, a) == a) || !s.elements().any(|f| s.mul(a, f) == a)
            })
            .map(|a| vec![a]),
    )
}

fn r_star_in_rho(starred: &StarredRelations, lrt: &LambdaRhoTau) -> Verdict {
    let r_star = BinaryRelation::from_partition(&starred.r_star);
    let witness = r_star
        .pairs()
        .find(|&(a, b)| !lrt.rho.contains(a, b))
        .map(|(a, b)| vec![a, b]);
    Verdict::from_witness(witness)
}

/// Evaluate every condition (no short-circuit) and derive the summary.
pub fn profile(s: &FiniteSemigroup) -> ConditionReport {
    let lrt = lambda_rho_tau(s);
    let st = starred(s);
    let verdicts = [
        check_a(s),
        check_b(s),
        check_transitive(&lrt.lambda),
        check_d(s),
        check_transitive(&lrt.rho),
        check_d_dual(s),
        check_e_with(s, &lrt),
        check_e_dual_with(s, &lrt),
        check_star(s),
    ];
    let r_star_in_rho = r_star_in_rho(&st, &lrt);
    let h = |c: Condition| verdicts[c.index()].holds;
    use Condition::*;
    let ab = h(A) && h(B);
    let summary = Summary {
        left_quotient: ab && h(C) && h(D),
        right_quotient: ab && h(CDual) && h(DDual),
        two_sided_by_duals: ab && h(C) && h(D) && h(CDual) && h(DDual),
        two_sided_by_r_star: ab && h(C) && h(D) && h(DDual) && r_star_in_rho.holds,
        two_sided_by_e: ab && h(D) && h(DDual) && h(E) && h(EDual),
        primitive_adequate: ab && h(Star),
    };
    ConditionReport {
        verdicts,
        r_star_in_rho,
        summary,
    }
}

/// A conjunction of possibly negated conditions, e.g. `A,B,C,D,!D_dual`.
///
/// Terms are separated by `,`, `&`, or whitespace; `!` negates a term.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConditionExpr {
    pub terms: Vec<(bool, Condition)>,
}

impl ConditionExpr {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut terms = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c == b',' || c == b'&' || c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let mut negated = false;
            while i < bytes.len() && bytes[i] == b'!' {
                negated = !negated;
                i += 1;
            }
            let name_start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &text[name_start..i];
            if name.is_empty() {
                let found = text[i..]
                    .chars()
                    .next()
                    .map_or("end of input".to_string(), |c| format!("{c:?}"));
                return Err(ParseError::new(
                    1,
                    i + 1,
                    format!("expected a condition name, found {found}"),
                ));
            }
            let cond = name
                .parse::<Condition>()
                .map_err(|e| ParseError::new(1, start + 1, e))?;
            terms.push((!negated, cond));
        }
        Ok(ConditionExpr { terms })
    }

    pub fn eval(&self, report: &ConditionReport) -> bool {
        self.terms
            .iter()
            .all(|&(positive, c)| report.holds(c) == positive)
    }
}

impl FromStr for ConditionExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{b2, c2z, null2, s1};

    fn table(n: usize, t: &[usize]) -> FiniteSemigroup {
        FiniteSemigroup::from_table(n, t.to_vec()).unwrap()
    }

    #[test]
    fn s1_profile() {
        let s = s1();
        let r = profile(&s);
        assert!(r.all(&LEFT_CONDITIONS));
        assert!(!r.holds(Condition::DDual));
        assert_eq!(r.verdict(Condition::DDual).witness, Some(vec![2]));
        assert!(r.summary.left_quotient);
        assert!(!r.summary.two_sided_by_duals);
        // right local identity of (1,e,2) is missing
        assert_eq!(r.verdict(Condition::Star).witness, Some(vec![2]));
    }

    #[test]
    fn c2z_profile() {
        let r = profile(&c2z());
        for c in [
            Condition::A,
            Condition::B,
            Condition::C,
            Condition::D,
            Condition::CDual,
            Condition::DDual,
            Condition::E,
            Condition::EDual,
        ] {
            assert!(r.holds(c), "{c}");
        }
        assert!(r.summary.two_sided_by_duals);
        assert!(r.summary.two_sided_by_e);
    }

    #[test]
    fn b2_conditions() {
        let r = profile(&b2());
        assert!(r.all(&LEFT_CONDITIONS));
        assert!(r.holds(Condition::Star));
    }

    #[test]
    fn null_semigroup_fails_d() {
        let s = null2();
        let r = profile(&s);
        assert!(!r.holds(Condition::D));
        assert_eq!(r.verdict(Condition::D).witness, Some(vec![1]));
        assert!(!r.summary.left_quotient);
        assert!(r.to_lines(&s).contains("D FAIL witness a\n"));
    }

    #[test]
    fn trivial_semigroup_passes_everything() {
        let r = profile(&FiniteSemigroup::trivial());
        assert!(Condition::ALL.iter().all(|&c| r.holds(c)));
    }

    #[test]
    fn categoricity_counterexample() {
        // a*e = a, e*e = e: categorical
        let s = table(3, &[0, 0, 0, 0, 0, 1, 0, 0, 2]);
        assert!(check_a(&s).holds);
        // nilpotent chain a*a = b, everything else 0: aa, aa non-zero but aaa = 0
        let s = table(3, &[0, 0, 0, 0, 2, 0, 0, 0, 0]);
        assert_eq!(check_a(&s).witness, Some(vec![1, 1, 1]));
    }

    #[test]
    fn left_zero_with_zero_fails_cancellation() {
        // a x = a for x in {a, b}; b x = b
        let s = table(3, &[0, 0, 0, 0, 1, 1, 0, 2, 2]);
        assert_eq!(check_b(&s).witness, Some(vec![1, 1, 2]));
        assert!(check_b(&c2z()).holds);
    }

    #[test]
    fn star_on_b2_and_trivial() {
        assert!(check_star(&b2()).holds);
        assert!(check_star(&FiniteSemigroup::trivial()).holds);
    }

    #[test]
    fn expr_parsing() {
        let e = ConditionExpr::parse("A,B & c  !D_dual").unwrap();
        assert_eq!(
            e.terms,
            vec![
                (true, Condition::A),
                (true, Condition::B),
                (true, Condition::C),
                (false, Condition::DDual)
            ]
        );
        assert!(e.eval(&profile(&s1())));
        assert!(!e.eval(&profile(&c2z())));
        assert!(ConditionExpr::parse("").unwrap().terms.is_empty());
        let err = ConditionExpr::parse("A,Q").unwrap_err();
        assert_eq!(err.column, 3);
        let err = ConditionExpr::parse("A,!").unwrap_err();
        assert_eq!(err.column, 4);
        assert!(ConditionExpr::parse("A|B").is_err());
    }
}
