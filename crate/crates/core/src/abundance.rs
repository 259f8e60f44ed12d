//! Abundance, adequacy and ampleness, and how they line up with the
//! quotient conditions.

use crate::conditions::{check_a, profile, Condition};
use crate::error::{Error, Result};
use crate::inverse::non_primitive_idempotent;
use crate::quotient::{build_quotient, verify_right_i_order};
use crate::relations::{starred, Partition};
use crate::semigroup::{Elem, FiniteSemigroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbundanceProfile {
    pub left_abundant: bool,
    pub right_abundant: bool,
    pub left_adequate: bool,
    pub right_adequate: bool,
    pub adequate: bool,
    pub left_ample: bool,
    pub right_ample: bool,
    pub ample: bool,
    /// Idempotents commute.
    pub semilattice: bool,
    /// `a ↦ a⁺`, the least idempotent R*-related to `a`.
    pub plus_map: Vec<Option<Elem>>,
    /// `a ↦ a*`, the least idempotent L*-related to `a`.
    pub star_map: Vec<Option<Elem>>,
    /// An element whose R*- or L*-class holds two idempotents although
    /// idempotents commute. Always `None`; kept as a guard.
    pub non_unique: Option<Elem>,
}

impl AbundanceProfile {
    pub fn abundant(&self) -> bool {
        self.left_abundant && self.right_abundant
    }

    pub fn to_lines(&self, s: &FiniteSemigroup) -> String {
        let flag = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        for (name, v) in [
            ("left_abundant", self.left_abundant),
            ("right_abundant", self.right_abundant),
            ("left_adequate", self.left_adequate),
            ("right_adequate", self.right_adequate),
            ("adequate", self.adequate),
            ("left_ample", self.left_ample),
            ("right_ample", self.right_ample),
            ("ample", self.ample),
        ] {
            out.push_str(&format!("{name} {}\n", flag(v)));
        }
        let show = |m: Option<Elem>| m.map_or("-".to_string(), |e| s.name(e));
        for a in s.elements() {
            out.push_str(&format!(
                "plus {} {}\nstar {} {}\n",
                s.name(a),
                show(self.plus_map[a]),
                s.name(a),
                show(self.star_map[a])
            ));
        }
        out
    }
}

fn idempotent_in_class(s: &FiniteSemigroup, p: &Partition) -> (Vec<Option<Elem>>, Option<Elem>) {
    let mut non_unique = None;
    let map = s
        .elements()
        .map(|a| {
            let mut idem = p.class(a).iter().copied().filter(|&e| s.is_idempotent(e));
            let first = idem.next();
            if idem.next().is_some() && non_unique.is_none() {
                non_unique = Some(a);
            }
            first
        })
        .collect();
    (map, non_unique)
}

pub fn abundance_profile(s: &FiniteSemigroup) -> AbundanceProfile {
    let st = starred(s);
    let idempotents = s.idempotents();
    let semilattice = idempotents
        .iter()
        .all(|&e| idempotents.iter().all(|&f| s.mul(e, f) == s.mul(f, e)));
    let (plus_map, non_plus) = idempotent_in_class(s, &st.r_star);
    let (star_map, non_star) = idempotent_in_class(s, &st.l_star);
    let left_abundant = plus_map.iter().all(Option::is_some);
    let right_abundant = star_map.iter().all(Option::is_some);
    let left_adequate = left_abundant && semilattice;
    let right_adequate = right_abundant && semilattice;

    // (ae)⁺ a = ae
    let left_ample = left_adequate
        && s.elements().all(|a| {
            idempotents.iter().all(|&e| {
                let ae = s.mul(a, e);
                s.mul(plus_map[ae].unwrap(), a) == ae
            })
        });
    // a (ea)* = ea
    let right_ample = right_adequate
        && s.elements().all(|a| {
            idempotents.iter().all(|&e| {
                let ea = s.mul(e, a);
                s.mul(a, star_map[ea].unwrap()) == ea
            })
        });
    let non_unique = if semilattice {
        non_plus.or(non_star)
    } else {
        None
    };
    AbundanceProfile {
        left_abundant,
        right_abundant,
        left_adequate,
        right_adequate,
        adequate: left_adequate && right_adequate,
        left_ample,
        right_ample,
        ample: left_ample && right_ample,
        semilattice,
        plus_map,
        star_map,
        non_unique,
    }
}

/// Adequate with every non-zero idempotent primitive.
pub fn is_primitive_adequate(s: &FiniteSemigroup) -> bool {
    non_primitive_idempotent(s, &s.idempotents()).is_none() && abundance_profile(s).adequate
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplecateReport {
    pub categorical: bool,
    /// For all non-zero `a, b`: `a* = b⁺` exactly when `ab ≠ 0`.
    pub star_plus_criterion: bool,
    /// Least `(a, b)` where the criterion fails.
    pub witness: Option<(Elem, Elem)>,
}

impl AmplecateReport {
    pub fn agrees(&self) -> bool {
        self.categorical == self.star_plus_criterion
    }
}

/// For a primitive ample `S`, compare categoricity at 0 with the
/// `a* = b⁺ ⟺ ab ≠ 0` criterion, each computed on its own.
pub fn check_amplecate(s: &FiniteSemigroup) -> Result<AmplecateReport> {
    let p = abundance_profile(s);
    if !p.ample || non_primitive_idempotent(s, &s.idempotents()).is_some() {
        return Err(Error::PreconditionUnverified(
            "semigroup is not primitive ample".into(),
        ));
    }
    let witness = s.nonzero().find_map(|a| {
        s.nonzero()
            .find(|&b| (p.star_map[a] == p.plus_map[b]) != (s.mul(a, b) != 0))
            .map(|b| (a, b))
    });
    Ok(AmplecateReport {
        categorical: check_a(s).holds,
        star_plus_criterion: witness.is_none(),
        witness,
    })
}

/// The three characterizations of abundant (left or two-sided) I-orders in
/// primitive inverse semigroups, each evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassificationTriple {
    /// Abundant and an I-order in the built quotient.
    pub by_quotient: bool,
    /// Primitive adequate with transitive λ (and ρ).
    pub by_adequacy: bool,
    /// 0-cancellative, categorical at 0, local identities, transitive λ (and ρ).
    pub by_conditions: bool,
}

impl ClassificationTriple {
    pub fn agrees(&self) -> bool {
        self.by_quotient == self.by_adequacy && self.by_adequacy == self.by_conditions
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub left: ClassificationTriple,
    pub two_sided: ClassificationTriple,
}

impl Classification {
    pub fn to_lines(&self) -> String {
        let flag = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        for (side, t) in [("left", self.left), ("two_sided", self.two_sided)] {
            out.push_str(&format!(
                "{side} by_quotient {} by_adequacy {} by_conditions {} {}\n",
                flag(t.by_quotient),
                flag(t.by_adequacy),
                flag(t.by_conditions),
                if t.agrees() { "AGREE" } else { "DISAGREE" }
            ));
        }
        out.push_str("representation not computed\n");
        out
    }
}

pub fn abundant_classification(s: &FiniteSemigroup) -> Classification {
    let report = profile(s);
    let abundance = abundance_profile(s);
    let primitive_adequate = is_primitive_adequate(s);
    let holds = |cs: &[Condition]| report.all(cs);

    let quotient = report
        .summary
        .left_quotient
        .then(|| build_quotient(s).ok())
        .flatten();
    let left_order = quotient.is_some();
    let two_sided_order = quotient
        .as_ref()
        .is_some_and(|q| verify_right_i_order(s, q.semigroup(), q.inverse(), q.theta()).is_ok());

    let base = [Condition::A, Condition::B, Condition::Star, Condition::C];
    Classification {
        left: ClassificationTriple {
            by_quotient: abundance.abundant() && left_order,
            by_adequacy: primitive_adequate && holds(&[Condition::C]),
            by_conditions: holds(&base),
        },
        two_sided: ClassificationTriple {
            by_quotient: abundance.abundant() && two_sided_order,
            by_adequacy: primitive_adequate && holds(&[Condition::C, Condition::CDual]),
            by_conditions: holds(&base) && holds(&[Condition::CDual]),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{b2, brandt, c2z, null2, s1, zero_direct_union, GroupTable};

    #[test]
    fn b2_is_ample() {
        let p = abundance_profile(&b2());
        assert!(p.ample && p.adequate);
        // a⁺ = aa⁻¹: (1,e,2)⁺ = (1,e,1)
        assert_eq!(p.plus_map[2], Some(1));
        assert_eq!(p.star_map[2], Some(4));
        assert_eq!(p.non_unique, None);
    }

    #[test]
    fn s1_is_left_adequate_only() {
        let p = abundance_profile(&s1());
        assert!(p.left_adequate && p.left_ample);
        assert!(!p.right_abundant);
        assert_eq!(p.plus_map[2], Some(1));
        assert_eq!(p.star_map[2], None);
    }

    #[test]
    fn null_is_not_abundant() {
        let p = abundance_profile(&null2());
        assert!(!p.left_abundant && !p.right_abundant);
        assert_eq!(p.plus_map, vec![Some(0), None]);
    }

    #[test]
    fn amplecate_examples() {
        for s in [
            b2(),
            brandt(&GroupTable::cyclic(2), 2).unwrap(),
            zero_direct_union(&[b2(), b2()]),
        ] {
            let r = check_amplecate(&s).unwrap();
            assert!(r.categorical && r.star_plus_criterion, "{r:?}");
        }
        assert!(matches!(
            check_amplecate(&s1()),
            Err(Error::PreconditionUnverified(_))
        ));
    }

    #[test]
    fn classification_examples() {
        let c = abundant_classification(&b2());
        assert!(c.left.by_quotient && c.left.by_adequacy && c.left.by_conditions);
        assert!(c.two_sided.agrees() && c.two_sided.by_quotient);
        for s in [s1(), null2()] {
            let c = abundant_classification(&s);
            assert!(!c.left.by_quotient && !c.left.by_adequacy && !c.left.by_conditions);
            assert!(c.two_sided.agrees());
        }
        assert!(abundant_classification(&c2z()).left.agrees());
    }

    #[test]
    fn primitive_adequate_matches_conditions() {
        for s in [b2(), s1(), c2z(), null2(), FiniteSemigroup::trivial()] {
            assert_eq!(
                is_primitive_adequate(&s),
                profile(&s).summary.primitive_adequate
            );
        }
    }
}
