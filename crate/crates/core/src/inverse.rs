//! Recognition of inverse, primitive and Brandt structure, and splitting of
//! primitive inverse semigroups into their Brandt components.

use crate::error::{Error, Result};
use crate::relations::{green, lambda_rho_tau, starred};
use crate::semigroup::{subsemigroup, Elem, FiniteSemigroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseProfile {
    pub regular: bool,
    pub inverse: bool,
    /// `a ↦ a⁻¹`, present exactly when `inverse` holds.
    pub inv_map: Option<Vec<Elem>>,
    pub idempotents: Vec<Elem>,
    /// Idempotents commute.
    pub semilattice: bool,
    /// Every non-zero idempotent is primitive.
    pub primitive: bool,
    pub brandt: bool,
    /// Non-zero D-classes, ordered by least element.
    pub d_components: Vec<Vec<Elem>>,
}

impl InverseProfile {
    pub fn primitive_inverse(&self) -> bool {
        self.inverse && self.primitive
    }
}

/// Natural order on idempotents: `f ≤ e` iff `ef = fe = f`.
pub fn idempotent_le(s: &FiniteSemigroup, f: Elem, e: Elem) -> bool {
    s.mul(e, f) == f && s.mul(f, e) == f
}

/// Non-zero idempotents `e` having some non-zero idempotent `f ≠ e` below them.
pub fn non_primitive_idempotent(s: &FiniteSemigroup, idempotents: &[Elem]) -> Option<(Elem, Elem)> {
    idempotents.iter().filter(|&&e| e != 0).find_map(|&e| {
        idempotents
            .iter()
            .find(|&&f| f != 0 && f != e && idempotent_le(s, f, e))
            .map(|&f| (e, f))
    })
}

pub fn inverse_profile(s: &FiniteSemigroup) -> InverseProfile {
    let idempotents = s.idempotents();
    let regular = s
        .elements()
        .all(|a| s.elements().any(|x| s.mul3(a, x, a) == a));
    let semilattice = idempotents
        .iter()
        .all(|&e| idempotents.iter().all(|&f| s.mul(e, f) == s.mul(f, e)));
    let inverse = regular && semilattice;
    let inv_map = inverse.then(|| {
        s.elements()
            .map(|a| {
                s.elements()
                    .find(|&x| s.mul3(a, x, a) == a && s.mul3(x, a, x) == x)
                    .expect("inverse semigroups have inverses")
            })
            .collect()
    });
    let primitive = non_primitive_idempotent(s, &idempotents).is_none();
    let d = green(s).d;
    let d_components: Vec<Vec<Elem>> = d.classes().iter().filter(|c| c[0] != 0).cloned().collect();
    let brandt = primitive && inverse && d_components.len() == 1;
    InverseProfile {
        regular,
        inverse,
        inv_map,
        idempotents,
        semilattice,
        primitive,
        brandt,
        d_components,
    }
}

/// Which of the five standard facts about primitive inverse semigroups fail,
/// each with the least counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimitiveFactsReport {
    /// Categorical at 0.
    pub categorical: Option<(Elem, Elem, Elem)>,
    /// `ef ≠ 0` implies `e = f` for non-zero idempotents.
    pub idempotents_orthogonal: Option<(Elem, Elem)>,
    /// `es ≠ 0` implies `es = s`, and `se ≠ 0` implies `se = s`.
    pub idempotents_act_trivially: Option<(Elem, Elem)>,
    /// `as = a` implies `s = a⁻¹a`, and `sa = a` implies `s = aa⁻¹`.
    pub local_identities: Option<(Elem, Elem)>,
    /// `ab ≠ 0` implies `a⁻¹a = bb⁻¹`.
    pub products_match: Option<(Elem, Elem)>,
}

impl PrimitiveFactsReport {
    pub fn ok(&self) -> bool {
        self.categorical.is_none()
            && self.idempotents_orthogonal.is_none()
            && self.idempotents_act_trivially.is_none()
            && self.local_identities.is_none()
            && self.products_match.is_none()
    }
}

/// Check the five facts on `q` with inverse map `inv`.
///
/// For the last fact the condition checked is `a⁻¹a = bb⁻¹`: with `ab ≠ 0` in a
/// primitive inverse semigroup the idempotents `a⁻¹a` and `bb⁻¹` meet non-trivially.
pub fn primitive_facts_check(q: &FiniteSemigroup, inv: &[Elem]) -> PrimitiveFactsReport {
    let idem: Vec<Elem> = q.idempotents().into_iter().filter(|&e| e != 0).collect();
    let mut report = PrimitiveFactsReport {
        categorical: crate::conditions::check_a(q)
            .witness
            .map(|w| (w[0], w[1], w[2])),
        ..Default::default()
    };
    report.idempotents_orthogonal = idem.iter().find_map(|&e| {
        idem.iter()
            .find(|&&f| q.mul(e, f) != 0 && e != f)
            .map(|&f| (e, f))
    });
    report.idempotents_act_trivially = idem.iter().find_map(|&e| {
        q.nonzero()
            .find(|&s| {
                let es = q.mul(e, s);
                let se = q.mul(s, e);
                (es != 0 && es != s) || (se != 0 && se != s)
            })
            .map(|s| (e, s))
    });
    report.local_identities = q.nonzero().find_map(|a| {
        q.nonzero()
            .find(|&s| {
                (q.mul(a, s) == a && s != q.mul(inv[a], a))
                    || (q.mul(s, a) == a && s != q.mul(a, inv[a]))
            })
            .map(|s| (a, s))
    });
    report.products_match = q.nonzero().find_map(|a| {
        q.nonzero()
            .find(|&b| q.mul(a, b) != 0 && q.mul(inv[a], a) != q.mul(b, inv[b]))
            .map(|b| (a, b))
    });
    report
}

/// For all `a, b ∈ S*` there are `c, d ∈ S` with `ca R* d` and `d λ b`.
/// Returns the least failing `(a, b)`.
pub fn brandt_criterion_witness(s: &FiniteSemigroup) -> Option<(Elem, Elem)> {
    let rs = starred(s).r_star;
    let lambda = lambda_rho_tau(s).lambda;
    for a in s.nonzero() {
        for b in s.nonzero() {
            let found = s.elements().any(|c| {
                let ca = s.mul(c, a);
                rs.class(ca).iter().any(|&d| lambda.contains(d, b))
            });
            if !found {
                return Some((a, b));
            }
        }
    }
    None
}

/// The criterion over a non-empty `S*`; `{0}` is excluded since its
/// quotient has no non-zero D-class and so is not Brandt.
pub fn brandt_criterion(s: &FiniteSemigroup) -> bool {
    s.len() > 1 && brandt_criterion_witness(s).is_none()
}

/// One Brandt component of a primitive inverse semigroup, re-indexed with
/// its inclusion map into the whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub semigroup: FiniteSemigroup,
    pub inclusion: Vec<Elem>,
}

/// Split a primitive inverse semigroup into its Brandt components (each
/// non-zero D-class plus the zero), ordered by least element.
pub fn zero_direct_union_decompose(q: &FiniteSemigroup) -> Result<Vec<Component>> {
    let profile = inverse_profile(q);
    if !profile.primitive_inverse() {
        return Err(Error::NotPrimitiveInverse);
    }
    let mut component_of = vec![usize::MAX; q.len()];
    for (i, class) in profile.d_components.iter().enumerate() {
        for &a in class {
            component_of[a] = i;
        }
    }
    for a in q.nonzero() {
        for b in q.nonzero() {
            if component_of[a] != component_of[b] && q.mul(a, b) != 0 {
                return Err(Error::Verification(format!(
                    "product of {a} and {b} from different components is non-zero"
                )));
            }
        }
    }
    let mut out = Vec::new();
    for class in &profile.d_components {
        let (semigroup, inclusion) = subsemigroup(q, class)?;
        if inclusion.len() != class.len() + 1 {
            return Err(Error::Verification(
                "a D-class together with 0 is not closed".into(),
            ));
        }
        if !inverse_profile(&semigroup).brandt {
            return Err(Error::Verification(format!(
                "component containing {} is not Brandt",
                class[0]
            )));
        }
        out.push(Component {
            semigroup,
            inclusion,
        });
    }
    Ok(out)
}
