//! Construction of the primitive inverse semigroup of left I-quotients.
//!
//! For `S` satisfying A-D, `Σ = {(a, b) : a R* b}` is split by
//! `(a,b) ~ (c,d)` iff `xa = yc ≠ 0` and `xb = yd ≠ 0` for some `x, y ∈ S*`,
//! and `Q = Σ/~` multiplies by `[a,b][c,d] = [xa, yd]` whenever `xb = yc ≠ 0`,
//! and `0` otherwise. `S` embeds through `a ↦ [x, xa]` for any `x` with
//! `xa ≠ 0`, and every element of `Q` is `θ(a)⁻¹θ(b)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::conditions::profile;
use crate::error::{Error, Result};
use crate::inverse::{idempotent_le, inverse_profile};
use crate::relations::{green, lambda_rho_tau, starred, BinaryRelation, Partition};
use crate::semigroup::{is_homomorphism, Elem, FiniteSemigroup};

/// A pair `(a, b)` with `a R* b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaPair {
    pub a: Elem,
    pub b: Elem,
}

impl SigmaPair {
    pub const ZERO: SigmaPair = SigmaPair { a: 0, b: 0 };

    pub fn new(a: Elem, b: Elem) -> Self {
        SigmaPair { a, b }
    }
}

impl fmt::Display for SigmaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// All `(a, b)` with `a R* b`, in lexicographic order; `(0, 0)` comes first
/// and no pair mixes zero with a non-zero element.
pub fn build_sigma(s: &FiniteSemigroup, r_star: &Partition) -> Vec<SigmaPair> {
    s.elements()
        .flat_map(|a| {
            let mut class: Vec<Elem> = r_star.class(a).to_vec();
            class.sort_unstable();
            class.into_iter().map(move |b| SigmaPair::new(a, b))
        })
        .collect()
}

/// Lexicographically least pair of a non-empty class.
pub fn canonical_rep(class: &[SigmaPair]) -> SigmaPair {
    *class.iter().min().expect("classes are non-empty")
}

/// The classes of `~` on `Σ`. Class 0 is `{(0,0)}`; the rest are numbered
/// by least representative, and each class is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimPartition {
    classes: Vec<Vec<SigmaPair>>,
    class_of: HashMap<SigmaPair, usize>,
}

impl SimPartition {
    pub fn classes(&self) -> &[Vec<SigmaPair>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, p: SigmaPair) -> Option<usize> {
        self.class_of.get(&p).copied()
    }

    pub fn representative(&self, class: usize) -> SigmaPair {
        self.classes[class][0]
    }
}

/// `{(xa, xb) : x ∈ S*, xa ≠ 0, xb ≠ 0}` encoded as indices `xa * n + xb`.
fn orbit(s: &FiniteSemigroup, p: SigmaPair) -> FixedBitSet {
    let n = s.len();
    let mut set = FixedBitSet::with_capacity(n * n);
    for x in s.nonzero() {
        let (xa, xb) = (s.mul(x, p.a), s.mul(x, p.b));
        if xa != 0 && xb != 0 {
            set.insert(xa * n + xb);
        }
    }
    set
}

/// Partition `Σ` by `~`, checking that `~` really is an equivalence.
///
/// Two pairs are related exactly when their orbits under left multiplication
/// by `S*` share a point with both coordinates non-zero.
pub fn sim_partition(s: &FiniteSemigroup, sigma: &[SigmaPair]) -> Result<SimPartition> {
    let nonzero: Vec<SigmaPair> = sigma
        .iter()
        .copied()
        .filter(|p| p.a != 0 || p.b != 0)
        .collect();
    if let Some(p) = nonzero.iter().find(|p| p.a == 0 || p.b == 0) {
        return Err(Error::NotAnEquivalence(format!(
            "{p} mixes zero with a non-zero element"
        )));
    }
    let orbits: Vec<FixedBitSet> = nonzero.iter().map(|&p| orbit(s, p)).collect();
    let m = nonzero.len();
    let rows: Vec<FixedBitSet> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut row = FixedBitSet::with_capacity(m);
            for j in 0..m {
                if !orbits[i].is_disjoint(&orbits[j]) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    if let Some(i) = (0..m).find(|&i| !rows[i].contains(i)) {
        return Err(Error::NotAnEquivalence(format!(
            "{} is not related to itself",
            nonzero[i]
        )));
    }
    for i in 0..m {
        for j in rows[i].ones() {
            if !rows[j].is_subset(&rows[i]) {
                let k = rows[j].difference(&rows[i]).next().unwrap();
                return Err(Error::NotAnEquivalence(format!(
                    "{} ~ {} ~ {} but {} !~ {}",
                    nonzero[i], nonzero[j], nonzero[k], nonzero[i], nonzero[k]
                )));
            }
        }
    }
    let mut classes = vec![vec![SigmaPair::ZERO]];
    let mut class_of = HashMap::from([(SigmaPair::ZERO, 0)]);
    // `nonzero` is sorted, so the first pair seen in a class is its least element
    for i in 0..m {
        let leader = rows[i].ones().next().unwrap();
        let id = match class_of.get(&nonzero[leader]) {
            Some(&id) => id,
            None => {
                classes.push(Vec::new());
                classes.len() - 1
            }
        };
        classes[id].push(nonzero[i]);
        class_of.insert(nonzero[i], id);
    }
    Ok(SimPartition { classes, class_of })
}

/// First `(x, y) ∈ S* × S*` in lexicographic order with `xb = yc ≠ 0`.
fn first_witness(s: &FiniteSemigroup, b: Elem, c: Elem) -> Option<(Elem, Elem)> {
    s.nonzero().find_map(|x| {
        let xb = s.mul(x, b);
        if xb == 0 {
            return None;
        }
        s.nonzero().find(|&y| s.mul(y, c) == xb).map(|y| (x, y))
    })
}

/// Product of two classes through their canonical representatives and the
/// first witness in lexicographic order.
pub fn quotient_multiply(
    s: &FiniteSemigroup,
    lambda: &BinaryRelation,
    sim: &SimPartition,
    left: usize,
    right: usize,
) -> Result<usize> {
    if left == 0 || right == 0 {
        return Ok(0);
    }
    let SigmaPair { a, b } = sim.representative(left);
    let SigmaPair { a: c, b: d } = sim.representative(right);
    if !lambda.contains(b, c) {
        return Ok(0);
    }
    let (x, y) = first_witness(s, b, c)
        .ok_or_else(|| Error::Verification(format!("{b} λ {c} but no x, y with xb = yc ≠ 0")))?;
    let p = SigmaPair::new(s.mul(x, a), s.mul(y, d));
    sim.class_of(p)
        .ok_or_else(|| Error::Verification(format!("product pair {p} is not in Σ")))
}

/// Every class obtained for `left * right` over all representatives of both
/// classes and all witnesses; `None` marks a product pair outside `Σ`.
/// Well-definedness means this set has exactly one element.
pub fn products_all_witnesses(
    s: &FiniteSemigroup,
    sim: &SimPartition,
    left: usize,
    right: usize,
) -> BTreeSet<Option<usize>> {
    let mut out = BTreeSet::new();
    if left == 0 || right == 0 {
        out.insert(Some(0));
        return out;
    }
    for &SigmaPair { a, b } in &sim.classes()[left] {
        for &SigmaPair { a: c, b: d } in &sim.classes()[right] {
            let mut any = false;
            for x in s.nonzero() {
                let xb = s.mul(x, b);
                if xb == 0 {
                    continue;
                }
                for y in s.nonzero() {
                    if s.mul(y, c) == xb {
                        any = true;
                        out.insert(sim.class_of(SigmaPair::new(s.mul(x, a), s.mul(y, d))));
                    }
                }
            }
            if !any {
                out.insert(Some(0));
            }
        }
    }
    out
}

/// `Q = Σ/~` with its inverse map and the embedding `θ: S → Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSemigroup {
    q: FiniteSemigroup,
    sim: SimPartition,
    inv: Vec<Elem>,
    theta: Vec<Elem>,
}

impl QuotientSemigroup {
    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.q
    }

    pub fn into_semigroup(self) -> FiniteSemigroup {
        self.q
    }

    pub fn partition(&self) -> &SimPartition {
        &self.sim
    }

    /// The class of `Σ` that element `q` stands for.
    pub fn class(&self, q: Elem) -> &[SigmaPair] {
        &self.sim.classes()[q]
    }

    pub fn representative(&self, q: Elem) -> SigmaPair {
        self.sim.representative(q)
    }

    pub fn class_of(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.sim.class_of(SigmaPair::new(a, b))
    }

    pub fn inverse(&self) -> &[Elem] {
        &self.inv
    }

    pub fn theta(&self) -> &[Elem] {
        &self.theta
    }

    /// One line per element of `Q` (`Q <index> (a,b)`) followed by one line
    /// per element of `S` (`theta <s> <q>`).
    pub fn mapping_text(&self, s: &FiniteSemigroup) -> String {
        let mut out = String::new();
        for q in self.q.elements() {
            let p = self.representative(q);
            out.push_str(&format!("Q {q} ({},{})\n", s.name(p.a), s.name(p.b)));
        }
        for (a, &q) in self.theta.iter().enumerate() {
            out.push_str(&format!("theta {} {q}\n", s.name(a)));
        }
        out
    }
}

fn verification(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Build `Q` for `S` and re-verify on the finished table that it is an
/// associative primitive inverse semigroup whose non-zero idempotents are the
/// classes `[a, a]`, and that `θ` is an injective homomorphism.
pub fn build_quotient(s: &FiniteSemigroup) -> Result<QuotientSemigroup> {
    let report = profile(s);
    if !report.summary.left_quotient {
        return Err(Error::ConditionsNotSatisfied(Box::new(report)));
    }
    let r_star = starred(s).r_star;
    let lambda = lambda_rho_tau(s).lambda;
    let sigma = build_sigma(s, &r_star);
    let sim = sim_partition(s, &sigma)?;
    let size = sim.len();

    let table: Vec<Elem> = (0..size * size)
        .into_par_iter()
        .map(|idx| quotient_multiply(s, &lambda, &sim, idx / size, idx % size))
        .collect::<Result<_>>()?;
    let q = FiniteSemigroup::from_table(size, table).map_err(|e| match e {
        Error::Validation(report) => verification(format!("quotient table invalid:\n{report}")),
        other => other,
    })?;

    let inv: Vec<Elem> = (0..size)
        .map(|k| {
            let p = sim.representative(k);
            sim.class_of(SigmaPair::new(p.b, p.a))
                .ok_or_else(|| verification(format!("reverse of {p} is not in Σ")))
        })
        .collect::<Result<_>>()?;

    let theta: Vec<Elem> = s
        .elements()
        .map(|a| {
            if a == 0 {
                return Ok(0);
            }
            let x = s
                .nonzero()
                .find(|&x| s.mul(x, a) != 0)
                .ok_or_else(|| verification(format!("Sa = 0 for a = {a}")))?;
            sim.class_of(SigmaPair::new(x, s.mul(x, a)))
                .ok_or_else(|| verification(format!("(x, xa) not in Σ for a = {a}, x = {x}")))
        })
        .collect::<Result<_>>()?;

    let labels = (0..size)
        .map(|k| {
            if k == 0 {
                "0".to_string()
            } else {
                let p = sim.representative(k);
                format!("[{},{}]", s.name(p.a), s.name(p.b))
            }
        })
        .collect();
    let q = q.with_labels(labels)?;

    let quotient = QuotientSemigroup { q, sim, inv, theta };
    verify_quotient(s, &quotient)?;
    Ok(quotient)
}

fn verify_quotient(s: &FiniteSemigroup, quotient: &QuotientSemigroup) -> Result<()> {
    let q = &quotient.q;
    let inv = &quotient.inv;
    if quotient.sim.classes()[0] != [SigmaPair::ZERO] {
        return Err(verification("[0,0] is not a singleton"));
    }
    for k in q.elements() {
        if inv[inv[k]] != k {
            return Err(verification(format!("inverse of inverse of {k} differs")));
        }
        if q.mul3(k, inv[k], k) != k || q.mul3(inv[k], k, inv[k]) != inv[k] {
            return Err(verification(format!(
                "{k} and [b,a] are not mutually inverse"
            )));
        }
    }
    let diagonal: BTreeSet<Elem> = s
        .nonzero()
        .filter_map(|a| quotient.class_of(a, a))
        .collect();
    let idempotents: BTreeSet<Elem> = q.idempotents().into_iter().filter(|&e| e != 0).collect();
    if diagonal != idempotents {
        return Err(verification(format!(
            "non-zero idempotents {idempotents:?} differ from the classes [a,a] {diagonal:?}"
        )));
    }
    let profile = inverse_profile(q);
    if !profile.inverse {
        return Err(verification("Q is not inverse"));
    }
    for &e in &idempotents {
        for &f in &idempotents {
            if e != f && idempotent_le(q, f, e) {
                return Err(verification(format!(
                    "idempotent {e} is not primitive ({f} below it)"
                )));
            }
        }
    }
    let theta = &quotient.theta;
    if !is_homomorphism(s, q, theta) {
        return Err(verification("θ is not a homomorphism"));
    }
    let image: BTreeSet<Elem> = theta.iter().copied().collect();
    if image.len() != s.len() {
        return Err(verification("θ is not injective"));
    }
    Ok(())
}

/// Which side the embedded elements multiply from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `q = a⁻¹ b`.
    Left,
    /// `q = a b⁻¹`.
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IOrderReport {
    /// For each element of `Q`, the chosen `(a, b)` over `S`.
    pub decomposition: Vec<(Elem, Elem)>,
    /// Every chosen pair has `emb(a) R emb(b)` (left) or `emb(a) L emb(b)` (right).
    pub straight: bool,
}

/// Check that every element of `Q` is `emb(a)⁻¹ emb(b)` for some `a, b ∈ S`,
/// preferring pairs with `emb(a) R emb(b)` in `Q`.
pub fn verify_left_i_order(
    s: &FiniteSemigroup,
    q: &FiniteSemigroup,
    inv: &[Elem],
    emb: &[Elem],
) -> Result<IOrderReport> {
    verify_i_order(s, q, inv, emb, Side::Left)
}

pub fn verify_right_i_order(
    s: &FiniteSemigroup,
    q: &FiniteSemigroup,
    inv: &[Elem],
    emb: &[Elem],
) -> Result<IOrderReport> {
    verify_i_order(s, q, inv, emb, Side::Right)
}

pub fn verify_i_order(
    s: &FiniteSemigroup,
    q: &FiniteSemigroup,
    inv: &[Elem],
    emb: &[Elem],
    side: Side,
) -> Result<IOrderReport> {
    if inv.len() != q.len() || !is_homomorphism(s, q, emb) {
        return Err(Error::PreconditionUnverified(
            "embedding is not a homomorphism into Q".into(),
        ));
    }
    let distinct: BTreeSet<Elem> = emb.iter().copied().collect();
    if distinct.len() != emb.len() {
        return Err(Error::PreconditionUnverified(
            "embedding is not injective".into(),
        ));
    }
    let g = green(q);
    let related = |x: Elem, y: Elem| match side {
        Side::Left => g.r.same(x, y),
        Side::Right => g.l.same(x, y),
    };
    let product = |x: Elem, y: Elem| match side {
        Side::Left => q.mul(inv[x], y),
        Side::Right => q.mul(x, inv[y]),
    };
    let mut first: Vec<Option<(Elem, Elem)>> = vec![None; q.len()];
    let mut straight_pair: Vec<Option<(Elem, Elem)>> = vec![None; q.len()];
    for a in s.elements() {
        for b in s.elements() {
            let (x, y) = (emb[a], emb[b]);
            let p = product(x, y);
            first[p].get_or_insert((a, b));
            if related(x, y) {
                straight_pair[p].get_or_insert((a, b));
            }
        }
    }
    let mut decomposition = Vec::with_capacity(q.len());
    let mut straight = true;
    for k in q.elements() {
        match (straight_pair[k], first[k]) {
            (Some(p), _) => decomposition.push(p),
            (None, Some(p)) => {
                straight = false;
                decomposition.push(p);
            }
            (None, None) => return Err(Error::NotAnIOrder(k)),
        }
    }
    Ok(IOrderReport {
        decomposition,
        straight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{b2, c2z, null2, s1};
    use crate::semigroup::subsemigroup;

    #[test]
    fn sigma_of_s1() {
        let s = s1();
        let sigma = build_sigma(&s, &starred(&s).r_star);
        let expect: Vec<SigmaPair> = [(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)]
            .into_iter()
            .map(|(a, b)| SigmaPair::new(a, b))
            .collect();
        assert_eq!(sigma, expect);
        let t = FiniteSemigroup::trivial();
        assert_eq!(build_sigma(&t, &starred(&t).r_star), vec![SigmaPair::ZERO]);
    }

    #[test]
    fn sim_classes_of_s1_are_singletons() {
        let s = s1();
        let sim = sim_partition(&s, &build_sigma(&s, &starred(&s).r_star)).unwrap();
        assert_eq!(sim.len(), 5);
        assert!(sim.classes().iter().all(|c| c.len() == 1));
        assert_eq!(sim.class_of(SigmaPair::new(1, 2)), Some(2));
    }

    #[test]
    fn sim_classes_of_c2z() {
        let s = c2z();
        let sigma = build_sigma(&s, &starred(&s).r_star);
        assert_eq!(sigma.len(), 5);
        let sim = sim_partition(&s, &sigma).unwrap();
        assert_eq!(
            sim.classes(),
            &[
                vec![SigmaPair::ZERO],
                vec![SigmaPair::new(1, 1), SigmaPair::new(2, 2)],
                vec![SigmaPair::new(1, 2), SigmaPair::new(2, 1)],
            ]
        );
        assert_eq!(canonical_rep(&sim.classes()[2]), SigmaPair::new(1, 2));
    }

    #[test]
    fn sim_fails_without_condition_d() {
        let s = null2();
        let sigma = build_sigma(&s, &starred(&s).r_star);
        assert!(matches!(
            sim_partition(&s, &sigma),
            Err(Error::NotAnEquivalence(_))
        ));
    }

    #[test]
    fn s1_products() {
        let s = s1();
        let quotient = build_quotient(&s).unwrap();
        let q = quotient.semigroup();
        let c = |a, b| quotient.class_of(a, b).unwrap();
        // [2,1][1,2] = [2,2]
        assert_eq!(q.mul(c(2, 1), c(1, 2)), c(2, 2));
        // [1,2][1,2] = 0
        assert_eq!(q.mul(c(1, 2), c(1, 2)), 0);
        for k in q.elements() {
            assert_eq!(q.mul(0, k), 0);
            assert_eq!(q.mul(k, 0), 0);
        }
    }

    #[test]
    fn quotient_sizes() {
        assert_eq!(build_quotient(&s1()).unwrap().semigroup().len(), 5);
        assert_eq!(build_quotient(&c2z()).unwrap().semigroup().len(), 3);
        assert_eq!(build_quotient(&b2()).unwrap().semigroup().len(), 5);
        let t = build_quotient(&FiniteSemigroup::trivial()).unwrap();
        assert_eq!(t.semigroup().len(), 1);
        assert_eq!(t.theta(), &[0]);
    }

    #[test]
    fn quotient_requires_conditions() {
        match build_quotient(&null2()) {
            Err(Error::ConditionsNotSatisfied(report)) => {
                assert!(!report.summary.left_quotient)
            }
            other => panic!("expected ConditionsNotSatisfied, got {other:?}"),
        }
    }

    #[test]
    fn s1_in_b2_is_a_straight_left_i_order() {
        let b = b2();
        let inv = inverse_profile(&b).inv_map.unwrap();
        let report = verify_left_i_order(&s1(), &b, &inv, &[0, 1, 2]).unwrap();
        assert!(report.straight);
        // (2,e,1) = (1,e,2)^-1 (1,e,1)
        assert_eq!(report.decomposition[3], (2, 1));
        assert_eq!(report.decomposition[0], (0, 0));
    }

    #[test]
    fn single_corner_is_not_an_i_order() {
        let b = b2();
        let inv = inverse_profile(&b).inv_map.unwrap();
        let (sub, inc) = subsemigroup(&b, &[4]).unwrap();
        assert!(matches!(
            verify_left_i_order(&sub, &b, &inv, &inc),
            Err(Error::NotAnIOrder(1))
        ));
    }

    #[test]
    fn well_defined_on_c2z() {
        let s = c2z();
        let quotient = build_quotient(&s).unwrap();
        let size = quotient.semigroup().len();
        for i in 0..size {
            for j in 0..size {
                let all = products_all_witnesses(&s, quotient.partition(), i, j);
                assert_eq!(all, BTreeSet::from([Some(quotient.semigroup().mul(i, j))]));
            }
        }
    }
}
