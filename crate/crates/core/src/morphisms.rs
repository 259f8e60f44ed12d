//! Homomorphisms, pinned isomorphism search, and the comparisons between
//! quotients built over the same semigroup.

use std::collections::BTreeSet;
use std::fmt;

use crate::conditions::profile;
use crate::error::{Error, ParseError, Result};
use crate::inverse::inverse_profile;
use crate::quotient::{build_quotient, verify_left_i_order, verify_right_i_order};
use crate::relations::{green, lambda_rho_tau, starred, BinaryRelation};
use crate::semigroup::{is_homomorphism, subsemigroup, Elem, FiniteSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MorphismKind {
    Raw,
    Hom,
    Mono,
    Iso,
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::Raw => "raw",
            MorphismKind::Hom => "hom",
            MorphismKind::Mono => "mono",
            MorphismKind::Iso => "iso",
        })
    }
}

/// A total map between element indices together with its verified kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub map: Vec<Elem>,
    pub kind: MorphismKind,
}

impl Morphism {
    /// One `a b` line per source element.
    pub fn to_lines(&self) -> String {
        self.map
            .iter()
            .enumerate()
            .map(|(a, b)| format!("{a} {b}\n"))
            .collect()
    }
}

/// Classify `map: s → t` by exhaustive check. Maps of the wrong length or
/// with out-of-range images are `Raw`.
pub fn classify(map: &[Elem], s: &FiniteSemigroup, t: &FiniteSemigroup) -> Morphism {
    let map = map.to_vec();
    let total = map.len() == s.len() && map.iter().all(|&b| b < t.len());
    let kind = if !total || !is_homomorphism(s, t, &map) {
        MorphismKind::Raw
    } else {
        let image: BTreeSet<Elem> = map.iter().copied().collect();
        if image.len() != map.len() {
            MorphismKind::Hom
        } else if image.len() == t.len() {
            MorphismKind::Iso
        } else {
            MorphismKind::Mono
        }
    };
    Morphism { map, kind }
}

/// Isomorphism invariants of an element: idempotency, sizes of its R-, L-,
/// H- and D-classes, and the number of idempotents in its D-class.
fn signatures(s: &FiniteSemigroup) -> Vec<(bool, usize, usize, usize, usize, usize)> {
    let g = green(s);
    s.elements()
        .map(|a| {
            let d = g.d.class(a);
            (
                s.is_idempotent(a),
                g.r.class(a).len(),
                g.l.class(a).len(),
                g.h.class(a).len(),
                d.len(),
                d.iter().filter(|&&x| s.is_idempotent(x)).count(),
            )
        })
        .collect()
}

struct IsoSearch<'a> {
    s: &'a FiniteSemigroup,
    t: &'a FiniteSemigroup,
    candidates: Vec<Vec<Elem>>,
}

impl IsoSearch<'_> {
    /// Extend `map` with `a ↦ b` and everything forced by products of mapped
    /// elements. Returns `false` on a clash.
    fn assign(&self, map: &mut [Option<Elem>], used: &mut [bool], a: Elem, b: Elem) -> bool {
        let mut pending = vec![(a, b)];
        while let Some((x, y)) = pending.pop() {
            match map[x] {
                Some(z) if z == y => continue,
                Some(_) => return false,
                None => {}
            }
            if used[y] || !self.candidates[x].contains(&y) {
                return false;
            }
            map[x] = Some(y);
            used[y] = true;
            for u in self.s.elements() {
                let Some(v) = map[u] else { continue };
                for (p, img) in [
                    (self.s.mul(x, u), self.t.mul(y, v)),
                    (self.s.mul(u, x), self.t.mul(v, y)),
                ] {
                    match map[p] {
                        Some(q) if q != img => return false,
                        Some(_) => {}
                        None => pending.push((p, img)),
                    }
                }
            }
        }
        true
    }

    fn search(&self, map: &mut Vec<Option<Elem>>, used: &mut Vec<bool>) -> bool {
        let Some(a) = map.iter().position(Option::is_none) else {
            return true;
        };
        for &b in &self.candidates[a] {
            if used[b] {
                continue;
            }
            let (saved_map, saved_used) = (map.clone(), used.clone());
            if self.assign(map, used, a, b) && self.search(map, used) {
                return true;
            }
            *map = saved_map;
            *used = saved_used;
        }
        false
    }
}

/// First isomorphism `s → t` (in lexicographic branch order) extending the
/// partial map `pinned`, or `None` when there is none. The search is
/// exhaustive; Green-class profiles only prune branches that cannot succeed.
pub fn find_isomorphism(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    pinned: &[Option<Elem>],
) -> Option<Morphism> {
    let n = s.len();
    if t.len() != n || pinned.len() > n {
        return None;
    }
    let (sig_s, sig_t) = (signatures(s), signatures(t));
    let mut sorted_s = sig_s.clone();
    let mut sorted_t = sig_t.clone();
    sorted_s.sort_unstable();
    sorted_t.sort_unstable();
    if sorted_s != sorted_t {
        return None;
    }
    let candidates = (0..n)
        .map(|a| {
            if a == 0 {
                vec![0]
            } else {
                (1..n).filter(|&b| sig_t[b] == sig_s[a]).collect()
            }
        })
        .collect();
    let search = IsoSearch { s, t, candidates };
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    if !search.assign(&mut map, &mut used, 0, 0) {
        return None;
    }
    for (a, pin) in pinned.iter().enumerate() {
        if let Some(b) = *pin {
            if b >= n || !search.assign(&mut map, &mut used, a, b) {
                return None;
            }
        }
    }
    if !search.search(&mut map, &mut used) {
        return None;
    }
    let map: Vec<Elem> = map.into_iter().map(|v| v.unwrap()).collect();
    let m = classify(&map, s, t);
    debug_assert_eq!(m.kind, MorphismKind::Iso);
    Some(m)
}

/// Parse a pin file: one `a b` pair of indices per line; blank lines and
/// `#` comments are ignored.
pub fn parse_pin_map(text: &str) -> Result<Vec<(Elem, Elem)>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = line.split('#').next().unwrap_or("");
        let mut fields = Vec::new();
        let mut col = 0;
        for tok in content.split([' ', '\t']) {
            if !tok.is_empty() {
                fields.push((col + 1, tok));
            }
            col += tok.len() + 1;
        }
        match fields.as_slice() {
            [] => {}
            [(ca, a), (cb, b)] => {
                let a = a
                    .parse()
                    .map_err(|_| ParseError::new(lineno, *ca, format!("bad index '{a}'")))?;
                let b = b
                    .parse()
                    .map_err(|_| ParseError::new(lineno, *cb, format!("bad index '{b}'")))?;
                out.push((a, b));
            }
            [(c, _)] => {
                return Err(ParseError::new(lineno, *c, "expected two indices"));
            }
            [_, _, (c, _), ..] => {
                return Err(ParseError::new(lineno, *c, "unexpected third field"));
            }
        }
    }
    Ok(out)
}

/// Turn pin pairs into a partial map on `0..n` targeting `0..m`.
pub fn pins_to_partial(pairs: &[(Elem, Elem)], n: usize, m: usize) -> Result<Vec<Option<Elem>>> {
    let mut out = vec![None; n];
    for &(a, b) in pairs {
        if a >= n || b >= m {
            return Err(Error::BadIndex(format!("pin {a} {b} out of range")));
        }
        match out[a] {
            Some(prev) if prev != b => {
                return Err(Error::BadIndex(format!(
                    "{a} pinned to both {prev} and {b}"
                )))
            }
            _ => out[a] = Some(b),
        }
    }
    Ok(out)
}

/// `(a, b, c)` over `S` with `ab⁻¹Q ⊆ c⁻¹Q`, images taken along `emb`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryRelation {
    pub n: usize,
    pub triples: BTreeSet<(Elem, Elem, Elem)>,
}

impl TernaryRelation {
    pub fn contains(&self, a: Elem, b: Elem, c: Elem) -> bool {
        self.triples.contains(&(a, b, c))
    }
}

fn right_ideal(q: &FiniteSemigroup, x: Elem) -> BTreeSet<Elem> {
    q.elements().map(|y| q.mul(x, y)).collect()
}

pub fn ternary_t(
    s: &FiniteSemigroup,
    q: &FiniteSemigroup,
    inv: &[Elem],
    emb: &[Elem],
) -> TernaryRelation {
    let targets: Vec<BTreeSet<Elem>> = s.elements().map(|c| right_ideal(q, inv[emb[c]])).collect();
    let mut triples = BTreeSet::new();
    for a in s.elements() {
        for b in s.elements() {
            let source = right_ideal(q, q.mul(emb[a], inv[emb[b]]));
            for c in s.elements() {
                if source.is_subset(&targets[c]) {
                    triples.insert((a, b, c));
                }
            }
        }
    }
    TernaryRelation {
        n: s.len(),
        triples,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCriterion {
    /// The correspondence `S → P` is an injective homomorphism.
    pub phi_mono: bool,
    /// `R` restricted to `S` is the same in `Q` and in `P`.
    pub cond_i: bool,
    /// `T` restricted to `S` is the same in `Q` and in `P`.
    pub cond_ii: bool,
    /// An isomorphism `Q → P` extending `S`'s correspondence, if one exists.
    pub iso: Option<Morphism>,
}

impl IsoCriterion {
    /// The criterion only speaks about correspondences that are themselves
    /// isomorphisms onto their image.
    pub fn agrees(&self) -> bool {
        (self.phi_mono && self.cond_i && self.cond_ii) == self.iso.is_some()
    }
}

fn require_straight(
    s_len: usize,
    q: &FiniteSemigroup,
    inv: &[Elem],
    emb: &[Elem],
    what: &str,
) -> Result<()> {
    let image: Vec<Elem> = emb
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if emb.len() != s_len || image.len() != s_len {
        return Err(Error::PreconditionUnverified(format!(
            "{what}: map is not injective"
        )));
    }
    let (sub, inc) = subsemigroup(q, &image)?;
    if inc != image {
        return Err(Error::PreconditionUnverified(format!(
            "{what}: image is not closed"
        )));
    }
    match verify_left_i_order(&sub, q, inv, &inc) {
        Ok(r) if r.straight => Ok(()),
        _ => Err(Error::PreconditionUnverified(format!(
            "{what}: image is not a straight left I-order"
        ))),
    }
}

/// Decide whether `Q` and `P` are isomorphic over `S` in two ways: through
/// the preservation of `R` and `T` on `S`, and by pinned search.
///
/// `q_emb` places `S` in `Q`; `p_emb` places `S` in `P` (the correspondence
/// under test). Both images must be straight left I-orders.
pub fn check_iso_criterion(
    s: &FiniteSemigroup,
    q: &FiniteSemigroup,
    q_emb: &[Elem],
    p: &FiniteSemigroup,
    p_emb: &[Elem],
) -> Result<IsoCriterion> {
    let inv_q = inverse_profile(q)
        .inv_map
        .ok_or_else(|| Error::PreconditionUnverified("Q is not inverse".into()))?;
    let inv_p = inverse_profile(p)
        .inv_map
        .ok_or_else(|| Error::PreconditionUnverified("P is not inverse".into()))?;
    require_straight(s.len(), q, &inv_q, q_emb, "Q")?;
    require_straight(s.len(), p, &inv_p, p_emb, "P")?;

    let phi_mono = classify(p_emb, s, p).kind >= MorphismKind::Mono;
    let (gq, gp) = (green(q), green(p));
    let cond_i = s.elements().all(|a| {
        s.elements()
            .all(|b| gq.r.same(q_emb[a], q_emb[b]) == gp.r.same(p_emb[a], p_emb[b]))
    });
    let cond_ii = ternary_t(s, q, &inv_q, q_emb).triples == ternary_t(s, p, &inv_p, p_emb).triples;
    let mut pins = vec![None; q.len()];
    for a in s.elements() {
        pins[q_emb[a]] = Some(p_emb[a]);
    }
    let iso = find_isomorphism(q, p, &pins);
    Ok(IsoCriterion {
        phi_mono,
        cond_i,
        cond_ii,
        iso,
    })
}

/// Build both quotients and look for an isomorphism between them extending
/// `f: S → T` on the embedded copies.
pub fn lift_isomorphism(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    f: &[Elem],
) -> Result<Option<Morphism>> {
    let qs = build_quotient(s)?;
    let qt = build_quotient(t)?;
    let mut pins = vec![None; qs.semigroup().len()];
    for a in s.elements() {
        pins[qs.theta()[a]] = Some(qt.theta()[f[a]]);
    }
    Ok(find_isomorphism(qs.semigroup(), qt.semigroup(), &pins))
}

/// Two-sided checks on `Q = build_quotient(S)` for `S` satisfying A-D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedReport {
    /// `S` also satisfies the dual conditions.
    pub duals: bool,
    /// Every element of `Q` is `θ(a)θ(b)⁻¹`.
    pub right_i_order: bool,
    /// `R* = R ∩ (S×S) = ρ`.
    pub r_identities: bool,
    /// `L* = L ∩ (S×S) = λ`.
    pub l_identities: bool,
    pub h_star_congruence: bool,
    /// `R* ⊆ ρ` and `aS ≠ 0` for all non-zero `a`.
    pub reduce_condition: bool,
}

impl TwoSidedReport {
    /// When the duals hold, all two-sided facts must; in any case the
    /// reduce condition must match the right I-order verdict.
    pub fn consistent(&self) -> bool {
        let two_sided = !self.duals
            || (self.right_i_order
                && self.r_identities
                && self.l_identities
                && self.h_star_congruence);
        two_sided && self.reduce_condition == self.right_i_order
    }

    pub fn to_lines(&self) -> String {
        let flag = |b: bool| if b { "yes" } else { "no" };
        format!(
            "duals {}\nright_i_order {}\nr_identities {}\nl_identities {}\nh_star_congruence {}\nreduce_condition {}\nconsistent {}\n",
            flag(self.duals),
            flag(self.right_i_order),
            flag(self.r_identities),
            flag(self.l_identities),
            flag(self.h_star_congruence),
            flag(self.reduce_condition),
            flag(self.consistent()),
        )
    }
}

pub fn two_sided_suite(s: &FiniteSemigroup) -> Result<TwoSidedReport> {
    let report = profile(s);
    let quotient = build_quotient(s)?;
    let q = quotient.semigroup();
    let (inv, theta) = (quotient.inverse(), quotient.theta());
    let n = s.len();
    let gq = green(q);
    let st = starred(s);
    let lrt = lambda_rho_tau(s);
    let r_star = BinaryRelation::from_partition(&st.r_star);
    let l_star = BinaryRelation::from_partition(&st.l_star);
    let r_cap = BinaryRelation::from_fn(n, |a, b| gq.r.same(theta[a], theta[b]));
    let l_cap = BinaryRelation::from_fn(n, |a, b| gq.l.same(theta[a], theta[b]));

    let right_i_order = verify_right_i_order(s, q, inv, theta).is_ok();
    let reduce_condition =
        report.r_star_in_rho.holds && s.nonzero().all(|a| s.nonzero().any(|x| s.mul(a, x) != 0));
    Ok(TwoSidedReport {
        duals: report.summary.two_sided_by_duals,
        right_i_order,
        r_identities: r_star == r_cap && r_cap == lrt.rho,
        l_identities: l_star == l_cap && l_cap == lrt.lambda,
        h_star_congruence: st.h_star.is_congruence(s),
        reduce_condition,
    })
}
