//! Green's relations, their starred analogues, and the relations λ, ρ, τ.

use std::collections::HashMap;
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use crate::semigroup::{Elem, FiniteSemigroup};

/// A square boolean matrix over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    n: usize,
    bits: FixedBitSet,
}

impl std::fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl BinaryRelation {
    pub fn empty(n: usize) -> Self {
        BinaryRelation {
            n,
            bits: FixedBitSet::with_capacity(n * n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |a, b| a == b)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> bool) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn from_partition(p: &Partition) -> Self {
        Self::from_fn(p.len(), |a, b| p.same(a, b))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn contains(&self, a: Elem, b: Elem) -> bool {
        self.bits.contains(a * self.n + b)
    }

    pub fn insert(&mut self, a: Elem, b: Elem) {
        self.bits.insert(a * self.n + b);
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.bits.ones().map(move |i| (i / self.n, i % self.n))
    }

    pub fn is_subset(&self, other: &BinaryRelation) -> bool {
        self.n == other.n && self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &BinaryRelation) -> BinaryRelation {
        assert_eq!(self.n, other.n);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        BinaryRelation { n: self.n, bits }
    }

    /// Least pair in lexicographic order that lies in exactly one of the two.
    pub fn first_difference(&self, other: &BinaryRelation) -> Option<(Elem, Elem)> {
        assert_eq!(self.n, other.n);
        let mut diff = self.bits.clone();
        diff.symmetric_difference_with(&other.bits);
        diff.ones().next().map(|i| (i / self.n, i % self.n))
    }

    /// Elements related to `a` on the right, i.e. `{b : a r b}`.
    pub fn successors(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n).filter(move |&b| self.contains(a, b))
    }

    /// The partition this relation induces, provided it is an equivalence.
    pub fn to_partition(&self) -> Option<Partition> {
        if !relation_properties(self).is_equivalence {
            return None;
        }
        Some(Partition::from_keys(self.n, |a| {
            (0..self.n).find(|&b| self.contains(a, b)).unwrap()
        }))
    }
}

/// Property flags for a [`BinaryRelation`], each with the least witness of failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationProperties {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub is_equivalence: bool,
    pub not_reflexive_at: Option<Elem>,
    pub not_symmetric_at: Option<(Elem, Elem)>,
    pub not_transitive_at: Option<(Elem, Elem, Elem)>,
}

pub fn relation_properties(r: &BinaryRelation) -> RelationProperties {
    let n = r.len();
    let not_reflexive_at = (0..n).find(|&a| !r.contains(a, a));
    let not_symmetric_at = r.pairs().find(|&(a, b)| !r.contains(b, a));
    let not_transitive_at = transitivity_witness(r);
    let reflexive = not_reflexive_at.is_none();
    let symmetric = not_symmetric_at.is_none();
    let transitive = not_transitive_at.is_none();
    RelationProperties {
        reflexive,
        symmetric,
        transitive,
        is_equivalence: reflexive && symmetric && transitive,
        not_reflexive_at,
        not_symmetric_at,
        not_transitive_at,
    }
}

/// Lexicographically least `(a, b, c)` with `a r b`, `b r c` but not `a r c`.
pub fn transitivity_witness(r: &BinaryRelation) -> Option<(Elem, Elem, Elem)> {
    let n = r.len();
    for a in 0..n {
        for b in r.successors(a) {
            for c in r.successors(b) {
                if !r.contains(a, c) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// An equivalence relation materialized as classes. Classes are numbered in
/// order of their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<Elem>>,
}

impl Partition {
    /// Group elements by equal key.
    pub fn from_keys<K: Hash + Eq>(n: usize, mut key: impl FnMut(Elem) -> K) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(n);
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        for a in 0..n {
            let next = ids.len();
            let id = *ids.entry(key(a)).or_insert(next);
            if id == classes.len() {
                classes.push(Vec::new());
            }
            classes[id].push(a);
            class_of.push(id);
        }
        Partition { class_of, classes }
    }

    fn from_union_find(n: usize, uf: &UnionFind<usize>) -> Self {
        Self::from_keys(n, |a| uf.find(a))
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_keys(n, |a| a)
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    #[inline]
    pub fn class_of(&self, a: Elem) -> usize {
        self.class_of[a]
    }

    #[inline]
    pub fn same(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn class(&self, a: Elem) -> &[Elem] {
        &self.classes[self.class_of[a]]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Meet of two partitions (intersection of the relations).
    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.len(), other.len());
        Self::from_keys(self.len(), |a| (self.class_of[a], other.class_of[a]))
    }

    /// Join of two partitions (transitive closure of the union).
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for p in [self, other] {
            for class in p.classes() {
                for w in class.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        Self::from_union_find(n, &uf)
    }

    /// Whether the partition is compatible with multiplication on both sides.
    /// Returns the least `(a, b, c)` with `a ~ b` but `ca !~ cb` or `ac !~ bc`.
    pub fn congruence_witness(&self, s: &FiniteSemigroup) -> Option<(Elem, Elem, Elem)> {
        for a in s.elements() {
            for &b in self.class(a) {
                for c in s.elements() {
                    if !self.same(s.mul(c, a), s.mul(c, b)) || !self.same(s.mul(a, c), s.mul(b, c))
                    {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_congruence(&self, s: &FiniteSemigroup) -> bool {
        self.congruence_witness(s).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenRelations {
    pub r: Partition,
    pub l: Partition,
    pub h: Partition,
    pub d: Partition,
}

/// `aS^1` as a bitset.
fn right_ideal(s: &FiniteSemigroup, a: Elem) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(s.len());
    set.insert(a);
    for x in s.elements() {
        set.insert(s.mul(a, x));
    }
    set
}

/// `S^1 a` as a bitset.
fn left_ideal(s: &FiniteSemigroup, a: Elem) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(s.len());
    set.insert(a);
    for x in s.elements() {
        set.insert(s.mul(x, a));
    }
    set
}

pub fn green(s: &FiniteSemigroup) -> GreenRelations {
    let n = s.len();
    let r = Partition::from_keys(n, |a| right_ideal(s, a));
    let l = Partition::from_keys(n, |a| left_ideal(s, a));
    let h = r.meet(&l);
    let d = r.join(&l);
    GreenRelations { r, l, h, d }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarredRelations {
    pub r_star: Partition,
    pub l_star: Partition,
    pub h_star: Partition,
}

/// Canonical form of the kernel of `x -> f(x)` over `S^1`, where index `n`
/// stands for the adjoined identity: each `x` is sent to the least `x'` with
/// the same image.
fn kernel_signature(n: usize, f: impl Fn(usize) -> Elem) -> Vec<usize> {
    let images: Vec<Elem> = (0..=n).map(f).collect();
    let mut first = vec![usize::MAX; n];
    images
        .iter()
        .enumerate()
        .map(|(x, &v)| {
            if first[v] == usize::MAX {
                first[v] = x;
            }
            first[v]
        })
        .collect()
}

/// `R*`, `L*`, `H*`. An identity is always adjoined, even when `S` is a monoid.
pub fn starred(s: &FiniteSemigroup) -> StarredRelations {
    let n = s.len();
    let r_star = Partition::from_keys(n, |a| {
        kernel_signature(n, |x| if x == n { a } else { s.mul(x, a) })
    });
    let l_star = Partition::from_keys(n, |a| {
        kernel_signature(n, |x| if x == n { a } else { s.mul(a, x) })
    });
    let h_star = r_star.meet(&l_star);
    StarredRelations {
        r_star,
        l_star,
        h_star,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaRhoTau {
    pub lambda: BinaryRelation,
    pub rho: BinaryRelation,
    pub tau: BinaryRelation,
}

/// Relate `a, b` when `a = b = 0` or the non-zero parts of their ideals meet.
fn meets_nonzero(n: usize, ideal: impl Fn(Elem) -> FixedBitSet) -> BinaryRelation {
    let ideals: Vec<FixedBitSet> = (0..n)
        .map(|a| {
            let mut set = ideal(a);
            set.set(0, false);
            set
        })
        .collect();
    BinaryRelation::from_fn(n, |a, b| {
        (a == 0 && b == 0) || !ideals[a].is_disjoint(&ideals[b])
    })
}

/// `a λ b` iff `a = b = 0` or `Sa ∩ Sb ≠ 0`; `ρ` dually; `τ = λ ∩ ρ`.
///
/// Ideals here are over `S`, not `S^1`.
pub fn lambda_rho_tau(s: &FiniteSemigroup) -> LambdaRhoTau {
    let n = s.len();
    let lambda = meets_nonzero(n, |a| s.elements().map(|x| s.mul(x, a)).collect());
    let rho = meets_nonzero(n, |a| s.elements().map(|x| s.mul(a, x)).collect());
    let tau = lambda.intersection(&rho);
    LambdaRhoTau { lambda, rho, tau }
}
