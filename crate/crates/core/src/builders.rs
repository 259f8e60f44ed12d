//! Standard objects: groups, Brandt semigroups `B(G, k)`, groups with zero,
//! 0-direct unions, the row sub-semigroups `S_i` of a Brandt semigroup, and
//! the exhaustive enumerator of small semigroups with zero.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::semigroup::{subsemigroup, Elem, FiniteSemigroup};

/// Largest order the enumerator accepts unless a larger cap is passed.
pub const DEFAULT_ENUMERATION_CAP: usize = 4;

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    m: usize,
    table: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

impl GroupTable {
    pub fn new(m: usize, table: Vec<usize>, identity: usize, labels: Vec<String>) -> Result<Self> {
        if m == 0 || table.len() != m * m || identity >= m || labels.len() != m {
            return Err(Error::MalformedTable(
                "group table has the wrong shape".into(),
            ));
        }
        if table.iter().any(|&v| v >= m) {
            return Err(Error::MalformedTable(
                "group table entry out of range".into(),
            ));
        }
        let g = GroupTable {
            m,
            table,
            identity,
            labels,
        };
        let mul = |a: usize, b: usize| g.mul(a, b);
        for a in 0..m {
            if mul(identity, a) != a || mul(a, identity) != a {
                return Err(Error::MalformedTable(format!("identity law fails at {a}")));
            }
            if !(0..m).any(|b| mul(a, b) == identity && mul(b, a) == identity) {
                return Err(Error::MalformedTable(format!("{a} has no inverse")));
            }
            for b in 0..m {
                for c in 0..m {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::MalformedTable(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_m` with elements `e, g, g^2, ...`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let table = (0..m)
            .flat_map(|a| (0..m).map(move |b| (a + b) % m))
            .collect();
        let labels = (0..m)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        GroupTable {
            m,
            table,
            identity: 0,
            labels,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.m + b]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }
}

/// Index of `(i, g, j)` (0-based `i`, `j`) in `brandt(G, k)`.
#[inline]
pub fn brandt_index(m: usize, k: usize, i: usize, g: usize, j: usize) -> Elem {
    1 + (i * k + j) * m + g
}

/// `B(G, {1..k})`: zero first, then `(i, g, j)` sorted by `(i, j, g)`.
pub fn brandt(g: &GroupTable, k: usize) -> Result<FiniteSemigroup> {
    if k == 0 {
        return Err(Error::BadIndex("index set must be non-empty".into()));
    }
    let m = g.order();
    let n = k * k * m + 1;
    let mut table = vec![0; n * n];
    let mut labels = vec!["0".to_string(); n];
    for (i, j, a) in itertools::iproduct!(0..k, 0..k, 0..m) {
        let x = brandt_index(m, k, i, a, j);
        labels[x] = format!("({},{},{})", i + 1, g.label(a), j + 1);
        for (l, b) in itertools::iproduct!(0..k, 0..m) {
            // (i,a,j)(j,b,l) = (i,ab,l); every other product is 0
            let y = brandt_index(m, k, j, b, l);
            table[x * n + y] = brandt_index(m, k, i, g.mul(a, b), l);
        }
    }
    FiniteSemigroup::from_table_unchecked(n, table).with_labels(labels)
}

/// `G` with a zero adjoined; element `g` of the group becomes `g + 1`.
pub fn group_with_zero(g: &GroupTable) -> FiniteSemigroup {
    let m = g.order();
    let n = m + 1;
    let mut table = vec![0; n * n];
    for a in 0..m {
        for b in 0..m {
            table[(a + 1) * n + b + 1] = g.mul(a, b) + 1;
        }
    }
    let labels = std::iter::once("0".to_string())
        .chain((0..m).map(|a| g.label(a).to_string()))
        .collect();
    FiniteSemigroup::from_table_unchecked(n, table)
        .with_labels(labels)
        .expect("label count matches")
}

/// `S_i = {(i, h, j) : h ∈ G, j ∈ I} ∪ {0}` inside `brandt(G, k)`, with its
/// inclusion map. `i` is 1-based.
pub fn example_fixture(g: &GroupTable, k: usize, i: usize) -> Result<(FiniteSemigroup, Vec<Elem>)> {
    if k < 2 {
        return Err(Error::BadIndex(format!("index set size {k} < 2")));
    }
    if i == 0 || i > k {
        return Err(Error::BadIndex(format!("row {i} outside 1..={k}")));
    }
    let b = brandt(g, k)?;
    let m = g.order();
    let seed: Vec<Elem> = itertools::iproduct!(0..k, 0..m)
        .map(|(j, h)| brandt_index(m, k, i - 1, h, j))
        .collect();
    subsemigroup(&b, &seed)
}

/// 0-direct union: the non-zero parts side by side with one shared zero.
pub fn zero_direct_union(parts: &[FiniteSemigroup]) -> FiniteSemigroup {
    let n = 1 + parts.iter().map(|p| p.len() - 1).sum::<usize>();
    let mut table = vec![0; n * n];
    let mut labels = vec!["0".to_string(); n];
    let labelled = !parts.is_empty() && parts.iter().all(|p| p.labels().is_some());
    let mut offset = 1;
    for (idx, p) in parts.iter().enumerate() {
        let shift = |a: Elem| if a == 0 { 0 } else { a - 1 + offset };
        for a in p.nonzero() {
            for b in p.nonzero() {
                table[shift(a) * n + shift(b)] = shift(p.mul(a, b));
            }
            if labelled {
                labels[shift(a)] = if parts.len() == 1 {
                    p.name(a)
                } else {
                    format!("{}:{}", idx + 1, p.name(a))
                };
            }
        }
        offset += p.len() - 1;
    }
    let s = FiniteSemigroup::from_table_unchecked(n, table);
    if labelled {
        s.with_labels(labels).expect("label count matches")
    } else {
        s
    }
}

/// The 5-element combinatorial Brandt semigroup `B(1, 2)`.
pub fn b2() -> FiniteSemigroup {
    brandt(&GroupTable::trivial(), 2).expect("k >= 1")
}

/// `S_1 = {0, (1,e,1), (1,e,2)}` inside [`b2`].
pub fn s1() -> FiniteSemigroup {
    example_fixture(&GroupTable::trivial(), 2, 1)
        .expect("valid indices")
        .0
}

/// The cyclic group of order 2 with a zero adjoined.
pub fn c2z() -> FiniteSemigroup {
    group_with_zero(&GroupTable::cyclic(2))
}

/// The null semigroup `{0, a}`.
pub fn null2() -> FiniteSemigroup {
    FiniteSemigroup::from_table_unchecked(2, vec![0; 4])
        .with_labels(vec!["0".into(), "a".into()])
        .expect("two labels")
}

/// Backtracking filler for the free `(n-1)^2` entries of a table with zero at 0.
///
/// Cells are filled in row-major order with values ascending, so complete
/// tables are produced in lexicographic order of the flattened table. After
/// each assignment every triple whose four products are already known is
/// checked, which prunes most non-associative prefixes early.
struct Filler<'a, F> {
    n: usize,
    table: Vec<Option<Elem>>,
    cells: Vec<(Elem, Elem)>,
    emit: &'a mut F,
}

impl<F: FnMut(&[Option<Elem>])> Filler<'_, F> {
    fn get(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.table[a * self.n + b]
    }

    /// Associativity on triples touching the cell `(a, b)`.
    fn consistent(&self, a: Elem, b: Elem) -> bool {
        let n = self.n;
        let ab = self.get(a, b).unwrap();
        for c in 0..n {
            // (ab)c = a(bc)
            if let (Some(l), Some(bc)) = (self.get(ab, c), self.get(b, c)) {
                if let Some(r) = self.get(a, bc) {
                    if l != r {
                        return false;
                    }
                }
            }
            // (ca)b = c(ab)
            if let Some(ca) = self.get(c, a) {
                if let (Some(l), Some(r)) = (self.get(ca, b), self.get(c, ab)) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
        // triples where (a, b) is an outer lookup: (xy)z with xy = a, z = b, or x(yz) with x = a, yz = b
        for x in 0..n {
            for y in 0..n {
                if let Some(xy) = self.get(x, y) {
                    if xy == a {
                        if let Some(yb) = self.get(y, b) {
                            if let Some(r) = self.get(x, yb) {
                                if r != ab {
                                    return false;
                                }
                            }
                        }
                    }
                    if xy == b {
                        if let Some(ax) = self.get(a, x) {
                            if let Some(l) = self.get(ax, y) {
                                if l != ab {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, pos: usize) {
        if pos == self.cells.len() {
            (self.emit)(&self.table);
            return;
        }
        let (a, b) = self.cells[pos];
        for v in 0..self.n {
            self.table[a * self.n + b] = Some(v);
            if self.consistent(a, b) {
                self.fill(pos + 1);
            }
        }
        self.table[a * self.n + b] = None;
    }
}

fn zero_bordered(n: usize) -> (Vec<Option<Elem>>, Vec<(Elem, Elem)>) {
    let mut table = vec![None; n * n];
    for a in 0..n {
        table[a] = Some(0);
        table[a * n] = Some(0);
    }
    let cells = itertools::iproduct!(1..n, 1..n).collect();
    (table, cells)
}

fn complete(n: usize, table: &[Option<Elem>]) -> FiniteSemigroup {
    FiniteSemigroup::from_table_unchecked(n, table.iter().map(|v| v.unwrap()).collect())
}

/// Call `f` on every associative table of order `n` with absorbing zero at 0
/// that satisfies `predicate`, in lexicographic order of the flattened table.
pub fn for_each_semigroup_with_zero(
    n: usize,
    cap: usize,
    mut f: impl FnMut(FiniteSemigroup),
) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if n == 0 {
        return Ok(());
    }
    let (table, cells) = zero_bordered(n);
    let mut emit = |t: &[Option<Elem>]| f(complete(n, t));
    let mut filler = Filler {
        n,
        table,
        cells,
        emit: &mut emit,
    };
    filler.fill(0);
    Ok(())
}

/// All semigroups with zero of order `n` (labelled tables, zero at 0)
/// passing `predicate`, in lexicographic order.
///
/// The search space is split on the value of the first free cell and the
/// branches run in parallel; results are concatenated in branch order.
pub fn enumerate_semigroups_with_zero(
    n: usize,
    predicate: impl Fn(&FiniteSemigroup) -> bool + Sync,
) -> Result<Vec<FiniteSemigroup>> {
    enumerate_semigroups_with_zero_capped(n, DEFAULT_ENUMERATION_CAP, predicate)
}

pub fn enumerate_semigroups_with_zero_capped(
    n: usize,
    cap: usize,
    predicate: impl Fn(&FiniteSemigroup) -> bool + Sync,
) -> Result<Vec<FiniteSemigroup>> {
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if n <= 1 {
        let mut out = Vec::new();
        for_each_semigroup_with_zero(n, cap, |s| {
            if predicate(&s) {
                out.push(s)
            }
        })?;
        return Ok(out);
    }
    let branches: Vec<Vec<FiniteSemigroup>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let (mut table, cells) = zero_bordered(n);
            let mut out = Vec::new();
            let (a, b) = cells[0];
            table[a * n + b] = Some(first);
            let mut emit = |t: &[Option<Elem>]| {
                let s = complete(n, t);
                if predicate(&s) {
                    out.push(s);
                }
            };
            let mut filler = Filler {
                n,
                table,
                cells,
                emit: &mut emit,
            };
            if filler.consistent(a, b) {
                filler.fill(1);
            }
            out
        })
        .collect();
    Ok(branches.into_iter().flatten().collect())
}

/// Lexicographically least relabelling of `s` over permutations fixing 0.
pub fn canonical_form(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.len();
    (1..n)
        .permutations(n - 1)
        .map(|rest| {
            let perm: Vec<Elem> = std::iter::once(0).chain(rest).collect();
            s.relabel(&perm)
                .expect("valid permutation")
                .without_labels()
        })
        .min_by(|x, y| x.table().cmp(y.table()))
        .unwrap_or_else(|| s.clone().without_labels())
}

/// Keep the first representative of each isomorphism class.
pub fn dedup_isomorphic(items: Vec<FiniteSemigroup>) -> Vec<FiniteSemigroup> {
    let mut seen = std::collections::HashSet::new();
    items
        .into_iter()
        .filter(|s| seen.insert(canonical_form(s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::validate;

    #[test]
    fn b2_table() {
        let b = b2();
        assert_eq!(b.len(), 5);
        let rows: Vec<Vec<usize>> = b.elements().map(|a| b.row(a).to_vec()).collect();
        assert!(validate(&rows, 0, 16).unwrap().ok());
        // (1,e,2)(2,e,1) = (1,e,1)
        assert_eq!(b.mul(2, 3), 1);
        assert_eq!(b.mul(2, 2), 0);
        assert_eq!(b.name(2), "(1,e,2)");
    }

    #[test]
    fn brandt_with_one_index_is_group_with_zero() {
        let g = GroupTable::cyclic(2);
        let b = brandt(&g, 1).unwrap();
        assert_eq!(b.without_labels(), c2z().without_labels());
    }

    #[test]
    fn brandt_c2_2() {
        let g = GroupTable::cyclic(2);
        let b = brandt(&g, 2).unwrap();
        assert_eq!(b.len(), 9);
        let x = brandt_index(2, 2, 0, 1, 1); // (1,g,2)
        let y = brandt_index(2, 2, 1, 1, 0); // (2,g,1)
        assert_eq!(b.mul(x, y), brandt_index(2, 2, 0, 0, 0));
        assert_eq!(b.name(b.mul(x, y)), "(1,e,1)");
    }

    #[test]
    fn group_with_zero_c3() {
        let s = group_with_zero(&GroupTable::cyclic(3));
        assert_eq!(s.len(), 4);
        // g * g^2 = e
        assert_eq!(s.mul(2, 3), 1);
        let t = group_with_zero(&GroupTable::trivial());
        assert_eq!(t.len(), 2);
        assert!(t.is_idempotent(1));
    }

    #[test]
    fn group_table_validation() {
        assert!(GroupTable::new(2, vec![0, 1, 1, 1], 0, vec!["e".into(), "a".into()]).is_err());
        assert!(GroupTable::new(2, vec![0, 1, 1, 0], 0, vec!["e".into(), "a".into()]).is_ok());
    }

    #[test]
    fn example_fixture_sizes() {
        let (s, inc) = example_fixture(&GroupTable::trivial(), 2, 1).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(inc, vec![0, 1, 2]);
        let (s, _) = example_fixture(&GroupTable::cyclic(2), 2, 1).unwrap();
        assert_eq!(s.len(), 5);
        let (s2, inc2) = example_fixture(&GroupTable::trivial(), 2, 2).unwrap();
        assert_eq!(inc2, vec![0, 3, 4]);
        // the second row is the first with its two elements swapped
        assert_eq!(
            s2.without_labels().relabel(&[0, 2, 1]).unwrap(),
            s1().without_labels()
        );
        assert!(matches!(
            example_fixture(&GroupTable::trivial(), 1, 1),
            Err(Error::BadIndex(_))
        ));
        assert!(matches!(
            example_fixture(&GroupTable::trivial(), 2, 3),
            Err(Error::BadIndex(_))
        ));
    }

    #[test]
    fn zero_direct_unions() {
        assert_eq!(zero_direct_union(&[]), FiniteSemigroup::trivial());
        assert_eq!(zero_direct_union(&[b2()]), b2());
        let u = zero_direct_union(&[b2(), c2z()]);
        assert_eq!(u.len(), 7);
        // cross products vanish
        assert_eq!(u.mul(1, 5), 0);
        assert_eq!(u.mul(5, 6), 6);
        assert_eq!(u.name(5), "2:e");
    }

    /// Independent oracle: every one of the n^((n-1)^2) candidate tables,
    /// checked by a full triple scan.
    fn brute_force(n: usize) -> Vec<FiniteSemigroup> {
        let free = (n - 1) * (n - 1);
        let total = n.pow(free as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut table = vec![0; n * n];
            let mut c = code;
            // most significant digit first gives lexicographic order
            for idx in (0..free).rev() {
                let (a, b) = (1 + idx / (n - 1), 1 + idx % (n - 1));
                table[a * n + b] = c % n;
                c /= n;
            }
            if let Ok(s) = FiniteSemigroup::from_table(n, table) {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 2..=4 {
            let fast = enumerate_semigroups_with_zero(n, |_| true).unwrap();
            assert_eq!(fast, brute_force(n), "order {n}");
        }
    }

    #[test]
    fn enumeration_small_orders() {
        let one = enumerate_semigroups_with_zero(1, |_| true).unwrap();
        assert_eq!(one, vec![FiniteSemigroup::trivial()]);
        let two = enumerate_semigroups_with_zero(2, |_| true).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].mul(1, 1), 0);
        assert_eq!(two[1].mul(1, 1), 1);
        assert!(matches!(
            enumerate_semigroups_with_zero(5, |_| true),
            Err(Error::TooLarge { n: 5, cap: 4 })
        ));
    }

    #[test]
    fn dedup_merges_relabellings() {
        let all = enumerate_semigroups_with_zero(3, |_| true).unwrap();
        let classes = dedup_isomorphic(all.clone());
        assert!(classes.len() < all.len());
        for s in &all {
            let c = canonical_form(s);
            assert!(classes.iter().any(|t| canonical_form(t) == c));
        }
    }
}
