//! Finite semigroups with zero, stored as full Cayley tables.
//!
//! The zero always lives at index 0; every constructor re-indexes to keep it
//! there, so `S*` is simply `1..n`.

use std::fmt;

use crate::error::{Error, Result};

/// Element index into a [`FiniteSemigroup`].
pub type Elem = usize;

/// Default cap on the number of failures collected by [`validate`].
pub const DEFAULT_MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ValidationFailure {
    /// `(a b) c != a (b c)`.
    NotAssociative(Elem, Elem, Elem),
    /// `z a != z` where `z` is the designated zero.
    ZeroNotLeftAbsorbing(Elem),
    /// `a z != z` where `z` is the designated zero.
    ZeroNotRightAbsorbing(Elem),
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ValidationFailure::NotAssociative(a, b, c) => {
                write!(f, "ASSOCIATIVITY {a} {b} {c}")
            }
            ValidationFailure::ZeroNotLeftAbsorbing(a) => write!(f, "ZERO_LEFT {a}"),
            ValidationFailure::ZeroNotRightAbsorbing(a) => write!(f, "ZERO_RIGHT {a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
    /// Set when more failures existed than the cap allowed us to record.
    pub truncated: bool,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return writeln!(f, "OK");
        }
        for failure in &self.failures {
            writeln!(f, "{failure}")?;
        }
        if self.truncated {
            writeln!(f, "...")?;
        }
        Ok(())
    }
}

/// Check a candidate table (rows of products) with a designated zero.
///
/// Zero-absorption failures are listed first, then associativity triples in
/// lexicographic order. At most `max_witnesses` failures are recorded.
pub fn validate(rows: &[Vec<Elem>], zero: Elem, max_witnesses: usize) -> Result<ValidationReport> {
    let n = rows.len();
    check_shape(rows, zero)?;
    let mut report = ValidationReport::default();
    let push = |report: &mut ValidationReport, failure| {
        if report.failures.len() < max_witnesses {
            report.failures.push(failure);
        } else {
            report.truncated = true;
        }
    };
    for (a, row) in rows.iter().enumerate() {
        if rows[zero][a] != zero {
            push(&mut report, ValidationFailure::ZeroNotLeftAbsorbing(a));
        }
        if row[zero] != zero {
            push(&mut report, ValidationFailure::ZeroNotRightAbsorbing(a));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = rows[a][b];
            for c in 0..n {
                if rows[ab][c] != rows[a][rows[b][c]] {
                    push(&mut report, ValidationFailure::NotAssociative(a, b, c));
                    if report.truncated {
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

fn check_shape(rows: &[Vec<Elem>], zero: Elem) -> Result<()> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty table".into()));
    }
    if zero >= n {
        return Err(Error::MalformedTable(format!(
            "zero index {zero} out of range for order {n}"
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|&v| v >= n) {
            return Err(Error::MalformedTable(format!(
                "entry ({i},{j}) = {} out of range for order {n}",
                row[j]
            )));
        }
    }
    Ok(())
}

/// A finite semigroup with zero at index 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    n: usize,
    table: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSemigroup(n={}, table=[", self.n)?;
        for a in 0..self.n {
            if a > 0 {
                write!(f, " | ")?;
            }
            for b in 0..self.n {
                if b > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.mul(a, b))?;
            }
        }
        write!(f, "])")
    }
}

impl FiniteSemigroup {
    /// Build from rows with an arbitrary designated zero, re-indexing so the
    /// zero ends up at 0 (swapping it with whatever element was there).
    pub fn from_rows(rows: &[Vec<Elem>], zero: Elem) -> Result<Self> {
        Self::from_rows_with(rows, zero, DEFAULT_MAX_WITNESSES)
    }

    /// As [`FiniteSemigroup::from_rows`], keeping at most `max_witnesses`
    /// failures in a validation error.
    pub fn from_rows_with(rows: &[Vec<Elem>], zero: Elem, max_witnesses: usize) -> Result<Self> {
        let report = validate(rows, zero, max_witnesses)?;
        if !report.ok() {
            return Err(Error::Validation(report));
        }
        let n = rows.len();
        let swap = |x: Elem| {
            if x == zero {
                0
            } else if x == 0 {
                zero
            } else {
                x
            }
        };
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[swap(a) * n + swap(b)] = swap(rows[a][b]);
            }
        }
        Ok(FiniteSemigroup {
            n,
            table,
            labels: None,
        })
    }

    /// Build from a flat row-major table whose zero is already at index 0.
    pub fn from_table(n: usize, table: Vec<Elem>) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        let rows: Vec<Vec<Elem>> = table.chunks(n.max(1)).map(<[Elem]>::to_vec).collect();
        let report = validate(&rows, 0, DEFAULT_MAX_WITNESSES)?;
        if !report.ok() {
            return Err(Error::Validation(report));
        }
        Ok(FiniteSemigroup {
            n,
            table,
            labels: None,
        })
    }

    /// Caller guarantees the table is associative with absorbing zero at 0.
    pub(crate) fn from_table_unchecked(n: usize, table: Vec<Elem>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        FiniteSemigroup {
            n,
            table,
            labels: None,
        }
    }

    /// The one-element semigroup `{0}`.
    pub fn trivial() -> Self {
        FiniteSemigroup::from_table_unchecked(1, vec![0])
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::MalformedTable(format!(
                "{} labels for {} elements",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: a semigroup with zero has at least one element.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn mul3(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.mul(self.mul(a, b), c)
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    /// `S*`, the non-zero elements.
    pub fn nonzero(&self) -> std::ops::Range<Elem> {
        1..self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Human-readable name: the label when present, otherwise the index.
    pub fn name(&self, a: Elem) -> String {
        match &self.labels {
            Some(labels) => labels[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_idempotent(&self, a: Elem) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_idempotent(a)).collect()
    }

    /// Relabel along a permutation `perm` (old index -> new index) fixing 0.
    pub fn relabel(&self, perm: &[Elem]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n || perm.first() != Some(&0) {
            return Err(Error::BadIndex(
                "relabelling must be a permutation of the right length fixing 0".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadIndex("relabelling is not a permutation".into()));
            }
        }
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        let labels = self.labels.as_ref().map(|old| {
            let mut new = vec![String::new(); n];
            for a in 0..n {
                new[perm[a]] = old[a].clone();
            }
            new
        });
        Ok(FiniteSemigroup { n, table, labels })
    }

    /// Whether the given subset is closed under multiplication.
    pub fn is_closed(&self, subset: &[Elem]) -> bool {
        let mut member = vec![false; self.n];
        for &a in subset {
            member[a] = true;
        }
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| member[self.mul(a, b)]))
    }
}

/// Closure of `seed` under multiplication, together with the zero.
///
/// The result is re-indexed with 0 first and the remaining elements in
/// increasing order of their index in `s`; the returned vector is the
/// inclusion map back into `s`.
pub fn subsemigroup(s: &FiniteSemigroup, seed: &[Elem]) -> Result<(FiniteSemigroup, Vec<Elem>)> {
    if seed.is_empty() {
        return Err(Error::BadIndex("empty seed".into()));
    }
    if let Some(&bad) = seed.iter().find(|&&a| a >= s.len()) {
        return Err(Error::BadIndex(format!("seed element {bad} out of range")));
    }
    let mut member = vec![false; s.len()];
    member[0] = true;
    let mut members = vec![0];
    for &a in seed {
        if !std::mem::replace(&mut member[a], true) {
            members.push(a);
        }
    }
    // every new element is multiplied on both sides with everything seen so far
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        let mut j = 0;
        while j <= i {
            let b = members[j];
            for p in [s.mul(a, b), s.mul(b, a)] {
                if !std::mem::replace(&mut member[p], true) {
                    members.push(p);
                }
            }
            j += 1;
        }
        i += 1;
    }
    let inclusion: Vec<Elem> = s.elements().filter(|&a| member[a]).collect();
    let mut index = vec![usize::MAX; s.len()];
    for (new, &old) in inclusion.iter().enumerate() {
        index[old] = new;
    }
    let m = inclusion.len();
    let mut table = vec![0; m * m];
    for (x, &a) in inclusion.iter().enumerate() {
        for (y, &b) in inclusion.iter().enumerate() {
            table[x * m + y] = index[s.mul(a, b)];
        }
    }
    let mut sub = FiniteSemigroup::from_table_unchecked(m, table);
    if let Some(labels) = s.labels() {
        sub.labels = Some(inclusion.iter().map(|&a| labels[a].clone()).collect());
    }
    Ok((sub, inclusion))
}

/// Whether `map: S -> T` satisfies `map(xy) = map(x) map(y)`.
pub fn is_homomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup, map: &[Elem]) -> bool {
    map.len() == s.len()
        && map.iter().all(|&m| m < t.len())
        && s.elements().all(|x| {
            s.elements()
                .all(|y| map[s.mul(x, y)] == t.mul(map[x], map[y]))
        })
}
