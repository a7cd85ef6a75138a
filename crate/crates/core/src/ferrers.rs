//! Ferrers diagrams, Littlewood-Richardson products and the tilde-tree.
//!
//! Diagrams index highest weights of `gl(n)`. The irreducible summands of the
//! symmetric powers of `g_{-1}` are singled out by [`admissible_diagrams`]:
//! paired rows in the orthogonal case, even rows in the symplectic case.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::algebra::{AlgebraSpec, Family};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Non-increasing rows with trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FerrersDiagram {
    rows: Vec<u32>,
}

impl FerrersDiagram {
    pub fn empty() -> Self {
        FerrersDiagram { rows: Vec::new() }
    }

    /// Accepts trailing zeros; rejects increasing rows.
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!("rows must be non-increasing: {rows:?}")));
        }
        let mut rows = rows;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(FerrersDiagram { rows })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row `i` (0-based), zero past the end.
    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    pub fn boxes(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// Rows padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.row(i)).collect()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.len() > n {
            return Err(Error::InvalidDiagram(format!("{self} has more than {n} rows")));
        }
        Ok(())
    }
}

impl FerrersDiagram {
    /// Comma-separated rows, empty for the empty diagram.
    pub fn label(&self) -> String {
        self.rows.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", self.label())
    }
}

impl FromStr for FerrersDiagram {
    type Err = Error;

    /// `"6,4,2,2"`; the empty diagram is `""` or `"0"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let rows = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::InvalidDiagram(format!("bad row {p:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

fn partitions(total: u32, max_part: u32, max_len: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    if prefix.len() == max_len {
        return;
    }
    for p in (1..=max_part.min(total)).rev() {
        prefix.push(p);
        partitions(total - p, p, max_len, prefix, out);
        prefix.pop();
    }
}

fn is_admissible(family: Family, n: usize, rows: &[u32]) -> bool {
    match family {
        Family::Orthogonal => {
            let padded: Vec<u32> = (0..n).map(|i| rows.get(i).copied().unwrap_or(0)).collect();
            let paired = padded.chunks(2).all(|c| c.len() == 1 || c[0] == c[1]);
            paired && (n.is_multiple_of(2) || padded[n - 1] == 0)
        }
        Family::Symplectic => rows.iter().all(|r| r % 2 == 0),
    }
}

/// Diagrams of the irreducible summands of the `k`-th symmetric power of `g_{-1}`.
///
/// Sorted in decreasing lexicographic order.
pub fn admissible_diagrams(spec: &AlgebraSpec, k: usize) -> Vec<FerrersDiagram> {
    let mut all = Vec::new();
    partitions(2 * k as u32, 2 * k as u32, spec.n, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|rows| is_admissible(spec.family, spec.n, rows))
        .map(|rows| FerrersDiagram { rows })
        .collect()
}

pub fn is_admissible_diagram(spec: &AlgebraSpec, diagram: &FerrersDiagram, k: usize) -> bool {
    diagram.len() <= spec.n && diagram.boxes() as usize == 2 * k && is_admissible(spec.family, spec.n, diagram.rows())
}

/// The diagram of `g_{-1}` itself: a column `(1,1)` or a row `(2)`.
pub fn g_minus_one_diagram(family: Family) -> FerrersDiagram {
    match family {
        Family::Orthogonal => FerrersDiagram { rows: vec![1, 1] },
        Family::Symplectic => FerrersDiagram { rows: vec![2] },
    }
}

/// Dimension of the `gl(n)` irreducible, by the hook-content formula.
pub fn dim_irrep(diagram: &FerrersDiagram, n: usize) -> Result<u64> {
    diagram.check_len(n)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (r, &len) in diagram.rows.iter().enumerate() {
        for c in 0..len as usize {
            let arm = len as usize - c - 1;
            let leg = diagram.rows[r + 1..].iter().filter(|&&l| l as usize > c).count();
            num *= BigInt::from(n + c - r);
            den *= BigInt::from(arm + leg + 1);
        }
    }
    let d = Q::new(num, den);
    debug_assert!(d.is_integer());
    d.to_integer().to_u64().ok_or_else(|| Error::Invariant("dimension overflow".into()))
}

/// Strips full columns of height `n`.
pub fn normalize(diagram: &FerrersDiagram, n: usize) -> Result<FerrersDiagram> {
    diagram.check_len(n)?;
    if diagram.len() < n {
        return Ok(diagram.clone());
    }
    let m = diagram.rows[n - 1];
    FerrersDiagram::new(diagram.rows.iter().map(|r| r - m).collect())
}

/// Componentwise `l <= k` with at least one strict inequality.
pub fn dominance_lt(l: &FerrersDiagram, k: &FerrersDiagram) -> bool {
    let len = l.len().max(k.len());
    (0..len).all(|i| l.row(i) <= k.row(i)) && l != k
}

/// Diagram of the contragredient representation, normalized.
pub fn dual_diagram(diagram: &FerrersDiagram, n: usize) -> Result<FerrersDiagram> {
    diagram.check_len(n)?;
    let top = diagram.row(0);
    let rows = (0..n).map(|i| top - diagram.row(n - 1 - i)).collect();
    normalize(&FerrersDiagram::new(rows)?, n)
}

/// Horizontal strips of `m` boxes added to `shape` (length `n`).
///
/// With `prev` (per-row counts of the previous label) the lattice condition is
/// enforced: boxes of this label in rows `<= i` must not outnumber boxes of the
/// previous label in rows `< i`.
fn add_strips(shape: &[u32], prev: Option<&[u32]>, m: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    struct Walk<'a> {
        shape: &'a [u32],
        prev: Option<&'a [u32]>,
        counts: Vec<u32>,
        out: Vec<(Vec<u32>, Vec<u32>)>,
    }
    impl Walk<'_> {
        fn go(&mut self, left: u32, row: usize, cum: u32, prev_cum: u32) {
            let n = self.shape.len();
            if left == 0 {
                let mut c = self.counts.clone();
                c.resize(n, 0);
                let new_shape = self.shape.iter().zip(&c).map(|(s, t)| s + t).collect();
                self.out.push((new_shape, c));
                return;
            }
            if row == n {
                return;
            }
            let cap = if row == 0 { left } else { (self.shape[row - 1] - self.shape[row]).min(left) };
            for t in 0..=cap {
                if self.prev.is_some() && cum + t > prev_cum {
                    break;
                }
                self.counts.push(t);
                let next_prev = prev_cum + self.prev.map_or(0, |p| p[row]);
                self.go(left - t, row + 1, cum + t, next_prev);
                self.counts.pop();
            }
        }
    }
    let mut walk = Walk { shape, prev, counts: Vec::new(), out: Vec::new() };
    walk.go(m, 0, 0, 0);
    walk.out
}

/// Littlewood-Richardson decomposition of `a (x) b` for `gl(n)`, normalized.
///
/// Shapes with more than `n` rows are dropped; the result is a multiset.
pub fn lr_tensor(a: &FerrersDiagram, b: &FerrersDiagram, n: usize) -> Result<BTreeMap<FerrersDiagram, usize>> {
    a.check_len(n)?;
    b.check_len(n)?;
    // states: (shape, counts of the last label per row) with multiplicity
    let mut states: BTreeMap<(Vec<u32>, Vec<u32>), usize> = BTreeMap::new();
    states.insert((a.padded(n), Vec::new()), 1);
    for (label, &m) in b.rows.iter().enumerate() {
        let mut next: BTreeMap<(Vec<u32>, Vec<u32>), usize> = BTreeMap::new();
        for ((shape, prev), mult) in &states {
            let prev_counts = if label == 0 { None } else { Some(prev.as_slice()) };
            for key in add_strips(shape, prev_counts, m) {
                *next.entry(key).or_insert(0) += mult;
            }
        }
        states = next;
    }
    let mut result = BTreeMap::new();
    for ((shape, _), mult) in states {
        let d = normalize(&FerrersDiagram::new(shape)?, n)?;
        *result.entry(d).or_insert(0) += mult;
    }
    Ok(result)
}

/// Tree of candidate summands reachable from a root by repeatedly tensoring
/// with the dual of `g_{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeTree {
    /// Level `l` holds diagrams of fiber degree `k - l`.
    pub levels: Vec<BTreeSet<FerrersDiagram>>,
    /// `(l, parent, child)` with parent at level `l` and child at level `l + 1`.
    pub edges: Vec<(usize, FerrersDiagram, FerrersDiagram)>,
    pub k: usize,
}

impl TildeTree {
    pub fn root(&self) -> &FerrersDiagram {
        self.levels[0].iter().next().expect("root level is never empty")
    }

    /// Fiber degree carried by level `l`.
    pub fn degree_of_level(&self, l: usize) -> usize {
        self.k - l
    }

    /// All `(level, diagram)` pairs below the root.
    pub fn descendants(&self) -> impl Iterator<Item = (usize, &FerrersDiagram)> {
        self.levels.iter().enumerate().skip(1).flat_map(|(l, set)| set.iter().map(move |d| (l, d)))
    }
}

pub fn tilde_tree(root: &FerrersDiagram, k: usize, spec: &AlgebraSpec) -> Result<TildeTree> {
    if !is_admissible_diagram(spec, root, k) {
        return Err(Error::NotAdmissible { diagram: root.to_string(), k });
    }
    let n = spec.n;
    let dual = dual_diagram(&g_minus_one_diagram(spec.family), n)?;
    let mut levels = vec![BTreeSet::from([root.clone()])];
    let mut edges = Vec::new();
    for l in 0..k {
        let candidates = admissible_diagrams(spec, k - l - 1);
        let normalized: Vec<FerrersDiagram> =
            candidates.iter().map(|c| normalize(c, n)).collect::<Result<_>>()?;
        let mut next = BTreeSet::new();
        for parent in &levels[l] {
            let product = lr_tensor(parent, &dual, n)?;
            for (cand, norm) in candidates.iter().zip(&normalized) {
                if product.contains_key(norm) {
                    next.insert(cand.clone());
                    edges.push((l, parent.clone(), cand.clone()));
                }
            }
        }
        levels.push(next);
    }
    Ok(TildeTree { levels, edges, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_algebra;

    fn fd(s: &str) -> FerrersDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(fd("6,4,2,2").rows(), &[6, 4, 2, 2]);
        assert_eq!(fd(""), FerrersDiagram::empty());
        assert_eq!(fd("0"), FerrersDiagram::empty());
        assert_eq!(fd("3,1,0").to_string(), "3,1");
        assert!("1,2".parse::<FerrersDiagram>().is_err());
        assert!("a".parse::<FerrersDiagram>().is_err());
        assert_eq!(FerrersDiagram::empty().to_string(), "0");
    }

    #[test]
    fn admissible_examples() {
        let sp2 = make_algebra(Family::Symplectic, 2).unwrap();
        assert_eq!(admissible_diagrams(&sp2, 2), vec![fd("4"), fd("2,2")]);
        let o4 = make_algebra(Family::Orthogonal, 4).unwrap();
        assert_eq!(admissible_diagrams(&o4, 2), vec![fd("2,2"), fd("1,1,1,1")]);
        assert_eq!(admissible_diagrams(&o4, 0), vec![FerrersDiagram::empty()]);
    }

    #[test]
    fn hook_content() {
        assert_eq!(dim_irrep(&fd("2,2"), 4).unwrap(), 20);
        assert_eq!(dim_irrep(&fd("1,1,1,1"), 4).unwrap(), 1);
        assert_eq!(dim_irrep(&fd("4"), 2).unwrap(), 5);
        assert_eq!(dim_irrep(&FerrersDiagram::empty(), 3).unwrap(), 1);
        assert!(dim_irrep(&fd("1,1,1"), 2).is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&fd("2,2,1,1"), 4).unwrap(), fd("1,1"));
        assert_eq!(normalize(&fd("3"), 4).unwrap(), fd("3"));
        assert_eq!(normalize(&fd("1,1"), 2).unwrap(), FerrersDiagram::empty());
    }

    #[test]
    fn dominance_examples() {
        assert!(!dominance_lt(&fd("6,4"), &fd("6,2,2,2")));
        assert!(!dominance_lt(&fd("6,2,2,2"), &fd("6,4")));
        assert!(dominance_lt(&FerrersDiagram::empty(), &fd("1")));
        assert!(!dominance_lt(&fd("2,1"), &fd("2,1")));
    }

    #[test]
    fn duals() {
        assert_eq!(dual_diagram(&fd("1,1"), 4).unwrap(), fd("1,1"));
        assert_eq!(dual_diagram(&fd("2"), 3).unwrap(), fd("2,2"));
        assert_eq!(dual_diagram(&FerrersDiagram::empty(), 3).unwrap(), FerrersDiagram::empty());
    }

    #[test]
    fn lr_examples() {
        let r = lr_tensor(&fd("2,2"), &fd("1,1"), 4).unwrap();
        let expected: BTreeMap<_, _> = [(fd("3,3"), 1), (fd("3,2,1"), 1), (fd("1,1"), 1)].into_iter().collect();
        assert_eq!(r, expected);
        let r = lr_tensor(&fd("2,1"), &FerrersDiagram::empty(), 3).unwrap();
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![(fd("2,1"), 1)]);
        // (2,1) x (2,1) in gl(3): (3,2,1) appears twice
        let r = lr_tensor(&fd("2,1"), &fd("2,1"), 3).unwrap();
        assert_eq!(r[&fd("2,1")], 2);
    }

    #[test]
    fn tree_examples() {
        let sp2 = make_algebra(Family::Symplectic, 2).unwrap();
        let t = tilde_tree(&fd("2"), 1, &sp2).unwrap();
        assert_eq!(t.levels[1], BTreeSet::from([FerrersDiagram::empty()]));
        let o4 = make_algebra(Family::Orthogonal, 4).unwrap();
        let t = tilde_tree(&fd("2,2"), 2, &o4).unwrap();
        assert_eq!(t.levels[1], BTreeSet::from([fd("1,1")]));
        assert!(matches!(tilde_tree(&fd("3,1"), 2, &o4), Err(Error::NotAdmissible { .. })));
    }
}
