//! Critical shift values.
//!
//! The triangular solve for a quantization divides by differences of Casimir
//! eigenvalues between a summand of `S^k` and the summands of lower degree it
//! can reach. Each such difference is linear in `delta` (the quadratic terms
//! agree), so every pair contributes exactly one critical value.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::algebra::{AlgebraSpec, Family};
use crate::casimir::eigenvalue;
use crate::error::{Error, Result};
use crate::ferrers::{admissible_diagrams, dominance_lt, tilde_tree, FerrersDiagram};
use crate::rational::{format_q, qr, Q};

/// A diagram together with the fiber degree it lives in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub diagram: FerrersDiagram,
    pub degree: usize,
}

impl Summand {
    pub fn new(diagram: FerrersDiagram, degree: usize) -> Self {
        Summand { diagram, degree }
    }
}

impl std::fmt::Display for Summand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@{}", self.diagram.label(), self.degree)
    }
}

/// One critical shift with every pair of summands that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalValue {
    pub delta: Q,
    /// `(upper, lower)` pairs, sorted.
    pub witnesses: Vec<(Summand, Summand)>,
    pub family: Family,
    pub n: usize,
}

/// `sum_i (k_i - l_i)(k_i + l_i - 2i)` with 1-based `i`.
fn pair_sum(upper: &FerrersDiagram, lower: &FerrersDiagram, n: usize) -> i64 {
    (0..n)
        .map(|i| {
            let (k, l) = (upper.row(i) as i64, lower.row(i) as i64);
            (k - l) * (k + l - 2 * (i as i64 + 1))
        })
        .sum()
}

/// The shift at which the eigenvalues of `upper` and `lower` coincide, in closed form.
///
/// `None` unless `lower.degree < upper.degree`.
pub fn critical_delta(upper: &Summand, lower: &Summand, spec: &AlgebraSpec) -> Option<Q> {
    if lower.degree >= upper.degree {
        return None;
    }
    let n = spec.n as i64;
    let kl = (upper.degree - lower.degree) as i64;
    let s = pair_sum(&upper.diagram, &lower.diagram, spec.n);
    Some(match spec.family {
        Family::Orthogonal => qr(n, n - 1) + qr(s, 4 * (n - 1) * kl),
        Family::Symplectic => qr(1, 1) + qr(s, 4 * (n + 1) * kl),
    })
}

/// The same shift as the root of the difference of the two eigenvalue polynomials.
pub fn critical_delta_by_root(upper: &Summand, lower: &Summand, spec: &AlgebraSpec) -> Result<Option<Q>> {
    let diff = eigenvalue(&upper.diagram, spec)?.sub(&eigenvalue(&lower.diagram, spec)?);
    Ok(diff.linear_root())
}

/// Lower bound for the critical shift of a dominated pair, obtained by
/// replacing `-2i` with `-2n`; positive as soon as some row strictly drops.
pub fn positivity_bound(upper: &Summand, lower: &Summand, spec: &AlgebraSpec) -> Q {
    let n = spec.n as i64;
    let kl = (upper.degree - lower.degree) as i64;
    let squares: i64 = (0..spec.n)
        .map(|i| {
            let (k, l) = (upper.diagram.row(i) as i64, lower.diagram.row(i) as i64);
            k * k - l * l
        })
        .sum();
    let rows: i64 = (0..spec.n).map(|i| upper.diagram.row(i) as i64 - lower.diagram.row(i) as i64).sum();
    match spec.family {
        Family::Orthogonal => qr(n, n - 1) + qr(squares, 4 * (n - 1) * kl) - qr(2 * n * rows, 4 * (n - 1) * kl),
        Family::Symplectic => qr(1, 1) + qr(squares, 4 * (n + 1) * kl) - qr(2 * n * rows, 4 * (n + 1) * kl),
    }
}

fn collect(spec: &AlgebraSpec, pairs: impl IntoIterator<Item = (Summand, Summand)>) -> Result<Vec<CriticalValue>> {
    let mut by_delta: BTreeMap<Q, BTreeSet<(Summand, Summand)>> = BTreeMap::new();
    for (upper, lower) in pairs {
        let delta = critical_delta(&upper, &lower, spec)
            .ok_or_else(|| Error::Invariant(format!("pair {upper} / {lower} does not drop in degree")))?;
        let bound = positivity_bound(&upper, &lower, spec);
        if bound <= Q::zero() || delta < bound {
            return Err(Error::Invariant(format!(
                "critical shift {} for {upper} / {lower} violates the bound {}",
                format_q(&delta),
                format_q(&bound)
            )));
        }
        by_delta.entry(delta).or_default().insert((upper, lower));
    }
    Ok(by_delta
        .into_iter()
        .map(|(delta, w)| CriticalValue { delta, witnesses: w.into_iter().collect(), family: spec.family, n: spec.n })
        .collect())
}

/// Critical shifts from every root of degree `<= kmax` against every tilde-tree
/// descendant, deduplicated by value and sorted ascending.
///
/// Fails with [`Error::Invariant`] if some pair is not strictly dominated or
/// gives a non-positive value.
pub fn critical_set(spec: &AlgebraSpec, kmax: usize) -> Result<Vec<CriticalValue>> {
    let mut pairs = Vec::new();
    for k in 1..=kmax {
        for root in admissible_diagrams(spec, k) {
            let tree = tilde_tree(&root, k, spec)?;
            for (level, lower) in tree.descendants() {
                if !dominance_lt(lower, &root) {
                    return Err(Error::Invariant(format!("tree member {lower} is not below {root}")));
                }
                pairs.push((Summand::new(root.clone(), k), Summand::new(lower.clone(), k - level)));
            }
        }
    }
    collect(spec, pairs)
}

/// Critical shifts from all strictly dominated admissible pairs of degrees `<= kmax`.
pub fn dominated_critical_set(spec: &AlgebraSpec, kmax: usize) -> Result<Vec<CriticalValue>> {
    let mut pairs = Vec::new();
    for k in 1..=kmax {
        for root in admissible_diagrams(spec, k) {
            for l in 0..k {
                for lower in admissible_diagrams(spec, l) {
                    if dominance_lt(&lower, &root) {
                        pairs.push((Summand::new(root.clone(), k), Summand::new(lower, l)));
                    }
                }
            }
        }
    }
    collect(spec, pairs)
}

/// Result of a criticality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalityReport {
    pub delta: Q,
    pub kmax: usize,
    pub critical: bool,
    pub witnesses: Vec<(Summand, Summand)>,
}

/// Whether `mu - lambda` is a critical shift up to degree `kmax`.
pub fn is_critical(lambda: &Q, mu: &Q, spec: &AlgebraSpec, kmax: usize) -> Result<CriticalityReport> {
    let delta = mu - lambda;
    let set = critical_set(spec, kmax)?;
    let hit = set.into_iter().find(|c| c.delta == delta);
    Ok(CriticalityReport {
        critical: hit.is_some(),
        witnesses: hit.map(|c| c.witnesses).unwrap_or_default(),
        delta,
        kmax,
    })
}
