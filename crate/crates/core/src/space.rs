//! Truncated symbol spaces with an explicit monomial basis.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::poly::{Monomial, PhasePoly};

/// Bounds on fiber degree (`k_max`) and base degree (`m_max`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub k_max: usize,
    pub m_max: usize,
}

impl Truncation {
    pub fn new(k_max: usize, m_max: usize) -> Self {
        Truncation { k_max, m_max }
    }
}

/// Exponent vectors of total degree `m` in `d` variables, in lexicographically decreasing order.
pub fn exponents_of_degree(d: usize, m: usize) -> Vec<Vec<u8>> {
    fn go(d: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() + 1 == d {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u8);
            go(d, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(d, m, &mut Vec::new(), &mut out);
    out
}

/// Number of monomials of degree `m` in `d` variables.
pub fn count_of_degree(d: usize, m: usize) -> usize {
    exponents_of_degree(d, m).len()
}

/// Polynomials with fiber degree `<= k_max` and base degree `<= m_max`.
///
/// Basis monomials are grouped in contiguous blocks by `(k, m)`, ordered by
/// `k` then `m`.
#[derive(Clone, Debug)]
pub struct SymbolSpace {
    d: usize,
    trunc: Truncation,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    blocks: BTreeMap<(usize, usize), Range<usize>>,
}

impl SymbolSpace {
    pub fn new(d: usize, trunc: Truncation) -> Self {
        let mut monomials = Vec::new();
        let mut blocks = BTreeMap::new();
        for k in 0..=trunc.k_max {
            let xis = exponents_of_degree(d, k);
            for m in 0..=trunc.m_max {
                let start = monomials.len();
                let xs = exponents_of_degree(d, m);
                for xi in &xis {
                    for x in &xs {
                        monomials.push(Monomial::from_parts(x, xi));
                    }
                }
                blocks.insert((k, m), start..monomials.len());
            }
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        SymbolSpace { d, trunc, monomials, index, blocks }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn block(&self, k: usize, m: usize) -> Range<usize> {
        self.blocks.get(&(k, m)).cloned().unwrap_or(0..0)
    }

    pub fn blocks(&self) -> impl Iterator<Item = ((usize, usize), Range<usize>)> + '_ {
        self.blocks.iter().map(|(&km, r)| (km, r.clone()))
    }

    /// The `(k, m)` block containing basis index `i`.
    pub fn block_of(&self, i: usize) -> (usize, usize) {
        let m = &self.monomials[i];
        (m.xi_degree(), m.x_degree())
    }

    pub fn basis_poly(&self, i: usize) -> PhasePoly {
        PhasePoly::monomial(self.monomials[i].clone(), crate::rational::one())
    }

    /// Coordinates of `p`; fails if `p` leaves the truncation.
    pub fn to_vec(&self, p: &PhasePoly) -> Result<SparseVec> {
        p.terms()
            .iter()
            .map(|(m, c)| match self.index.get(m) {
                Some(&i) => Ok((i, c.clone())),
                None => Err(Error::Truncation(format!(
                    "monomial {m} outside fiber degree {} / base degree {}",
                    self.trunc.k_max, self.trunc.m_max
                ))),
            })
            .collect()
    }

    pub fn to_poly(&self, v: &SparseVec) -> PhasePoly {
        let mut p = PhasePoly::zero(self.d);
        for (&i, c) in v {
            p.add_term(self.monomials[i].clone(), c.clone());
        }
        p
    }
}
