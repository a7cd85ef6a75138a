//! Polynomials on phase space `V x V*`.
//!
//! A [`PhasePoly`] lives in `2d` commuting variables: base coordinates
//! `x_1..x_d` and fiber coordinates `xi_1..xi_d`. The same container is used
//! for symbols, for normal-ordered differential operators (where `xi_i` stands
//! for `d/dx_i`), for densities and for the components of vector fields
//! (both with no `xi` dependence).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::rational::{format_q, Q};

/// Exponent vector: `d` base exponents followed by `d` fiber exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[u8; 32]>);

impl Monomial {
    pub fn one(d: usize) -> Self {
        Monomial(SmallVec::from_elem(0, 2 * d))
    }

    pub fn from_parts(x: &[u8], xi: &[u8]) -> Self {
        assert_eq!(x.len(), xi.len());
        let mut v: SmallVec<[u8; 32]> = SmallVec::with_capacity(2 * x.len());
        v.extend_from_slice(x);
        v.extend_from_slice(xi);
        Monomial(v)
    }

    pub fn d(&self) -> usize {
        self.0.len() / 2
    }

    pub fn x(&self) -> &[u8] {
        &self.0[..self.d()]
    }

    pub fn xi(&self) -> &[u8] {
        let d = self.d();
        &self.0[d..]
    }

    pub fn x_exp(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn xi_exp(&self, i: usize) -> u8 {
        self.0[self.d() + i]
    }

    pub fn x_degree(&self) -> usize {
        self.x().iter().map(|&e| e as usize).sum()
    }

    pub fn xi_degree(&self) -> usize {
        self.xi().iter().map(|&e| e as usize).sum()
    }

    pub fn with_x_exp(&self, i: usize, e: u8) -> Self {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    pub fn with_xi_exp(&self, i: usize, e: u8) -> Self {
        let mut m = self.clone();
        let d = m.d();
        m.0[d + i] = e;
        m
    }

    /// Componentwise sum of exponents.
    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Same base exponents, fiber part dropped.
    pub fn x_part(&self) -> Monomial {
        Monomial::from_parts(self.x(), &vec![0; self.d()])
    }

    pub fn xi_part(&self) -> Monomial {
        Monomial::from_parts(&vec![0; self.d()], self.xi())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.x().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for (i, &e) in self.xi().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("p{}", i + 1)),
                _ => parts.push(format!("p{}^{}", i + 1, e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Finitely supported polynomial in `x` and `xi` with exact coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PhasePoly {
    d: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl fmt::Debug for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("({})*{}", format_q(c), m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl PhasePoly {
    pub fn zero(d: usize) -> Self {
        PhasePoly { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: Q) -> Self {
        let mut p = Self::zero(d);
        p.add_term(Monomial::one(d), c);
        p
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(m.d());
        p.add_term(m, c);
        p
    }

    pub fn x_var(d: usize, i: usize) -> Self {
        Self::monomial(Monomial::one(d).with_x_exp(i, 1), Q::one())
    }

    pub fn xi_var(d: usize, i: usize) -> Self {
        Self::monomial(Monomial::one(d).with_xi_exp(i, 1), Q::one())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Accumulates `c * m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.d(), self.d);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PhasePoly, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn add(&self, other: &PhasePoly) -> PhasePoly {
        let mut p = self.clone();
        p.add_scaled(other, &Q::one());
        p
    }

    pub fn sub(&self, other: &PhasePoly) -> PhasePoly {
        let mut p = self.clone();
        p.add_scaled(other, &-Q::one());
        p
    }

    pub fn scale(&self, s: &Q) -> PhasePoly {
        if s.is_zero() {
            return PhasePoly::zero(self.d);
        }
        PhasePoly { d: self.d, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn neg(&self) -> PhasePoly {
        self.scale(&-Q::one())
    }

    /// Commutative product.
    pub fn mul(&self, other: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero(self.d);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }

    pub fn deriv_x(&self, i: usize) -> PhasePoly {
        let mut out = PhasePoly::zero(self.d);
        for (m, c) in &self.terms {
            let e = m.x_exp(i);
            if e > 0 {
                out.add_term(m.with_x_exp(i, e - 1), c * Q::from_integer(e.into()));
            }
        }
        out
    }

    pub fn deriv_xi(&self, i: usize) -> PhasePoly {
        let mut out = PhasePoly::zero(self.d);
        for (m, c) in &self.terms {
            let e = m.xi_exp(i);
            if e > 0 {
                out.add_term(m.with_xi_exp(i, e - 1), c * Q::from_integer(e.into()));
            }
        }
        out
    }

    /// Largest fiber degree present, `None` for the zero polynomial.
    pub fn xi_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::xi_degree).max()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::x_degree).max()
    }

    pub fn min_xi_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::xi_degree).min()
    }

    /// Terms of fiber degree exactly `k`.
    pub fn xi_homogeneous(&self, k: usize) -> PhasePoly {
        self.filter(|m| m.xi_degree() == k)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> PhasePoly {
        PhasePoly {
            d: self.d,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// True when no term involves the fiber variables.
    pub fn is_base_only(&self) -> bool {
        self.terms.keys().all(|m| m.xi_degree() == 0)
    }

    pub fn is_constant_in_x(&self) -> bool {
        self.terms.keys().all(|m| m.x_degree() == 0)
    }
}
