//! Polynomial vector fields on `g_{-1}`.

use num_traits::One;

use crate::poly::PhasePoly;
use crate::rational::Q;

/// `X = sum_i X^i d/dx_i` with polynomial components (no fiber dependence).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    components: Vec<PhasePoly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<PhasePoly>) -> Self {
        debug_assert!(components.iter().all(|c| c.is_base_only() && c.d() == components.len()));
        PolyVectorField { components }
    }

    pub fn zero(d: usize) -> Self {
        PolyVectorField { components: vec![PhasePoly::zero(d); d] }
    }

    /// `sum_i x^i d/dx_i`.
    pub fn euler(d: usize) -> Self {
        PolyVectorField { components: (0..d).map(|i| PhasePoly::x_var(d, i)).collect() }
    }

    /// The coordinate field `d/dx_i`.
    pub fn coordinate(d: usize, i: usize) -> Self {
        let mut f = Self::zero(d);
        f.components[i] = PhasePoly::constant(d, Q::one());
        f
    }

    pub fn d(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[PhasePoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &PhasePoly {
        &self.components[i]
    }

    /// Highest coefficient degree, `None` for the zero field.
    pub fn degree(&self) -> Option<usize> {
        self.components.iter().filter_map(PhasePoly::x_degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PhasePoly::is_zero)
    }

    /// Directional derivative `X.f = sum_i X^i df/dx_i`.
    pub fn apply(&self, f: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero(self.d());
        for (i, xi) in self.components.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let df = f.deriv_x(i);
            if !df.is_zero() {
                out.add_scaled(&xi.mul(&df), &Q::one());
            }
        }
        out
    }

    /// Jacobian entry `d X^i / d x_j`.
    pub fn jacobian(&self, i: usize, j: usize) -> PhasePoly {
        self.components[i].deriv_x(j)
    }

    pub fn divergence(&self) -> PhasePoly {
        let mut out = PhasePoly::zero(self.d());
        for i in 0..self.d() {
            out.add_scaled(&self.jacobian(i, i), &Q::one());
        }
        out
    }

    /// `[X, Y] = X(Y) - Y(X)`, the commutator of derivations.
    pub fn bracket(&self, other: &PolyVectorField) -> PolyVectorField {
        let components = (0..self.d())
            .map(|i| self.apply(&other.components[i]).sub(&other.apply(&self.components[i])))
            .collect();
        PolyVectorField { components }
    }

    pub fn add(&self, other: &PolyVectorField) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &PolyVectorField) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> PolyVectorField {
        PolyVectorField { components: self.components.iter().map(|c| c.scale(s)).collect() }
    }
}
