//! Symbols, differential operators and their Lie derivatives.
//!
//! A differential operator `sum c_alpha(x) D^alpha` from `lambda`-densities to
//! `mu`-densities is stored in normal-ordered form (all `x` left of all `D`)
//! as the [`PhasePoly`] `sum c_alpha(x) xi^alpha`. Normal ordering is then a
//! relabeling, and composition is the Leibniz product of the Weyl algebra.
//!
//! Three Lie derivatives act on these polynomials:
//!
//! * [`lie_density`]: `X.f + lambda div(X) f` on densities,
//! * [`lie_tensor`]: the natural action on symbols valued in `delta`-densities,
//! * [`lie_diffop`]: `L^mu_X o D - D o L^lambda_X`, transported to symbols.
//!
//! Their difference [`gamma`] vanishes on affine fields.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Monomial, PhasePoly};
use crate::rational::{falling, format_q, Q};
use crate::vector_field::PolyVectorField;

/// Source and target density weights of an operator module `D_{lambda,mu}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weights {
    pub lambda: Q,
    pub mu: Q,
}

impl Weights {
    pub fn new(lambda: Q, mu: Q) -> Self {
        Weights { lambda, mu }
    }

    /// The shift `mu - lambda`.
    pub fn delta(&self) -> Q {
        &self.mu - &self.lambda
    }
}

/// A symbol: polynomial in `x` and `xi` valued in `delta`-densities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub poly: PhasePoly,
    pub weights: Weights,
}

/// Normal-ordered differential operator `D_{lambda,mu}`; `xi_i` stands for `d/dx_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    pub poly: PhasePoly,
    pub weights: Weights,
}

/// A polynomial `lambda`-density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Density {
    pub poly: PhasePoly,
    pub weight: Q,
}

impl Density {
    pub fn new(poly: PhasePoly, weight: Q) -> Result<Self> {
        if !poly.is_base_only() {
            return Err(Error::Invariant("a density cannot depend on fiber variables".into()));
        }
        Ok(Density { poly, weight })
    }
}

impl DiffOperator {
    pub fn identity(d: usize, weight: Q) -> Self {
        DiffOperator { poly: PhasePoly::constant(d, Q::one()), weights: Weights::new(weight.clone(), weight) }
    }

    /// Applies the operator to a density of the source weight.
    pub fn apply(&self, f: &Density) -> Result<Density> {
        if f.weight != self.weights.lambda {
            return Err(Error::WeightMismatch(format!(
                "operator expects weight {}, density has {}",
                format_q(&self.weights.lambda),
                format_q(&f.weight)
            )));
        }
        let d = self.poly.d();
        let mut out = PhasePoly::zero(d);
        for (m, c) in self.poly.terms() {
            let mut g = f.poly.clone();
            for i in 0..d {
                for _ in 0..m.xi_exp(i) {
                    g = g.deriv_x(i);
                }
            }
            let coeff = PhasePoly::monomial(m.x_part(), c.clone());
            out.add_scaled(&coeff.mul(&g), &Q::one());
        }
        Ok(Density { poly: out, weight: self.weights.mu.clone() })
    }

    /// Top-order part of the total symbol.
    pub fn principal_symbol(&self) -> PhasePoly {
        match self.poly.xi_degree() {
            Some(k) => self.poly.xi_homogeneous(k),
            None => PhasePoly::zero(self.poly.d()),
        }
    }
}

/// Total symbol of `D`: `c_alpha D^alpha -> c_alpha xi^alpha`.
pub fn normal_order_symbol(op: &DiffOperator) -> Symbol {
    Symbol { poly: op.poly.clone(), weights: op.weights.clone() }
}

/// Inverse of [`normal_order_symbol`].
pub fn symbol_to_operator(p: &Symbol) -> DiffOperator {
    DiffOperator { poly: p.poly.clone(), weights: p.weights.clone() }
}

/// Normal-ordered product `A o B` in the Weyl algebra.
///
/// Uses `D^alpha o x^beta = sum_gamma C(alpha, gamma) beta!/(beta-gamma)! x^(beta-gamma) D^(alpha-gamma)`.
pub fn weyl_product(a: &PhasePoly, b: &PhasePoly) -> PhasePoly {
    let d = a.d();
    let mut out = PhasePoly::zero(d);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            // Each entry: (coefficient, gamma) built variable by variable.
            let mut partial: Vec<(i64, Vec<u8>)> = vec![(1, Vec::with_capacity(d))];
            for i in 0..d {
                let (alpha, beta) = (ma.xi_exp(i), mb.x_exp(i));
                let top = alpha.min(beta);
                let mut next = Vec::with_capacity(partial.len() * (top as usize + 1));
                for (c, g) in &partial {
                    for t in 0..=top {
                        let w = crate::rational::binomial(alpha as u64, t as u64);
                        let w: i64 = i64::try_from(w).expect("small binomial") * falling(beta as u32, t as u32);
                        let mut g2 = g.clone();
                        g2.push(t);
                        next.push((c * w, g2));
                    }
                }
                partial = next;
            }
            let coeff = ca * cb;
            for (w, gamma) in partial {
                let x: Vec<u8> = (0..d).map(|i| ma.x_exp(i) + mb.x_exp(i) - gamma[i]).collect();
                let xi: Vec<u8> = (0..d).map(|i| ma.xi_exp(i) - gamma[i] + mb.xi_exp(i)).collect();
                out.add_term(Monomial::from_parts(&x, &xi), &coeff * Q::from_integer(BigInt::from(w)));
            }
        }
    }
    out
}

/// `D1 o D2`; requires the target weight of `D2` to be the source weight of `D1`.
pub fn compose(d1: &DiffOperator, d2: &DiffOperator) -> Result<DiffOperator> {
    if d2.weights.mu != d1.weights.lambda {
        return Err(Error::WeightMismatch(format!(
            "cannot compose: inner operator lands in weight {}, outer expects {}",
            format_q(&d2.weights.mu),
            format_q(&d1.weights.lambda)
        )));
    }
    Ok(DiffOperator {
        poly: weyl_product(&d1.poly, &d2.poly),
        weights: Weights::new(d2.weights.lambda.clone(), d1.weights.mu.clone()),
    })
}

/// `L^lambda_X = X^i d_i + lambda div X` as a normal-ordered first-order operator.
pub fn density_lie_operator(x: &PolyVectorField, lambda: &Q) -> PhasePoly {
    let d = x.d();
    let mut out = x.divergence().scale(lambda);
    for i in 0..d {
        out.add_scaled(&x.component(i).mul(&PhasePoly::xi_var(d, i)), &Q::one());
    }
    out
}

/// `L^lambda_X f = X.f + lambda tr(DX) f`.
pub fn lie_density(x: &PolyVectorField, f: &Density) -> Density {
    let mut poly = x.apply(&f.poly);
    poly.add_scaled(&x.divergence().mul(&f.poly), &f.weight);
    Density { poly, weight: f.weight.clone() }
}

/// Precomputed natural Lie derivative `L^t_X` on symbols of shift `delta`.
///
/// `L^t_X P = sum X^i d_i P - sum (d_j X^i) xi_i dP/dxi_j + delta div(X) P`.
#[derive(Clone, Debug)]
pub struct TensorAction {
    field: PolyVectorField,
    /// Nonzero Jacobian entries `(i, j, d_j X^i)`.
    jacobian: Vec<(usize, usize, PhasePoly)>,
    div_term: PhasePoly,
}

impl TensorAction {
    pub fn new(field: &PolyVectorField, delta: &Q) -> Self {
        let d = field.d();
        let mut jacobian = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let jij = field.jacobian(i, j);
                if !jij.is_zero() {
                    jacobian.push((i, j, jij));
                }
            }
        }
        TensorAction { field: field.clone(), jacobian, div_term: field.divergence().scale(delta) }
    }

    pub fn apply(&self, p: &PhasePoly) -> PhasePoly {
        let d = p.d();
        let mut out = PhasePoly::zero(d);
        for (m, c) in p.terms() {
            for i in 0..d {
                let e = m.x_exp(i);
                if e == 0 || self.field.component(i).is_zero() {
                    continue;
                }
                let base = m.with_x_exp(i, e - 1);
                let s = c * Q::from_integer(e.into());
                for (mx, cx) in self.field.component(i).terms() {
                    out.add_term(base.times(mx), &s * cx);
                }
            }
            for (i, j, jij) in &self.jacobian {
                let e = m.xi_exp(*j);
                if e == 0 {
                    continue;
                }
                let lowered = m.with_xi_exp(*j, e - 1);
                let base = lowered.with_xi_exp(*i, lowered.xi_exp(*i) + 1);
                let s = -(c * Q::from_integer(e.into()));
                for (mx, cx) in jij.terms() {
                    out.add_term(base.times(mx), &s * cx);
                }
            }
            for (mx, cx) in self.div_term.terms() {
                out.add_term(m.times(mx), c * cx);
            }
        }
        out
    }
}

/// Natural Lie derivative of a symbol along `x` with shift `delta`.
pub fn lie_tensor(x: &PolyVectorField, p: &PhasePoly, delta: &Q) -> PhasePoly {
    TensorAction::new(x, delta).apply(p)
}

/// Lie derivative of the operator with total symbol `p`, returned as a total symbol.
pub fn lie_diffop(x: &PolyVectorField, p: &PhasePoly, lambda: &Q, mu: &Q) -> PhasePoly {
    let left = weyl_product(&density_lie_operator(x, mu), p);
    let right = weyl_product(p, &density_lie_operator(x, lambda));
    left.sub(&right)
}

/// Precomputed [`lie_diffop`] for a fixed field and weights.
#[derive(Clone, Debug)]
pub struct DiffOpAction {
    left: PhasePoly,
    right: PhasePoly,
}

impl DiffOpAction {
    pub fn new(field: &PolyVectorField, weights: &Weights) -> Self {
        DiffOpAction {
            left: density_lie_operator(field, &weights.mu),
            right: density_lie_operator(field, &weights.lambda),
        }
    }

    pub fn apply(&self, p: &PhasePoly) -> PhasePoly {
        weyl_product(&self.left, p).sub(&weyl_product(p, &self.right))
    }
}

/// Precomputed [`gamma`] for a fixed field and weights.
#[derive(Clone, Debug)]
pub struct GammaAction {
    diffop: DiffOpAction,
    tensor: TensorAction,
}

impl GammaAction {
    pub fn new(field: &PolyVectorField, weights: &Weights) -> Self {
        GammaAction { diffop: DiffOpAction::new(field, weights), tensor: TensorAction::new(field, &weights.delta()) }
    }

    pub fn apply(&self, p: &PhasePoly) -> PhasePoly {
        self.diffop.apply(p).sub(&self.tensor.apply(p))
    }
}

/// `gamma(X) = L^{lambda,mu}_X - L^t_X` applied to `p`.
pub fn gamma(x: &PolyVectorField, p: &PhasePoly, lambda: &Q, mu: &Q) -> PhasePoly {
    lie_diffop(x, p, lambda, mu).sub(&lie_tensor(x, p, &(mu - lambda)))
}

impl Symbol {
    pub fn new(poly: PhasePoly, weights: Weights) -> Self {
        Symbol { poly, weights }
    }

    pub fn lie_tensor(&self, x: &PolyVectorField) -> Symbol {
        Symbol { poly: lie_tensor(x, &self.poly, &self.weights.delta()), weights: self.weights.clone() }
    }

    pub fn lie_diffop(&self, x: &PolyVectorField) -> Symbol {
        Symbol { poly: lie_diffop(x, &self.poly, &self.weights.lambda, &self.weights.mu), weights: self.weights.clone() }
    }

    pub fn gamma(&self, x: &PolyVectorField) -> Symbol {
        Symbol { poly: gamma(x, &self.poly, &self.weights.lambda, &self.weights.mu), weights: self.weights.clone() }
    }
}
