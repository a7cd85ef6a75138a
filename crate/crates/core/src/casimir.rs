//! Casimir eigenvalues in closed form and Casimir matrices on truncated symbol spaces.
//!
//! On `S^k`, the Casimir operator of the natural action is a scalar on each
//! irreducible summand `I` of the `k`-th symmetric power of `g_{-1}`:
//!
//! ```text
//! (1/2d)(d delta - k)(d(delta - 1) - k) + dim h0 / (2 (mu_g, mu_g + S) d + dim h0) (mu_I, mu_I + S)
//! ```
//!
//! where `mu_g` is the highest weight of `g_{-1}` itself. [`eigenvalue_orthogonal`]
//! and [`eigenvalue_symplectic`] are the same value expanded for each family.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Algebra, AlgebraSpec, DualBasisPackage, Family};
use crate::error::{Error, Result};
use crate::ferrers::{admissible_diagrams, dim_irrep, g_minus_one_diagram, FerrersDiagram};
use crate::linalg::{apply_annihilator, lagrange_project, SparseMatrix, SparseVec};
use crate::poly::PhasePoly;
use crate::rational::{format_q, q, qr, Q};
use crate::space::{count_of_degree, SymbolSpace, Truncation};
use crate::symbol::{DiffOpAction, GammaAction, TensorAction, Weights};

/// Integer coordinates `(k_1, .., k_n)` in the basis `delta_i` of the Cartan dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn from_diagram(diagram: &FerrersDiagram, n: usize) -> Self {
        WeightVector(diagram.padded(n).into_iter().map(i64::from).collect())
    }

    /// The `i`-th fundamental coordinate vector `delta_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        WeightVector(v)
    }
}

/// `(mu_1, mu_2) = sum k_i l_j (n delta_ij - 1) / (2 n^2)`.
pub fn weight_inner(a: &WeightVector, b: &WeightVector, n: usize) -> Q {
    let n_i = n as i64;
    let mut s = 0i64;
    for (i, ki) in a.0.iter().enumerate() {
        for (j, lj) in b.0.iter().enumerate() {
            s += ki * lj * (if i == j { n_i - 1 } else { -1 });
        }
    }
    qr(s, 2 * n_i * n_i)
}

/// `(delta_i, S)` for 1-based `i`: `(n - 2i + 1) / (2n)`.
pub fn delta_s_pairing(i: usize, n: usize) -> Q {
    qr(n as i64 - 2 * i as i64 + 1, 2 * n as i64)
}

/// `(mu, mu + S)` by the closed double sum, with `S = 2 sum_j (n - j) delta_j`.
#[allow(non_snake_case)]
pub fn mu_mu_plus_S(diagram: &FerrersDiagram, n: usize) -> Result<Q> {
    if diagram.len() > n {
        return Err(Error::InvalidDiagram(format!("{diagram} has more than {n} rows")));
    }
    let k: Vec<i64> = diagram.padded(n).into_iter().map(i64::from).collect();
    let n_i = n as i64;
    let mut s = 0i64;
    for i in 0..n {
        for j in 0..n {
            let g = if i == j { n_i - 1 } else { -1 };
            s += k[i] * k[j] * g + 2 * k[i] * (n_i - (j as i64 + 1)) * g;
        }
    }
    Ok(qr(s, 2 * n_i * n_i))
}

/// `(mu, mu + S)` as `(mu, mu) + sum k_i (delta_i, S)`, an independent route.
#[allow(non_snake_case)]
pub fn mu_mu_plus_S_split(diagram: &FerrersDiagram, n: usize) -> Q {
    let w = WeightVector::from_diagram(diagram, n);
    let mut s = weight_inner(&w, &w, n);
    for (i, ki) in w.0.iter().enumerate() {
        s += delta_s_pairing(i + 1, n) * q(*ki);
    }
    s
}

/// `c2 delta^2 + c1 delta + c0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenvaluePoly {
    pub c2: Q,
    pub c1: Q,
    pub c0: Q,
}

impl EigenvaluePoly {
    pub fn new(c2: Q, c1: Q, c0: Q) -> Self {
        EigenvaluePoly { c2, c1, c0 }
    }

    pub fn eval(&self, delta: &Q) -> Q {
        (&self.c2 * delta + &self.c1) * delta + &self.c0
    }

    pub fn sub(&self, o: &EigenvaluePoly) -> EigenvaluePoly {
        EigenvaluePoly { c2: &self.c2 - &o.c2, c1: &self.c1 - &o.c1, c0: &self.c0 - &o.c0 }
    }

    pub fn is_zero(&self) -> bool {
        self.c2.is_zero() && self.c1.is_zero() && self.c0.is_zero()
    }

    /// Root of a polynomial of degree exactly one.
    pub fn linear_root(&self) -> Option<Q> {
        (self.c2.is_zero() && !self.c1.is_zero()).then(|| -&self.c0 / &self.c1)
    }
}

impl fmt::Display for EigenvaluePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*delta^2 + ({})*delta + ({})", format_q(&self.c2), format_q(&self.c1), format_q(&self.c0))
    }
}

fn half_box_count(diagram: &FerrersDiagram) -> Result<i64> {
    let b = diagram.boxes() as i64;
    if b % 2 != 0 {
        return Err(Error::OddBoxCount(b));
    }
    Ok(b / 2)
}

/// `sum_i k_i (k_i - 2i)` with 1-based `i`.
fn row_sum(diagram: &FerrersDiagram) -> i64 {
    diagram.rows().iter().enumerate().map(|(i, &k)| k as i64 * (k as i64 - 2 * (i as i64 + 1))).sum()
}

/// Eigenvalue from the general formula, for a summand of fiber degree `k`.
pub fn eigenvalue_general(diagram: &FerrersDiagram, spec: &AlgebraSpec, k: usize) -> Result<EigenvaluePoly> {
    let (n, d) = (spec.n, q(spec.d as i64));
    let k = q(k as i64);
    let dim_h0 = q(spec.dim_h0 as i64);
    let c2 = &d / q(2);
    let c1 = -(&d + q(2) * &k) / q(2);
    let c0 = &k * (&d + &k) / (q(2) * &d);
    let mu_g = mu_mu_plus_S(&g_minus_one_diagram(spec.family), n)?;
    let coeff = &dim_h0 / (q(2) * mu_g * &d + &dim_h0);
    let c0 = c0 + coeff * mu_mu_plus_S(diagram, n)?;
    Ok(EigenvaluePoly::new(c2, c1, c0))
}

/// Orthogonal family: `n(n-1)/4 delta^2 - (k + n(n-1)/4) delta + nk/(n-1) + sum k_i(k_i - 2i)/(4(n-1))`.
pub fn eigenvalue_orthogonal(diagram: &FerrersDiagram, n: usize) -> Result<EigenvaluePoly> {
    let k = half_box_count(diagram)?;
    let n = n as i64;
    let a = qr(n * (n - 1), 4);
    let c1 = -(q(k) + &a);
    let c0 = qr(n * k, n - 1) + qr(row_sum(diagram), 4 * (n - 1));
    Ok(EigenvaluePoly::new(a, c1, c0))
}

/// Symplectic family: `n(n+1)/4 delta^2 - (k + n(n+1)/4) delta + k + sum k_i(k_i - 2i)/(4(n+1))`.
pub fn eigenvalue_symplectic(diagram: &FerrersDiagram, n: usize) -> Result<EigenvaluePoly> {
    let k = half_box_count(diagram)?;
    let n = n as i64;
    let a = qr(n * (n + 1), 4);
    let c1 = -(q(k) + &a);
    let c0 = q(k) + qr(row_sum(diagram), 4 * (n + 1));
    Ok(EigenvaluePoly::new(a, c1, c0))
}

/// Family-specific closed form.
pub fn eigenvalue(diagram: &FerrersDiagram, spec: &AlgebraSpec) -> Result<EigenvaluePoly> {
    match spec.family {
        Family::Orthogonal => eigenvalue_orthogonal(diagram, spec.n),
        Family::Symplectic => eigenvalue_symplectic(diagram, spec.n),
    }
}

/// Which module the Lie derivatives act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    /// Symbols with the natural action `L^t`.
    TensorFields,
    /// Differential operators `L^{lambda,mu}`, transported to symbols.
    DiffOps,
}

/// Lie derivative along a fixed field in one of the two modules.
#[derive(Clone, Debug)]
pub enum LieAction {
    Tensor(TensorAction),
    DiffOp(DiffOpAction),
}

impl LieAction {
    pub fn new(rep: Representation, field: &crate::vector_field::PolyVectorField, weights: &Weights) -> Self {
        match rep {
            Representation::TensorFields => LieAction::Tensor(TensorAction::new(field, &weights.delta())),
            Representation::DiffOps => LieAction::DiffOp(DiffOpAction::new(field, weights)),
        }
    }

    pub fn apply(&self, p: &PhasePoly) -> PhasePoly {
        match self {
            LieAction::Tensor(t) => t.apply(p),
            LieAction::DiffOp(o) => o.apply(p),
        }
    }
}

/// `sum rho(b) rho(b*)` over a dual-basis package, applied to polynomials.
#[derive(Clone, Debug)]
pub struct CasimirOperator {
    pairs: Vec<(LieAction, LieAction)>,
}

impl CasimirOperator {
    pub fn new(rep: Representation, alg: &Algebra, pkg: &DualBasisPackage, weights: &Weights) -> Result<Self> {
        let spec = alg.spec();
        let pairs = pkg
            .casimir_pairs()
            .iter()
            .map(|(b, bs)| {
                let fb = spec.realize_vector_field(b)?;
                let fbs = spec.realize_vector_field(bs)?;
                Ok((LieAction::new(rep, &fb, weights), LieAction::new(rep, &fbs, weights)))
            })
            .collect::<Result<_>>()?;
        Ok(CasimirOperator { pairs })
    }

    pub fn apply(&self, p: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero(p.d());
        for (b, bs) in &self.pairs {
            let inner = bs.apply(p);
            if !inner.is_zero() {
                out.add_scaled(&b.apply(&inner), &Q::one());
            }
        }
        out
    }
}

/// `N_C = 2 sum_i gamma(eps_i) o L^t_{e_i}`.
#[derive(Clone, Debug)]
pub struct NcOperator {
    terms: Vec<(TensorAction, GammaAction)>,
}

impl NcOperator {
    pub fn new(alg: &Algebra, pkg: &DualBasisPackage, weights: &Weights) -> Result<Self> {
        let spec = alg.spec();
        let terms = pkg
            .e
            .iter()
            .zip(&pkg.eps)
            .map(|(e, eps)| {
                let fe = spec.realize_vector_field(e)?;
                let feps = spec.realize_vector_field(eps)?;
                Ok((TensorAction::new(&fe, &weights.delta()), GammaAction::new(&feps, weights)))
            })
            .collect::<Result<_>>()?;
        Ok(NcOperator { terms })
    }

    pub fn apply(&self, p: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero(p.d());
        for (le, g) in &self.terms {
            let inner = le.apply(p);
            if !inner.is_zero() {
                out.add_scaled(&g.apply(&inner), &q(2));
            }
        }
        out
    }
}

/// An operator on a truncated symbol space, by columns in the monomial basis.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub space: Arc<SymbolSpace>,
    pub matrix: SparseMatrix,
    pub spec: AlgebraSpec,
    pub weights: Weights,
}

impl OperatorMatrix {
    pub fn truncation(&self) -> Truncation {
        self.space.truncation()
    }

    /// The square diagonal block of fiber degree `k` and base degree `m`.
    pub fn block(&self, k: usize, m: usize) -> SparseMatrix {
        self.matrix.submatrix(self.space.block(k, m))
    }
}

/// Matrix of `f` on `space`; fails if some image leaves the truncation.
pub fn assemble(space: &SymbolSpace, f: impl Fn(&PhasePoly) -> PhasePoly) -> Result<SparseMatrix> {
    let cols = (0..space.dim()).map(|j| space.to_vec(&f(&space.basis_poly(j)))).collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(space.dim(), cols))
}

/// Casimir matrix with the standard dual bases.
pub fn casimir_matrix(rep: Representation, alg: &Algebra, weights: &Weights, trunc: Truncation) -> Result<OperatorMatrix> {
    let pkg = alg.dual_bases()?;
    let space = Arc::new(SymbolSpace::new(alg.spec().d, trunc));
    casimir_matrix_with(rep, alg, &pkg, weights, space)
}

/// Casimir matrix for a given dual-basis package on a given space.
///
/// Intermediate polynomials are never truncated, so no working margin is
/// needed; the result is checked to land back in `space`.
pub fn casimir_matrix_with(
    rep: Representation,
    alg: &Algebra,
    pkg: &DualBasisPackage,
    weights: &Weights,
    space: Arc<SymbolSpace>,
) -> Result<OperatorMatrix> {
    let op = CasimirOperator::new(rep, alg, pkg, weights)?;
    let matrix = assemble(&space, |p| op.apply(p))?;
    Ok(OperatorMatrix { space, matrix, spec: *alg.spec(), weights: weights.clone() })
}

/// Matrix of `N_C` on the truncated space.
pub fn n_c_matrix(alg: &Algebra, weights: &Weights, trunc: Truncation) -> Result<OperatorMatrix> {
    let pkg = alg.dual_bases()?;
    let op = NcOperator::new(alg, &pkg, weights)?;
    let space = Arc::new(SymbolSpace::new(alg.spec().d, trunc));
    let matrix = assemble(&space, |p| op.apply(p))?;
    Ok(OperatorMatrix { space, matrix, spec: *alg.spec(), weights: weights.clone() })
}

/// Distinct predicted eigenvalues on the `(k, m)` block at shift `delta`,
/// each with its expected multiplicity `dim(I) * #(base monomials of degree m)`.
pub fn predicted_spectrum(spec: &AlgebraSpec, k: usize, m: usize, delta: &Q) -> Result<Vec<(Q, usize)>> {
    let xcount = count_of_degree(spec.d, m);
    let mut out: Vec<(Q, usize)> = Vec::new();
    for dg in admissible_diagrams(spec, k) {
        let v = eigenvalue(&dg, spec)?.eval(delta);
        let mult = dim_irrep(&dg, spec.n)? as usize * xcount;
        match out.iter_mut().find(|(w, _)| *w == v) {
            Some(entry) => entry.1 += mult,
            None => out.push((v, mult)),
        }
    }
    Ok(out)
}

/// Outcome of comparing one block of an explicit Casimir matrix with the closed forms.
#[derive(Clone, Debug)]
pub struct BlockSpectrum {
    pub k: usize,
    pub m: usize,
    pub predicted: Vec<(Q, usize)>,
    /// Whether `prod (C - v)` kills the block.
    pub annihilated: bool,
    /// Trace of each Lagrange projector, aligned with `predicted`.
    pub traces: Vec<Q>,
}

impl BlockSpectrum {
    pub fn matches(&self) -> bool {
        self.annihilated && self.predicted.iter().zip(&self.traces).all(|((_, m), t)| *t == q(*m as i64))
    }
}

/// Checks the `(k, m)` block of `c` against [`predicted_spectrum`] at `delta`.
pub fn check_block_spectrum(c: &OperatorMatrix, k: usize, m: usize, delta: &Q) -> Result<BlockSpectrum> {
    let predicted = predicted_spectrum(&c.spec, k, m, delta)?;
    let values: Vec<Q> = predicted.iter().map(|(v, _)| v.clone()).collect();
    let range = c.space.block(k, m);
    let unit = |j: usize| SparseVec::from([(j, Q::one())]);
    let annihilated = range.clone().all(|j| apply_annihilator(&c.matrix, &values, &unit(j)).is_empty());
    let traces = (0..values.len())
        .map(|w| {
            range
                .clone()
                .map(|j| lagrange_project(&c.matrix, &values, w, &unit(j)).get(&j).cloned().unwrap_or_else(Q::zero))
                .sum()
        })
        .collect();
    Ok(BlockSpectrum { k, m, predicted, annihilated, traces })
}
