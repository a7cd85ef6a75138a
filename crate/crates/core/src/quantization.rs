//! Equivariant quantization by a triangular solve.
//!
//! For `P` in an eigenspace of `C(L^t)` with eigenvalue `alpha`, the quantized
//! symbol `P^ = P_k + P_{k-1} + ...` is the eigenvector of `C(L^{lambda,mu})`
//! with the same eigenvalue and principal part `P`. Since
//! `C(L^{lambda,mu}) = C(L^t) + N_C` and `N_C` lowers fiber degree by one,
//! each lower component is solved from the one above:
//!
//! ```text
//! (alpha - beta_q) pi_q(P_l) = pi_q(N_C P_{l+1})
//! ```
//!
//! where `pi_q` projects onto the `beta_q`-eigenspace of `C(L^t)` in `S^l`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Algebra, AlgebraSpec, GradedElement};
use crate::casimir::{
    casimir_matrix_with, check_block_spectrum, eigenvalue, NcOperator, OperatorMatrix, Representation,
};
use crate::critical::is_critical;
use crate::error::{Error, Result};
use crate::ferrers::{admissible_diagrams, dim_irrep, FerrersDiagram};
use crate::linalg::{lagrange_project, sv_add_scaled, sv_scale, EchelonBasis, Matrix, SparseMatrix, SparseVec};
use crate::poly::{Monomial, PhasePoly};
use crate::rational::{format_q, Q};
use crate::space::{SymbolSpace, Truncation};
use crate::symbol::{DiffOpAction, GammaAction, TensorAction, Weights};

fn join(ds: &[FerrersDiagram]) -> String {
    ds.iter().map(|d| format!("({d})")).collect::<Vec<_>>().join("+")
}

/// Spectral data of `C(L^t)` on a truncation at a fixed shift.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub delta: Q,
    pub casimir: OperatorMatrix,
    /// For each fiber degree `k`, the distinct eigenvalues with the diagrams carrying them.
    pub values: Vec<Vec<(Q, Vec<FerrersDiagram>)>>,
}

impl EigenDecomposition {
    /// Builds `C(L^t)` and checks that every `(k, m)` block splits over the
    /// predicted eigenvalues with the predicted multiplicities.
    pub fn new(alg: &Algebra, delta: &Q, trunc: Truncation) -> Result<Self> {
        let spec = alg.spec();
        let weights = Weights::new(Q::zero(), delta.clone());
        let space = Arc::new(SymbolSpace::new(spec.d, trunc));
        let casimir = casimir_matrix_with(Representation::TensorFields, alg, &alg.dual_bases()?, &weights, space)?;
        let mut values = Vec::new();
        for k in 0..=trunc.k_max {
            let mut level: Vec<(Q, Vec<FerrersDiagram>)> = Vec::new();
            for dg in admissible_diagrams(spec, k) {
                let v = eigenvalue(&dg, spec)?.eval(delta);
                match level.iter_mut().find(|(w, _)| *w == v) {
                    Some(entry) => entry.1.push(dg),
                    None => level.push((v, vec![dg])),
                }
            }
            for m in 0..=trunc.m_max {
                let report = check_block_spectrum(&casimir, k, m, delta)?;
                if !report.matches() {
                    return Err(Error::Invariant(format!(
                        "Casimir block ({k},{m}) does not split over the predicted eigenvalues at delta = {}",
                        format_q(delta)
                    )));
                }
            }
            values.push(level);
        }
        Ok(EigenDecomposition { delta: delta.clone(), casimir, values })
    }

    pub fn space(&self) -> &Arc<SymbolSpace> {
        &self.casimir.space
    }

    fn level_values(&self, k: usize) -> Vec<Q> {
        self.values[k].iter().map(|(v, _)| v.clone()).collect()
    }

    /// Projection of `v` (supported in fiber degree `k`) onto the `which`-th eigenspace of that degree.
    pub fn project(&self, v: &SparseVec, k: usize, which: usize) -> SparseVec {
        lagrange_project(&self.casimir.matrix, &self.level_values(k), which, v)
    }

    /// Reorders the eigenvalue list of every degree; the projectors do not depend on the order.
    pub fn permute_values(&mut self, perm: impl Fn(usize) -> Vec<usize>) {
        for level in self.values.iter_mut() {
            let p = perm(level.len());
            *level = p.iter().map(|&i| level[i].clone()).collect();
        }
    }

    /// Distinct eigenvalues over all degrees with their projector matrices.
    pub fn projectors(&self) -> Vec<(Q, SparseMatrix)> {
        let space = self.space();
        let mut all: BTreeMap<Q, Vec<SparseVec>> = BTreeMap::new();
        for k in 0..self.values.len() {
            for v in self.level_values(k) {
                all.entry(v).or_insert_with(|| vec![SparseVec::new(); space.dim()]);
            }
        }
        for ((k, _), range) in space.blocks() {
            for j in range {
                let e = SparseVec::from([(j, Q::one())]);
                for (w, (v, _)) in self.values[k].iter().enumerate() {
                    all.get_mut(v).expect("registered")[j] = self.project(&e, k, w);
                }
            }
        }
        all.into_iter().map(|(v, cols)| (v, SparseMatrix::from_columns(space.dim(), cols))).collect()
    }
}

/// Convenience wrapper for [`EigenDecomposition::new`].
pub fn eigen_decompose(alg: &Algebra, delta: &Q, trunc: Truncation) -> Result<EigenDecomposition> {
    EigenDecomposition::new(alg, delta, trunc)
}

/// Solves the triangular system for symbols on a fixed truncation.
#[derive(Clone, Debug)]
pub struct Quantizer {
    spec: AlgebraSpec,
    weights: Weights,
    decomposition: EigenDecomposition,
    nc: NcOperator,
}

impl Quantizer {
    /// Refuses shifts that are critical up to the truncation degree.
    pub fn new(alg: &Algebra, weights: &Weights, trunc: Truncation) -> Result<Self> {
        let spec = *alg.spec();
        let report = is_critical(&weights.lambda, &weights.mu, &spec, trunc.k_max)?;
        if report.critical {
            let w: Vec<String> = report.witnesses.iter().map(|(u, l)| format!("{u} / {l}")).collect();
            return Err(Error::Critical(format!(
                "delta = {} is critical up to degree {} ({})",
                format_q(&report.delta),
                trunc.k_max,
                w.join(", ")
            )));
        }
        let decomposition = EigenDecomposition::new(alg, &weights.delta(), trunc)?;
        let nc = NcOperator::new(alg, &alg.dual_bases()?, weights)?;
        Ok(Quantizer { spec, weights: weights.clone(), decomposition, nc })
    }

    pub fn decomposition(&self) -> &EigenDecomposition {
        &self.decomposition
    }

    pub fn decomposition_mut(&mut self) -> &mut EigenDecomposition {
        &mut self.decomposition
    }

    pub fn space(&self) -> &Arc<SymbolSpace> {
        self.decomposition.space()
    }

    /// Quantizes `p`, an eigenvector of `C(L^t)` in degree `k` for the `which`-th eigenvalue.
    pub fn quantize_eigenvector(&self, p: &SparseVec, k: usize, which: usize) -> Result<SparseVec> {
        let space = self.space();
        let (alpha, upper) = &self.decomposition.values[k][which];
        let mut total = p.clone();
        let mut current = p.clone();
        for l in (0..k).rev() {
            let rhs = space.to_vec(&self.nc.apply(&space.to_poly(&current)))?;
            let mut next = SparseVec::new();
            if !rhs.is_empty() {
                for (q, (beta, lower)) in self.decomposition.values[l].iter().enumerate() {
                    let part = self.decomposition.project(&rhs, l, q);
                    if part.is_empty() {
                        // includes collisions outside the tree, where both sides vanish
                        continue;
                    }
                    if alpha == beta {
                        return Err(Error::ZeroDivisor {
                            alpha: format_q(alpha),
                            upper: format!("{}@{k}", join(upper)),
                            lower: format!("{}@{l}", join(lower)),
                        });
                    }
                    sv_add_scaled(&mut next, &part, &(alpha - beta).recip());
                }
            }
            sv_add_scaled(&mut total, &next, &Q::one());
            current = next;
        }
        Ok(total)
    }

    /// Quantizes a vector supported in a single fiber degree `k`.
    pub fn quantize_homogeneous(&self, v: &SparseVec, k: usize) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for which in 0..self.decomposition.values[k].len() {
            let part = self.decomposition.project(v, k, which);
            if !part.is_empty() {
                sv_add_scaled(&mut out, &self.quantize_eigenvector(&part, k, which)?, &Q::one());
            }
        }
        Ok(out)
    }

    /// Quantizes an arbitrary symbol in the truncation.
    pub fn quantize(&self, p: &PhasePoly) -> Result<PhasePoly> {
        let space = self.space();
        let v = space.to_vec(p)?;
        let mut by_degree: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (i, c) in v {
            by_degree.entry(space.monomial(i).xi_degree()).or_default().insert(i, c);
        }
        let mut out = SparseVec::new();
        for (k, part) in by_degree {
            sv_add_scaled(&mut out, &self.quantize_homogeneous(&part, k)?, &Q::one());
        }
        Ok(space.to_poly(&out))
    }

    /// The quantization map on the whole truncation.
    pub fn matrix(&self) -> Result<QuantizationMap> {
        let space = self.space().clone();
        let mut cols = Vec::with_capacity(space.dim());
        for j in 0..space.dim() {
            let (k, _) = space.block_of(j);
            cols.push(self.quantize_homogeneous(&SparseVec::from([(j, Q::one())]), k)?);
        }
        let matrix = OperatorMatrix {
            matrix: SparseMatrix::from_columns(space.dim(), cols),
            space,
            spec: self.spec,
            weights: self.weights.clone(),
        };
        Ok(QuantizationMap { matrix, verified_on_margin: false })
    }
}

/// Quantizes a single eigenvector of `C(L^t)`.
///
/// Fails unless `p` is fiber-homogeneous and an eigenvector, and on critical shifts.
pub fn quantize_symbol(alg: &Algebra, p: &PhasePoly, weights: &Weights, trunc: Truncation) -> Result<PhasePoly> {
    let quantizer = Quantizer::new(alg, weights, trunc)?;
    let space = quantizer.space();
    let k = match (p.min_xi_degree(), p.xi_degree()) {
        (Some(a), Some(b)) if a == b => a,
        (None, None) => return Ok(p.clone()),
        _ => return Err(Error::Invariant("symbol is not homogeneous in the fiber".into())),
    };
    let v = space.to_vec(p)?;
    let image = quantizer.decomposition.casimir.matrix.apply(&v);
    let which = quantizer.decomposition.values[k]
        .iter()
        .position(|(a, _)| sv_scale(&v, a) == image)
        .ok_or_else(|| Error::Invariant("symbol is not an eigenvector of the Casimir operator".into()))?;
    Ok(space.to_poly(&quantizer.quantize_eigenvector(&v, k, which)?))
}

/// Matrix of a quantization map on a truncation.
#[derive(Clone, Debug)]
pub struct QuantizationMap {
    pub matrix: OperatorMatrix,
    pub verified_on_margin: bool,
}

/// Builds the quantization matrix; fails on critical shifts.
pub fn quantization_matrix(alg: &Algebra, weights: &Weights, trunc: Truncation) -> Result<QuantizationMap> {
    Quantizer::new(alg, weights, trunc)?.matrix()
}

impl QuantizationMap {
    /// Identity diagonal and only strictly lower fiber degrees below it.
    pub fn is_unipotent_triangular(&self) -> bool {
        let space = &self.matrix.space;
        (0..space.dim()).all(|j| {
            let (k, _) = space.block_of(j);
            self.matrix.matrix.column(j).iter().all(|(&i, c)| {
                if i == j {
                    c.is_one()
                } else {
                    space.monomial(i).xi_degree() < k
                }
            })
        })
    }

    /// Applies the map to a symbol in the truncation.
    pub fn apply(&self, p: &PhasePoly) -> Result<PhasePoly> {
        let space = &self.matrix.space;
        Ok(space.to_poly(&self.matrix.matrix.apply(&space.to_vec(p)?)))
    }

    /// Runs [`verify_equivariance`] and records a clean result.
    pub fn verify(&mut self) -> Result<EquivarianceReport> {
        let report = verify_equivariance(self)?;
        self.verified_on_margin = report.violations.is_empty();
        Ok(report)
    }
}

/// Outcome of an equivariance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    /// Number of `(X, P)` pairs compared.
    pub checked: usize,
    /// Base-degree bound of the test symbols.
    pub margin_degree: usize,
    /// Violating pairs as `(index of X in the algebra basis, basis index of P)`.
    pub violations: Vec<(usize, usize)>,
}

/// Checks `L^{lambda,mu}_X(Q P) = Q(L^t_X P)` for every basis element `X` of
/// the algebra and every basis symbol `P` of base degree `<= M - 1`.
pub fn verify_equivariance(map: &QuantizationMap) -> Result<EquivarianceReport> {
    let spec = map.matrix.spec;
    let weights = &map.matrix.weights;
    let space = &map.matrix.space;
    let trunc = space.truncation();
    if trunc.m_max == 0 {
        return Err(Error::Truncation("equivariance needs base degree at least 1".into()));
    }
    let margin = trunc.m_max - 1;
    let mut report = EquivarianceReport { checked: 0, margin_degree: margin, violations: Vec::new() };
    for (xi, x) in spec.basis().iter().enumerate() {
        let field = spec.realize_vector_field(x)?;
        let ops = DiffOpAction::new(&field, weights);
        let tensor = TensorAction::new(&field, &weights.delta());
        for j in 0..space.dim() {
            if space.monomial(j).x_degree() > margin {
                continue;
            }
            let p = space.basis_poly(j);
            let lhs = ops.apply(&map.apply(&p)?);
            let rhs = map.apply(&tensor.apply(&p))?;
            report.checked += 1;
            if lhs != rhs {
                report.violations.push((xi, j));
            }
        }
    }
    Ok(report)
}

/// `gl(n)` weight of a fiber monomial: each `xi_(i,j)` contributes `e_i + e_j`.
pub fn monomial_weight(spec: &AlgebraSpec, m: &Monomial) -> Vec<i64> {
    let mut w = vec![0i64; spec.n];
    for (idx, (i, j)) in spec.pairs().into_iter().enumerate() {
        let e = m.xi_exp(idx) as i64;
        w[i] += e;
        w[j] += e;
    }
    w
}

/// Successive images of an irreducible summand under `gamma(g_1)`.
#[derive(Clone, Debug)]
pub struct GammaTree {
    pub root: FerrersDiagram,
    pub k: usize,
    /// Level `l` is a basis of a subspace of constant-coefficient symbols of degree `k - l`.
    pub levels: Vec<Vec<PhasePoly>>,
    /// Irreducible content of each level, with multiplicities.
    pub content: Vec<BTreeMap<FerrersDiagram, usize>>,
}

impl GammaTree {
    pub fn level_diagrams(&self, l: usize) -> BTreeSet<FerrersDiagram> {
        self.content[l].keys().cloned().collect()
    }
}

struct H0Ops {
    raising: Vec<TensorAction>,
    lowering: Vec<TensorAction>,
    all: Vec<TensorAction>,
}

impl H0Ops {
    fn new(spec: &AlgebraSpec, delta: &Q) -> Result<Self> {
        let n = spec.n;
        let act = |a: usize, b: usize| -> Result<TensorAction> {
            Ok(TensorAction::new(&spec.realize_vector_field(&GradedElement::unit(n, a, b))?, delta))
        };
        let raising = (0..n - 1).map(|i| act(i, i + 1)).collect::<Result<_>>()?;
        let lowering = (0..n - 1).map(|i| act(i + 1, i)).collect::<Result<_>>()?;
        let mut all = Vec::new();
        for a in 0..n {
            for b in 0..n {
                all.push(act(a, b)?);
            }
        }
        Ok(H0Ops { raising, lowering, all })
    }
}

/// Combinations of `vectors` killed by every raising operator.
fn highest_weight_combinations(space: &SymbolSpace, ops: &H0Ops, vectors: &[SparseVec]) -> Result<Vec<Vec<Q>>> {
    let mut rows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut images = Vec::new();
    for v in vectors {
        let p = space.to_poly(v);
        let mut col = Vec::new();
        for (r, op) in ops.raising.iter().enumerate() {
            for (i, c) in space.to_vec(&op.apply(&p))? {
                let next = rows.len();
                let row = *rows.entry((r, i)).or_insert(next);
                col.push((row, c));
            }
        }
        images.push(col);
    }
    let mut m = Matrix::zeros(rows.len(), vectors.len());
    for (j, col) in images.into_iter().enumerate() {
        for (r, c) in col {
            m[(r, j)] = c;
        }
    }
    Ok(m.nullspace())
}

/// Computes the levels `T^{l+1} = gamma(g_1)(T^l)` starting from the summand `root` of degree `k`.
///
/// Each level is checked to be an `h_0`-submodule and its diagram content is
/// read off from highest-weight vectors.
pub fn gamma_tree(root: &FerrersDiagram, k: usize, alg: &Algebra, weights: &Weights) -> Result<GammaTree> {
    let spec = *alg.spec();
    if !crate::ferrers::is_admissible_diagram(&spec, root, k) {
        return Err(Error::NotAdmissible { diagram: root.to_string(), k });
    }
    let space = SymbolSpace::new(spec.d, Truncation::new(k, 0));
    let ops = H0Ops::new(&spec, &weights.delta())?;
    let target: Vec<i64> = root.padded(spec.n).into_iter().map(i64::from).collect();
    let candidates: Vec<SparseVec> = space
        .block(k, 0)
        .filter(|&j| monomial_weight(&spec, space.monomial(j)) == target)
        .map(|j| SparseVec::from([(j, Q::one())]))
        .collect();
    let hw = highest_weight_combinations(&space, &ops, &candidates)?;
    if hw.len() != 1 {
        return Err(Error::Invariant(format!("expected one highest-weight vector for {root}, found {}", hw.len())));
    }
    let mut start = SparseVec::new();
    for (c, v) in hw[0].iter().zip(&candidates) {
        sv_add_scaled(&mut start, v, c);
    }
    // the root module: closure of the highest-weight vector under lowering
    let mut module = EchelonBasis::new();
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        if module.insert(&v) {
            let p = space.to_poly(&v);
            for op in &ops.lowering {
                let w = space.to_vec(&op.apply(&p))?;
                if !w.is_empty() {
                    queue.push(w);
                }
            }
        }
    }
    let root_dim = dim_irrep(root, spec.n)? as usize;
    if module.dim() != root_dim {
        return Err(Error::Invariant(format!("module of {root} has dimension {} instead of {root_dim}", module.dim())));
    }
    let gammas: Vec<GammaAction> = spec
        .plus_basis()
        .iter()
        .map(|x| Ok(GammaAction::new(&spec.realize_vector_field(x)?, weights)))
        .collect::<Result<_>>()?;

    let mut levels = Vec::new();
    let mut content = Vec::new();
    let mut current: Vec<SparseVec> = module.basis().cloned().collect();
    for l in 0..=k {
        if current.is_empty() {
            break;
        }
        let mut span = EchelonBasis::new();
        for v in &current {
            span.insert(v);
        }
        // submodule check
        for v in &current {
            let p = space.to_poly(v);
            for op in &ops.all {
                if !span.contains(&space.to_vec(&op.apply(&p))?) {
                    return Err(Error::Invariant(format!("level {l} of the tree of {root} is not h_0-stable")));
                }
            }
        }
        let mut found = BTreeMap::new();
        let mut covered = 0usize;
        for dg in admissible_diagrams(&spec, k - l) {
            let w: Vec<i64> = dg.padded(spec.n).into_iter().map(i64::from).collect();
            let mut restricted = EchelonBasis::new();
            for v in &current {
                let r: SparseVec =
                    v.iter().filter(|(&i, _)| monomial_weight(&spec, space.monomial(i)) == w).map(|(&i, c)| (i, c.clone())).collect();
                restricted.insert(&r);
            }
            let basis: Vec<SparseVec> = restricted.basis().cloned().collect();
            if basis.is_empty() {
                continue;
            }
            let mult = highest_weight_combinations(&space, &ops, &basis)?.len();
            if mult > 0 {
                covered += mult * dim_irrep(&dg, spec.n)? as usize;
                found.insert(dg, mult);
            }
        }
        if covered != span.dim() {
            return Err(Error::Invariant(format!(
                "level {l} of the tree of {root}: content covers {covered} of {} dimensions",
                span.dim()
            )));
        }
        levels.push(span.basis().map(|v| space.to_poly(v)).collect());
        content.push(found);
        let mut next = EchelonBasis::new();
        for v in &current {
            let p = space.to_poly(v);
            for g in &gammas {
                next.insert(&space.to_vec(&g.apply(&p))?);
            }
        }
        current = next.basis().cloned().collect();
    }
    Ok(GammaTree { root: root.clone(), k, levels, content })
}
