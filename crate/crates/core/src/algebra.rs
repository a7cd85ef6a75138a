//! The orthogonal and symplectic 3-graded algebras.
//!
//! Both algebras sit inside `gl(2n)` as block matrices
//!
//! ```text
//! [[ A,  a   ],
//!  [ w, -A^T ]]
//! ```
//!
//! with `a` in `g_{-1}`, `A` in `g_0 = gl(n)` and `w` in `g_1`. For the
//! orthogonal algebra `so(n,n)` the off-diagonal blocks are antisymmetric, for
//! the symplectic algebra `sp(2n)` they are symmetric. The bracket is the
//! matrix commutator, so the Jacobi identity and the grading come for free.
//!
//! Coordinates on `g_{-1}` are the independent entries `a[i][j]` with `i < j`
//! (orthogonal) or `i <= j` (symplectic), in row-major order. The same index
//! list parametrizes `g_1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::PhasePoly;
use crate::rational::{q, qr, Q};
use crate::vector_field::PolyVectorField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Orthogonal,
    Symplectic,
}

impl Family {
    /// `+1` when `a^T = a`, `-1` when `a^T = -a`.
    pub fn transpose_sign(self) -> i64 {
        match self {
            Family::Orthogonal => -1,
            Family::Symplectic => 1,
        }
    }

    /// Short command-line name.
    pub fn short_name(self) -> &'static str {
        match self {
            Family::Orthogonal => "o",
            Family::Symplectic => "sp",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "o" | "orthogonal" => Ok(Family::Orthogonal),
            "sp" | "symplectic" => Ok(Family::Symplectic),
            _ => Err(Error::Parse(format!("unknown family {s:?} (expected o or sp)"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Orthogonal => "orthogonal",
            Family::Symplectic => "symplectic",
        })
    }
}

/// Family and rank, with the derived dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub family: Family,
    pub n: usize,
    /// `dim g_{-1}`.
    pub d: usize,
    pub dim_g: usize,
    pub dim_h0: usize,
}

/// Builds an [`AlgebraSpec`]; rejects `n < 2`.
pub fn make_algebra(family: Family, n: usize) -> Result<AlgebraSpec> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    let (d, dim_g) = match family {
        Family::Orthogonal => (n * (n - 1) / 2, n * (2 * n - 1)),
        Family::Symplectic => (n * (n + 1) / 2, n * (2 * n + 1)),
    };
    let spec = AlgebraSpec { family, n, d, dim_g, dim_h0: n * n - 1 };
    assert_eq!(spec.dim_g, 2 * spec.d + n * n, "grading dimensions");
    Ok(spec)
}

impl AlgebraSpec {
    /// Coordinate index pairs `(i, j)` of `g_{-1}`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let strict = self.family == Family::Orthogonal;
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !(strict && i == j))
            .collect()
    }

    /// The (anti)symmetric matrix with coordinate `p` equal to one.
    pub fn pair_matrix(&self, (i, j): (usize, usize)) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        m[(i, j)] = Q::one();
        if i != j {
            m[(j, i)] = q(self.family.transpose_sign());
        }
        m
    }

    fn check_block(&self, m: &Matrix) -> Result<()> {
        let n = self.n;
        if m.rows() != n || m.cols() != n {
            return Err(Error::SymmetryMismatch(self.symmetry_name()));
        }
        let s = q(self.family.transpose_sign());
        for i in 0..n {
            for j in 0..n {
                if m[(j, i)] != &s * &m[(i, j)] {
                    return Err(Error::SymmetryMismatch(self.symmetry_name()));
                }
            }
        }
        Ok(())
    }

    fn symmetry_name(&self) -> &'static str {
        match self.family {
            Family::Orthogonal => "antisymmetric",
            Family::Symplectic => "symmetric",
        }
    }

    pub fn validate(&self, x: &GradedElement) -> Result<()> {
        self.check_block(&x.constant)?;
        self.check_block(&x.quadratic)?;
        if x.linear.rows() != self.n || x.linear.cols() != self.n {
            return Err(Error::SymmetryMismatch("gl(n)"));
        }
        Ok(())
    }

    /// `[x, y]` as the commutator of block matrices.
    pub fn bracket(&self, x: &GradedElement, y: &GradedElement) -> Result<GradedElement> {
        self.validate(x)?;
        self.validate(y)?;
        let c = x.to_block().commutator(&y.to_block());
        let z = GradedElement::from_block(&c, self.n);
        debug_assert!(self.validate(&z).is_ok());
        Ok(z)
    }

    /// The Euler element: `A = -I/2`, acting by `p` on `g_p`.
    pub fn euler(&self) -> GradedElement {
        let mut x = GradedElement::zero(self.n);
        x.linear = Matrix::identity(self.n).scale(&qr(-1, 2));
        x
    }

    /// Coordinate basis of `g_{-1}`.
    pub fn minus_basis(&self) -> Vec<GradedElement> {
        self.pairs()
            .into_iter()
            .map(|p| GradedElement { constant: self.pair_matrix(p), ..GradedElement::zero(self.n) })
            .collect()
    }

    /// Coordinate basis of `g_1`.
    pub fn plus_basis(&self) -> Vec<GradedElement> {
        self.pairs()
            .into_iter()
            .map(|p| GradedElement { quadratic: self.pair_matrix(p), ..GradedElement::zero(self.n) })
            .collect()
    }

    /// Matrix units `E_ij` of `g_0 = gl(n)`, row-major.
    pub fn zero_basis(&self) -> Vec<GradedElement> {
        let n = self.n;
        (0..n * n).map(|k| GradedElement::unit(n, k / n, k % n)).collect()
    }

    /// Basis of `h_0 = sl(n)`: off-diagonal `E_ij` row-major, then `E_ii - E_nn`.
    pub fn h0_basis(&self) -> Vec<GradedElement> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n - 1);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(GradedElement::unit(n, i, j));
                }
            }
        }
        for i in 0..n - 1 {
            let mut x = GradedElement::unit(n, i, i);
            x.linear[(n - 1, n - 1)] = -Q::one();
            out.push(x);
        }
        out
    }

    /// Full coordinate basis: `g_{-1}`, then `g_0`, then `g_1`.
    pub fn basis(&self) -> Vec<GradedElement> {
        let mut b = self.minus_basis();
        b.extend(self.zero_basis());
        b.extend(self.plus_basis());
        b
    }

    /// Coordinates with respect to [`AlgebraSpec::basis`].
    pub fn coords(&self, x: &GradedElement) -> Vec<Q> {
        let pairs = self.pairs();
        let mut v: Vec<Q> = pairs.iter().map(|&(i, j)| x.constant[(i, j)].clone()).collect();
        for i in 0..self.n {
            for j in 0..self.n {
                v.push(x.linear[(i, j)].clone());
            }
        }
        v.extend(pairs.iter().map(|&(i, j)| x.quadratic[(i, j)].clone()));
        v
    }

    pub fn from_coords(&self, v: &[Q]) -> GradedElement {
        assert_eq!(v.len(), self.dim_g);
        let d = self.d;
        let n = self.n;
        let mut x = GradedElement::zero(n);
        for (k, p) in self.pairs().into_iter().enumerate() {
            x.constant = x.constant.add(&self.pair_matrix(p).scale(&v[k]));
            x.quadratic = x.quadratic.add(&self.pair_matrix(p).scale(&v[d + n * n + k]));
        }
        for i in 0..n {
            for j in 0..n {
                x.linear[(i, j)] = v[d + i * n + j].clone();
            }
        }
        x
    }

    /// Grade of a homogeneous element, `None` for zero or mixed elements.
    pub fn grade(&self, x: &GradedElement) -> Option<i32> {
        let parts = [(-1, x.constant.is_zero()), (0, x.linear.is_zero()), (1, x.quadratic.is_zero())];
        let nonzero: Vec<i32> = parts.iter().filter(|(_, z)| !z).map(|(g, _)| *g).collect();
        match nonzero.as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    /// The generic point `X` of `g_{-1}` as a matrix of coordinate polynomials.
    fn generic_point(&self) -> Vec<Vec<PhasePoly>> {
        let (n, d) = (self.n, self.d);
        let mut m = vec![vec![PhasePoly::zero(d); n]; n];
        for (k, (i, j)) in self.pairs().into_iter().enumerate() {
            let xk = PhasePoly::x_var(d, k);
            if i != j {
                m[j][i] = xk.scale(&q(self.family.transpose_sign()));
            }
            m[i][j] = xk;
        }
        m
    }

    /// Realizes `x = (a, A, w)` as the vector field `X' = a - A X - X A^T - X w X`.
    ///
    /// This is a Lie algebra homomorphism into polynomial vector fields with the
    /// derivation bracket, sends the Euler element to `sum x^i d/dx_i` and an
    /// element of `g_{-1}` to the constant field with the same coordinates.
    pub fn realize_vector_field(&self, x: &GradedElement) -> Result<PolyVectorField> {
        self.validate(x)?;
        let (n, d) = (self.n, self.d);
        let pt = self.generic_point();
        let lin = |m: &Matrix, left: bool| -> Vec<Vec<PhasePoly>> {
            // left: m X, otherwise X m
            let mut out = vec![vec![PhasePoly::zero(d); n]; n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let (c, p) = if left { (&m[(i, k)], &pt[k][j]) } else { (&m[(k, j)], &pt[i][k]) };
                        if !c.is_zero() && !p.is_zero() {
                            out[i][j].add_scaled(p, c);
                        }
                    }
                }
            }
            out
        };
        let ax = lin(&x.linear, true);
        let xat = lin(&x.linear.transpose(), false);
        let xw = lin(&x.quadratic, false);
        let mut comps = Vec::with_capacity(d);
        for (i, j) in self.pairs() {
            let mut c = PhasePoly::constant(d, x.constant[(i, j)].clone());
            c = c.sub(&ax[i][j]).sub(&xat[i][j]);
            for k in 0..n {
                if !xw[i][k].is_zero() && !pt[k][j].is_zero() {
                    c = c.sub(&xw[i][k].mul(&pt[k][j]));
                }
            }
            comps.push(c);
        }
        Ok(PolyVectorField::new(comps))
    }
}

/// An element `(a, A, w)` of `g_{-1} + g_0 + g_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    /// `a`, the `g_{-1}` block (top right).
    pub constant: Matrix,
    /// `A`, the `g_0 = gl(n)` block (top left).
    pub linear: Matrix,
    /// `w`, the `g_1` block (bottom left).
    pub quadratic: Matrix,
}

impl GradedElement {
    pub fn zero(n: usize) -> Self {
        GradedElement { constant: Matrix::zeros(n, n), linear: Matrix::zeros(n, n), quadratic: Matrix::zeros(n, n) }
    }

    /// `E_ij` in `g_0`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut x = Self::zero(n);
        x.linear[(i, j)] = Q::one();
        x
    }

    pub fn n(&self) -> usize {
        self.linear.rows()
    }

    pub fn to_block(&self) -> Matrix {
        let n = self.n();
        Matrix::from_fn(2 * n, 2 * n, |r, c| match (r < n, c < n) {
            (true, true) => self.linear[(r, c)].clone(),
            (true, false) => self.constant[(r, c - n)].clone(),
            (false, true) => self.quadratic[(r - n, c)].clone(),
            (false, false) => -self.linear[(c - n, r - n)].clone(),
        })
    }

    pub fn from_block(m: &Matrix, n: usize) -> Self {
        GradedElement {
            linear: Matrix::from_fn(n, n, |r, c| m[(r, c)].clone()),
            constant: Matrix::from_fn(n, n, |r, c| m[(r, c + n)].clone()),
            quadratic: Matrix::from_fn(n, n, |r, c| m[(r + n, c)].clone()),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        GradedElement {
            constant: self.constant.add(&o.constant),
            linear: self.linear.add(&o.linear),
            quadratic: self.quadratic.add(&o.quadratic),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        GradedElement { constant: self.constant.scale(s), linear: self.linear.scale(s), quadratic: self.quadratic.scale(s) }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_zero() && self.quadratic.is_zero()
    }
}

/// An algebra together with its structure constants and Killing Gram matrix.
#[derive(Clone, Debug)]
pub struct Algebra {
    spec: AlgebraSpec,
    basis: Vec<GradedElement>,
    /// `ad(b_k)` as sparse `(row, col) -> value`.
    ad: Vec<BTreeMap<(usize, usize), Q>>,
    killing: Matrix,
}

impl Algebra {
    pub fn new(spec: AlgebraSpec) -> Self {
        let basis = spec.basis();
        let dim = spec.dim_g;
        let blocks: Vec<Matrix> = basis.iter().map(GradedElement::to_block).collect();
        let ad: Vec<BTreeMap<(usize, usize), Q>> = blocks
            .iter()
            .map(|bk| {
                let mut m = BTreeMap::new();
                for (j, bj) in blocks.iter().enumerate() {
                    let c = GradedElement::from_block(&bk.commutator(bj), spec.n);
                    for (i, v) in spec.coords(&c).into_iter().enumerate() {
                        if !v.is_zero() {
                            m.insert((i, j), v);
                        }
                    }
                }
                m
            })
            .collect();
        let mut killing = Matrix::zeros(dim, dim);
        for k in 0..dim {
            for l in k..dim {
                let mut t = Q::zero();
                for (&(i, j), v) in &ad[k] {
                    if let Some(w) = ad[l].get(&(j, i)) {
                        t += v * w;
                    }
                }
                killing[(k, l)] = t.clone();
                killing[(l, k)] = t;
            }
        }
        Algebra { spec, basis, ad, killing }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn basis(&self) -> &[GradedElement] {
        &self.basis
    }

    /// `ad(x)` as a dense matrix on the coordinate basis.
    pub fn ad_matrix(&self, x: &GradedElement) -> Matrix {
        let dim = self.spec.dim_g;
        let cx = self.spec.coords(x);
        let mut m = Matrix::zeros(dim, dim);
        for (k, c) in cx.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (&(i, j), v) in &self.ad[k] {
                m[(i, j)] += c * v;
            }
        }
        m
    }

    /// Structure constants `[b_k, b_j] = sum_i c^i_{kj} b_i`, keyed `(k, j, i)`.
    pub fn structure_constants(&self) -> BTreeMap<(usize, usize, usize), Q> {
        let mut out = BTreeMap::new();
        for (k, m) in self.ad.iter().enumerate() {
            for (&(i, j), v) in m {
                out.insert((k, j, i), v.clone());
            }
        }
        out
    }

    /// Killing Gram matrix on the coordinate basis.
    pub fn killing_gram(&self) -> &Matrix {
        &self.killing
    }

    /// `tr(ad x ad y)`.
    pub fn killing_form(&self, x: &GradedElement, y: &GradedElement) -> Q {
        let cx = self.spec.coords(x);
        let cy = self.spec.coords(y);
        let mut t = Q::zero();
        for (k, a) in cx.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in cy.iter().enumerate() {
                if !b.is_zero() && !self.killing[(k, l)].is_zero() {
                    t += a * b * &self.killing[(k, l)];
                }
            }
        }
        t
    }

    /// Dual bases for the coordinate basis of `g_{-1}` and the standard basis of `h_0`.
    pub fn dual_bases(&self) -> Result<DualBasisPackage> {
        self.dual_bases_with(self.spec.minus_basis(), self.spec.h0_basis())
    }

    /// Dual bases for arbitrary bases `e` of `g_{-1}` and `h` of `h_0`.
    ///
    /// `eps` is solved inside `g_1` and `h_star` inside `h_0` so that all
    /// Killing pairings are Kronecker deltas; the defining identities are
    /// re-checked before returning.
    pub fn dual_bases_with(&self, e: Vec<GradedElement>, h: Vec<GradedElement>) -> Result<DualBasisPackage> {
        let spec = &self.spec;
        let (d, dh) = (spec.d, spec.dim_h0);
        if e.len() != d || h.len() != dh {
            return Err(Error::Invariant("basis sizes do not match the grading".into()));
        }
        let f = spec.plus_basis();
        let gram = Matrix::from_fn(d, d, |i, k| self.killing_form(&e[i], &f[k]));
        let ginv = gram.inverse("Killing pairing of g_-1 and g_1")?;
        let eps: Vec<GradedElement> = (0..d)
            .map(|j| (0..d).fold(GradedElement::zero(spec.n), |acc, k| acc.add(&f[k].scale(&ginv[(k, j)]))))
            .collect();
        let hgram = Matrix::from_fn(dh, dh, |i, k| self.killing_form(&h[i], &h[k]));
        let hinv = hgram.inverse("Killing form on h_0")?;
        let h_star: Vec<GradedElement> = (0..dh)
            .map(|j| (0..dh).fold(GradedElement::zero(spec.n), |acc, k| acc.add(&h[k].scale(&hinv[(k, j)]))))
            .collect();
        let euler = spec.euler();
        let two_d = q(2 * d as i64);
        let euler_dual = euler.scale(&two_d.recip());
        let pkg = DualBasisPackage { e, eps, h, h_star, euler, euler_dual };
        self.check_dual_package(&pkg)?;
        Ok(pkg)
    }

    fn check_dual_package(&self, p: &DualBasisPackage) -> Result<()> {
        let fail = |what: &str| Err(Error::Invariant(format!("dual bases: {what}")));
        let kron = |i: usize, j: usize| if i == j { Q::one() } else { Q::zero() };
        let d = self.spec.d;
        for i in 0..d {
            for j in 0..d {
                if self.killing_form(&p.e[i], &p.eps[j]) != kron(i, j) {
                    return fail("beta(e_i, eps_j) != delta_ij");
                }
            }
        }
        for i in 0..p.h.len() {
            for j in 0..p.h.len() {
                if self.killing_form(&p.h[i], &p.h_star[j]) != kron(i, j) {
                    return fail("beta(h_i, h*_j) != delta_ij");
                }
            }
            if !self.killing_form(&p.h[i], &p.euler).is_zero() {
                return fail("h_0 not orthogonal to E");
            }
        }
        if self.killing_form(&p.euler, &p.euler_dual) != Q::one() {
            return fail("beta(E, E/2d) != 1");
        }
        let mut s = GradedElement::zero(self.spec.n);
        for (e, eps) in p.e.iter().zip(&p.eps) {
            s = s.add(&self.spec.bracket(e, eps)?);
        }
        if s != p.euler.scale(&qr(-1, 2)) {
            return fail("sum [e_i, eps_i] != -E/2");
        }
        Ok(())
    }
}

/// Mutually dual bases `(e_i, E, h_j, eps_i)` and `(eps_i, E/2d, h*_j, e_i)`.
#[derive(Clone, Debug)]
pub struct DualBasisPackage {
    pub e: Vec<GradedElement>,
    pub eps: Vec<GradedElement>,
    pub h: Vec<GradedElement>,
    pub h_star: Vec<GradedElement>,
    pub euler: GradedElement,
    pub euler_dual: GradedElement,
}

impl DualBasisPackage {
    /// `(b, b*)` pairs whose products sum to a Casimir element.
    pub fn casimir_pairs(&self) -> Vec<(GradedElement, GradedElement)> {
        let mut out = Vec::new();
        for (e, eps) in self.e.iter().zip(&self.eps) {
            out.push((e.clone(), eps.clone()));
        }
        out.push((self.euler.clone(), self.euler_dual.clone()));
        for (h, hs) in self.h.iter().zip(&self.h_star) {
            out.push((h.clone(), hs.clone()));
        }
        for (e, eps) in self.e.iter().zip(&self.eps) {
            out.push((eps.clone(), e.clone()));
        }
        out
    }
}
