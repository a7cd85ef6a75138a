//! Exact linear algebra over [`Q`].
//!
//! Two representations are used: [`Matrix`], a small dense matrix for Gram
//! matrices and change-of-basis solves, and [`SparseMatrix`], a column store
//! for operators on truncated symbol spaces where almost every entry is zero.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| crate::rational::format_q(&self[(r, c)]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Product skipping zero entries of the left factor; the block matrices
    /// of the graded algebras are extremely sparse.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = self[(row, col)].recip();
            for c in col..self.cols {
                let v = &self[(row, c)] * &inv;
                self[(row, c)] = v;
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let f = self[(r, col)].clone();
                for c in col..self.cols {
                    if self[(row, c)].is_zero() {
                        continue;
                    }
                    let v = &self[(r, c)] - &f * &self[(row, c)];
                    self[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self, context: &'static str) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular(context));
        }
        Ok(Matrix::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| !self[(r, c)].is_zero() && !v[c].is_zero())
                    .map(|c| &self[(r, c)] * &v[c])
                    .sum()
            })
            .collect()
    }
}

/// Sparse vector keyed by basis index.
pub type SparseVec = BTreeMap<usize, Q>;

pub fn sv_add_scaled(acc: &mut SparseVec, v: &SparseVec, s: &Q) {
    if s.is_zero() {
        return;
    }
    for (&i, x) in v {
        let e = acc.entry(i).or_insert_with(Q::zero);
        *e += x * s;
        if e.is_zero() {
            acc.remove(&i);
        }
    }
}

pub fn sv_scale(v: &SparseVec, s: &Q) -> SparseVec {
    if s.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&i, x)| (i, x * s)).collect()
}

/// Square-or-rectangular sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n).map(|i| SparseVec::from([(i, Q::one())])).collect();
        SparseMatrix { rows: n, cols }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.keys().all(|&r| r < rows)));
        SparseMatrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.cols[c].get(&r).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        if v.is_zero() {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, v);
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, x) in v {
            sv_add_scaled(&mut out, &self.cols[j], x);
        }
        out
    }

    /// `(self - s I) v`.
    pub fn apply_shifted(&self, v: &SparseVec, s: &Q) -> SparseVec {
        let mut out = self.apply(v);
        sv_add_scaled(&mut out, v, &-s);
        out
    }

    /// Square diagonal block on the index range `r`, reindexed from zero.
    pub fn submatrix(&self, r: std::ops::Range<usize>) -> SparseMatrix {
        let cols = self.cols[r.clone()]
            .iter()
            .map(|c| c.range(r.clone()).map(|(&i, x)| (i - r.start, x.clone())).collect())
            .collect();
        SparseMatrix { rows: r.len(), cols }
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.rows);
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, &Q::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, &-Q::one())
    }

    fn combine(&self, other: &SparseMatrix, s: &Q) -> SparseMatrix {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()));
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                sv_add_scaled(&mut c, b, s);
                c
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn scale(&self, s: &Q) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|c| sv_scale(c, s)).collect() }
    }

    /// `self - s * I`.
    pub fn shift(&self, s: &Q) -> SparseMatrix {
        let mut m = self.clone();
        for j in 0..m.ncols().min(m.rows) {
            let v = m.get(j, j) - s;
            m.set(j, j, v);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn trace(&self) -> Q {
        (0..self.ncols().min(self.rows)).map(|j| self.get(j, j)).sum()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.ncols());
        for (c, col) in self.cols.iter().enumerate() {
            for (&r, x) in col {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        let cols = (0..m.cols())
            .map(|c| {
                (0..m.rows())
                    .filter(|&r| !m[(r, c)].is_zero())
                    .map(|r| (r, m[(r, c)].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: m.rows(), cols }
    }

    /// Nonzero entries as `(row, col, value)` sorted by column then row.
    pub fn triplets(&self) -> Vec<(usize, usize, Q)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, x)| (r, c, x.clone())))
            .collect()
    }
}

/// `prod_b (A - v_b) x` over all `values`.
pub fn apply_annihilator(a: &SparseMatrix, values: &[Q], x: &SparseVec) -> SparseVec {
    values.iter().fold(x.clone(), |v, s| a.apply_shifted(&v, s))
}

/// Lagrange projector `prod_{b != which} (A - v_b) / (v_which - v_b)` applied to `x`.
///
/// `values` must be distinct. When the minimal polynomial of `A` divides
/// `prod (t - v_b)` this is the spectral projector onto the `v_which` eigenspace.
pub fn lagrange_project(a: &SparseMatrix, values: &[Q], which: usize, x: &SparseVec) -> SparseVec {
    let va = &values[which];
    let mut v = x.clone();
    for (b, vb) in values.iter().enumerate() {
        if b != which {
            v = sv_scale(&a.apply_shifted(&v, vb), &(va - vb).recip());
        }
    }
    v
}

/// Incrementally maintained echelon basis of a subspace of sparse vectors.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    /// Reduced vectors keyed by their pivot (smallest index).
    rows: BTreeMap<usize, SparseVec>,
    /// The vectors as inserted (not reduced), one per accepted insert.
    originals: Vec<SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let hit = v.iter().find(|(i, _)| self.rows.contains_key(i)).map(|(&i, x)| (i, x.clone()));
            let Some((i, x)) = hit else { break };
            sv_add_scaled(&mut v, &self.rows[&i], &-x);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` if it is independent; returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let r = sv_scale(&r, &lead.recip());
        for row in self.rows.values_mut() {
            if let Some(x) = row.get(&p).cloned() {
                sv_add_scaled(row, &r, &-x);
            }
        }
        self.rows.insert(p, r);
        self.originals.push(v.clone());
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn originals(&self) -> &[SparseVec] {
        &self.originals
    }
}
