//! Dense complex linear algebra used throughout the crate.
//!
//! Inner products are conjugate-linear in the first argument, so
//! `a.inner(&b)` is the bra-ket `<a|b>`. Every rank, support or
//! positivity decision takes an explicit [`Tolerance`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex64;

// nalgebra's SVD loses accuracy on some small dense inputs (clustered
// singular values), so SVD and Hermitian eigenproblems go through faer.
fn to_faer(m: &DMatrix<C64>) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn column(m: faer::MatRef<'_, C64>, j: usize) -> DVector<C64> {
    DVector::from_fn(m.nrows(), |i, _| m[(i, j)])
}

/// Thin SVD `m = U diag(s) V^*`, singular values in descending order.
fn thin_svd(m: &DMatrix<C64>) -> (Vec<f64>, Vec<DVector<C64>>, Vec<DVector<C64>>) {
    let svd = to_faer(m).thin_svd().expect("svd converges on finite input");
    let k = m.nrows().min(m.ncols());
    let s = svd.S().column_vector();
    let values = (0..k).map(|i| s[i].re).collect();
    let u = (0..k).map(|j| column(svd.U(), j)).collect();
    let v = (0..k).map(|j| column(svd.V(), j)).collect();
    (values, u, v)
}

/// Numerical thresholds threaded through every operation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Moduli at or below this are treated as exact zeros.
    pub zero_tol: f64,
    /// Eigenvalues at or above `-psd_tol` count as nonnegative.
    pub psd_tol: f64,
    /// Relative cutoff for singular values and range membership.
    pub rank_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            zero_tol: 1e-9,
            psd_tol: 1e-8,
            rank_tol: 1e-7,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        let all_positive = [self.zero_tol, self.psd_tol, self.rank_tol]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0);
        if !all_positive || self.zero_tol > self.rank_tol {
            return Err(Error::Parse(format!(
                "tolerances must be positive with zero_tol <= rank_tol, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// A ket in `C^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector(DVector<C64>);

impl ComplexVector {
    pub fn new(entries: Vec<C64>) -> Self {
        ComplexVector(DVector::from_vec(entries))
    }

    pub fn from_real(entries: &[f64]) -> Self {
        ComplexVector::new(entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_dvector(v: DVector<C64>) -> Self {
        ComplexVector(v)
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexVector(DVector::zeros(dim))
    }

    /// Standard basis vector `|index>` of `C^dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        ComplexVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[C64] {
        self.0.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn into_dvector(self) -> DVector<C64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &ComplexVector) -> C64 {
        self.0.dotc(&other.0)
    }

    pub fn scaled(&self, s: C64) -> ComplexVector {
        ComplexVector(&self.0 * s)
    }

    pub fn normalized(&self) -> Result<ComplexVector> {
        let n = self.norm();
        if !(n.is_finite()) || n == 0.0 {
            return Err(Error::ZeroVector {
                context: "normalization".into(),
            });
        }
        Ok(ComplexVector(&self.0 / C64::new(n, 0.0)))
    }

    /// Rank-one operator `|self><self|`.
    pub fn outer(&self) -> DMatrix<C64> {
        &self.0 * self.0.adjoint()
    }
}

impl Serialize for ComplexVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.0.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(ComplexVector::new(
            pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect(),
        ))
    }
}

/// Square matrix kept exactly Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(DMatrix<C64>);

impl HermitianMatrix {
    /// Wraps `m` after replacing it by `(m + m^*) / 2`.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        Ok(Self::symmetrized(m))
    }

    pub(crate) fn symmetrized(m: DMatrix<C64>) -> Self {
        let n = m.nrows();
        let mut h = DMatrix::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = C64::new(m[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        HermitianMatrix(h)
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix(DMatrix::identity(n, n))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        HermitianMatrix(m)
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.0[(i, i)].re).sum()
    }

    /// Eigenvalues in descending order with matching eigenvector columns.
    /// Ties keep the solver's index order.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<C64>) {
        let n = self.n();
        if n == 0 {
            return (Vec::new(), DMatrix::zeros(0, 0));
        }
        let eig = to_faer(&self.0)
            .self_adjoint_eigen(faer::Side::Lower)
            .expect("eigensolver converges on finite input");
        let s = eig.S().column_vector();
        // faer sorts ascending
        let values = (0..n).rev().map(|k| s[k].re).collect();
        let mut vectors = DMatrix::zeros(n, n);
        for (dst, src) in (0..n).rev().enumerate() {
            vectors.set_column(dst, &column(eig.U(), src));
        }
        (values, vectors)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigen().0.last().copied().unwrap_or(0.0)
    }
}

/// The operator `X = sum_j |phi_j><j|` from `C^n` into `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameMap {
    columns: DMatrix<C64>,
}

impl FrameMap {
    pub fn new(vectors: &[ComplexVector]) -> Result<Self> {
        let d = common_dim(vectors)?;
        let mut columns = DMatrix::zeros(d, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            columns.set_column(j, v.as_dvector());
        }
        Ok(FrameMap { columns })
    }

    pub fn from_matrix(columns: DMatrix<C64>) -> Self {
        FrameMap { columns }
    }

    pub fn d(&self) -> usize {
        self.columns.nrows()
    }

    pub fn n(&self) -> usize {
        self.columns.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.columns
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector::from_dvector(self.columns.column(j).into_owned())
    }

    pub fn adjoint(&self) -> DMatrix<C64> {
        self.columns.adjoint()
    }

    /// `X^* v` in `C^n` for `v` in `C^d`: entry `i` is `<phi_i|v>`.
    pub fn apply_adjoint(&self, v: &ComplexVector) -> ComplexVector {
        ComplexVector::from_dvector(self.columns.adjoint() * v.as_dvector())
    }

    /// `X^* E X` for an operator `E` on `C^d`.
    pub fn compress(&self, op: &DMatrix<C64>) -> HermitianMatrix {
        HermitianMatrix::symmetrized(self.columns.adjoint() * op * &self.columns)
    }
}

fn common_dim(vectors: &[ComplexVector]) -> Result<usize> {
    let d = vectors.first().map(|v| v.dim()).unwrap_or(0);
    for v in vectors {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.dim(),
            });
        }
    }
    Ok(d)
}

/// Gram matrix `G_ij = <v_i|v_j>`.
pub fn gram(vectors: &[ComplexVector]) -> Result<HermitianMatrix> {
    common_dim(vectors)?;
    let n = vectors.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z = vectors[i].inner(&vectors[j]);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    Ok(HermitianMatrix::symmetrized(m))
}

/// Indices with a nonzero diagonal entry.
pub fn support(m: &HermitianMatrix, tol: &Tolerance) -> Vec<usize> {
    (0..m.n())
        .filter(|&i| m.get(i, i).norm() > tol.zero_tol)
        .collect()
}

/// Returns whether `m` is PSD within `psd_tol`, and its minimum eigenvalue.
pub fn psd_check(m: &HermitianMatrix, tol: &Tolerance) -> (bool, f64) {
    let min = m.min_eigenvalue();
    (min >= -tol.psd_tol, min)
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_faer(m)
        .singular_values()
        .expect("svd converges on finite input");
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// Number of singular values above `rank_tol` times the largest.
pub fn matrix_rank(m: &DMatrix<C64>, tol: &Tolerance) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > tol.rank_tol * top).count(),
        _ => 0,
    }
}

pub fn numeric_rank(m: &HermitianMatrix, tol: &Tolerance) -> usize {
    matrix_rank(m.as_matrix(), tol)
}

/// Rank of the matrix whose columns are `vectors`.
pub fn vectors_rank(vectors: &[ComplexVector], tol: &Tolerance) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    Ok(matrix_rank(FrameMap::new(vectors)?.matrix(), tol))
}

/// A unit vector `direction` with `X^* direction = v / scale`.
#[derive(Clone, Debug)]
pub struct Preimage {
    pub direction: ComplexVector,
    pub scale: f64,
}

/// Minimum-norm solution of `X^* phi = v`, split into direction and scale.
///
/// Fails with `NotInRange` when the least-squares residual exceeds
/// `rank_tol * |v|`.
pub fn least_squares_preimage(x: &FrameMap, v: &ComplexVector, tol: &Tolerance) -> Result<Preimage> {
    if v.dim() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            found: v.dim(),
        });
    }
    let vnorm = v.norm();
    if vnorm <= tol.zero_tol {
        return Err(Error::ZeroVector {
            context: "preimage target".into(),
        });
    }
    let adj = x.adjoint();
    let (values, u, w) = thin_svd(&adj);
    let top = values.first().copied().unwrap_or(0.0);
    let mut phi = DVector::<C64>::zeros(x.d());
    for ((&sv, uk), wk) in values.iter().zip(&u).zip(&w) {
        if sv > tol.rank_tol * top {
            phi += wk * (uk.dotc(v.as_dvector()) / sv);
        }
    }
    let residual = (&adj * &phi - v.as_dvector()).norm() / vnorm;
    if residual > tol.rank_tol {
        return Err(Error::NotInRange { residual });
    }
    let scale = phi.norm();
    if scale == 0.0 {
        return Err(Error::NotInRange { residual: 1.0 });
    }
    Ok(Preimage {
        direction: ComplexVector::from_dvector(phi / C64::new(scale, 0.0)),
        scale,
    })
}

/// Orthonormal basis of the span of `vectors` (left singular vectors above the rank cutoff).
pub fn orthonormal_span(vectors: &[ComplexVector], dim: usize, tol: &Tolerance) -> Result<Vec<ComplexVector>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let frame = FrameMap::new(vectors)?;
    if frame.d() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: frame.d(),
        });
    }
    let (values, vectors, _) = thin_svd(frame.matrix());
    let top = values.first().copied().unwrap_or(0.0);
    Ok(values
        .iter()
        .zip(vectors)
        .filter(|(&sv, _)| top > 0.0 && sv > tol.rank_tol * top)
        .map(|(_, u)| ComplexVector::from_dvector(u))
        .collect())
}

/// Extends an orthonormal family to an orthonormal basis of `C^dim` by
/// Gram-Schmidt over the standard basis; returns only the added vectors.
pub fn orthonormal_complement(basis: &[ComplexVector], dim: usize, tol: &Tolerance) -> Vec<ComplexVector> {
    let mut all: Vec<DVector<C64>> = basis.iter().map(|b| b.as_dvector().clone()).collect();
    let mut added = Vec::new();
    for k in 0..dim {
        if all.len() >= dim {
            break;
        }
        let mut w = DVector::<C64>::zeros(dim);
        w[k] = C64::new(1.0, 0.0);
        // two passes keep the result orthogonal to working precision
        for _ in 0..2 {
            for b in &all {
                let c = b.dotc(&w);
                w -= b * c;
            }
        }
        let n = w.norm();
        if n > tol.rank_tol.max(1e-6) {
            let w = w / C64::new(n, 0.0);
            all.push(w.clone());
            added.push(ComplexVector::from_dvector(w));
        }
    }
    added
}

/// Frobenius distance between two square complex matrices of equal size.
pub fn frobenius_distance(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).norm()
}
