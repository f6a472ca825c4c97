//! Dense complex linear algebra for the small matrices that show up here
//! (2x2 through 9x9): products, adjoints, Kronecker products, Hermitian
//! eigendecomposition, singular values and numerical rank.
//!
//! Every routine is deterministic for a fixed input.

mod eigen;
mod svd;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eigen::eig_hermitian;
pub use svd::svd_values;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// `e^{i theta}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// The principal cube root of unity `exp(2 pi i / 3)`.
pub fn omega() -> C64 {
    cis(2.0 * std::f64::consts::PI / 3.0)
}

/// Numerical tolerances shared by every predicate in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max-norm bound on `M M^dagger - I` (and on `M - M^dagger` for Hermiticity).
    pub unitarity_tol: f64,
    /// Allowed deviation of an entry modulus from its target.
    pub modulus_tol: f64,
    /// Singular values at or below `rank_rel_tol * sigma_max` count as zero.
    pub rank_rel_tol: f64,
    /// Eigenvalues below this floor are dropped before taking logarithms.
    pub eig_clamp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitarity_tol: 1e-10,
            modulus_tol: 1e-10,
            rank_rel_tol: 1e-8,
            eig_clamp: 1e-14,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("unitarity_tol", self.unitarity_tol),
            ("modulus_tol", self.modulus_tol),
            ("rank_rel_tol", self.rank_rel_tol),
            ("eig_clamp", self.eig_clamp),
        ];
        for (name, value) in fields {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    range: "[0, inf)",
                });
            }
        }
        Ok(())
    }
}

/// Row-major dense complex matrix.
///
/// Serializes as `{"rows": r, "cols": c, "data": [[re, im], ...]}` with the
/// entries in row-major order.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for CMatrix {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<Self> {
        let data = m.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
        CMatrix::new(m.rows, m.cols, data)
    }
}

impl From<CMatrix> for MatrixJson {
    fn from(m: CMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                len: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows. Panics on ragged input; meant for literals.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let cols = rows[0].as_ref().len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        CMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { ZERO })
    }

    pub fn real_diag(entries: &[f64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].into() } else { ZERO })
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_fn(n, n, |i, j| if perm[j] == i { ONE } else { ZERO })
    }

    /// Unnormalized discrete Fourier matrix, `F[j][k] = exp(2 pi i jk / n)`.
    pub fn fourier(n: usize) -> Self {
        let step = 2.0 * std::f64::consts::PI / n as f64;
        Self::from_fn(n, n, |j, k| cis(step * ((j * k) % n) as f64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn expect_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.shape() != (rows, cols) {
            return Err(Error::Shape {
                expected: (rows, cols),
                found: self.shape(),
            });
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Submatrix on the given (ordered) row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    /// `max |(M M^dagger - I)_{jk}|`; infinite for non-square input.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let g = self * &self.adjoint();
        (&g - &Self::identity(self.rows)).max_abs()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() < tol
    }

    /// `max |M - M^dagger|`; infinite for non-square input.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (self - &self.adjoint()).max_abs()
    }

    /// Row-major flattening.
    pub fn vectorize(&self) -> Vec<C64> {
        self.data.clone()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>9.5}{:+.5}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a[(i, k)];
            if aik == ZERO {
                continue;
            }
            for j in 0..b.cols {
                out.data[i * b.cols + j] += aik * b[(k, j)];
            }
        }
    }
    out
}

/// Matrix product; panics on a dimension mismatch. Use [`matmul`] for the checked form.
impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        product(self, rhs)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape());
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape());
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "matmul",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(product(a, b))
}

/// Kronecker product: `(a ⊗ b)[i*br + k][j*bc + l] = a[i][j] * b[k][l]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (br, bc) = b.shape();
    CMatrix::from_fn(a.rows * br, a.cols * bc, |r, c| {
        a[(r / br, c / bc)] * b[(r % br, c % bc)]
    })
}

/// Number of singular values strictly above `rank_rel_tol * sigma_max`.
/// The zero matrix has rank 0.
pub fn numerical_rank(m: &CMatrix, tol: &Tolerances) -> usize {
    rank_of_values(&svd_values(m), tol.rank_rel_tol)
}

pub(crate) fn rank_of_values(sigma: &[f64], rel_tol: f64) -> usize {
    let max = sigma.first().copied().unwrap_or(0.0);
    if max <= 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Haar-ish random unitary from Gram-Schmidt orthonormalization of a
/// complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    loop {
        let mut cols: Vec<Vec<C64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                    .collect()
            })
            .collect();
        let mut ok = true;
        for j in 0..n {
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for k in 0..j {
                    let proj: C64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                    let (done, rest) = cols.split_at_mut(j);
                    for (x, v) in rest[0].iter_mut().zip(&done[k]) {
                        *x -= proj * v;
                    }
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for z in cols[j].iter_mut() {
                *z /= norm;
            }
        }
        if ok {
            return CMatrix::from_fn(n, n, |i, j| cols[j][i]);
        }
    }
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = C64::new(rng.sample(StandardNormal), 0.0);
        for j in i + 1..n {
            let z = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// `true` when every row and column has exactly one entry of modulus one
/// (within `tol`) and every other entry vanishes (within `tol`).
pub fn is_monomial_unitary(m: &CMatrix, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows;
    let mut col_hits = vec![0usize; n];
    for i in 0..n {
        let mut hits = 0;
        for j in 0..n {
            let a = m[(i, j)].norm();
            if (a - 1.0).abs() <= tol {
                hits += 1;
                col_hits[j] += 1;
            } else if a > tol {
                return false;
            }
        }
        if hits != 1 {
            return false;
        }
    }
    col_hits.iter().all(|&h| h == 1)
}
