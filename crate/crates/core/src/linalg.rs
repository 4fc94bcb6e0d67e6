//! Small dense linear algebra: complex matrices, the Hermitian eigenproblem
//! and real QR with a positive-diagonal convention.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix stored column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from equal-length columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> Self {
        let mut data = Vec::with_capacity(rows * columns.len());
        for col in columns {
            assert_eq!(col.len(), rows);
            data.extend_from_slice(col);
        }
        Self {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Keeps the first `k` columns.
    pub fn truncate_cols(&mut self, k: usize) {
        assert!(k <= self.cols);
        self.cols = k;
        self.data.truncate(k * self.rows);
    }

    /// `A·x`.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![ZERO; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj == ZERO {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.column(j)) {
                *o += a * xj;
            }
        }
        out
    }

    /// `A*·x` (conjugate transpose).
    pub fn adjoint_mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.rows);
        (0..self.cols)
            .map(|j| dot_conj(self.column(j), x))
            .collect()
    }

    /// `A·B`.
    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let col = self.mul_vec(other.column(j));
            out.column_mut(j).copy_from_slice(&col);
        }
        out
    }

    /// `A*`.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(Complex64::norm_sqr).sum())
    }

    /// Largest `|a_ij - a_ji*|`.
    pub fn hermitian_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst: f64 = 0.0;
        for j in 0..self.cols {
            for i in 0..=j {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl core::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[j * self.rows + i]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[j * self.rows + i]
    }
}

/// `Σ conj(a_i)·b_i`.
pub fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Householder reflections reduce the matrix to Hermitian tridiagonal form, a
/// diagonal phase scaling makes the off-diagonal real, and implicit QL with
/// Wilkinson shifts diagonalizes the real tridiagonal. Only the lower triangle
/// of `a` is read. Panics if QL fails to converge.
pub fn hermitian_eigen(a: &CMatrix) -> HermitianEigen {
    let n = a.rows();
    assert_eq!(n, a.cols(), "eigendecomposition needs a square matrix");
    let mut t = CMatrix::from_fn(n, n, |i, j| if i >= j { a[(i, j)] } else { a[(j, i)].conj() });
    let mut q = CMatrix::identity(n);

    for k in 0..n.saturating_sub(2) {
        let sub = k + 1;
        let scale: f64 = (sub..n).map(|i| t[(i, k)].norm()).sum();
        if scale == 0.0 {
            continue;
        }
        let x0 = t[(sub, k)];
        let norm = libm::sqrt((sub..n).map(|i| t[(i, k)].norm_sqr()).sum::<f64>());
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * norm;

        // v = x - alpha·e1, normalized; H = I - 2vv* maps x to alpha·e1.
        let mut v: Vec<Complex64> = (sub..n).map(|i| t[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = libm::sqrt(v.iter().map(Complex64::norm_sqr).sum::<f64>());
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);

        // Trailing block update: A ← A - 2(v w* + w v*), w = p - (v*p) v, p = A v.
        let len = n - sub;
        let mut p = vec![ZERO; len];
        for (jj, &vj) in v.iter().enumerate() {
            for (ii, pi) in p.iter_mut().enumerate() {
                *pi += t[(sub + ii, sub + jj)] * vj;
            }
        }
        let kappa = dot_conj(&v, &p);
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - kappa * vi).collect();
        for jj in 0..len {
            for ii in 0..len {
                let delta = v[ii] * w[jj].conj() + w[ii] * v[jj].conj();
                t[(sub + ii, sub + jj)] -= delta * 2.0;
            }
        }
        t[(sub, k)] = alpha;
        t[(k, sub)] = alpha.conj();
        for i in sub + 1..n {
            t[(i, k)] = ZERO;
            t[(k, i)] = ZERO;
        }

        // Q ← Q·H on columns sub..n.
        for row in 0..n {
            let s: Complex64 = (0..len).map(|jj| q[(row, sub + jj)] * v[jj]).sum();
            for jj in 0..len {
                q[(row, sub + jj)] -= s * v[jj].conj() * 2.0;
            }
        }
    }

    // Phase scaling D so that D* T D has real nonnegative off-diagonal.
    let mut diag: Vec<f64> = (0..n).map(|i| t[(i, i)].re).collect();
    let mut off = vec![0.0; n];
    let mut phase = ONE;
    let mut phases = vec![ONE; n];
    for k in 0..n.saturating_sub(1) {
        let e = t[(k + 1, k)];
        let mag = e.norm();
        if mag > 0.0 {
            phase *= e / mag;
        }
        phases[k + 1] = phase;
        off[k + 1] = mag;
    }
    for j in 0..n {
        let d = phases[j];
        q.column_mut(j).iter_mut().for_each(|z| *z *= d);
    }

    let z = tridiagonal_ql(&mut diag, &mut off);

    // Eigenvectors of A are (Q·D)·Z; sort ascending.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let zc: Vec<Complex64> = z[src * n..(src + 1) * n].iter().map(|&r| r.into()).collect();
        let col = q.mul_vec(&zc);
        vectors.column_mut(dst).copy_from_slice(&col);
    }
    let values = order.iter().map(|&i| diag[i]).collect();
    HermitianEigen { values, vectors }
}

/// Implicit QL on a real symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e[i]` the entry coupling `i-1` and `i` (`e[0]`
/// unused). On return `d` holds eigenvalues (unsorted) and the returned
/// column-major `n×n` matrix holds the eigenvectors.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Vec<f64> {
    let n = d.len();
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    if n <= 1 {
        return z;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(libm::fabs(d[l]) + libm::fabs(e[l]));
        let mut m = l;
        while m < n {
            if libm::fabs(e[m]) <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m == n {
            m = n - 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                assert!(iter <= 60, "tridiagonal QL did not converge");
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let zi1 = z[(i + 1) * n + k];
                        let zi = z[i * n + k];
                        z[(i + 1) * n + k] = s * zi + c * zi1;
                        z[i * n + k] = c * zi - s * zi1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if libm::fabs(e[l]) <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    z
}

/// Real dense matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl RMatrix {
    pub fn from_row_major(n_rows: usize, n_cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n_rows * n_cols);
        Self {
            n_rows,
            n_cols,
            data,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self::from_row_major(n, n, data)
    }

    pub fn rows(&self) -> usize {
        self.n_rows
    }

    pub fn cols(&self) -> usize {
        self.n_cols
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn transpose(&self) -> RMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.n_cols {
            for i in 0..self.n_rows {
                data.push(self[(i, j)]);
            }
        }
        Self::from_row_major(self.n_cols, self.n_rows, data)
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.n_cols, other.n_rows);
        let mut data = vec![0.0; self.n_rows * other.n_cols];
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(i, k)];
                for j in 0..other.n_cols {
                    data[i * other.n_cols + j] += a * other[(k, j)];
                }
            }
        }
        Self::from_row_major(self.n_rows, other.n_cols, data)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `Aᵀ·x`.
    pub fn transpose_mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_rows);
        let mut out = vec![0.0; self.n_cols];
        for (i, &xi) in x.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a * xi;
            }
        }
        out
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &RMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }
}

impl core::ops::Index<(usize, usize)> for RMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n_cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n_cols + j]
    }
}

/// Householder QR of a square matrix with `R` normalized to a nonnegative
/// diagonal. Returns `(Q, R)`.
pub fn qr_positive(a: &RMatrix) -> (RMatrix, RMatrix) {
    let n = a.rows();
    assert_eq!(n, a.cols(), "qr_positive needs a square matrix");
    let mut r = a.clone();
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(n);

    for k in 0..n {
        let norm = libm::sqrt((k..n).map(|i| r[(i, k)] * r[(i, k)]).sum::<f64>());
        let mut v: Vec<f64> = (k..n).map(|i| r[(i, k)]).collect();
        if norm == 0.0 {
            reflectors.push(Vec::new());
            continue;
        }
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vnorm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        if vnorm == 0.0 {
            reflectors.push(Vec::new());
            continue;
        }
        v.iter_mut().for_each(|x| *x /= vnorm);
        for j in k..n {
            let s: f64 = (k..n).map(|i| v[i - k] * r[(i, j)]).sum();
            for i in k..n {
                r[(i, j)] -= 2.0 * s * v[i - k];
            }
        }
        for i in k + 1..n {
            r[(i, k)] = 0.0;
        }
        reflectors.push(v);
    }

    // Q = H_0 H_1 … H_{n-1}, applied to the identity from the right end.
    let mut q = RMatrix::identity(n);
    for (k, v) in reflectors.iter().enumerate().rev() {
        if v.is_empty() {
            continue;
        }
        for j in 0..n {
            let s: f64 = (k..n).map(|i| v[i - k] * q[(i, j)]).sum();
            for i in k..n {
                q[(i, j)] -= 2.0 * s * v[i - k];
            }
        }
    }

    for k in 0..n {
        if r[(k, k)] < 0.0 {
            for j in k..n {
                r[(k, j)] = -r[(k, j)];
            }
            for i in 0..n {
                q[(i, k)] = -q[(i, k)];
            }
        }
    }
    (q, r)
}
