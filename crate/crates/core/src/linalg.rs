//! Small dense and sparse linear algebra: just what the reservoir needs.
//!
//! All products accumulate row by row in ascending column order, so results
//! are bit-reproducible for a given build.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "dense matrix data",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from equal-length rows.
    ///
    /// Panics on ragged input; intended for literals in tests and examples.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self · x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Compressed sparse row matrix. Column indices ascend within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Keeps the structurally nonzero entries of `dense`.
    pub fn from_dense(dense: &DenseMatrix) -> Self {
        let mut indptr = Vec::with_capacity(dense.rows() + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for i in 0..dense.rows() {
            for (j, &v) in dense.row(i).iter().enumerate() {
                if v != 0.0 {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Self {
            rows: dense.rows(),
            cols: dense.cols(),
            indptr,
            indices,
            values,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for k in self.indptr[i]..self.indptr[i + 1] {
                d[(i, self.indices[k])] = self.values[k];
            }
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.values {
            *v *= factor;
        }
    }

    /// `out = self · x`, without allocating.
    #[inline]
    pub fn matvec_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.cols);
        debug_assert_eq!(out.len(), self.rows);
        for (i, o) in out.iter_mut().enumerate() {
            let (lo, hi) = (self.indptr[i], self.indptr[i + 1]);
            *o = self.indices[lo..hi]
                .iter()
                .zip(&self.values[lo..hi])
                .map(|(&j, &v)| v * x[j])
                .sum();
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "sparse matrix-vector product",
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = vec![0.0; self.rows];
        self.matvec_into(x, &mut out);
        Ok(out)
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L·Lᵀ`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: DenseMatrix,
}

impl Cholesky {
    /// Factorizes a symmetric positive-definite matrix, reading only its lower
    /// triangle. Pivots at or below `n·eps·max_diag` count as singular.
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let max_diag = (0..n).map(|i| a[(i, i)].abs()).fold(0.0, f64::max);
        let floor = max_diag * n as f64 * f64::EPSILON;
        let mut l = DenseMatrix::zeros(n, n);
        for j in 0..n {
            let d = a[(j, j)] - dot(&l.row(j)[..j], &l.row(j)[..j]);
            if !(d > floor) || !d.is_finite() {
                return Err(Error::Untrainable);
            }
            let ljj = d.sqrt();
            l[(j, j)] = ljj;
            for i in j + 1..n {
                let s = a[(i, j)] - dot(&l.row(i)[..j], &l.row(j)[..j]);
                l[(i, j)] = s / ljj;
            }
        }
        Ok(Self { l })
    }

    /// Solves `A·x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.l.rows();
        debug_assert_eq!(b.len(), n);
        for i in 0..n {
            let s = b[i] - dot(&self.l.row(i)[..i], &b[..i]);
            b[i] = s / self.l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..n {
                s -= self.l[(k, i)] * b[k];
            }
            b[i] = s / self.l[(i, i)];
        }
    }
}

/// Iteration cap for [`spectral_radius`] and [`power_spectral_radius`].
pub const SPECTRAL_MAX_ITERATIONS: usize = 10_000;
/// Default relative tolerance for the spectral radius.
pub const SPECTRAL_TOLERANCE: f64 = 1e-9;
/// Matrices up to this order go through the dense eigensolver.
pub const DENSE_EIGEN_LIMIT: usize = 512;
const POWER_SEED: u64 = 0x005E_ED0F_5EC7;

/// Largest eigenvalue magnitude of a square matrix.
///
/// Orders up to [`DENSE_EIGEN_LIMIT`] use the full dense eigensolve, which is
/// exact to rounding and copes with complex or tied leading eigenvalues.
/// Larger matrices use [`power_spectral_radius`], `O(nnz)` per iteration.
pub fn spectral_radius(m: &CsrMatrix, tol: f64) -> Result<f64> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be > 0, got {tol}")));
    }
    if m.rows() <= DENSE_EIGEN_LIMIT {
        dense_spectral_radius(&m.to_dense())
    } else {
        power_spectral_radius(m, tol, SPECTRAL_MAX_ITERATIONS, POWER_SEED)
    }
}

/// Spectral radius via the eigenvalues of a dense matrix.
pub fn dense_spectral_radius(m: &DenseMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?
        .into_iter()
        .map(|(re, im)| re.hypot(im))
        .fold(0.0, f64::max))
}

/// Power iteration with a two-dimensional Krylov fit at each step.
///
/// A single dominant real eigenvalue shows up as `A·x ≈ λ·x`; a dominant
/// complex-conjugate pair (or a `±λ` pair) shows up as
/// `A²·x + p·A·x + q·x ≈ 0`, whose quadratic roots are the pair. Each step
/// takes whichever model leaves the smaller relative residual and stops once
/// that residual drops below `tol`.
pub fn power_spectral_radius(
    m: &CsrMatrix,
    tol: f64,
    max_iterations: usize,
    seed: u64,
) -> Result<f64> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::NotSquare {
            rows: n,
            cols: m.cols(),
        });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let mut rng = SplitMix64::new(seed);
    let mut x = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut best = f64::NAN;
    let mut best_residual = f64::INFINITY;

    'restart: for _ in 0..3 {
        x.iter_mut().for_each(|v| *v = rng.symmetric(1.0));
        let nx = norm(&x);
        x.iter_mut().for_each(|v| *v /= nx);
        m.matvec_into(&x, &mut y);

        for _ in 0..max_iterations {
            let ny = norm(&y);
            if ny == 0.0 || !ny.is_finite() {
                continue 'restart;
            }
            m.matvec_into(&y, &mut z);

            // Real model: y ≈ λ x (x has unit norm).
            let lambda = dot(&y, &x);
            let real_res = x
                .iter()
                .zip(&y)
                .map(|(a, b)| (b - lambda * a).powi(2))
                .sum::<f64>()
                .sqrt()
                / ny;
            let mut estimate = lambda.abs();
            let mut residual = real_res;

            // Pair model: z + p y + q x ≈ 0.
            let (xx, xy, yy) = (1.0, dot(&x, &y), ny * ny);
            let (zx, zy) = (dot(&z, &x), dot(&z, &y));
            let det = xx * yy - xy * xy;
            let nz = norm(&z);
            if det > 1e-12 * yy && nz > 0.0 {
                let p = (-zy * xx + zx * xy) / det;
                let q = (-zx * yy + zy * xy) / det;
                let pair_res = z
                    .iter()
                    .zip(&y)
                    .zip(&x)
                    .map(|((c, b), a)| (c + p * b + q * a).powi(2))
                    .sum::<f64>()
                    .sqrt()
                    / nz;
                if pair_res < residual {
                    let disc = p * p - 4.0 * q;
                    estimate = if disc < 0.0 {
                        q.sqrt()
                    } else {
                        let s = disc.sqrt();
                        ((-p + s) / 2.0).abs().max(((-p - s) / 2.0).abs())
                    };
                    residual = pair_res;
                }
            }

            if residual < best_residual {
                best_residual = residual;
                best = estimate;
            }
            if residual <= tol {
                return Ok(estimate);
            }

            // Advance one step: x <- y/|y|, y <- A x.
            for (a, b) in x.iter_mut().zip(&y) {
                *a = b / ny;
            }
            for (b, c) in y.iter_mut().zip(&z) {
                *b = c / ny;
            }
        }
        return Err(Error::NoConvergence {
            estimate: best,
            iterations: max_iterations,
        });
    }
    // Every start vector was annihilated: the matrix is nilpotent on all of them.
    Ok(0.0)
}

/// All eigenvalues `(re, im)` of a dense real matrix: balancing, reduction to
/// upper Hessenberg form by stabilized elimination, then shifted QR
/// iterations with Francis double steps.
pub fn eigenvalues(m: &DenseMatrix) -> Result<Vec<(f64, f64)>> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: m.cols(),
        });
    }
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    balance(&mut a);
    to_hessenberg(&mut a);
    hessenberg_qr(a)
}

fn balance(a: &mut [Vec<f64>]) {
    const RADIX: f64 = 2.0;
    let n = a.len();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for v in a[i].iter_mut() {
                        *v *= g;
                    }
                    for row in a.iter_mut() {
                        row[i] *= f;
                    }
                }
            }
        }
    }
}

fn to_hessenberg(a: &mut [Vec<f64>]) {
    let n = a.len();
    for m in 1..n.saturating_sub(1) {
        let mut x = 0.0f64;
        let mut pivot = m;
        for j in m..n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                pivot = j;
            }
        }
        if pivot != m {
            a.swap(pivot, m);
            for row in a.iter_mut() {
                row.swap(pivot, m);
            }
        }
        if x != 0.0 {
            for i in m + 1..n {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..n {
                        a[i][j] -= y * a[m][j];
                    }
                    for row in a.iter_mut() {
                        row[m] += y * row[i];
                    }
                }
            }
        }
    }
    // Drop the elimination multipliers stored below the subdiagonal.
    for (i, row) in a.iter_mut().enumerate() {
        for v in row.iter_mut().take(i.saturating_sub(1)) {
            *v = 0.0;
        }
    }
}

fn hessenberg_qr(mut a: Vec<Vec<f64>>) -> Result<Vec<(f64, f64)>> {
    const MAX_SWEEPS: usize = 60;
    let n = a.len() as isize;
    let mut eig = vec![(0.0, 0.0); n as usize];
    if n == 0 {
        return Ok(eig);
    }
    let eps = f64::EPSILON;
    let mut anorm = 0.0;
    for i in 0..n as usize {
        for j in i.saturating_sub(1)..n as usize {
            anorm += a[i][j].abs();
        }
    }
    macro_rules! at {
        ($i:expr, $j:expr) => {
            a[($i) as usize][($j) as usize]
        };
    }
    let sign = |a: f64, b: f64| if b >= 0.0 { a.abs() } else { -a.abs() };

    let mut nn: isize = n - 1;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    while nn >= 0 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l > 0 {
                let mut s = at!(l - 1, l - 1).abs() + at!(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at!(l, l - 1).abs() <= eps * s {
                    at!(l, l - 1) = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = at!(nn, nn);
            if l == nn {
                eig[nn as usize] = (x + t, 0.0);
                nn -= 1;
            } else {
                let mut y = at!(nn - 1, nn - 1);
                let mut w = at!(nn, nn - 1) * at!(nn - 1, nn);
                if l == nn - 1 {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    let mut z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + sign(z, p);
                        let hi = x + z;
                        let lo = if z != 0.0 { x - w / z } else { hi };
                        eig[(nn - 1) as usize] = (hi, 0.0);
                        eig[nn as usize] = (lo, 0.0);
                    } else {
                        eig[nn as usize] = (x + p, -z);
                        eig[(nn - 1) as usize] = (x + p, z);
                    }
                    nn -= 2;
                } else {
                    if its == MAX_SWEEPS {
                        let partial = eig[(nn + 1) as usize..]
                            .iter()
                            .map(|(re, im)| re.hypot(*im))
                            .fold(f64::NAN, f64::max);
                        return Err(Error::NoConvergence {
                            estimate: partial,
                            iterations: its,
                        });
                    }
                    if its == 10 || its == 20 {
                        // Exceptional shift.
                        t += x;
                        for i in 0..=nn {
                            at!(i, i) -= x;
                        }
                        let s = at!(nn, nn - 1).abs() + at!(nn - 1, nn - 2).abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    let mut m = nn - 2;
                    let mut z;
                    loop {
                        z = at!(m, m);
                        r = x - z;
                        let s = y - z;
                        p = (r * s - w) / at!(m + 1, m) + at!(m, m + 1);
                        q = at!(m + 1, m + 1) - z - r - s;
                        r = at!(m + 2, m + 1);
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = at!(m, m - 1).abs() * (q.abs() + r.abs());
                        let v = p.abs()
                            * (at!(m - 1, m - 1).abs() + z.abs() + at!(m + 1, m + 1).abs());
                        if u <= eps * v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in m..nn - 1 {
                        at!(i + 2, i) = 0.0;
                        if i != m {
                            at!(i + 2, i - 1) = 0.0;
                        }
                    }
                    let mut k = m;
                    while k < nn {
                        if k != m {
                            p = at!(k, k - 1);
                            q = at!(k + 1, k - 1);
                            r = 0.0;
                            if k + 1 != nn {
                                r = at!(k + 2, k - 1);
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = sign((p * p + q * q + r * r).sqrt(), p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    at!(k, k - 1) = -at!(k, k - 1);
                                }
                            } else {
                                at!(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nn {
                                p = at!(k, j) + q * at!(k + 1, j);
                                if k + 1 != nn {
                                    p += r * at!(k + 2, j);
                                    at!(k + 2, j) -= p * z;
                                }
                                at!(k + 1, j) -= p * y;
                                at!(k, j) -= p * x;
                            }
                            let mmin = if nn < k + 3 { nn } else { k + 3 };
                            for i in l..=mmin {
                                p = x * at!(i, k) + y * at!(i, k + 1);
                                if k + 1 != nn {
                                    p += z * at!(i, k + 2);
                                    at!(i, k + 2) -= p * r;
                                }
                                at!(i, k + 1) -= p * q;
                                at!(i, k) -= p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if l + 1 >= nn {
                break;
            }
        }
    }
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_moduli(m: &DenseMatrix) -> Vec<f64> {
        let mut v: Vec<f64> = eigenvalues(m)
            .unwrap()
            .iter()
            .map(|(a, b)| a.hypot(*b))
            .collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn identity_radius_is_one() {
        for n in [1, 2, 5, 40] {
            let m = CsrMatrix::from_dense(&DenseMatrix::identity(n));
            assert_eq!(spectral_radius(&m, 1e-9).unwrap(), 1.0);
            assert!((power_spectral_radius(&m, 1e-9, 100, 1).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_radius() {
        let m = CsrMatrix::from_dense(&DenseMatrix::diagonal(&[2.0, -1.0, 0.5]));
        assert!((spectral_radius(&m, 1e-9).unwrap() - 2.0).abs() < 1e-12);
        let p = power_spectral_radius(&m, 1e-10, 10_000, 3).unwrap();
        assert!((p - 2.0).abs() < 1e-8, "{p}");
    }

    #[test]
    fn rotation_has_complex_pair() {
        // 90 degree rotation scaled by 3: eigenvalues ±3i.
        let m = DenseMatrix::from_rows(&[vec![0.0, -3.0], vec![3.0, 0.0]]);
        let eig = eigenvalues(&m).unwrap();
        for (re, im) in eig {
            assert!(re.abs() < 1e-12);
            assert!((im.abs() - 3.0).abs() < 1e-12);
        }
        let csr = CsrMatrix::from_dense(&m);
        let p = power_spectral_radius(&csr, 1e-10, 1000, 9).unwrap();
        assert!((p - 3.0).abs() < 1e-8, "{p}");
    }

    #[test]
    fn plus_minus_pair() {
        let m = CsrMatrix::from_dense(&DenseMatrix::diagonal(&[2.0, -2.0, 1.0, 0.1]));
        let p = power_spectral_radius(&m, 1e-10, 10_000, 5).unwrap();
        assert!((p - 2.0).abs() < 1e-8, "{p}");
    }

    #[test]
    fn triangular_eigenvalues_are_diagonal() {
        let m = DenseMatrix::from_rows(&[
            vec![4.0, 1.0, -2.0, 0.5],
            vec![0.0, -3.0, 7.0, 1.0],
            vec![0.0, 0.0, 1.5, 2.0],
            vec![0.0, 0.0, 0.0, 0.25],
        ]);
        assert_eq!(sorted_moduli(&m).len(), 4);
        let v = sorted_moduli(&m);
        for (a, b) in v.iter().zip([0.25, 1.5, 3.0, 4.0]) {
            assert!((a - b).abs() < 1e-10, "{v:?}");
        }
    }

    #[test]
    fn zero_matrix_radius_is_zero() {
        let m = CsrMatrix::from_dense(&DenseMatrix::zeros(6, 6));
        assert_eq!(spectral_radius(&m, 1e-9).unwrap(), 0.0);
        assert_eq!(power_spectral_radius(&m, 1e-9, 100, 1).unwrap(), 0.0);
    }

    #[test]
    fn non_square_rejected() {
        let m = CsrMatrix::from_dense(&DenseMatrix::zeros(2, 3));
        assert!(matches!(
            spectral_radius(&m, 1e-9),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn non_convergence_reports_estimate() {
        // Eigenvalues 1 and 0.9999999: gap far too small for 50 iterations.
        let m = CsrMatrix::from_dense(&DenseMatrix::diagonal(&[1.0, 0.999_999_9, 0.5]));
        match power_spectral_radius(&m, 1e-14, 50, 2) {
            Err(Error::NoConvergence { estimate, iterations }) => {
                assert_eq!(iterations, 50);
                assert!((estimate - 1.0).abs() < 1e-3);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn cholesky_solves_spd_system() {
        let a = DenseMatrix::from_rows(&[
            vec![4.0, 2.0, 0.4],
            vec![2.0, 5.0, 1.0],
            vec![0.4, 1.0, 3.0],
        ]);
        let x_true = [1.0, -2.0, 0.5];
        let mut b = a.matvec(&x_true).unwrap();
        Cholesky::factor(&a).unwrap().solve_in_place(&mut b);
        for (x, t) in b.iter().zip(x_true) {
            assert!((x - t).abs() < 1e-12);
        }
    }

    #[test]
    fn cholesky_rejects_singular() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        assert!(matches!(Cholesky::factor(&a), Err(Error::Untrainable)));
    }

    #[test]
    fn csr_roundtrips_dense() {
        let d = DenseMatrix::from_rows(&[vec![0.0, 1.5, 0.0], vec![-2.0, 0.0, 3.0]]);
        let s = CsrMatrix::from_dense(&d);
        assert_eq!(s.nnz(), 3);
        assert_eq!(s.to_dense(), d);
        assert_eq!(s.matvec(&[1.0, 2.0, 3.0]).unwrap(), vec![3.0, 7.0]);
    }
}
