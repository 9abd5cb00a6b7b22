//! Dense symmetric eigendecomposition and projections onto the eigenbasis.
//!
//! Two solvers are provided. Cyclic Jacobi is the reference method and is
//! used for small matrices; Householder tridiagonalization followed by
//! implicit QL is used above [`JACOBI_MAX_DIM`], where Jacobi's per-sweep
//! cost becomes prohibitive. Both return orthonormal eigenvectors sorted
//! by ascending eigenvalue.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};

/// Largest dimension handled by Jacobi under [`EigenMethod::Auto`].
pub const JACOBI_MAX_DIM: usize = 96;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// fraction of `‖L‖_F`.
pub const JACOBI_RELATIVE_TOLERANCE: f64 = 1e-14;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Default relative zero threshold: `1e-9 * max |λ|`.
pub const DEFAULT_RELATIVE_ZERO: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EigenMethod {
    Jacobi,
    HouseholderQl,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ZeroTolerance {
    Absolute(f64),
    /// Fraction of the largest eigenvalue magnitude.
    RelativeToMax(f64),
}

impl Default for ZeroTolerance {
    fn default() -> Self {
        ZeroTolerance::RelativeToMax(DEFAULT_RELATIVE_ZERO)
    }
}

/// Ascending eigenvalues with their orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct SpectralData {
    eigenvalues: Vec<f64>,
    /// Row `i` is the eigenvector of `eigenvalues[i]`.
    modes: Matrix,
    zero_tolerance: f64,
    null_index: Option<usize>,
    null_count: usize,
    method: EigenMethod,
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvector of the `i`-th eigenvalue.
    pub fn mode(&self, i: usize) -> &[f64] {
        self.modes.row(i)
    }

    /// Eigenvectors as the columns of a matrix, column `i` paired with
    /// eigenvalue `i`.
    pub fn eigenvectors(&self) -> Matrix {
        self.modes.transpose()
    }

    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tolerance
    }

    /// Index of the null mode when exactly one eigenvalue is below the
    /// zero tolerance.
    pub fn null_index(&self) -> Option<usize> {
        self.null_index
    }

    /// Number of eigenvalues whose magnitude is below the zero tolerance.
    pub fn null_count(&self) -> usize {
        self.null_count
    }

    pub fn method(&self) -> EigenMethod {
        self.method
    }

    pub fn is_null(&self, i: usize) -> bool {
        self.eigenvalues[i].abs() < self.zero_tolerance
    }

    /// Indices of the modes above the zero tolerance.
    pub fn nonzero_modes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|&i| !self.is_null(i))
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Eigen-equation and orthonormality residuals against `l`.
    pub fn residuals(&self, l: &Matrix) -> Result<SpectralResiduals> {
        if l.rows() != self.dim() || !l.is_square() {
            return Err(Error::DimensionMismatch {
                what: "matrix for spectral residuals",
                expected: self.dim(),
                found: l.rows(),
            });
        }
        let n = self.dim();
        let mut max_eigen_residual: f64 = 0.0;
        for i in 0..n {
            let u = self.mode(i);
            let lu = l.matvec(u)?;
            let a = self.eigenvalues[i];
            for (x, y) in lu.iter().zip(u) {
                max_eigen_residual = max_eigen_residual.max((x - a * y).abs());
            }
        }
        let mut orthonormality_error: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let target = if i == j { 1.0 } else { 0.0 };
                let d = dot(self.mode(i), self.mode(j));
                orthonormality_error = orthonormality_error.max((d - target).abs());
            }
        }
        Ok(SpectralResiduals {
            max_eigen_residual,
            orthonormality_error,
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralResiduals {
    /// `max_i ‖L u_i - a_i u_i‖∞`.
    pub max_eigen_residual: f64,
    /// `max |UᵀU - I|`.
    pub orthonormality_error: f64,
}

/// Eigendecomposition with the default solver choice.
pub fn eigendecompose_symmetric(l: &Matrix, zero_tolerance: ZeroTolerance) -> Result<SpectralData> {
    eigendecompose_with(l, zero_tolerance, EigenMethod::Auto)
}

pub fn eigendecompose_with(
    l: &Matrix,
    zero_tolerance: ZeroTolerance,
    method: EigenMethod,
) -> Result<SpectralData> {
    if !l.is_square() {
        return Err(Error::DimensionMismatch {
            what: "square matrix",
            expected: l.rows(),
            found: l.cols(),
        });
    }
    let n = l.rows();
    let scale = l.as_slice().iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let asym = l.max_asymmetry().unwrap_or(0.0);
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }
    let method = match method {
        EigenMethod::Auto if n <= JACOBI_MAX_DIM => EigenMethod::Jacobi,
        EigenMethod::Auto => EigenMethod::HouseholderQl,
        m => m,
    };
    let (values, modes) = match method {
        EigenMethod::Jacobi => jacobi(l)?,
        _ => householder_ql(l)?,
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut sorted = Vec::with_capacity(n * n);
    for &i in &order {
        sorted.extend_from_slice(&modes[i * n..(i + 1) * n]);
    }

    let largest = eigenvalues.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let tol = match zero_tolerance {
        ZeroTolerance::Absolute(t) => t,
        ZeroTolerance::RelativeToMax(r) => r * largest.max(f64::MIN_POSITIVE),
    };
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(
            "zero tolerance must be positive".into(),
        ));
    }
    let nulls: Vec<usize> = (0..n).filter(|&i| eigenvalues[i].abs() < tol).collect();
    Ok(SpectralData {
        eigenvalues,
        modes: Matrix::from_vec(n, n, sorted),
        zero_tolerance: tol,
        null_index: (nulls.len() == 1).then(|| nulls[0]),
        null_count: nulls.len(),
        method,
    })
}

/// Cyclic Jacobi. Returns unsorted eigenvalues and a row-major matrix
/// whose row `i` is the eigenvector of eigenvalue `i`.
fn jacobi(l: &Matrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = l.rows();
    let mut a = l.as_slice().to_vec();
    let mut vt = Matrix::identity(n).into_vec();
    let target = JACOBI_RELATIVE_TOLERANCE * l.frobenius_norm();

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut off = off_norm(&a);
    let mut sweeps = 0;
    while off > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let h = a[r * n + q];
                    let np = g - s * (h + g * tau);
                    let nq = h + s * (g - h * tau);
                    a[r * n + p] = np;
                    a[p * n + r] = np;
                    a[r * n + q] = nq;
                    a[q * n + r] = nq;
                }
                let (head, tail) = vt.split_at_mut(q * n);
                rotate_rows(&mut head[p * n..(p + 1) * n], &mut tail[..n], c, s);
            }
        }
        off = off_norm(&a);
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    Ok((values, vt))
}

/// `(x, y) <- (c x - s y, s x + c y)` element-wise.
#[inline]
fn rotate_rows(x: &mut [f64], y: &mut [f64], c: f64, s: f64) {
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        let g = *xi;
        let h = *yi;
        *xi = c * g - s * h;
        *yi = s * g + c * h;
    }
}

/// Householder reduction to tridiagonal form and implicit QL iteration.
fn householder_ql(l: &Matrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = l.rows();
    if n == 1 {
        return Ok((vec![l[(0, 0)]], vec![1.0]));
    }
    let mut a = l.as_slice().to_vec();
    let mut d = vec![0.0; n];
    // e[i] couples i and i+1; e[n-1] stays 0
    let mut e = vec![0.0; n];
    let mut reflectors: Vec<Option<Vec<f64>>> = vec![None; n];
    let mut p = vec![0.0; n];

    for k in 0..n - 1 {
        d[k] = a[k * n + k];
        let x = &a[k * n + k + 1..(k + 1) * n];
        let tail_norm2: f64 = x[1..].iter().map(|v| v * v).sum();
        if tail_norm2 == 0.0 {
            e[k] = x[0];
            continue;
        }
        let sigma = (x[0] * x[0] + tail_norm2).sqrt();
        let alpha = if x[0] >= 0.0 { -sigma } else { sigma };
        let mut u = x.to_vec();
        u[0] -= alpha;
        let unorm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        u.iter_mut().for_each(|v| *v /= unorm);
        e[k] = alpha;

        // trailing block B = a[k+1.., k+1..]; B <- H B H with H = I - 2uuᵀ
        let m = n - k - 1;
        let off = k + 1;
        let pv = &mut p[..m];
        for i in 0..m {
            let row = &a[(off + i) * n + off..(off + i) * n + n];
            pv[i] = dot(row, &u);
        }
        let kk = dot(pv, &u);
        for i in 0..m {
            pv[i] -= kk * u[i];
        }
        for i in 0..m {
            let ui2 = 2.0 * u[i];
            let wi2 = 2.0 * pv[i];
            let row = &mut a[(off + i) * n + off..(off + i) * n + n];
            for ((r, &uj), &wj) in row.iter_mut().zip(&u).zip(pv.iter()) {
                *r -= ui2 * wj + wi2 * uj;
            }
        }
        reflectors[k] = Some(u);
    }
    d[n - 1] = a[(n - 1) * n + n - 1];

    // Q = H_0 H_1 ... accumulated backwards so each step touches only the
    // trailing block.
    let mut q = Matrix::identity(n).into_vec();
    let mut r = vec![0.0; n];
    for k in (0..n - 1).rev() {
        let Some(u) = &reflectors[k] else { continue };
        let off = k + 1;
        let m = n - off;
        let rv = &mut r[..m];
        rv.iter_mut().for_each(|x| *x = 0.0);
        for (i, &ui) in u.iter().enumerate() {
            let row = &q[(off + i) * n + off..(off + i) * n + n];
            for (acc, &x) in rv.iter_mut().zip(row) {
                *acc += ui * x;
            }
        }
        for (i, &ui) in u.iter().enumerate() {
            let ui2 = 2.0 * ui;
            let row = &mut q[(off + i) * n + off..(off + i) * n + n];
            for (x, &acc) in row.iter_mut().zip(rv.iter()) {
                *x -= ui2 * acc;
            }
        }
    }
    // rows of zt are the columns of Q; QL rotations then act on row pairs
    let mut zt = Matrix::from_vec(n, n, q).transpose().into_vec();

    tql(&mut d, &mut e, &mut zt, n)?;
    Ok((d, zt))
}

/// Implicit QL on the symmetric tridiagonal `(d, e)`, rotating the rows of
/// `zt` along.
fn tql(d: &mut [f64], e: &mut [f64], zt: &mut [f64], n: usize) -> Result<()> {
    const MAX_ITER_PER_VALUE: usize = 60;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_ITER_PER_VALUE {
                    return Err(Error::NoConvergence {
                        sweeps: iter,
                        off_norm: e[l].abs(),
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
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
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    // columns i, i+1 of Z: (z_i, z_{i+1}) <- (c z_i - s z_{i+1}, s z_i + c z_{i+1})
                    let (head, tail) = zt.split_at_mut((i + 1) * n);
                    rotate_rows(&mut head[i * n..], &mut tail[..n], c, s);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Components of a vertex vector in the eigenbasis.
#[derive(Clone, Debug, Serialize)]
pub struct Projections {
    /// `Ĵ_i = ⟨u_i, J⟩` for every mode, in eigenvalue order.
    pub components: Vec<f64>,
    /// Component along the null mode, when there is exactly one.
    pub null_component: Option<f64>,
}

pub fn project_source(spectral: &SpectralData, source: &[f64]) -> Result<Projections> {
    if source.len() != spectral.dim() {
        return Err(Error::DimensionMismatch {
            what: "source vector",
            expected: spectral.dim(),
            found: source.len(),
        });
    }
    let components: Vec<f64> = (0..spectral.dim())
        .map(|i| dot(spectral.mode(i), source))
        .collect();
    let null_component = spectral.null_index().map(|i| components[i]);
    Ok(Projections {
        components,
        null_component,
    })
}
