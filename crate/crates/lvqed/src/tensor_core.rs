//! Minkowski vectors, Levi-Civita symbols and small dense complex matrices.
//!
//! The metric is `diag(+1, -1, -1, -1)` in 3+1 dimensions and
//! `diag(+1, -1, -1)` in 2+1 dimensions. Vectors are stored with upper
//! (contravariant) indices; [`FourVector::lower`] and [`ThreeVector::lower`]
//! produce the covariant components explicitly. The totally antisymmetric
//! symbols are normalised as `eps^{0123} = +1` and `eps^{012} = +1`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LvError, LvResult};

/// Dense complex matrix used for Dirac matrices and Lorentz-index kernels.
pub type CMatrix = DMatrix<Complex64>;

/// Shorthand for a complex number with the given real and imaginary parts.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Diagonal entry `g^{mu mu}` (equal to `g_{mu mu}`) of the mostly-minus metric.
#[inline]
pub fn metric_sign(mu: usize) -> f64 {
    if mu == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Real Lorentz vector in 3+1 dimensions with contravariant components `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector(pub [f64; 4]);

/// Real Lorentz vector in 2+1 dimensions with contravariant components `(t, x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ThreeVector(pub [f64; 3]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t, x, y, z])
    }

    /// Vector with vanishing time component.
    pub fn from_spatial(s: [f64; 3]) -> Self {
        FourVector([0.0, s[0], s[1], s[2]])
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    /// Spatial part `(x, y, z)` of the contravariant components.
    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    /// Covariant components `v_mu = g_{mu nu} v^nu`.
    pub fn lower(&self) -> [f64; 4] {
        [self.0[0], -self.0[1], -self.0[2], -self.0[3]]
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    /// Minkowski square `v.v`.
    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    pub fn scale(&self, s: f64) -> FourVector {
        FourVector(self.0.map(|c| c * s))
    }

    pub fn add(&self, o: &FourVector) -> FourVector {
        FourVector([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }

    pub fn sub(&self, o: &FourVector) -> FourVector {
        self.add(&o.scale(-1.0))
    }

    /// Largest absolute component, used as a scale for relative tolerances.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()))
    }
}

impl ThreeVector {
    pub fn new(t: f64, x: f64, y: f64) -> Self {
        ThreeVector([t, x, y])
    }

    /// Covariant components `v_mu = g_{mu nu} v^nu`.
    pub fn lower(&self) -> [f64; 3] {
        [self.0[0], -self.0[1], -self.0[2]]
    }

    pub fn dot(&self, other: &ThreeVector) -> f64 {
        minkowski_dot(self, other)
    }

    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()))
    }
}

/// Access to the contravariant components of a Lorentz vector.
pub trait LorentzVector {
    fn components(&self) -> &[f64];
}

impl LorentzVector for FourVector {
    fn components(&self) -> &[f64] {
        &self.0
    }
}

impl LorentzVector for ThreeVector {
    fn components(&self) -> &[f64] {
        &self.0
    }
}

/// Minkowski product with the mostly-minus metric for statically sized vectors.
pub fn minkowski_dot<V: LorentzVector>(u: &V, v: &V) -> f64 {
    u.components()
        .iter()
        .zip(v.components())
        .enumerate()
        .map(|(mu, (a, b))| metric_sign(mu) * a * b)
        .sum()
}

/// Minkowski product of component slices; both must have length 3 or 4.
pub fn minkowski_dot_slices(u: &[f64], v: &[f64]) -> LvResult<f64> {
    if u.len() != v.len() {
        return Err(LvError::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    if u.len() != 3 && u.len() != 4 {
        return Err(LvError::UnsupportedDimension(u.len()));
    }
    Ok(u.iter()
        .zip(v)
        .enumerate()
        .map(|(mu, (a, b))| metric_sign(mu) * a * b)
        .sum())
}

/// Totally antisymmetric symbol with upper indices for 3 or 4 indices.
///
/// Returns the sign of the permutation of `(0, 1, .., n-1)`, or 0 when an
/// index repeats.
pub fn levi_civita(indices: &[usize]) -> LvResult<i32> {
    let n = indices.len();
    if n != 3 && n != 4 {
        return Err(LvError::UnsupportedDimension(n));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
        return Err(LvError::IndexOutOfRange {
            index: bad,
            dimension: n,
        });
    }
    let mut sign = 1;
    for i in 0..n {
        for j in (i + 1)..n {
            if indices[i] == indices[j] {
                return Ok(0);
            }
            if indices[i] > indices[j] {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

/// Levi-Civita symbol with all indices lowered by the metric.
pub fn levi_civita_lower(indices: &[usize]) -> LvResult<i32> {
    let up = levi_civita(indices)?;
    let s: f64 = indices.iter().map(|&i| metric_sign(i)).product();
    Ok(up * s as i32)
}

/// `sum_nu eps_{mu nu rho} eps^{nu sigma tau}` in 2+1 dimensions, computed by
/// brute force with the lowered symbol built from the metric.
pub fn epsilon_contraction_3d(mu: usize, sigma: usize, rho: usize, tau: usize) -> LvResult<i32> {
    for &i in &[mu, sigma, rho, tau] {
        if i >= 3 {
            return Err(LvError::IndexOutOfRange {
                index: i,
                dimension: 3,
            });
        }
    }
    let mut total = 0;
    for nu in 0..3 {
        total += levi_civita_lower(&[mu, nu, rho])? * levi_civita(&[nu, sigma, tau])?;
    }
    Ok(total)
}

/// Closed-form right-hand side `-delta^sigma_mu delta^tau_rho + delta^sigma_rho delta^tau_mu`.
pub fn epsilon_contraction_3d_identity(mu: usize, sigma: usize, rho: usize, tau: usize) -> i32 {
    let d = |a: usize, b: usize| i32::from(a == b);
    -d(sigma, mu) * d(tau, rho) + d(sigma, rho) * d(tau, mu)
}

/// Identity matrix of the given order.
pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Maximum entrywise modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Maximum entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// Matrix commutator `[a, b]`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Matrix anticommutator `{a, b}`.
pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

/// Build a matrix from row-major complex entries.
pub fn cmatrix(n: usize, entries: &[Complex64]) -> CMatrix {
    CMatrix::from_row_slice(n, n, entries)
}

/// Result of a Hermitian eigen-decomposition with eigenvalues in ascending order.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Columns are the normalised eigenvectors matching `values`.
    pub vectors: CMatrix,
}

/// Tolerance on `max |M - M^dagger|` accepted by [`eig_hermitian`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn eig_hermitian(m: &CMatrix) -> LvResult<HermitianEigen> {
    if !m.is_square() {
        return Err(LvError::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let asym = max_abs_diff(m, &m.adjoint());
    if asym > HERMITIAN_TOLERANCE {
        return Err(LvError::NotHermitian(asym));
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok(HermitianEigen { values, vectors })
}

/// Three-dimensional Euclidean helpers for spatial vectors.
pub mod vec3 {
    pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    pub fn norm(a: [f64; 3]) -> f64 {
        dot(a, a).sqrt()
    }

    pub fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }

    pub fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    pub fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
        [a[0] * s, a[1] * s, a[2] * s]
    }
}
