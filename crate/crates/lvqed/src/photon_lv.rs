//! Photons with a Chern–Simons term: the 2+1D Maxwell–Chern–Simons propagator and
//! the 3+1D dispersion, birefringence and modified Maxwell equations.
//!
//! Plane waves are written as `exp(i (k.x - w t)) = exp(-i k_mu x^mu)` with
//! `k^mu = (w, k)`, so `grad -> i k` and `d/dt -> -i w`.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LvError, LvResult};
use crate::poly::{aberth_refine, companion_roots, eval_complex, sort_by_real};
use crate::tensor_core::{
    c64, levi_civita, levi_civita_lower, metric_sign, vec3, CMatrix, FourVector, ThreeVector,
};

/// Gauge-fixing choice of the 2+1D theory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeParameter {
    /// Finite, nonzero `lambda`.
    Finite(f64),
    /// `lambda -> infinity`: the gauge-dependent part of the propagator drops out.
    LandauLimit,
}

/// Parameters of the Maxwell–Chern–Simons theory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McsParams {
    pub theta: f64,
    pub lambda: GaugeParameter,
}

impl McsParams {
    pub fn new(theta: f64, lambda: GaugeParameter) -> LvResult<Self> {
        if !theta.is_finite() {
            return Err(LvError::InvalidParameter(format!(
                "theta = {theta} must be finite"
            )));
        }
        if let GaugeParameter::Finite(l) = lambda {
            if !l.is_finite() || l == 0.0 {
                return Err(LvError::InvalidParameter(format!(
                    "lambda = {l} must be finite and nonzero"
                )));
            }
        }
        Ok(Self { theta, lambda })
    }
}

fn lower3(k: &ThreeVector) -> [f64; 3] {
    k.lower()
}

/// Kernel `K_{mu nu} = -k^2 g_{mu nu} + k_mu k_nu - i theta eps_{mu nu rho} k^rho - lambda k_mu k_nu`.
///
/// The Landau limit has no finite kernel and is refused.
pub fn mcs_kernel(k: &ThreeVector, params: &McsParams) -> LvResult<CMatrix> {
    let lambda = match params.lambda {
        GaugeParameter::Finite(l) => l,
        GaugeParameter::LandauLimit => {
            return Err(LvError::InvalidParameter(
                "the kernel diverges in the Landau limit; use a finite lambda".into(),
            ))
        }
    };
    let kl = lower3(k);
    let k2 = k.square();
    let mut out = CMatrix::zeros(3, 3);
    for mu in 0..3 {
        for nu in 0..3 {
            let g = if mu == nu { metric_sign(mu) } else { 0.0 };
            let re = -k2 * g + (1.0 - lambda) * kl[mu] * kl[nu];
            let mut im = 0.0;
            for rho in 0..3 {
                im -= params.theta * levi_civita_lower(&[mu, nu, rho])? as f64 * k.0[rho];
            }
            out[(mu, nu)] = c64(re, im);
        }
    }
    Ok(out)
}

/// Propagator `Delta^{mu nu}` inverting the kernel: `K_{mu nu} Delta^{nu sigma} = i delta_mu^sigma`.
///
/// `Delta = -i g/(k^2 - theta^2) + i k k /(k^2 (k^2 - theta^2)) - theta eps k /(k^2 (k^2 - theta^2))
///  - (i/lambda) k k / k^4`, with `eps^{mu nu rho} k_rho` in the third term.
pub fn mcs_propagator(k: &ThreeVector, params: &McsParams) -> LvResult<CMatrix> {
    let k2 = k.square();
    let th2 = params.theta * params.theta;
    let margin = 1e-10 * k2.abs().max(th2).max(f64::MIN_POSITIVE);
    if k2.abs() <= margin {
        return Err(LvError::OnPole {
            denominator: k2.abs(),
            margin,
        });
    }
    if (k2 - th2).abs() <= margin {
        return Err(LvError::OnPole {
            denominator: (k2 - th2).abs(),
            margin,
        });
    }
    let inv_lambda = match params.lambda {
        GaugeParameter::Finite(l) => 1.0 / l,
        GaugeParameter::LandauLimit => 0.0,
    };
    let kl = lower3(k);
    let ku = k.0;
    let d1 = k2 - th2;
    let d2 = k2 * d1;
    let mut out = CMatrix::zeros(3, 3);
    for mu in 0..3 {
        for nu in 0..3 {
            let g = if mu == nu { metric_sign(mu) } else { 0.0 };
            let im = -g / d1 + ku[mu] * ku[nu] / d2 - inv_lambda * ku[mu] * ku[nu] / (k2 * k2);
            let mut re = 0.0;
            for rho in 0..3 {
                re -= params.theta * levi_civita(&[mu, nu, rho])? as f64 * kl[rho] / d2;
            }
            out[(mu, nu)] = c64(re, im);
        }
    }
    Ok(out)
}

/// Largest entry of `k_mu Delta^{mu nu}`, which vanishes in the Landau limit.
pub fn transversality_residual(k: &ThreeVector, params: &McsParams) -> LvResult<f64> {
    let d = mcs_propagator(k, params)?;
    let kl = lower3(k);
    let mut worst = 0.0_f64;
    for nu in 0..3 {
        let s: Complex64 = (0..3).map(|mu| d[(mu, nu)] * kl[mu]).sum();
        worst = worst.max(s.norm());
    }
    Ok(worst)
}

/// Coupling `eta_mu = e^2 b_mu / (6 pi^2)` of the induced 3+1D Chern–Simons term.
pub fn eta_from_b(b: &FourVector, e: f64) -> FourVector {
    b.scale(e * e / (6.0 * std::f64::consts::PI.powi(2)))
}

/// Solutions of the 3+1D photon dispersion relation at fixed spatial momentum.
#[derive(Debug, Clone, Serialize)]
pub struct PhotonMode {
    pub k_spatial: [f64; 3],
    pub eta: FourVector,
    /// The four roots in `omega`, sorted by real part.
    pub omega_roots: Vec<Complex64>,
    pub stable: bool,
    /// `d omega / d|k|` at fixed direction for each real, nondegenerate root.
    pub group_velocities: Vec<Option<f64>>,
}

/// Invariants entering the quartic: `|k|^2`, `eta^2`, `eta_vec . k`.
fn invariants(k: [f64; 3], eta: &FourVector) -> (f64, f64, f64) {
    (vec3::dot(k, k), eta.square(), vec3::dot(eta.spatial(), k))
}

/// `Q(w) = (w^2 - K)^2 + (w^2 - K) eta^2 - (eta_0 w - beta)^2`, the relation
/// `k^4 + k^2 eta^2 - (k.eta)^2 = 0` with `k^mu = (w, k)`.
pub fn dispersion_polynomial(k: [f64; 3], eta: &FourVector) -> [f64; 5] {
    let (kk, n, beta) = invariants(k, eta);
    let e0 = eta.t();
    [
        1.0,
        0.0,
        n - 2.0 * kk - e0 * e0,
        2.0 * e0 * beta,
        kk * kk - n * kk - beta * beta,
    ]
}

fn dispersion_value(k: [f64; 3], eta: &FourVector, w: Complex64) -> (Complex64, Complex64) {
    let (kk, n, beta) = invariants(k, eta);
    let e0 = eta.t();
    let s = w * w - kk;
    let l = w * e0 - beta;
    let q = s * s + s * n - l * l;
    let dq = w * s * 4.0 + w * 2.0 * n - l * 2.0 * e0;
    (q, dq)
}

/// Scale of the problem used for relative tolerances.
fn frequency_scale(k: [f64; 3], eta: &FourVector) -> f64 {
    vec3::norm(k).max(eta.max_abs()).max(f64::MIN_POSITIVE)
}

/// Relative size below which an imaginary part is treated as rounding noise.
const REAL_TOLERANCE: f64 = 1e-7;

/// Roots of the dispersion quartic with stability classification and group velocities.
pub fn photon_dispersion(k_spatial: [f64; 3], eta: &FourVector) -> LvResult<PhotonMode> {
    let scale = frequency_scale(k_spatial, eta);
    let coeffs = dispersion_polynomial(k_spatial, eta);
    let mut roots = companion_roots(&coeffs)?;
    aberth_refine(
        &mut roots,
        |w| dispersion_value(k_spatial, eta, w),
        scale,
        200,
    );
    for r in roots.iter_mut() {
        if r.im.abs() <= REAL_TOLERANCE * scale {
            r.im = 0.0;
        }
    }
    sort_by_real(&mut roots);
    let stable = roots.iter().all(|r| r.im == 0.0);
    let kmag = vec3::norm(k_spatial);
    let (kk, n, beta) = invariants(k_spatial, eta);
    let e0 = eta.t();
    let group_velocities = roots
        .iter()
        .map(|r| {
            if r.im != 0.0 || kmag == 0.0 {
                return None;
            }
            let w = r.re;
            let s = w * w - kk;
            let l = w * e0 - beta;
            let dq_dw = 4.0 * w * s + 2.0 * w * n - 2.0 * e0 * l;
            if dq_dw.abs() <= 1e-9 * scale.powi(3) {
                return None;
            }
            // d/d|k| at fixed direction: dK/d|k| = 2|k|, d beta/d|k| = beta/|k|.
            let dq_dk = (-2.0 * s - n) * 2.0 * kmag + 2.0 * l * beta / kmag;
            Some(-dq_dk / dq_dw)
        })
        .collect();
    Ok(PhotonMode {
        k_spatial,
        eta: *eta,
        omega_roots: roots,
        stable,
        group_velocities,
    })
}

/// Largest `|Q(w)| / scale^4` over the roots of a mode.
pub fn dispersion_residual(mode: &PhotonMode) -> f64 {
    let scale = frequency_scale(mode.k_spatial, &mode.eta);
    let c = dispersion_polynomial(mode.k_spatial, &mode.eta);
    mode.omega_roots
        .iter()
        .map(|w| eval_complex(&c, *w).norm() / scale.powi(4))
        .fold(0.0, f64::max)
}

/// Closed-form birefringence for a purely timelike background `eta = (eta_0, 0)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Birefringence {
    pub omega_plus: Complex64,
    pub omega_minus: Complex64,
    pub vg_plus: Option<f64>,
    pub vg_minus: Option<f64>,
    pub stable: bool,
}

/// `w_pm^2 = |k| (|k| pm eta_0)` and `v_pm = (|k| / w_pm)(1 pm eta_0 / (2|k|))`.
///
/// Both branches satisfy `v^2 = 1 + eta_0^2 / (4 w^2)`, so neither is subluminal.
///
/// A branch with negative `w^2` is reported with an imaginary frequency and no group velocity.
pub fn birefringence_timelike(eta0: f64, k_mag: f64) -> LvResult<Birefringence> {
    if !(k_mag > 0.0) || !k_mag.is_finite() || !eta0.is_finite() {
        return Err(LvError::InvalidParameter(format!(
            "need |k| > 0 and finite eta_0, got |k| = {k_mag}, eta_0 = {eta0}"
        )));
    }
    let branch = |sign: f64| {
        let w2 = k_mag * (k_mag + sign * eta0);
        if w2 >= 0.0 {
            let w = w2.sqrt();
            let vg = (w > 0.0).then(|| k_mag / w * (1.0 + sign * eta0 / (2.0 * k_mag)));
            (c64(w, 0.0), vg)
        } else {
            (c64(0.0, (-w2).sqrt()), None)
        }
    };
    let (omega_plus, vg_plus) = branch(1.0);
    let (omega_minus, vg_minus) = branch(-1.0);
    Ok(Birefringence {
        omega_plus,
        omega_minus,
        vg_plus,
        vg_minus,
        stable: eta0.abs() <= k_mag,
    })
}

/// A single plane wave `E0 exp(i(k.x - w t))`, `B0 exp(i(k.x - w t))` with `k^mu = (w, k)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PlaneWave {
    pub e0: [Complex64; 3],
    pub b0: [Complex64; 3],
    pub k: FourVector,
}

/// Residual magnitudes of the four modified Maxwell equations.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MaxwellResiduals {
    /// `div B`
    pub gauss_magnetic: f64,
    /// `curl E + dB/dt`
    pub faraday: f64,
    /// `curl B - eta x E + eta_0 B - J - dE/dt`
    pub ampere: f64,
    /// `div E + eta . B - rho`
    pub gauss_electric: f64,
}

impl MaxwellResiduals {
    pub fn max(&self) -> f64 {
        self.gauss_magnetic
            .max(self.faraday)
            .max(self.ampere)
            .max(self.gauss_electric)
    }
}

type C3 = [Complex64; 3];

fn cdot(a: &C3, b: &C3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn ccross(a: &C3, b: &C3) -> C3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn real3(v: [f64; 3]) -> C3 {
    [c64(v[0], 0.0), c64(v[1], 0.0), c64(v[2], 0.0)]
}

fn cnorm(a: &C3) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Evaluate the modified Maxwell equations on a plane wave with sources `rho`, `J`.
pub fn maxwell_residual(
    wave: &PlaneWave,
    eta: &FourVector,
    rho: Complex64,
    j: &C3,
) -> MaxwellResiduals {
    let i = c64(0.0, 1.0);
    let w = wave.k.t();
    let k = real3(wave.k.spatial());
    let ev = real3(eta.spatial());
    let e = &wave.e0;
    let b = &wave.b0;
    let gauss_magnetic = (i * cdot(&k, b)).norm();
    let kxe = ccross(&k, e);
    let faraday: C3 = std::array::from_fn(|n| i * kxe[n] - i * w * b[n]);
    let kxb = ccross(&k, b);
    let etaxe = ccross(&ev, e);
    let ampere: C3 =
        std::array::from_fn(|n| i * kxb[n] - etaxe[n] + eta.t() * b[n] - j[n] + i * w * e[n]);
    let gauss_electric = (i * cdot(&k, e) + cdot(&ev, b) - rho).norm();
    MaxwellResiduals {
        gauss_magnetic,
        faraday: cnorm(&faraday),
        ampere: cnorm(&ampere),
        gauss_electric,
    }
}

/// Source-free plane-wave mode at a real root `omega` of the dispersion relation.
///
/// `B = k x E / w` solves Faraday's law; `E` spans the null space of the
/// remaining linear system, found as the smallest right singular vector.
pub fn solve_mode(k_spatial: [f64; 3], eta: &FourVector, omega: f64) -> LvResult<PlaneWave> {
    if omega == 0.0 || !omega.is_finite() {
        return Err(LvError::InvalidParameter(format!(
            "mode frequency must be finite and nonzero, got {omega}"
        )));
    }
    let i = c64(0.0, 1.0);
    let kk = vec3::dot(k_spatial, k_spatial);
    let ev = eta.spatial();
    // Columns are the images of the unit vectors under
    // E -> w (Ampere residual) = i k (k.E) - i K E - w eta x E + eta_0 k x E + i w^2 E.
    let mut m = Matrix3::<Complex64>::zeros();
    for col in 0..3 {
        let mut u = [0.0; 3];
        u[col] = 1.0;
        let kdu = vec3::dot(k_spatial, u);
        let exu = vec3::cross(ev, u);
        let kxu = vec3::cross(k_spatial, u);
        for row in 0..3 {
            m[(row, col)] = i * k_spatial[row] * kdu - i * kk * u[row] - omega * exu[row]
                + eta.t() * kxu[row]
                + i * omega * omega * u[row];
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| LvError::NoConvergence("SVD without V".into()))?;
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("three singular values");
    let e0: C3 = std::array::from_fn(|n| v_t[(imin, n)].conj());
    let kxe = ccross(&real3(k_spatial), &e0);
    let b0: C3 = std::array::from_fn(|n| kxe[n] / omega);
    Ok(PlaneWave {
        e0,
        b0,
        k: FourVector::new(omega, k_spatial[0], k_spatial[1], k_spatial[2]),
    })
}

/// Current `J^nu = d_mu F^{mu nu} - eps^{mu nu rho sigma} eta_mu d_rho A_sigma` of a plane-wave
/// potential with contravariant amplitude `a`.
///
/// With `d_mu -> -i k_mu` this is `-k^2 A^nu + k^nu (k.A) + i eps^{mu nu rho sigma} eta_mu k_rho A_sigma`.
pub fn plane_wave_current(a: &[Complex64; 4], k: &FourVector, eta: &FourVector) -> [Complex64; 4] {
    let kl = k.lower();
    let el = eta.lower();
    let al: [Complex64; 4] = std::array::from_fn(|mu| a[mu] * metric_sign(mu));
    let k2 = k.square();
    let kdota: Complex64 = (0..4).map(|mu| al[mu] * k.0[mu]).sum();
    std::array::from_fn(|nu| {
        let mut eps_term = c64(0.0, 0.0);
        for mu in 0..4 {
            for rho in 0..4 {
                for sigma in 0..4 {
                    let s = levi_civita(&[mu, nu, rho, sigma]).expect("valid indices");
                    if s != 0 {
                        eps_term += al[sigma] * (s as f64 * el[mu] * kl[rho]);
                    }
                }
            }
        }
        -a[nu] * k2 + kdota * k.0[nu] + c64(0.0, 1.0) * eps_term
    })
}

/// `k_nu J^nu` for the current of a plane-wave potential.
pub fn current_divergence(j: &[Complex64; 4], k: &FourVector) -> Complex64 {
    let kl = k.lower();
    (0..4).map(|nu| j[nu] * kl[nu]).sum()
}

/// Matrix of the linear map `A -> J` at fixed `k`, used to test the dispersion relation covariantly.
pub fn current_operator(k: &FourVector, eta: &FourVector) -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for col in 0..4 {
        let mut a = [c64(0.0, 0.0); 4];
        a[col] = c64(1.0, 0.0);
        let j = plane_wave_current(&a, k, eta);
        for row in 0..4 {
            m[(row, col)] = j[row];
        }
    }
    m
}
