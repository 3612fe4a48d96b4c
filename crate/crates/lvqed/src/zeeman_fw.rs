//! Foldy–Wouthuysen reduction of the Dirac Hamiltonian with `a_mu`, `b_mu`
//! and external fields, spin-orbit coupled hydrogen states, and first-order
//! Zeeman-type shifts evaluated both in closed form and by quadrature.
//!
//! Momentum-space objects act on plane waves, so `p`, `A` and the fields are
//! plain numbers here; operator-ordering terms that need non-commuting
//! components (such as `-e Sigma.B`) are carried through explicitly.

use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use crate::clifford::{dirac4, pauli, IdentityCheck};
use crate::dirac_lv::{hamiltonian_matrix, BackgroundFields};
use crate::error::{LvError, LvResult};
use crate::quadrature::gauss_legendre;
use crate::tensor_core::{c64, eig_hermitian, identity, levi_civita, max_abs_diff, vec3, CMatrix};

fn alpha_dot(v: [f64; 3]) -> CMatrix {
    let g = dirac4();
    (0..3).fold(CMatrix::zeros(4, 4), |acc, i| {
        acc + &g.alpha[i] * c64(v[i], 0.0)
    })
}

fn sigma_dot(v: [f64; 3]) -> CMatrix {
    let g = dirac4();
    (0..3).fold(CMatrix::zeros(4, 4), |acc, i| {
        acc + &g.sigma_spin[i] * c64(v[i], 0.0)
    })
}

/// Free Foldy–Wouthuysen operator `U = (E + m + beta alpha.p) / sqrt(2E(E + m))`.
pub fn fw_free_transform(p: [f64; 3], m: f64) -> LvResult<CMatrix> {
    if !(m > 0.0) {
        return Err(LvError::InvalidParameter(format!(
            "mass must be positive, got {m}"
        )));
    }
    let g = dirac4();
    let e = (vec3::dot(p, p) + m * m).sqrt();
    let num = identity(4) * c64(e + m, 0.0) + &g.beta * alpha_dot(p);
    Ok(num * c64(1.0 / (2.0 * e * (e + m)).sqrt(), 0.0))
}

/// External fields and momentum for the nonrelativistic Hamiltonian. All
/// fields are uniform, so the `curl E` and `div E` terms vanish.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct FieldConfiguration {
    pub a0_em: f64,
    /// Vector potential at the evaluation point.
    pub a_em: [f64; 3],
    pub b_field: [f64; 3],
    pub e_field: [f64; 3],
    /// Canonical momentum eigenvalue.
    pub p: [f64; 3],
}

/// Nonrelativistic Foldy–Wouthuysen Hamiltonian through order `1/m^2`
/// (kinetic term through `1/m^3`):
///
/// `beta [m + (P^2 - 2 b_0 Sigma.P + b_0^2)/2m - P^4/8m^3 - (e/2m) Sigma.B]
///  + e A_0 + a_0 + Sigma.b - (e/4m^2) Sigma.(E x p)
///  + (1/2m^2) [(Sigma.P)(P.b) - P^2 Sigma.b]`
///
/// with `P = p - a - eA`.
pub fn fw_hamiltonian_nr(config: &FieldConfiguration, fields: &BackgroundFields) -> CMatrix {
    let g = dirac4();
    let m = fields.m;
    let e = fields.e;
    let pk = vec3::sub(
        vec3::sub(config.p, fields.a.spatial()),
        vec3::scale(config.a_em, e),
    );
    let p2 = vec3::dot(pk, pk);
    let b0 = fields.b.t();
    let bv = fields.b.spatial();
    let id = identity(4);
    let even =
        &id * c64(
            m + (p2 + b0 * b0) / (2.0 * m) - p2 * p2 / (8.0 * m.powi(3)),
            0.0,
        ) - sigma_dot(pk) * c64(b0 / m, 0.0)
            - sigma_dot(config.b_field) * c64(e / (2.0 * m), 0.0);
    let mut h = &g.beta * even;
    h += &id * c64(e * config.a0_em + fields.a.t(), 0.0);
    h += sigma_dot(bv);
    h -= sigma_dot(vec3::cross(config.e_field, config.p)) * c64(e / (4.0 * m * m), 0.0);
    let spin_orbit = sigma_dot(pk) * c64(vec3::dot(pk, bv), 0.0) - sigma_dot(bv) * c64(p2, 0.0);
    h += spin_orbit * c64(1.0 / (2.0 * m * m), 0.0);
    h
}

/// Largest difference between the two upper-block eigenvalues of the
/// nonrelativistic Hamiltonian and the two positive-energy eigenvalues of the
/// exact Hamiltonian, with no electromagnetic field strengths.
pub fn fw_deviation(p: [f64; 3], a_em: [f64; 3], fields: &BackgroundFields) -> LvResult<f64> {
    let cfg = FieldConfiguration {
        a_em,
        p,
        ..Default::default()
    };
    let nr = fw_hamiltonian_nr(&cfg, fields);
    let upper = nr.view((0, 0), (2, 2)).into_owned();
    let approx = eig_hermitian(&upper)?.values;
    let exact = eig_hermitian(&hamiltonian_matrix(p, fields, 0.0, a_em))?.values;
    Ok((approx[0] - exact[2])
        .abs()
        .max((approx[1] - exact[3]).abs()))
}

/// Least-squares slope of `log(deviation)` against `log(m)`.
pub fn loglog_slope(masses: &[f64], deviations: &[f64]) -> f64 {
    let xs: Vec<f64> = masses.iter().map(|m| m.ln()).collect();
    let ys: Vec<f64> = deviations.iter().map(|d| d.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Matrix-level checks of the ingredients of the reduction: the product rule
/// for `alpha` matrices, the square of the odd operator, and its commutator
/// with the even operator for uniform fields.
pub fn fw_identity_report(
    u: [f64; 3],
    v: [f64; 3],
    big_p: [f64; 3],
    b: [f64; 4],
    e: f64,
    b_field: [f64; 3],
    e_field: [f64; 3],
) -> LvResult<Vec<IdentityCheck>> {
    let g = dirac4();
    let g5 = g.gamma5_upper()?;
    let i = c64(0.0, 1.0);
    let mut out = Vec::new();

    let lhs = alpha_dot(u) * alpha_dot(v);
    let rhs = identity(4) * c64(vec3::dot(u, v), 0.0) + sigma_dot(vec3::cross(u, v)) * i;
    out.push(IdentityCheck {
        name: "(alpha.u)(alpha.v) = u.v + i Sigma.(u x v)".into(),
        max_deviation: max_abs_diff(&lhs, &rhs),
    });

    // Odd operator I = alpha.P - b_0 gamma^5. The operator product P_i P_j is
    // represented by its symmetric part plus the antisymmetric part
    // [P_i, P_j]/2 = (i e / 2) eps_ijk B_k.
    let b0 = b[0];
    let odd = alpha_dot(big_p) - g5 * c64(b0, 0.0);
    let mut square = CMatrix::zeros(4, 4);
    for a in 0..3 {
        for c in 0..3 {
            let mut pp = c64(big_p[a] * big_p[c], 0.0);
            for k in 0..3 {
                let eps = levi_civita(&[a, c, k])? as f64;
                pp += i * (0.5 * e * eps * b_field[k]);
            }
            square += &g.alpha[a] * &g.alpha[c] * pp;
        }
    }
    let cross = alpha_dot(big_p) * g5 + g5 * alpha_dot(big_p);
    square -= cross * c64(b0, 0.0);
    square += identity(4) * c64(b0 * b0, 0.0);
    let expect = identity(4) * c64(vec3::dot(big_p, big_p) + b0 * b0, 0.0)
        - sigma_dot(big_p) * c64(2.0 * b0, 0.0)
        - sigma_dot(b_field) * c64(e, 0.0);
    out.push(IdentityCheck {
        name: "I^2 = P^2 - 2 b0 Sigma.P + b0^2 - e Sigma.B".into(),
        max_deviation: max_abs_diff(&square, &expect),
    });
    let plain = &odd * &odd;
    let expect_plain = identity(4) * c64(vec3::dot(big_p, big_p) + b0 * b0, 0.0)
        - sigma_dot(big_p) * c64(2.0 * b0, 0.0);
    out.push(IdentityCheck {
        name: "I^2 at commuting momentum".into(),
        max_deviation: max_abs_diff(&plain, &expect_plain),
    });

    // [I, Sigma.b] from matrices plus the canonical term [alpha.p, e A0] = i e alpha.E.
    let bv = [b[1], b[2], b[3]];
    let comm = &odd * sigma_dot(bv) - sigma_dot(bv) * &odd + alpha_dot(e_field) * (i * e);
    let expect = alpha_dot(vec3::cross(big_p, bv)) * (i * 2.0) + alpha_dot(e_field) * (i * e);
    out.push(IdentityCheck {
        name: "[I, P] = 2i alpha.(P x b) + i e alpha.E".into(),
        max_deviation: max_abs_diff(&comm, &expect),
    });
    Ok(out)
}

/// `(alpha, beta) = (sqrt((l+m+1)/(2l+1)), sqrt((l-m)/(2l+1)))`.
pub fn cg_weights(ell: u32, m: i32) -> LvResult<(f64, f64)> {
    let (a2, b2) = cg_weights_squared(ell, m)?;
    let f = |r: Ratio<i64>| (*r.numer() as f64 / *r.denom() as f64).sqrt();
    Ok((f(a2), f(b2)))
}

/// Squared weights as exact rationals; they always sum to one.
pub fn cg_weights_squared(ell: u32, m: i32) -> LvResult<(Ratio<i64>, Ratio<i64>)> {
    let l = ell as i64;
    let m = m as i64;
    if m < -l - 1 || m > l {
        return Err(LvError::InvalidParameter(format!(
            "m = {m} out of range for l = {l}"
        )));
    }
    let d = 2 * l + 1;
    Ok((Ratio::new(l + m + 1, d), Ratio::new(l - m, d)))
}

/// `j = l + 1/2` or `j = l - 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

/// Spin-orbit coupled state `|l, j, m_j>`, with `m_j` stored as the odd integer `2 m_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoupledState {
    pub ell: u32,
    pub branch: Branch,
    pub two_mj: i32,
}

impl CoupledState {
    pub fn new(ell: u32, branch: Branch, two_mj: i32) -> LvResult<Self> {
        if branch == Branch::Minus && ell == 0 {
            return Err(LvError::InvalidParameter(
                "j = l - 1/2 requires l > 0".into(),
            ));
        }
        let two_j = match branch {
            Branch::Plus => 2 * ell as i32 + 1,
            Branch::Minus => 2 * ell as i32 - 1,
        };
        if two_mj % 2 == 0 || two_mj.abs() > two_j {
            return Err(LvError::InvalidParameter(format!(
                "2 m_j = {two_mj} invalid for 2j = {two_j}"
            )));
        }
        Ok(CoupledState {
            ell,
            branch,
            two_mj,
        })
    }

    pub fn j(&self) -> f64 {
        match self.branch {
            Branch::Plus => self.ell as f64 + 0.5,
            Branch::Minus => self.ell as f64 - 0.5,
        }
    }

    pub fn m_j(&self) -> f64 {
        self.two_mj as f64 / 2.0
    }

    /// Orbital projection `m = m_j - 1/2` of the upper spin component.
    pub fn orbital_m(&self) -> i32 {
        (self.two_mj - 1) / 2
    }

    /// Coefficients multiplying `(Y_l^m, Y_l^{m+1})`.
    fn coefficients(&self) -> [f64; 2] {
        let (a, b) = cg_weights(self.ell, self.orbital_m()).expect("validated state");
        match self.branch {
            Branch::Plus => [a, b],
            Branch::Minus => [b, -a],
        }
    }
}

fn factorial_ratio(l: i32, m: i32) -> f64 {
    // (l - m)! / (l + m)! for m >= 0
    ((l - m + 1)..=(l + m)).fold(1.0, |acc, k| acc / k as f64)
}

/// Associated Legendre functions `P_k^m(x)` for `k = m - 1 .. l` with the
/// Condon–Shortley phase, `m >= 0`. Index 0 holds `P_{m-1}^m = 0`.
fn legendre_column(l: i32, m: i32, x: f64) -> Vec<f64> {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * s;
    }
    let mut out = vec![0.0, pmm];
    for k in (m + 1)..=l {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * out[out.len() - 1]
            - (kf + m as f64 - 1.0) * out[out.len() - 2])
            / (kf - m as f64);
        out.push(next);
    }
    out
}

/// `Theta_l^m(theta)` and `d Theta_l^m / d theta`, with `Y_l^m = Theta_l^m e^{i m phi}`.
pub fn theta_function(l: i32, m: i32, cos_theta: f64) -> (f64, f64) {
    if m.abs() > l {
        return (0.0, 0.0);
    }
    let am = m.abs();
    let col = legendre_column(l, am, cos_theta);
    let p = col[(l - am + 1) as usize];
    let p_below = col[(l - am) as usize];
    let sin_t = (1.0 - cos_theta * cos_theta).sqrt();
    let lf = l as f64;
    // (x^2 - 1) dP/dx = l x P_l^m - (l + m) P_{l-1}^m and d/dtheta = -sin(theta) d/dx
    let dp_dtheta = (lf * cos_theta * p - (lf + am as f64) * p_below) / sin_t;
    let norm = ((2.0 * lf + 1.0) / (4.0 * std::f64::consts::PI) * factorial_ratio(l, am)).sqrt();
    let sign = if m < 0 && am % 2 == 1 { -1.0 } else { 1.0 };
    (sign * norm * p, sign * norm * dp_dtheta)
}

/// Normalised spherical harmonic `Y_l^m(theta, phi)`; zero when `|m| > l`.
pub fn spherical_harmonic(l: i32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let (t, _) = theta_function(l, m, theta.cos());
    Complex64::from_polar(t, m as f64 * phi)
}

/// Two-component coupled spinor `(alpha Y^m, beta Y^{m+1})` for `j = l + 1/2`
/// or `(beta Y^m, -alpha Y^{m+1})` for `j = l - 1/2`.
pub fn coupled_spinor(state: &CoupledState, theta: f64, phi: f64) -> [Complex64; 2] {
    let c = state.coefficients();
    let l = state.ell as i32;
    let m = state.orbital_m();
    [
        spherical_harmonic(l, m, theta, phi) * c[0],
        spherical_harmonic(l, m + 1, theta, phi) * c[1],
    ]
}

/// Closed-form axial shift `+- 2 m_j b_z / (2l + 1)`, `+` for `j = l + 1/2`.
pub fn zeeman_shift_axial(state: &CoupledState, b_z: f64) -> f64 {
    let sign = match state.branch {
        Branch::Plus => 1.0,
        Branch::Minus => -1.0,
    };
    sign * 2.0 * state.m_j() * b_z / (2.0 * state.ell as f64 + 1.0)
}

/// Hydrogen radial function `R_nl(r)` and its derivative, Bohr radius 1, `n <= 3`.
pub fn hydrogen_radial(n: u32, l: u32, r: f64) -> LvResult<(f64, f64)> {
    let s6 = 6f64.sqrt();
    let s3 = 3f64.sqrt();
    let s30 = 30f64.sqrt();
    // R = c r^l q(r) exp(-r/n), q ascending coefficients
    let (c, q): (f64, Vec<f64>) = match (n, l) {
        (1, 0) => (2.0, vec![1.0]),
        (2, 0) => (1.0 / 2f64.sqrt(), vec![1.0, -0.5]),
        (2, 1) => (1.0 / (2.0 * s6), vec![1.0]),
        (3, 0) => (2.0 / (3.0 * s3), vec![1.0, -2.0 / 3.0, 2.0 / 27.0]),
        (3, 1) => (8.0 / (27.0 * s6), vec![1.0, -1.0 / 6.0]),
        (3, 2) => (4.0 / (81.0 * s30), vec![1.0]),
        _ => {
            return Err(LvError::InvalidParameter(format!(
                "radial function for n = {n}, l = {l} not available"
            )))
        }
    };
    let kappa = 1.0 / n as f64;
    let qv: f64 = q.iter().rev().fold(0.0, |acc, &ci| acc * r + ci);
    let dq: f64 = q
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, &ci)| acc * r + k as f64 * ci);
    let lf = l as i32;
    let rl = r.powi(lf);
    let drl = if l == 0 {
        0.0
    } else {
        l as f64 * r.powi(lf - 1)
    };
    let ex = (-kappa * r).exp();
    let value = c * rl * qv * ex;
    let deriv = c * ex * (drl * qv + rl * dq - kappa * rl * qv);
    Ok((value, deriv))
}

/// Numerically integrated first-order matrix elements in a coupled hydrogen state.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ZeemanOracle {
    /// `<sigma . b>`
    pub axial: f64,
    /// `(i/m) <a . grad>`
    pub vector_gradient: f64,
    /// `(e/m) <A . a>`
    pub vector_potential: f64,
    /// `-(b_0/m) <sigma . p>`
    pub b0_gradient: f64,
    /// `(e b_0/m) <sigma . A>`
    pub sigma_dot_a: f64,
    /// `<Psi|Psi>`, equal to one for a converged quadrature.
    pub norm: f64,
}

/// Quadrature orders for [`zeeman_shift_oracle`].
#[derive(Debug, Clone, Copy)]
pub struct SphericalGrid {
    pub n_cos_theta: usize,
    pub n_phi: usize,
    pub n_radial: usize,
    pub r_max_per_n: f64,
}

impl Default for SphericalGrid {
    fn default() -> Self {
        SphericalGrid {
            n_cos_theta: 64,
            n_phi: 128,
            n_radial: 128,
            r_max_per_n: 30.0,
        }
    }
}

/// Evaluate the first-order matrix elements of the vector and axial
/// couplings in the state `R_nl(r) Psi_{l j m_j}(theta, phi)`, with the
/// uniform field `B0 e_z` in the symmetric gauge `A = -B0 (y/2, -x/2, 0)`.
pub fn zeeman_shift_oracle(
    n: u32,
    state: &CoupledState,
    fields: &BackgroundFields,
    b0_field: f64,
    grid: SphericalGrid,
) -> LvResult<ZeemanOracle> {
    if n <= state.ell {
        return Err(LvError::InvalidParameter(format!(
            "l = {} requires n > l, got n = {n}",
            state.ell
        )));
    }
    hydrogen_radial(n, state.ell, 1.0)?;
    let l = state.ell as i32;
    let m = state.orbital_m();
    let coeff = state.coefficients();
    let orb = [m, m + 1];
    let sig = pauli();
    let i = c64(0.0, 1.0);
    let mass = fields.m;
    let e = fields.e;
    let a_vec = fields.a.spatial();
    let b_vec = fields.b.spatial();
    let b0 = fields.b.t();

    let r_max = grid.r_max_per_n * n as f64;
    let radial: Vec<(f64, f64)> = gauss_legendre(grid.n_radial)
        .into_iter()
        .map(|(x, w)| (0.5 * r_max * (x + 1.0), 0.5 * r_max * w))
        .collect();
    let angular = gauss_legendre(grid.n_cos_theta);
    let dphi = 2.0 * std::f64::consts::PI / grid.n_phi as f64;

    let mut acc = [Complex64::new(0.0, 0.0); 6];
    for &(x, wx) in &angular {
        let sin_t = (1.0 - x * x).sqrt();
        let th: Vec<(f64, f64)> = orb.iter().map(|&mm| theta_function(l, mm, x)).collect();
        for k in 0..grid.n_phi {
            let phi = dphi * k as f64;
            let (sp, cp) = phi.sin_cos();
            let e_r = [sin_t * cp, sin_t * sp, x];
            let e_t = [x * cp, x * sp, -sin_t];
            let e_p = [-sp, cp, 0.0];
            for &(r, wr) in &radial {
                let (rv, dr) = hydrogen_radial(n, state.ell, r)?;
                let w = wx * dphi * wr * r * r;
                let mut psi = [Complex64::new(0.0, 0.0); 2];
                let mut grad = [[Complex64::new(0.0, 0.0); 3]; 2];
                for s in 0..2 {
                    let phase = Complex64::from_polar(coeff[s], orb[s] as f64 * phi);
                    let (t, dt) = th[s];
                    psi[s] = phase * (rv * t);
                    for c in 0..3 {
                        let g_r = dr * t * e_r[c];
                        let g_t = rv / r * dt * e_t[c];
                        let g_p = rv / (r * sin_t) * t * e_p[c];
                        grad[s][c] = phase * (c64(g_r + g_t, 0.0) + i * (orb[s] as f64 * g_p));
                    }
                }
                let pos = vec3::scale(e_r, r);
                let a_em = [-0.5 * b0_field * pos[1], 0.5 * b0_field * pos[0], 0.0];
                let spin_mat = |v: [f64; 3]| {
                    &sig[0] * c64(v[0], 0.0) + &sig[1] * c64(v[1], 0.0) + &sig[2] * c64(v[2], 0.0)
                };
                let sandwich = |mat: &CMatrix, right: &[Complex64; 2]| {
                    let mut s = Complex64::new(0.0, 0.0);
                    for r_ in 0..2 {
                        for c in 0..2 {
                            s += psi[r_].conj() * mat[(r_, c)] * right[c];
                        }
                    }
                    s
                };
                let norm = psi[0].norm_sqr() + psi[1].norm_sqr();
                let axial = sandwich(&spin_mat(b_vec), &psi);
                let a_grad: Complex64 = (0..2)
                    .map(|s| {
                        psi[s].conj() * (0..3).map(|c| grad[s][c] * a_vec[c]).sum::<Complex64>()
                    })
                    .sum();
                let a_dot_a = vec3::dot(a_em, a_vec) * norm;
                // sigma . grad acting on the spinor
                let mut sg = Complex64::new(0.0, 0.0);
                for c in 0..3 {
                    let gc = [grad[0][c], grad[1][c]];
                    sg += sandwich(&sig[c], &gc);
                }
                let sa = sandwich(&spin_mat(a_em), &psi);
                acc[0] += axial * w;
                acc[1] += i * a_grad * (w / mass);
                acc[2] += c64(a_dot_a * w * e / mass, 0.0);
                acc[3] += i * sg * (w * b0 / mass);
                acc[4] += sa * (w * e * b0 / mass);
                acc[5] += c64(norm * w, 0.0);
            }
        }
    }
    let norm = acc[5].re;
    if (norm - 1.0).abs() > 1e-9 {
        return Err(LvError::NoConvergence(format!(
            "spherical quadrature norm {norm}"
        )));
    }
    Ok(ZeemanOracle {
        axial: acc[0].re,
        vector_gradient: acc[1].re,
        vector_potential: acc[2].re,
        b0_gradient: acc[3].re,
        sigma_dot_a: acc[4].re,
        norm,
    })
}
