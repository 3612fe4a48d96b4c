//! Dirac fermions in the constant backgrounds `a_mu` and `b_mu`: dispersion
//! quartic, its roots, closed-form energies, the one-particle Hamiltonian,
//! modified spinors and the exact and expanded propagators.
//!
//! The Dirac operator is `p/ - a/ - b/ gamma_5 - m` with `gamma_5 = -gamma^5`,
//! so the Hamiltonian reads
//! `H = alpha.(p - a - eA) + beta m + a_0 + e A_0 - b_0 gamma^5 + Sigma.b`,
//! where `a`, `b` and `A` denote contravariant spatial components.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{dirac4, slash, GammaBasis};
use crate::error::{LvError, LvResult};
use crate::poly::{aberth_refine, companion_roots, eval_real, sort_by_real, taylor_shift};
use crate::tensor_core::{c64, identity, vec3, CMatrix, FourVector};

/// Constant backgrounds together with the fermion mass and charge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BackgroundFields {
    pub a: FourVector,
    pub b: FourVector,
    pub m: f64,
    pub e: f64,
}

impl BackgroundFields {
    /// Validated constructor: `m` must be positive and all inputs finite.
    pub fn new(a: FourVector, b: FourVector, m: f64, e: f64) -> LvResult<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(LvError::InvalidParameter(format!(
                "mass must be positive, got {m}"
            )));
        }
        if a.0.iter().chain(b.0.iter()).any(|c| !c.is_finite()) || !e.is_finite() {
            return Err(LvError::InvalidParameter("non-finite background".into()));
        }
        Ok(BackgroundFields { a, b, m, e })
    }

    /// Free fermion of mass `m` and charge `e`.
    pub fn free(m: f64, e: f64) -> Self {
        BackgroundFields {
            a: FourVector::ZERO,
            b: FourVector::ZERO,
            m,
            e,
        }
    }

    fn is_timelike_b(&self) -> bool {
        self.b.spatial().iter().all(|&c| c == 0.0)
    }

    fn is_spacelike_b(&self) -> bool {
        self.b.t() == 0.0
    }
}

/// Kinematic invariants of the dispersion relation at fixed spatial momentum.
#[derive(Debug, Clone, Copy)]
struct Invariants {
    /// `|p - a|^2`
    k2: f64,
    /// `b_vec . (p - a)`
    beta: f64,
    /// `b^2 = b_0^2 - |b_vec|^2`
    b2: f64,
    b0: f64,
    m2: f64,
}

impl Invariants {
    fn new(p: [f64; 3], f: &BackgroundFields) -> Self {
        let k = vec3::sub(p, f.a.spatial());
        Invariants {
            k2: vec3::dot(k, k),
            beta: vec3::dot(f.b.spatial(), k),
            b2: f.b.square(),
            b0: f.b.t(),
            m2: f.m * f.m,
        }
    }

    /// Quartic in `y = p^0 - a_0`, descending coefficients.
    fn coefficients_y(&self) -> [f64; 5] {
        let c = self.k2 + self.b2 + self.m2;
        [
            1.0,
            0.0,
            -2.0 * c - 4.0 * self.b0 * self.b0 + 4.0 * self.b2,
            8.0 * self.b0 * self.beta,
            c * c - 4.0 * self.beta * self.beta - 4.0 * self.b2 * self.k2,
        ]
    }

    /// Structured value and derivative `Q = F^2 - 4G` at complex `y`, with
    /// `F = k^2 - b^2 - m^2` and `G = (b.k)^2 - b^2 k^2`.
    fn structured(&self, y: Complex64) -> (Complex64, Complex64) {
        let ksq = y * y - self.k2;
        let f = ksq - self.b2 - self.m2;
        let bk = y * self.b0 - self.beta;
        let g = bk * bk - ksq * self.b2;
        let df = y * 2.0;
        let dg = bk * (2.0 * self.b0) - y * (2.0 * self.b2);
        (f * f - g * 4.0, f * df * 2.0 - dg * 4.0)
    }

    fn scale(&self) -> f64 {
        (self.k2 + self.m2 + self.b0 * self.b0 + self.b2.abs())
            .sqrt()
            .max(1e-300)
    }
}

/// Coefficients of the dispersion quartic in `p^0` (descending, leading 1).
///
/// The polynomial is `[(p-a)^2 - b^2 - m^2]^2 - 4[b.(p-a)]^2 + 4 b^2 (p-a)^2`.
pub fn dispersion_quartic(p: [f64; 3], f: &BackgroundFields) -> [f64; 5] {
    let cy = Invariants::new(p, f).coefficients_y();
    let cx = taylor_shift(&cy, f.a.t());
    [cx[0], cx[1], cx[2], cx[3], cx[4]]
}

/// Evaluate the dispersion polynomial at a four-momentum, in factored form.
pub fn dispersion_value(p: &FourVector, f: &BackgroundFields) -> f64 {
    let k = p.sub(&f.a);
    let k2 = k.square();
    let b2 = f.b.square();
    let bk = k.dot(&f.b);
    let ff = k2 - b2 - f.m * f.m;
    ff * ff - 4.0 * bk * bk + 4.0 * b2 * k2
}

/// The four roots in `p^0` of the dispersion quartic.
#[derive(Debug, Clone, Serialize)]
pub struct DispersionRoots {
    /// Roots sorted by real part.
    pub roots: [Complex64; 4],
    /// True when every root is real within `1e-9` of the momentum scale.
    pub all_real: bool,
    /// Two largest roots (particle branch `E_u`) when all roots are real.
    pub particle: Option<[f64; 2]>,
    /// Two smallest roots (antiparticle branch, equal to `-E_v(-p)`) when all roots are real.
    pub antiparticle: Option<[f64; 2]>,
    /// Largest `|Q(root)|` over the roots, in units of `scale^4`.
    pub relative_residual: f64,
}

/// Solve the dispersion quartic by companion-matrix eigenvalues followed by
/// Aberth refinement on the factored form of the polynomial.
pub fn dispersion_roots(p: [f64; 3], f: &BackgroundFields) -> LvResult<DispersionRoots> {
    let inv = Invariants::new(p, f);
    let cy = inv.coefficients_y();
    let mut ys = companion_roots(&cy)?;
    if ys.len() != 4 || ys.iter().any(|z| !z.is_finite()) {
        return Err(LvError::NoConvergence("companion eigenvalues".into()));
    }
    let scale = inv.scale();
    aberth_refine(&mut ys, |y| inv.structured(y), scale, 200);
    let a0 = f.a.t();
    let mut roots: Vec<Complex64> = ys.iter().map(|y| y + a0).collect();
    let all_real = roots.iter().all(|z| z.im.abs() <= 1e-9 * scale);
    if all_real {
        for z in roots.iter_mut() {
            z.im = 0.0;
        }
    }
    sort_by_real(&mut roots);
    let relative_residual = ys
        .iter()
        .map(|&y| inv.structured(y).0.norm() / scale.powi(4))
        .fold(0.0, f64::max);
    let r = [roots[0], roots[1], roots[2], roots[3]];
    let (particle, antiparticle) = if all_real {
        (Some([r[2].re, r[3].re]), Some([r[0].re, r[1].re]))
    } else {
        (None, None)
    };
    Ok(DispersionRoots {
        roots: r,
        all_real,
        particle,
        antiparticle,
        relative_residual,
    })
}

/// Which closed form applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BackgroundCase {
    /// `b = (b_0, 0, 0, 0)`
    TimelikeB,
    /// `b = (0, b_vec)`
    SpacelikeB,
}

/// Closed-form energies labelled by `alpha = 1, 2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClosedFormEnergies {
    /// `E_u^{(alpha)}(p)`, particle energies.
    pub e_u: [f64; 2],
    /// `E_v^{(alpha)}(p)`, antiparticle energies for momentum `p`.
    pub e_v: [f64; 2],
    /// The four dispersion roots at `p` implied by the closed form, ascending.
    pub roots_at_p: [f64; 4],
}

/// Closed-form energies for a purely timelike or purely spacelike `b`.
///
/// Timelike: `E_u = sqrt((|p-a| + (-1)^alpha b_0)^2 + m^2) + a_0` and
/// `E_v = sqrt((|p+a| - (-1)^alpha b_0)^2 + m^2) - a_0`.
///
/// Spacelike: `E_u = sqrt(|p-a|^2 + m^2 + |b|^2 + (-1)^alpha 2 sqrt((b.(p-a))^2 + m^2 |b|^2)) + a_0`,
/// and `E_v` is the same expression at `-p` with `a -> -a`. The inner radicand
/// carries `m^2 |b|^2`, the dimensionally consistent form that agrees with the
/// quartic roots.
pub fn energies_closed_form(
    p: [f64; 3],
    f: &BackgroundFields,
    case: BackgroundCase,
) -> LvResult<ClosedFormEnergies> {
    let m2 = f.m * f.m;
    let a0 = f.a.t();
    let k = vec3::sub(p, f.a.spatial());
    let kv = vec3::add(p, f.a.spatial());
    let sign = |alpha: usize| if alpha == 1 { -1.0 } else { 1.0 };
    match case {
        BackgroundCase::TimelikeB => {
            if !f.is_timelike_b() {
                return Err(LvError::CaseMismatch("b has spatial components".into()));
            }
            let b0 = f.b.t();
            let kn = vec3::norm(k);
            let kvn = vec3::norm(kv);
            let eu = |al| ((kn + sign(al) * b0).powi(2) + m2).sqrt() + a0;
            let ev = |al| ((kvn - sign(al) * b0).powi(2) + m2).sqrt() - a0;
            let neg = |al| a0 - ((kn - sign(al) * b0).powi(2) + m2).sqrt();
            let mut roots = [neg(1), neg(2), eu(1), eu(2)];
            roots.sort_by(f64::total_cmp);
            Ok(ClosedFormEnergies {
                e_u: [eu(1), eu(2)],
                e_v: [ev(1), ev(2)],
                roots_at_p: roots,
            })
        }
        BackgroundCase::SpacelikeB => {
            if !f.is_spacelike_b() {
                return Err(LvError::CaseMismatch("b has a time component".into()));
            }
            let bv = f.b.spatial();
            let bn2 = vec3::dot(bv, bv);
            let omega = |kk: [f64; 3], al: usize| {
                let beta = vec3::dot(bv, kk);
                let inner = (beta * beta + m2 * bn2).sqrt();
                (vec3::dot(kk, kk) + m2 + bn2 + sign(al) * 2.0 * inner).sqrt()
            };
            let eu = |al| omega(k, al) + a0;
            // E_v(p) is minus the negative root at -p; with a -> -a this is |p + a|.
            let ev = |al| omega(kv, al) - a0;
            let neg = |al| a0 - omega(k, al);
            let mut roots = [neg(1), neg(2), eu(1), eu(2)];
            roots.sort_by(f64::total_cmp);
            Ok(ClosedFormEnergies {
                e_u: [eu(1), eu(2)],
                e_v: [ev(1), ev(2)],
                roots_at_p: roots,
            })
        }
    }
}

/// One-particle Hamiltonian with an external potential `(A0, A)` evaluated as numbers.
pub fn hamiltonian_matrix(
    p: [f64; 3],
    f: &BackgroundFields,
    a0_em: f64,
    a_em: [f64; 3],
) -> CMatrix {
    let g = dirac4();
    let kin = vec3::sub(vec3::sub(p, f.a.spatial()), vec3::scale(a_em, f.e));
    let g5 = g.gamma5.as_ref().expect("3+1D basis");
    let b = f.b.spatial();
    let mut h = &g.beta * c64(f.m, 0.0);
    h += identity(4) * c64(f.a.t() + f.e * a0_em, 0.0);
    h -= g5 * c64(f.b.t(), 0.0);
    for i in 0..3 {
        h += &g.alpha[i] * c64(kin[i], 0.0);
        h += &g.sigma_spin[i] * c64(b[i], 0.0);
    }
    h
}

/// Particle or antiparticle spinor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinorKind {
    Particle,
    Antiparticle,
}

/// Plane-wave spinor of the modified Dirac equation with timelike `b`.
#[derive(Debug, Clone, Serialize)]
pub struct ModifiedSpinor {
    pub components: [Complex64; 4],
    pub kind: SpinorKind,
    pub alpha: usize,
    /// `(E, p)` with `E = E_u` for particles and `E = E_v` for antiparticles.
    pub momentum: FourVector,
}

impl ModifiedSpinor {
    pub fn as_matrix(&self) -> CMatrix {
        CMatrix::from_column_slice(4, 1, &self.components)
    }

    /// Dirac norm `psibar psi`.
    pub fn bar_norm(&self) -> f64 {
        let c = &self.components;
        c[0].norm_sqr() + c[1].norm_sqr() - c[2].norm_sqr() - c[3].norm_sqr()
    }
}

/// Eigenvectors of `sigma . n` for a unit vector `n`: `(chi_+, chi_-)`.
pub fn helicity_spinors(n: [f64; 3]) -> ([Complex64; 2], [Complex64; 2]) {
    let (nx, ny, nz) = (n[0], n[1], n[2]);
    if nz > -0.5 {
        let s = (2.0 * (1.0 + nz)).sqrt();
        (
            [c64((1.0 + nz) / s, 0.0), c64(nx / s, ny / s)],
            [c64(-nx / s, ny / s), c64((1.0 + nz) / s, 0.0)],
        )
    } else {
        let s = (2.0 * (1.0 - nz)).sqrt();
        (
            [c64(nx / s, -ny / s), c64((1.0 - nz) / s, 0.0)],
            [c64((1.0 - nz) / s, 0.0), c64(-nx / s, -ny / s)],
        )
    }
}

fn check_alpha(alpha: usize) -> LvResult<()> {
    if alpha == 1 || alpha == 2 {
        Ok(())
    } else {
        Err(LvError::InvalidParameter(format!(
            "alpha must be 1 or 2, got {alpha}"
        )))
    }
}

/// Helicity spinor with eigenvalue `h` along `k`, or along `axis` when `k = 0`.
fn chi_along(k: [f64; 3], h: f64, axis: Option<[f64; 3]>) -> LvResult<[Complex64; 2]> {
    let kn = vec3::norm(k);
    let n = if kn > 0.0 {
        vec3::scale(k, 1.0 / kn)
    } else {
        let ax = axis.unwrap_or([0.0, 0.0, 1.0]);
        let an = vec3::norm(ax);
        if an == 0.0 {
            return Err(LvError::InvalidParameter(
                "quantization axis is zero".into(),
            ));
        }
        vec3::scale(ax, 1.0 / an)
    };
    let (plus, minus) = helicity_spinors(n);
    Ok(if h > 0.0 { plus } else { minus })
}

/// Particle spinor `u^{(alpha)}(p)` for timelike `b`, normalised to `ubar u = 1`.
///
/// `chi` is the eigenvector of `sigma.(p - a)/|p - a|` with eigenvalue
/// `-(-1)^alpha`; when `p = a` the optional `axis` (default `+z`) fixes it.
pub fn spinor_u(
    alpha: usize,
    p: [f64; 3],
    f: &BackgroundFields,
    axis: Option<[f64; 3]>,
) -> LvResult<ModifiedSpinor> {
    check_alpha(alpha)?;
    if !f.is_timelike_b() {
        return Err(LvError::CaseMismatch(
            "spinors require purely timelike b".into(),
        ));
    }
    let h = if alpha == 1 { 1.0 } else { -1.0 };
    let k = vec3::sub(p, f.a.spatial());
    let kn = vec3::norm(k);
    let b0 = f.b.t();
    let m = f.m;
    let e_prime = ((kn - h * b0).powi(2) + m * m).sqrt();
    let xi = (h * kn - b0) / (e_prime + m);
    let norm = ((e_prime + m) / (2.0 * m)).sqrt();
    let chi = chi_along(k, h, axis)?;
    Ok(ModifiedSpinor {
        components: [
            chi[0] * norm,
            chi[1] * norm,
            chi[0] * (norm * xi),
            chi[1] * (norm * xi),
        ],
        kind: SpinorKind::Particle,
        alpha,
        momentum: FourVector::new(e_prime + f.a.t(), p[0], p[1], p[2]),
    })
}

/// Antiparticle spinor `v^{(alpha)}(p)` for timelike `b`, normalised to `vbar v = -1`.
///
/// It satisfies `H(-p) v = -E_v v` with `E_v = sqrt((|p + a| - (-1)^alpha b_0)^2 + m^2) - a_0`.
pub fn spinor_v(
    alpha: usize,
    p: [f64; 3],
    f: &BackgroundFields,
    axis: Option<[f64; 3]>,
) -> LvResult<ModifiedSpinor> {
    check_alpha(alpha)?;
    if !f.is_timelike_b() {
        return Err(LvError::CaseMismatch(
            "spinors require purely timelike b".into(),
        ));
    }
    let h = if alpha == 1 { 1.0 } else { -1.0 };
    let kv = vec3::add(p, f.a.spatial());
    let kn = vec3::norm(kv);
    let b0 = f.b.t();
    let m = f.m;
    let e_prime = ((kn + h * b0).powi(2) + m * m).sqrt();
    let zeta = (h * kn + b0) / (e_prime + m);
    let norm = ((e_prime + m) / (2.0 * m)).sqrt();
    let chi = chi_along(kv, h, axis)?;
    Ok(ModifiedSpinor {
        components: [
            chi[0] * (norm * zeta),
            chi[1] * (norm * zeta),
            chi[0] * norm,
            chi[1] * norm,
        ],
        kind: SpinorKind::Antiparticle,
        alpha,
        momentum: FourVector::new(e_prime - f.a.t(), p[0], p[1], p[2]),
    })
}

/// `p/ - a/ - b/ gamma_5 - m`.
pub fn dirac_operator(p: &FourVector, f: &BackgroundFields) -> CMatrix {
    let g = dirac4();
    let k = p.sub(&f.a);
    let g5l = g.gamma5_lower().expect("3+1D basis");
    slash(g, &k.0).expect("4D") - slash(g, &f.b.0).expect("4D") * g5l - identity(4) * c64(f.m, 0.0)
}

fn scale4(p: &FourVector, f: &BackgroundFields) -> f64 {
    p.max_abs().max(f.a.max_abs()).max(f.b.max_abs()).max(f.m)
}

/// Exact propagator `S = i (X + m)(F + [k/, b/] gamma_5) / Q` with
/// `k = p - a`, `X = k/ - b/ gamma_5`, `F = k^2 - b^2 - m^2` and `Q` the
/// dispersion polynomial.
pub fn propagator_exact(p: &FourVector, f: &BackgroundFields) -> LvResult<CMatrix> {
    let g: &GammaBasis = dirac4();
    let k = p.sub(&f.a);
    let g5l = g.gamma5_lower()?;
    let ks = slash(g, &k.0)?;
    let bs = slash(g, &f.b.0)?;
    let q = dispersion_value(p, f);
    let sc = scale4(p, f);
    let margin = 1e-12 * sc.powi(4);
    if q.abs() <= margin {
        return Err(LvError::OnPole {
            denominator: q.abs(),
            margin,
        });
    }
    let x_plus_m = &ks - &bs * &g5l + identity(4) * c64(f.m, 0.0);
    let ff = k.square() - f.b.square() - f.m * f.m;
    let comm = &ks * &bs - &bs * &ks;
    let num = x_plus_m * (identity(4) * c64(ff, 0.0) + comm * &g5l);
    Ok(num * c64(0.0, 1.0 / q))
}

/// Free propagator `i (p/ + m) / (p^2 - m^2)`.
pub fn propagator_free(p: &FourVector, m: f64) -> LvResult<CMatrix> {
    let g = dirac4();
    let den = p.square() - m * m;
    let margin = 1e-12 * p.max_abs().max(m).powi(2);
    if den.abs() <= margin {
        return Err(LvError::OnPole {
            denominator: den.abs(),
            margin,
        });
    }
    Ok((slash(g, &p.0)? + identity(4) * c64(m, 0.0)) * c64(0.0, 1.0 / den))
}

/// Insertion matrix `M = (-i b/ gamma_5) S_0(p)` of the geometric expansion.
pub fn series_ratio_matrix(p: &FourVector, f: &BackgroundFields) -> LvResult<CMatrix> {
    let g = dirac4();
    let s0 = propagator_free(p, f.m)?;
    let vertex = slash(g, &f.b.0)? * g.gamma5_lower()? * c64(0.0, -1.0);
    Ok(vertex * s0)
}

/// Spectral radius of a square complex matrix.
pub fn spectral_radius(m: &CMatrix) -> LvResult<f64> {
    let ev = m
        .clone()
        .schur()
        .eigenvalues()
        .ok_or_else(|| LvError::NoConvergence("Schur eigenvalues".into()))?;
    Ok(ev.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Partial sum `S_0 sum_{n <= order} [(-i b/ gamma_5) S_0]^n` of the expansion
/// of the propagator in powers of `b` (requires `a = 0`).
pub fn propagator_series(p: &FourVector, f: &BackgroundFields, order: usize) -> LvResult<CMatrix> {
    if f.a.0.iter().any(|&c| c != 0.0) {
        return Err(LvError::InvalidParameter(
            "series expansion requires a = 0".into(),
        ));
    }
    let s0 = propagator_free(p, f.m)?;
    let m = series_ratio_matrix(p, f)?;
    let rho = spectral_radius(&m)?;
    if rho >= 1.0 {
        return Err(LvError::DivergentSeries(rho));
    }
    let mut term = identity(4);
    let mut sum = identity(4);
    for _ in 0..order {
        term = &term * &m;
        sum += &term;
    }
    Ok(s0 * sum)
}

/// Value of the quartic at `p^0` using the expanded coefficients.
pub fn dispersion_quartic_value(p0: f64, p: [f64; 3], f: &BackgroundFields) -> f64 {
    eval_real(&dispersion_quartic(p, f), p0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::characteristic_polynomial;
    use crate::tensor_core::{eig_hermitian, max_abs, max_abs_diff};

    fn fields(a: [f64; 4], b: [f64; 4], m: f64) -> BackgroundFields {
        BackgroundFields::new(FourVector(a), FourVector(b), m, 0.3).unwrap()
    }

    #[test]
    fn free_quartic_has_double_roots() {
        let f = BackgroundFields::free(4.0, 1.0);
        let r = dispersion_roots([3.0, 0.0, 0.0], &f).unwrap();
        let expect = [-5.0, -5.0, 5.0, 5.0];
        for (z, e) in r.roots.iter().zip(expect) {
            assert!((z - e).norm() < 1e-12, "{z}");
        }
        assert!(r.all_real);
        let q = dispersion_quartic([0.0; 3], &BackgroundFields::free(1.0, 1.0));
        assert_eq!(q, [1.0, 0.0, -2.0, 0.0, 1.0]);
    }

    #[test]
    fn timelike_roots_match_closed_form() {
        let f = fields([0.0; 4], [0.1, 0.0, 0.0, 0.0], 1.0);
        let r = dispersion_roots([1.0, 0.0, 0.0], &f).unwrap();
        let p = r.particle.unwrap();
        assert!((p[0] - (0.81f64 + 1.0).sqrt()).abs() < 1e-12);
        assert!((p[1] - (1.21f64 + 1.0).sqrt()).abs() < 1e-12);
        let cf = energies_closed_form([1.0, 0.0, 0.0], &f, BackgroundCase::TimelikeB).unwrap();
        for (x, y) in cf.roots_at_p.iter().zip(r.roots.iter()) {
            assert!((x - y.re).abs() < 1e-12);
        }
        assert!(energies_closed_form([1.0, 0.0, 0.0], &f, BackgroundCase::SpacelikeB).is_err());
    }

    #[test]
    fn a0_shifts_all_roots() {
        let f0 = fields([0.0; 4], [0.0; 4], 1.0);
        let f1 = fields([0.2, 0.0, 0.0, 0.0], [0.0; 4], 1.0);
        let r0 = dispersion_roots([0.3, 0.4, 0.0], &f0).unwrap();
        let r1 = dispersion_roots([0.3, 0.4, 0.0], &f1).unwrap();
        for (x, y) in r0.roots.iter().zip(r1.roots.iter()) {
            assert!((x.re + 0.2 - y.re).abs() < 1e-12);
        }
    }

    #[test]
    fn spacelike_closed_form_matches_roots() {
        let f = fields([0.05, 0.1, -0.02, 0.03], [0.0, 0.07, 0.02, -0.05], 1.0);
        let p = [0.4, -0.3, 0.8];
        let r = dispersion_roots(p, &f).unwrap();
        let cf = energies_closed_form(p, &f, BackgroundCase::SpacelikeB).unwrap();
        for (x, y) in cf.roots_at_p.iter().zip(r.roots.iter()) {
            assert!((x - y.re).abs() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn unscaled_spacelike_radicand_disagrees_with_roots() {
        // Replacing m^2 |b|^2 by m^2 in the inner radicand is dimensionally
        // inconsistent and misses the quartic roots.
        let f = fields([0.0; 4], [0.0, 0.1, 0.0, 0.0], 1.0);
        let p = [0.5, 0.2, 0.0];
        let r = dispersion_roots(p, &f).unwrap();
        let k2 = 0.29;
        let beta: f64 = 0.05;
        let unscaled = (k2 + 1.0 + 0.01 + 2.0 * (beta * beta + 1.0).sqrt()).sqrt();
        assert!((unscaled - r.roots[3].re).abs() > 0.1);
    }

    #[test]
    fn hamiltonian_characteristic_polynomial_is_the_quartic() {
        let f = fields([0.03, -0.05, 0.02, 0.07], [0.06, 0.01, -0.08, 0.04], 1.0);
        let p = [0.3, -0.7, 0.2];
        let h = hamiltonian_matrix(p, &f, 0.0, [0.0; 3]);
        let cp = characteristic_polynomial(&h);
        let q = dispersion_quartic(p, &f);
        for (x, y) in cp.iter().zip(q.iter()) {
            assert!((x.re - y).abs() < 1e-12 && x.im.abs() < 1e-12, "{x} vs {y}");
        }
        let eig = eig_hermitian(&h).unwrap();
        let r = dispersion_roots(p, &f).unwrap();
        for (e, z) in eig.values.iter().zip(r.roots.iter()) {
            assert!((e - z.re).abs() < 1e-12);
        }
    }

    #[test]
    fn spinors_solve_the_eigenproblem() {
        let f = fields([0.1, 0.2, -0.1, 0.05], [0.05, 0.0, 0.0, 0.0], 1.0);
        let p = [0.6, 0.3, -0.4];
        for alpha in [1, 2] {
            let u = spinor_u(alpha, p, &f, None).unwrap();
            let h = hamiltonian_matrix(p, &f, 0.0, [0.0; 3]);
            let res = &h * u.as_matrix() - u.as_matrix() * c64(u.momentum.t(), 0.0);
            assert!(max_abs(&res) < 1e-13);
            assert!((u.bar_norm() - 1.0).abs() < 1e-14);

            let v = spinor_v(alpha, p, &f, None).unwrap();
            let hm = hamiltonian_matrix(vec3::scale(p, -1.0), &f, 0.0, [0.0; 3]);
            let res = &hm * v.as_matrix() + v.as_matrix() * c64(v.momentum.t(), 0.0);
            assert!(max_abs(&res) < 1e-13);
            assert!((v.bar_norm() + 1.0).abs() < 1e-14);
        }
        // Particle energies coincide with the closed form.
        let cf = energies_closed_form(p, &f, BackgroundCase::TimelikeB).unwrap();
        assert!((spinor_u(1, p, &f, None).unwrap().momentum.t() - cf.e_u[0]).abs() < 1e-14);
        assert!((spinor_v(2, p, &f, None).unwrap().momentum.t() - cf.e_v[1]).abs() < 1e-14);
    }

    #[test]
    fn spinor_lower_component_ratio() {
        let f = fields([0.0; 4], [0.05, 0.0, 0.0, 0.0], 1.0);
        for alpha in [1usize, 2] {
            let u = spinor_u(alpha, [0.0, 0.0, 1.0], &f, None).unwrap();
            let h = if alpha == 1 { 1.0 } else { -1.0 };
            let e = u.momentum.t();
            let ratio = (h * 1.0 - 0.05) / (e + 1.0);
            let c = u.components;
            let nz = if alpha == 1 { 0 } else { 1 };
            assert!((c[2 + nz] / c[nz] - ratio).norm() < 1e-14);
        }
    }

    #[test]
    fn free_spinors_reduce_and_are_orthogonal() {
        let f = BackgroundFields::free(1.0, 1.0);
        let p = [0.0, 0.0, 0.75];
        let u = spinor_u(1, p, &f, None).unwrap();
        let e = (1.0f64 + 0.5625).sqrt();
        let n = ((e + 1.0) / 2.0).sqrt();
        let expect = [n, 0.0, n * 0.75 / (e + 1.0), 0.0];
        for (z, x) in u.components.iter().zip(expect) {
            assert!((z - x).norm() < 1e-14);
        }
        for a1 in [1, 2] {
            for a2 in [1, 2] {
                let u = spinor_u(a1, p, &f, None).unwrap();
                let v = spinor_v(a2, vec3::scale(p, -1.0), &f, None).unwrap();
                let s: Complex64 = u
                    .components
                    .iter()
                    .zip(v.components.iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                assert!(s.norm() < 1e-14);
            }
        }
        // Zero momentum uses the conventional axis.
        let u0 = spinor_u(1, [0.0; 3], &f, None).unwrap();
        assert!((u0.components[0].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn v_spinor_mirrors_u_under_b0_flip() {
        let p = [0.2, -0.1, 0.5];
        let fp = fields([0.0; 4], [0.04, 0.0, 0.0, 0.0], 1.0);
        let fm = fields([0.0; 4], [-0.04, 0.0, 0.0, 0.0], 1.0);
        for alpha in [1, 2] {
            let v = spinor_v(alpha, p, &fp, None).unwrap();
            let u = spinor_u(alpha, p, &fm, None).unwrap();
            // v = (zeta chi, chi) with zeta equal to the u(-b0) ratio xi.
            let zeta = v.components[0] / v.components[2];
            let xi = u.components[2] / u.components[0];
            assert!((zeta - xi).norm() < 1e-14);
        }
    }

    #[test]
    fn exact_propagator_inverts_the_dirac_operator() {
        let f = fields([0.02, 0.01, -0.03, 0.05], [0.04, -0.06, 0.02, 0.01], 1.0);
        let p = FourVector::new(0.7, 0.3, -0.2, 0.4);
        let s = propagator_exact(&p, &f).unwrap();
        let d = dirac_operator(&p, &f);
        let target = identity(4) * c64(0.0, 1.0);
        assert!(max_abs_diff(&(&d * &s), &target) < 1e-12);
        assert!(max_abs_diff(&(&s * &d), &target) < 1e-12);
        let inv = d.clone().try_inverse().unwrap() * c64(0.0, 1.0);
        assert!(max_abs_diff(&inv, &s) < 1e-12);
    }

    #[test]
    fn free_limit_propagator() {
        let f = BackgroundFields::free(1.0, 1.0);
        let p = FourVector::new(0.5, 0.1, 0.2, 0.3);
        let s = propagator_exact(&p, &f).unwrap();
        let s0 = propagator_free(&p, 1.0).unwrap();
        assert!(max_abs_diff(&s, &s0) < 1e-13);
        // Denominator equals the quartic.
        let q = dispersion_value(&p, &f);
        assert!((q - (p.square() - 1.0).powi(2)).abs() < 1e-14);
    }

    #[test]
    fn on_shell_momentum_is_rejected() {
        let f = BackgroundFields::free(1.0, 1.0);
        let p = FourVector::new(1.25, 0.75, 0.0, 0.0);
        assert!(matches!(
            propagator_exact(&p, &f),
            Err(LvError::OnPole { .. })
        ));
    }

    #[test]
    fn series_reproduces_first_terms_and_converges() {
        let f = fields([0.0; 4], [0.05, 0.02, 0.0, -0.01], 1.0);
        let p = FourVector::new(0.3, 0.2, 0.1, 0.4);
        let s0 = propagator_free(&p, 1.0).unwrap();
        assert!(max_abs_diff(&propagator_series(&p, &f, 0).unwrap(), &s0) < 1e-15);
        let g = dirac4();
        let v = slash(g, &f.b.0).unwrap() * g.gamma5_lower().unwrap() * c64(0.0, -1.0);
        let three = &s0 + &s0 * &v * &s0 + &s0 * &v * &s0 * &v * &s0;
        assert!(max_abs_diff(&propagator_series(&p, &f, 2).unwrap(), &three) < 1e-14);
        let exact = propagator_exact(&p, &f).unwrap();
        assert!(max_abs_diff(&propagator_series(&p, &f, 40).unwrap(), &exact) < 1e-12);
        let fa = fields([0.1, 0.0, 0.0, 0.0], [0.05, 0.0, 0.0, 0.0], 1.0);
        assert!(propagator_series(&p, &fa, 2).is_err());
    }
}
