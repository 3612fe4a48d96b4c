//! Relativistic Landau levels in the gauge `A = B0 x e_y`, first-order
//! energy shifts from the backgrounds `a_mu` and `b_mu`, and the
//! Penning-trap transition frequencies built from them.
//!
//! Transverse profiles use the variable `xi = sqrt(eB0) (x - p_y / eB0)` and
//! the normalised Hermite functions
//! `psi_n(xi) = H_n(xi) exp(-xi^2/2) / sqrt(2^n n! sqrt(pi))`, evaluated by
//! their three-term recurrence.

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::dirac4;
use crate::dirac_lv::BackgroundFields;
use crate::error::{LvError, LvResult};
use crate::quadrature::gauss_hermite;
use crate::tensor_core::{c64, CMatrix};

/// Largest level index accepted by [`landau_wavefunction`].
pub const MAX_WAVEFUNCTION_LEVEL: usize = 30;
/// Largest level index accepted by [`energy_shift_quadrature_oracle`].
pub const MAX_ORACLE_LEVEL: usize = 10;

/// Electron Landau state with quantum numbers `(n, s, p_y, p_z)` in a field `B0 e_z`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LandauState {
    pub n: usize,
    /// Spin projection `+1` or `-1`.
    pub s: i32,
    pub p_z: f64,
    pub p_y: f64,
    pub b0: f64,
    pub fields: BackgroundFields,
}

impl LandauState {
    pub fn new(
        n: usize,
        s: i32,
        p_z: f64,
        p_y: f64,
        b0: f64,
        fields: BackgroundFields,
    ) -> LvResult<Self> {
        if s != 1 && s != -1 {
            return Err(LvError::InvalidParameter(format!(
                "spin must be +1 or -1, got {s}"
            )));
        }
        if !(b0 > 0.0 && b0.is_finite()) {
            return Err(LvError::InvalidParameter(format!(
                "B0 must be positive, got {b0}"
            )));
        }
        Ok(LandauState {
            n,
            s,
            p_z,
            p_y,
            b0,
            fields,
        })
    }

    /// `|e| B0`.
    pub fn eb(&self) -> f64 {
        self.fields.e.abs() * self.b0
    }

    /// `|e| B0 (2n + 1 - s)`, the transverse contribution to `E^2`.
    pub fn transverse_energy_sq(&self) -> f64 {
        self.eb() * (2.0 * self.n as f64 + 1.0 - self.s as f64)
    }

    fn sf(&self) -> f64 {
        self.s as f64
    }
}

/// Positive-energy Landau level `sqrt(p_z^2 + m^2 + |e|B0 (2n + 1 - s))`.
pub fn landau_energy(state: &LandauState) -> f64 {
    let m = state.fields.m;
    (state.p_z * state.p_z + m * m + state.transverse_energy_sq()).sqrt()
}

/// Normalised Hermite functions `psi_0 .. psi_{n+1}` at `xi`, optionally
/// without the common factor `exp(-xi^2/2)`.
pub fn hermite_functions(n: usize, xi: f64, with_gaussian: bool) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 2);
    let g = if with_gaussian {
        (-0.5 * xi * xi).exp()
    } else {
        1.0
    };
    out.push(std::f64::consts::PI.powf(-0.25) * g);
    out.push(std::f64::consts::SQRT_2 * xi * out[0]);
    for k in 1..=n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * xi * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out.truncate(n + 2);
    out
}

/// `psi_n` and its derivative `psi_n'` from a table produced by [`hermite_functions`].
fn value_and_derivative(table: &[f64], n: usize) -> (f64, f64) {
    let nf = n as f64;
    let below = if n == 0 { 0.0 } else { table[n - 1] };
    let d = (nf / 2.0).sqrt() * below - ((nf + 1.0) / 2.0).sqrt() * table[n + 1];
    (table[n], d)
}

/// Two-component spin states `chi_{+1} = (1, 0)` and `chi_{-1} = (0, 1)`.
fn chi(s: i32) -> [Complex64; 2] {
    if s == 1 {
        [c64(1.0, 0.0), c64(0.0, 0.0)]
    } else {
        [c64(0.0, 0.0), c64(1.0, 0.0)]
    }
}

/// Four-spinor at `xi` built from the Hermite value `h` and derivative `dh`.
///
/// Upper block `N h chi_s`; lower block
/// `N / (E + m) [sqrt(eB0) (-i h' sigma_x - xi h sigma_y) + p_z h sigma_z] chi_s`
/// with `N^2 = (E + m) / (2E)`.
fn spinor_at(state: &LandauState, xi: f64, h: f64, dh: f64) -> [Complex64; 4] {
    let e = landau_energy(state);
    let m = state.fields.m;
    let norm = ((e + m) / (2.0 * e)).sqrt();
    let sq = state.eb().sqrt();
    let s = state.sf();
    let up = chi(state.s);
    let flip = chi(-state.s);
    // sigma_x chi_s = chi_{-s}, sigma_y chi_s = i s chi_{-s}
    let coeff_flip = c64(0.0, -sq * dh) + c64(0.0, -sq * xi * h * s);
    let coeff_same = c64(s * state.p_z * h, 0.0);
    let low = norm / (e + m);
    [
        up[0] * (norm * h),
        up[1] * (norm * h),
        (flip[0] * coeff_flip + up[0] * coeff_same) * low,
        (flip[1] * coeff_flip + up[1] * coeff_same) * low,
    ]
}

fn check_orientation(state: &LandauState) -> LvResult<()> {
    if state.fields.e * state.b0 <= 0.0 {
        return Err(LvError::InvalidParameter(
            "wavefunctions are built for e B0 > 0".into(),
        ));
    }
    Ok(())
}

/// Electron wavefunction sampled at the given `x` positions, normalised so
/// that `int |psi|^2 dx = 1` over the transverse coordinate.
pub fn landau_wavefunction(state: &LandauState, x_grid: &[f64]) -> LvResult<Vec<[Complex64; 4]>> {
    if state.n > MAX_WAVEFUNCTION_LEVEL {
        return Err(LvError::InvalidParameter(format!(
            "level n = {} exceeds {MAX_WAVEFUNCTION_LEVEL}",
            state.n
        )));
    }
    check_orientation(state)?;
    let eb = state.eb();
    let scale = eb.powf(0.25);
    Ok(x_grid
        .iter()
        .map(|&x| {
            let xi = eb.sqrt() * (x - state.p_y / eb);
            let table = hermite_functions(state.n, xi, true);
            let (h, dh) = value_and_derivative(&table, state.n);
            spinor_at(state, xi, h * scale, dh * scale)
        })
        .collect())
}

/// Per-term first-order shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftTerms {
    /// Contribution of `a_0`.
    pub a0: f64,
    /// Contribution of `-alpha . a`.
    pub az: f64,
    /// Contribution of `b_0`.
    pub b0: f64,
    /// Contribution of `Sigma . b`.
    pub bz: f64,
}

/// Energy shift with its decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyShift {
    pub total: f64,
    pub terms: ShiftTerms,
}

impl EnergyShift {
    fn from_terms(terms: ShiftTerms) -> Self {
        EnergyShift {
            total: terms.a0 + terms.az + terms.b0 + terms.bz,
            terms,
        }
    }
}

/// Closed-form first-order shift
/// `a_0 - a_z p_z/E - s b_0 p_z/E + s b_z [1 - |e|B0 (2n+1-s) / (2E(E+m))]`.
///
/// The `b_z` bracket is the one obtained when the lower spinor keeps only
/// its `sigma_z p_z` part; [`energy_shift_full`] keeps the transverse part too.
pub fn energy_shift(state: &LandauState) -> EnergyShift {
    let e = landau_energy(state);
    let m = state.fields.m;
    let (a, b) = (&state.fields.a, &state.fields.b);
    let s = state.sf();
    let k = state.transverse_energy_sq();
    EnergyShift::from_terms(ShiftTerms {
        a0: a.t(),
        az: -a.0[3] * state.p_z / e,
        b0: -s * b.t() * state.p_z / e,
        bz: s * b.0[3] * (1.0 - k / (2.0 * e * (e + m))),
    })
}

/// First-order shift evaluated with the complete lower spinor, for which
/// `<Sigma_z> = s [1 - |e|B0 (2n+1-s) / (E(E+m))]`.
pub fn energy_shift_full(state: &LandauState) -> EnergyShift {
    let mut shift = energy_shift(state);
    let e = landau_energy(state);
    let k = state.transverse_energy_sq();
    shift.terms.bz = state.sf() * state.fields.b.0[3] * (1.0 - k / (e * (e + state.fields.m)));
    EnergyShift::from_terms(shift.terms)
}

/// Expectation values of `H_int = a_0 - alpha.a - b_0 gamma^5 + Sigma.b` in
/// the state, computed by Gauss–Hermite quadrature in `xi` with
/// `4(n+1) + 20` nodes.
pub fn energy_shift_quadrature_oracle(state: &LandauState) -> LvResult<EnergyShift> {
    if state.n > MAX_ORACLE_LEVEL {
        return Err(LvError::InvalidParameter(format!(
            "level n = {} exceeds {MAX_ORACLE_LEVEL}",
            state.n
        )));
    }
    check_orientation(state)?;
    let g = dirac4();
    let g5 = g.gamma5_upper()?;
    let (a, b) = (&state.fields.a, &state.fields.b);
    let ops: [CMatrix; 4] = {
        let id = CMatrix::identity(4, 4);
        let mut alpha_a = CMatrix::zeros(4, 4);
        let mut sigma_b = CMatrix::zeros(4, 4);
        for i in 0..3 {
            alpha_a += &g.alpha[i] * c64(a.0[i + 1], 0.0);
            sigma_b += &g.sigma_spin[i] * c64(b.0[i + 1], 0.0);
        }
        [
            id * c64(a.t(), 0.0),
            -alpha_a,
            g5 * c64(-b.t(), 0.0),
            sigma_b,
        ]
    };
    let nodes = gauss_hermite(4 * (state.n + 1) + 20);
    let mut acc = [0.0f64; 5];
    for (xi, w) in nodes {
        let table = hermite_functions(state.n, xi, false);
        let (h, dh) = value_and_derivative(&table, state.n);
        let psi = CMatrix::from_column_slice(4, 1, &spinor_at(state, xi, h, dh));
        let adj = psi.adjoint();
        for (slot, op) in acc.iter_mut().zip(ops.iter()) {
            *slot += w * (&adj * op * &psi)[(0, 0)].re;
        }
        acc[4] += w * (&adj * &psi)[(0, 0)].re;
    }
    let norm = acc[4];
    if !((norm - 1.0).abs() < 1e-10) {
        return Err(LvError::NoConvergence(format!(
            "Gauss-Hermite norm {norm} differs from 1"
        )));
    }
    Ok(EnergyShift::from_terms(ShiftTerms {
        a0: acc[0],
        az: acc[1],
        b0: acc[2],
        bz: acc[3],
    }))
}

/// Penning-trap frequencies at `p_z = 0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PenningFrequencies {
    /// Cyclotron frequency `E_{1,-1} - E_{0,-1}`.
    pub omega: f64,
    /// Signed anomaly frequency `E_{0,+1} - E_{1,-1}` (negative for `m > 0`).
    pub omega_bar: f64,
    pub omega_cpt_minus: f64,
    pub omega_cpt_plus: f64,
    pub omega_bar_cpt_minus: f64,
    pub omega_bar_cpt_plus: f64,
    pub delta_omega: f64,
    pub delta_omega_bar: f64,
}

/// Unperturbed and corrected Penning frequencies using the dominant shifts
/// `a_0 + s b_z` for electrons and `-a_0 - s b_z` for positrons.
pub fn penning_frequencies(
    m: f64,
    eb0: f64,
    fields: &BackgroundFields,
) -> LvResult<PenningFrequencies> {
    if !(m > 0.0) || !(eb0 > 0.0) {
        return Err(LvError::InvalidParameter(
            "m and |e|B0 must be positive".into(),
        ));
    }
    let level = |n: usize, s: f64| (m * m + eb0 * (2.0 * n as f64 + 1.0 - s)).sqrt();
    let omega = level(1, -1.0) - level(0, -1.0);
    let omega_bar = level(0, 1.0) - level(1, -1.0);
    let a0 = fields.a.t();
    let bz = fields.b.0[3];
    let electron = |s: f64| a0 + s * bz;
    let positron = |s: f64| -a0 - s * bz;
    let omega_cpt_minus = omega + electron(-1.0) - electron(-1.0);
    let omega_cpt_plus = omega + positron(-1.0) - positron(-1.0);
    let omega_bar_cpt_minus = omega_bar + electron(1.0) - electron(-1.0);
    let omega_bar_cpt_plus = omega_bar + positron(1.0) - positron(-1.0);
    Ok(PenningFrequencies {
        omega,
        omega_bar,
        omega_cpt_minus,
        omega_cpt_plus,
        omega_bar_cpt_minus,
        omega_bar_cpt_plus,
        delta_omega: omega_cpt_minus - omega_cpt_plus,
        delta_omega_bar: omega_bar_cpt_minus - omega_bar_cpt_plus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor_core::FourVector;

    fn state(n: usize, s: i32, pz: f64, a: [f64; 4], b: [f64; 4]) -> LandauState {
        let f = BackgroundFields::new(FourVector(a), FourVector(b), 1.0, 1.0).unwrap();
        LandauState::new(n, s, pz, 0.3, 0.1, f).unwrap()
    }

    #[test]
    fn level_examples() {
        assert_eq!(landau_energy(&state(0, 1, 0.0, [0.0; 4], [0.0; 4])), 1.0);
        let e = landau_energy(&state(1, -1, 0.0, [0.0; 4], [0.0; 4]));
        assert!((e - 1.4f64.sqrt()).abs() < 1e-15);
        let f = BackgroundFields::free(1.0, 1.0);
        let weak = LandauState::new(3, -1, 0.5, 0.0, 1e-300, f).unwrap();
        assert!((landau_energy(&weak) - 1.25f64.sqrt()).abs() < 1e-15);
        assert!(LandauState::new(0, 0, 0.0, 0.0, 1.0, f).is_err());
    }

    #[test]
    fn hermite_functions_are_orthonormal() {
        let nodes = gauss_hermite(60);
        for n in 0..12 {
            for k in 0..=n {
                let s: f64 = nodes
                    .iter()
                    .map(|&(x, w)| {
                        let t = hermite_functions(n, x, false);
                        w * t[n] * t[k]
                    })
                    .sum();
                let expect = if n == k { 1.0 } else { 0.0 };
                assert!((s - expect).abs() < 1e-10, "{n} {k} {s}");
            }
        }
    }

    #[test]
    fn profiles_have_expected_nodes() {
        let xs: Vec<f64> = (0..801).map(|i| -20.0 + 0.05 * i as f64).collect();
        for (n, nodes) in [(0usize, 0usize), (2, 2), (5, 5)] {
            let st = state(n, 1, 0.2, [0.0; 4], [0.0; 4]);
            let psi = landau_wavefunction(&st, &xs).unwrap();
            let upper: Vec<f64> = psi
                .iter()
                .map(|c| c[0].re)
                .filter(|v| v.abs() > 1e-12)
                .collect();
            let changes = upper.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
            assert_eq!(changes, nodes);
        }
        let big = state(31, 1, 0.0, [0.0; 4], [0.0; 4]);
        assert!(landau_wavefunction(&big, &[0.0]).is_err());
    }

    #[test]
    fn wavefunction_norm_on_x_grid() {
        let st = state(4, -1, 0.3, [0.0; 4], [0.0; 4]);
        let dx = 0.01;
        let xs: Vec<f64> = (0..6001).map(|i| -30.0 + dx * i as f64).collect();
        let psi = landau_wavefunction(&st, &xs).unwrap();
        let norm: f64 = psi
            .iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            * dx;
        assert!((norm - 1.0).abs() < 1e-10);
    }

    #[test]
    fn wavefunction_solves_the_landau_hamiltonian() {
        // H0 = alpha.(p - eA) + beta m with p_x = -i d/dx, checked by central differences.
        let st = state(3, -1, 0.4, [0.0; 4], [0.0; 4]);
        let g = dirac4();
        let e = landau_energy(&st);
        let h = 1e-4;
        for x in [-2.0, 0.1, 1.7, 4.0] {
            let psi = landau_wavefunction(&st, &[x - h, x, x + h]).unwrap();
            let col = |i: usize| CMatrix::from_column_slice(4, 1, &psi[i]);
            let dpsi = (col(2) - col(0)) * c64(1.0 / (2.0 * h), 0.0);
            let py_kin = st.p_y - st.fields.e * st.b0 * x;
            let hpsi = &g.alpha[0] * dpsi * c64(0.0, -1.0)
                + &g.alpha[1] * col(1) * c64(py_kin, 0.0)
                + &g.alpha[2] * col(1) * c64(st.p_z, 0.0)
                + &g.beta * col(1);
            let res = hpsi - col(1) * c64(e, 0.0);
            assert!(crate::tensor_core::max_abs(&res) < 1e-7, "{x}");
        }
    }

    #[test]
    fn shift_formula_examples() {
        let z = energy_shift(&state(2, 1, 0.3, [0.0; 4], [0.0; 4]));
        assert_eq!(z.total, 0.0);
        let st = state(0, 1, 0.0, [0.02, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.01]);
        assert!((energy_shift(&st).total - 0.03).abs() < 1e-16);
        let st = state(0, 1, 0.0, [0.0; 4], [0.0, 0.0, 0.0, 0.01]);
        assert!((energy_shift_quadrature_oracle(&st).unwrap().total - 0.01).abs() < 1e-14);
    }

    #[test]
    fn oracle_reproduces_a_terms_and_b0_term() {
        for n in 0..=MAX_ORACLE_LEVEL {
            for s in [1, -1] {
                let st = state(
                    n,
                    s,
                    0.37,
                    [0.03, -0.02, 0.05, 0.04],
                    [0.06, 0.01, -0.03, 0.0],
                );
                let f = energy_shift(&st);
                let o = energy_shift_quadrature_oracle(&st).unwrap();
                assert!((f.terms.a0 - o.terms.a0).abs() < 1e-12);
                assert!((f.terms.az - o.terms.az).abs() < 1e-12);
                assert!((f.terms.b0 - o.terms.b0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn oracle_matches_complete_spinor_bracket() {
        for n in 0..=MAX_ORACLE_LEVEL {
            for s in [1, -1] {
                for pz in [-0.5, 0.0, 0.8] {
                    let st = state(
                        n,
                        s,
                        pz,
                        [0.01, 0.02, 0.0, -0.03],
                        [0.02, 0.04, -0.01, 0.05],
                    );
                    let full = energy_shift_full(&st);
                    let o = energy_shift_quadrature_oracle(&st).unwrap();
                    assert!(
                        (full.total - o.total).abs() < 1e-10 * full.total.abs() + 1e-13,
                        "{} {}",
                        full.total,
                        o.total
                    );
                    // The truncated-spinor bracket differs by s b_z K / (2E(E+m)).
                    let e = landau_energy(&st);
                    let gap = s as f64 * 0.05 * st.transverse_energy_sq() / (2.0 * e * (e + 1.0));
                    let diff = energy_shift(&st).total - o.total;
                    assert!((diff - gap).abs() < 1e-11, "{diff} {gap}");
                }
            }
        }
    }

    #[test]
    fn penning_examples() {
        let f = BackgroundFields::new(
            FourVector::new(0.3, 0.1, 0.0, 0.2),
            FourVector::new(0.0, 0.0, 0.0, 5e-4),
            1.0,
            1.0,
        )
        .unwrap();
        let p = penning_frequencies(1.0, 0.1, &f).unwrap();
        assert!((p.omega - (1.4f64.sqrt() - 1.2f64.sqrt())).abs() < 1e-15);
        assert!(p.omega_bar < 0.0);
        assert!((p.delta_omega_bar - 2e-3).abs() < 1e-15);
        assert_eq!(p.delta_omega, 0.0);
        assert_eq!(p.omega_cpt_minus, p.omega);
    }
}
