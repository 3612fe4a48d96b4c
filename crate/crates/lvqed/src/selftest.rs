//! Invariant suites run by the command-line `selftest` command.
//!
//! Each suite records every check with its own tolerance and reports the
//! largest deviation seen. All randomness comes from a seeded ChaCha stream,
//! so a given seed always produces the same report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{dirac3, dirac4, gamma_identity_report, GammaBasis};
use crate::dirac_lv::{
    dirac_operator, dispersion_roots, energies_closed_form, hamiltonian_matrix, propagator_exact,
    propagator_series, series_ratio_matrix, spectral_radius, spinor_u, spinor_v, BackgroundCase,
    BackgroundFields,
};
use crate::landau_penning::{
    energy_shift, energy_shift_full, energy_shift_quadrature_oracle, landau_energy,
    penning_frequencies, LandauState,
};
use crate::loop_tools::{
    cs_coefficient_3d, cs_ledger_4d, feynman_integral, form_factor_3d, wick_oracle, Dimension,
    IntegralKind, IntegralValue, WickKind, Q,
};
use crate::photon_lv::{
    birefringence_timelike, maxwell_residual, mcs_kernel, mcs_propagator, photon_dispersion,
    solve_mode, transversality_residual, GaugeParameter, McsParams,
};
use crate::tensor_core::{c64, eig_hermitian, identity, max_abs_diff, FourVector, ThreeVector};
use crate::zeeman_fw::{
    fw_deviation, fw_free_transform, fw_identity_report, loglog_slope, zeeman_shift_axial,
    zeeman_shift_oracle, Branch, CoupledState, SphericalGrid,
};

/// Options for [`run_selftest`].
#[derive(Debug, Clone, Copy)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Run the Clifford suite on a deliberately corrupted basis.
    pub corrupt_clifford: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: 20240229,
            corrupt_clifford: false,
        }
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub max_deviation: f64,
    pub failures: Vec<String>,
}

/// Outcome of every suite.
#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

struct Recorder {
    result: SuiteResult,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Recorder {
            result: SuiteResult {
                name,
                passed: true,
                checks: 0,
                max_deviation: 0.0,
                failures: Vec::new(),
            },
        }
    }

    fn check(&mut self, label: &str, deviation: f64, tolerance: f64) {
        self.result.checks += 1;
        if deviation.is_finite() {
            self.result.max_deviation = self.result.max_deviation.max(deviation);
        }
        if !(deviation <= tolerance) {
            self.result.passed = false;
            self.result
                .failures
                .push(format!("{label}: {deviation:e} > {tolerance:e}"));
        }
    }

    fn require(&mut self, label: &str, ok: bool) {
        self.check(label, if ok { 0.0 } else { f64::INFINITY }, 0.0);
    }

    fn error(&mut self, label: &str, err: impl std::fmt::Display) {
        self.result.checks += 1;
        self.result.passed = false;
        self.result.failures.push(format!("{label}: {err}"));
    }

    fn finish(self) -> SuiteResult {
        self.result
    }
}

fn uniform(rng: &mut ChaCha8Rng, half_width: f64) -> f64 {
    rng.random_range(-half_width..half_width)
}

fn random_four(rng: &mut ChaCha8Rng, half_width: f64) -> FourVector {
    FourVector::new(
        uniform(rng, half_width),
        uniform(rng, half_width),
        uniform(rng, half_width),
        uniform(rng, half_width),
    )
}

fn random_three(rng: &mut ChaCha8Rng, half_width: f64) -> [f64; 3] {
    [
        uniform(rng, half_width),
        uniform(rng, half_width),
        uniform(rng, half_width),
    ]
}

fn clifford_suite(opts: &SelftestOptions) -> SuiteResult {
    let mut r = Recorder::new("clifford");
    let corrupted: GammaBasis;
    let four: &GammaBasis = if opts.corrupt_clifford {
        corrupted = dirac4().corrupted();
        &corrupted
    } else {
        dirac4()
    };
    for (dim, basis) in [(4, four), (3, dirac3())] {
        for c in gamma_identity_report(basis) {
            r.check(&format!("{dim}D {}", c.name), c.max_deviation, 1e-13);
        }
    }
    r.finish()
}

fn dirac_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut r = Recorder::new("dirac_lv");
    let m = 1.0;
    for draw in 0..1000 {
        let a = random_four(rng, 0.1);
        let b = random_four(rng, 0.1);
        let p = random_three(rng, 2.0);
        let f = BackgroundFields::new(a, b, m, 0.3).expect("valid draw");
        match (
            dispersion_roots(p, &f),
            eig_hermitian(&hamiltonian_matrix(p, &f, 0.0, [0.0; 3])),
        ) {
            (Ok(roots), Ok(eig)) => {
                let dev = roots
                    .roots
                    .iter()
                    .zip(&eig.values)
                    .map(|(z, e)| (z - e).norm())
                    .fold(0.0, f64::max);
                r.check(&format!("roots vs eigenvalues, draw {draw}"), dev, 1e-9);
            }
            (Err(e), _) | (_, Err(e)) => r.error("dispersion", e),
        }
        let timelike = BackgroundFields::new(a, FourVector::new(b.t(), 0.0, 0.0, 0.0), m, 0.3)
            .expect("valid draw");
        let spacelike =
            BackgroundFields::new(a, FourVector::new(0.0, b.0[1], b.0[2], b.0[3]), m, 0.3)
                .expect("valid draw");
        for (f, case) in [
            (timelike, BackgroundCase::TimelikeB),
            (spacelike, BackgroundCase::SpacelikeB),
        ] {
            match (energies_closed_form(p, &f, case), dispersion_roots(p, &f)) {
                (Ok(cf), Ok(roots)) => {
                    let dev = cf
                        .roots_at_p
                        .iter()
                        .zip(&roots.roots)
                        .map(|(c, z)| (z - c).norm())
                        .fold(0.0, f64::max);
                    r.check(&format!("{case:?} closed form, draw {draw}"), dev, 1e-12);
                }
                (Err(e), _) | (_, Err(e)) => r.error("closed form", e),
            }
        }
        for alpha in (draw < 200).then_some([1, 2]).into_iter().flatten() {
            match (
                spinor_u(alpha, p, &timelike, None),
                spinor_v(alpha, p, &timelike, None),
            ) {
                (Ok(u), Ok(v)) => {
                    let h = hamiltonian_matrix(p, &timelike, 0.0, [0.0; 3]);
                    let res = (&h - identity(4) * c64(u.momentum.t(), 0.0)) * u.as_matrix();
                    r.check("(H - E_u) u", res.norm(), 1e-9);
                    r.check("ubar u = 1", (u.bar_norm() - 1.0).abs(), 1e-10);
                    let hm = hamiltonian_matrix([-p[0], -p[1], -p[2]], &timelike, 0.0, [0.0; 3]);
                    let res = (&hm + identity(4) * c64(v.momentum.t(), 0.0)) * v.as_matrix();
                    r.check("(H(-p) + E_v) v", res.norm(), 1e-9);
                    r.check("vbar v = -1", (v.bar_norm() + 1.0).abs(), 1e-10);
                }
                (Err(e), _) | (_, Err(e)) => r.error("spinors", e),
            }
        }
        let p4 = random_four(rng, 2.0);
        if draw >= 500 {
            continue;
        }
        match propagator_exact(&p4, &f) {
            Ok(s) => {
                let prod = dirac_operator(&p4, &f) * s;
                r.check(
                    "(p/ - a/ - b/ g5 - m) S = i",
                    max_abs_diff(&prod, &(identity(4) * c64(0.0, 1.0))),
                    1e-10,
                );
            }
            Err(e) => r.error("propagator", e),
        }
    }
    // Geometric convergence of the expansion in b.
    let f = BackgroundFields::new(
        FourVector::ZERO,
        FourVector::new(0.05, 0.02, 0.0, -0.01),
        1.0,
        0.3,
    )
    .expect("valid");
    let p = FourVector::new(0.3, 0.2, 0.1, 0.4);
    let result = (|| {
        let exact = propagator_exact(&p, &f)?;
        let rho = spectral_radius(&series_ratio_matrix(&p, &f)?)?;
        let e_lo = max_abs_diff(&propagator_series(&p, &f, 3)?, &exact);
        let e_hi = max_abs_diff(&propagator_series(&p, &f, 6)?, &exact);
        Ok::<_, crate::LvError>((rho, (e_hi / e_lo).powf(1.0 / 3.0)))
    })();
    match result {
        Ok((rho, observed)) => r.check(
            "series ratio vs spectral radius",
            (observed / rho - 1.0).abs(),
            0.1,
        ),
        Err(e) => r.error("series", e),
    }
    r.finish()
}

fn landau_suite() -> SuiteResult {
    let mut r = Recorder::new("landau_penning");
    let f = BackgroundFields::new(
        FourVector::new(0.01, 0.0, 0.0, 0.02),
        FourVector::new(0.03, 0.0, 0.0, 0.015),
        1.0,
        1.0,
    )
    .expect("valid");
    for n in 0..=6 {
        for s in [-1, 1] {
            for pz in [-0.8, 0.0, 0.5] {
                let st = match LandauState::new(n, s, pz, 0.2, 0.15, f) {
                    Ok(st) => st,
                    Err(e) => {
                        r.error("state", e);
                        continue;
                    }
                };
                match energy_shift_quadrature_oracle(&st) {
                    Ok(o) => {
                        let full = energy_shift_full(&st);
                        r.check(
                            "full shift vs quadrature",
                            (full.total - o.total).abs() / o.total.abs(),
                            1e-10,
                        );
                        // The truncated bracket differs from the oracle by exactly s b_z K / (2E(E+m)).
                        let e = landau_energy(&st);
                        let k = st.transverse_energy_sq();
                        let gap = s as f64 * f.b.0[3] * k / (2.0 * e * (e + f.m));
                        let truncated = energy_shift(&st);
                        r.check(
                            "truncated bracket gap",
                            (o.total - truncated.total + gap).abs(),
                            1e-11,
                        );
                    }
                    Err(e) => r.error("oracle", e),
                }
            }
        }
    }
    let bz = 1e-6;
    let fb = BackgroundFields::new(
        FourVector::ZERO,
        FourVector::new(0.0, 0.0, 0.0, bz),
        1.0,
        1.0,
    )
    .expect("valid");
    match penning_frequencies(1.0, 0.1, &fb) {
        Ok(p) => r.check("Penning ratio", (p.delta_omega_bar / bz - 4.0).abs(), 1e-9),
        Err(e) => r.error("penning", e),
    }
    r.finish()
}

fn zeeman_suite() -> SuiteResult {
    let mut r = Recorder::new("zeeman_fw");
    let p = [0.8, -0.3, 0.5];
    match fw_free_transform(p, 2.0) {
        Ok(u) => {
            let h = hamiltonian_matrix(p, &BackgroundFields::free(2.0, 1.0), 0.0, [0.0; 3]);
            let d = &u * h * u.adjoint();
            let mut off = 0.0_f64;
            for i in 0..4 {
                for j in 0..4 {
                    if (i < 2) != (j < 2) {
                        off = off.max(d[(i, j)].norm());
                    }
                }
            }
            r.check("free FW off-diagonal blocks", off, 1e-12);
        }
        Err(e) => r.error("fw transform", e),
    }
    let masses = [10.0, 20.0, 40.0, 80.0];
    let mut devs = Vec::new();
    for &m in &masses {
        let f = BackgroundFields::new(
            FourVector::new(0.02, 0.05, -0.03, 0.01),
            FourVector::new(0.04, 0.03, 0.02, -0.05),
            m,
            0.5,
        )
        .expect("valid");
        match fw_deviation([0.7, -0.4, 0.5], [0.1, 0.2, -0.1], &f) {
            Ok(d) => devs.push(d),
            Err(e) => r.error("fw deviation", e),
        }
    }
    if devs.len() == masses.len() {
        let slope = loglog_slope(&masses, &devs);
        r.check("FW log-log slope + 2", slope + 2.0, 0.0);
    }
    match fw_identity_report(
        [0.3, -0.2, 0.9],
        [1.1, 0.4, -0.5],
        [0.7, 0.2, -0.6],
        [0.05, 0.01, -0.02, 0.03],
        0.4,
        [0.2, -0.1, 0.3],
        [0.5, 0.1, -0.2],
    ) {
        Ok(checks) => {
            for c in checks {
                r.check(&c.name, c.max_deviation, 1e-12);
            }
        }
        Err(e) => r.error("fw identities", e),
    }
    let f = BackgroundFields::new(
        FourVector::new(0.01, 0.02, -0.03, 0.04),
        FourVector::new(0.02, 0.0, 0.0, 1e-3),
        1.0,
        0.3,
    )
    .expect("valid");
    let grid = SphericalGrid {
        n_cos_theta: 24,
        n_phi: 24,
        n_radial: 96,
        r_max_per_n: 30.0,
    };
    for (ell, branch, two_mj) in [(1, Branch::Plus, 3), (1, Branch::Minus, -1)] {
        let st = CoupledState::new(ell, branch, two_mj).expect("valid state");
        match zeeman_shift_oracle(2, &st, &f, 0.7, grid) {
            Ok(o) => {
                r.check(
                    "axial Zeeman shift",
                    (o.axial - zeeman_shift_axial(&st, 1e-3)).abs(),
                    1e-10,
                );
                for (name, v) in [
                    ("a.grad", o.vector_gradient),
                    ("A.a", o.vector_potential),
                    ("b0 sigma.p", o.b0_gradient),
                    ("b0 sigma.A", o.sigma_dot_a),
                ] {
                    r.check(name, v.abs(), 1e-10);
                }
            }
            Err(e) => r.error("zeeman oracle", e),
        }
    }
    r.finish()
}

fn loop_suite() -> SuiteResult {
    let mut r = Recorder::new("loop_tools");
    for (kind, wk) in [
        (IntegralKind::Scalar, WickKind::Scalar),
        (IntegralKind::P2, WickKind::P2),
    ] {
        for (dim, d) in [(3usize, Dimension::Three), (4, Dimension::Four)] {
            for alpha in 2..6u32 {
                let (table, oracle) = (
                    feynman_integral(kind, d, alpha, 1.3),
                    wick_oracle(wk, dim, alpha, 1.3),
                );
                match (table, oracle) {
                    (Ok(IntegralValue::Closed(z)), Ok(w)) => r.check(
                        &format!("{kind:?} D={dim} alpha={alpha}"),
                        ((z - w) / z).norm(),
                        1e-6,
                    ),
                    (Err(_), Err(_)) => {}
                    other => r.error("table vs oracle finiteness", format!("{other:?}")),
                }
            }
        }
    }
    match cs_ledger_4d() {
        Ok(l) => {
            r.require("pole sum = 0", l.pole_sum == Q::from(0));
            r.require(
                "finite total = 1/12",
                l.finite_total.rational == Q::new(1, 12),
            );
            r.require(
                "fifth term = 1/48",
                l.per_term[4].coefficient.pure_finite == Q::new(1, 48),
            );
        }
        Err(e) => r.error("ledger", e),
    }
    match (cs_coefficient_3d(1.0), cs_coefficient_3d(-2.0)) {
        (Ok(a), Ok(b)) => {
            r.require("3D coefficient -1/8", a.rational == Q::new(-1, 8));
            r.require("3D coefficient odd in m", b.rational == -a.rational);
        }
        (Err(e), _) | (_, Err(e)) => r.error("3D coefficient", e),
    }
    match form_factor_3d(1e-12, 0.7) {
        Ok(v) => r.check("form factor at k -> 0", (v - 1.0 / 0.7).abs(), 1e-10),
        Err(e) => r.error("form factor", e),
    }
    r.finish()
}

fn photon_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut r = Recorder::new("photon_lv");
    for _ in 0..500 {
        let theta = uniform(rng, 2.0);
        let lambda = 0.2 + rng.random_range(0.0..3.0);
        let k = ThreeVector::new(uniform(rng, 2.0), uniform(rng, 2.0), uniform(rng, 2.0));
        let params = McsParams::new(theta, GaugeParameter::Finite(lambda)).expect("valid");
        match (mcs_kernel(&k, &params), mcs_propagator(&k, &params)) {
            (Ok(kern), Ok(prop)) => {
                let target = identity(3) * c64(0.0, 1.0);
                let dev = max_abs_diff(&(&kern * &prop), &target);
                let scale = 1.0 + prop.norm() * kern.norm();
                r.check("MCS kernel x propagator", dev / scale, 1e-11);
            }
            (Err(crate::LvError::OnPole { .. }), _) | (_, Err(crate::LvError::OnPole { .. })) => {}
            (Err(e), _) | (_, Err(e)) => r.error("MCS", e),
        }
    }
    let k = ThreeVector::new(1.4, 0.3, 0.5);
    match transversality_residual(
        &k,
        &McsParams::new(0.6, GaugeParameter::Finite(1e8)).expect("valid"),
    ) {
        Ok(v) => r.check("Landau-limit transversality", v, 1e-6),
        Err(e) => r.error("transversality", e),
    }
    for (eta0, kmag) in [(0.0, 1.0), (0.1, 0.7), (0.3, 1.5), (0.2, 0.05)] {
        match birefringence_timelike(eta0, kmag) {
            Ok(b) => {
                r.require("instability flag", b.stable == (eta0 <= kmag));
                if b.omega_plus.im == 0.0 {
                    r.check(
                        "w+^2",
                        (b.omega_plus.re.powi(2) - kmag * (kmag + eta0)).abs(),
                        1e-12,
                    );
                }
                if b.stable && kmag > 0.5 {
                    let h = 1e-5;
                    match (
                        birefringence_timelike(eta0, kmag + h),
                        birefringence_timelike(eta0, kmag - h),
                    ) {
                        (Ok(up), Ok(dn)) => {
                            let fd_plus = (up.omega_plus.re - dn.omega_plus.re) / (2.0 * h);
                            let fd_minus = (up.omega_minus.re - dn.omega_minus.re) / (2.0 * h);
                            let vp = b.vg_plus.unwrap_or(f64::NAN);
                            let vm = b.vg_minus.unwrap_or(f64::NAN);
                            r.check("central-difference v_g+", (fd_plus - vp).abs(), 1e-8);
                            r.check("central-difference v_g-", (fd_minus - vm).abs(), 1e-8);
                        }
                        (Err(e), _) | (_, Err(e)) => r.error("birefringence", e),
                    }
                }
            }
            Err(e) => r.error("birefringence", e),
        }
    }
    let eta = FourVector::new(0.1, 0.05, -0.2, 0.07);
    let kv = [0.4, -0.7, 0.5];
    match photon_dispersion(kv, &eta) {
        Ok(mode) => {
            for w in mode.omega_roots.iter().filter(|w| w.im == 0.0) {
                match solve_mode(kv, &eta, w.re) {
                    Ok(wave) => {
                        let res = maxwell_residual(&wave, &eta, c64(0.0, 0.0), &[c64(0.0, 0.0); 3]);
                        r.check("Maxwell residual of solved mode", res.max(), 1e-10);
                    }
                    Err(e) => r.error("mode", e),
                }
            }
        }
        Err(e) => r.error("dispersion", e),
    }
    r.finish()
}

/// Run every suite.
pub fn run_selftest(opts: &SelftestOptions) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let suites = vec![
        clifford_suite(opts),
        dirac_suite(&mut rng),
        landau_suite(),
        zeeman_suite(),
        loop_suite(),
        photon_suite(&mut rng),
    ];
    SelftestReport {
        seed: opts.seed,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}
