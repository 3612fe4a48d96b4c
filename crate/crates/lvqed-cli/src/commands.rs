//! One function per subcommand. Each returns the rendered output and whether
//! every requested verification passed.

use lvqed::dirac_lv::{
    dispersion_quartic, dispersion_roots, energies_closed_form, hamiltonian_matrix, BackgroundCase,
    BackgroundFields,
};
use lvqed::landau_penning::penning_frequencies;
use lvqed::loop_tools::{
    cs_coefficient_3d, cs_ledger_4d, cs_total_unreduced_4d, form_factor_3d, Q,
};
use lvqed::photon_lv::{
    birefringence_timelike, eta_from_b, mcs_kernel, mcs_propagator, transversality_residual,
    GaugeParameter, McsParams,
};
use lvqed::poly::eval_complex;
use lvqed::selftest::{run_selftest, SelftestOptions, SelftestReport};
use lvqed::tensor_core::{
    c64, eig_hermitian, identity, max_abs_diff, vec3, FourVector, ThreeVector,
};
use lvqed::zeeman_fw::{
    zeeman_shift_axial, zeeman_shift_oracle, Branch, CoupledState, SphericalGrid,
};
use lvqed::LvError;

use crate::config::{usage, Format, RunConfig};
use crate::output::{Cell, Table};

pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn lib_error(err: LvError) -> anyhow::Error {
    usage(err.to_string())
}

fn four(v: [f64; 4]) -> FourVector {
    FourVector::new(v[0], v[1], v[2], v[3])
}

fn fields(cfg: &RunConfig) -> anyhow::Result<BackgroundFields> {
    BackgroundFields::new(four(cfg.a), four(cfg.b), cfg.m, cfg.e).map_err(lib_error)
}

/// Momentum at a sweep point: `p` scales the magnitude along the direction of
/// the base momentum (z when it vanishes), `px`, `py`, `pz` replace one component.
fn momentum_at(base: [f64; 3], point: &Option<(String, f64)>) -> [f64; 3] {
    let mut p = base;
    match point {
        None => {}
        Some((var, x)) => match var.as_str() {
            "px" => p[0] = *x,
            "py" => p[1] = *x,
            "pz" => p[2] = *x,
            _ => {
                let n = vec3::norm(base);
                let dir = if n > 0.0 {
                    vec3::scale(base, 1.0 / n)
                } else {
                    [0.0, 0.0, 1.0]
                };
                p = vec3::scale(dir, *x);
            }
        },
    }
    p
}

const MOMENTUM_SWEEPS: &[&str] = &["p", "px", "py", "pz"];

fn render(table: &Table, cfg: &RunConfig, default: Format) -> String {
    table.render(cfg.format.unwrap_or(default))
}

/// Relative residual `|Q(z)| / sum_j |c_j| |z|^(4-j)` of one root.
fn root_residual(coeffs: &[f64; 5], z: num_complex::Complex64) -> f64 {
    let scale: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c.abs() * z.norm().powi(4 - j as i32))
        .sum();
    eval_complex(coeffs, z).norm() / scale.max(f64::MIN_POSITIVE)
}

pub fn dispersion(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let f = fields(cfg)?;
    let with_oracle = cfg.oracle || cfg.verify;
    let tol = cfg.tolerance.unwrap_or(1e-9);
    let mut cols = vec!["px", "py", "pz"];
    cols.extend(["root1", "root2", "root3", "root4"]);
    cols.extend(["root1_im", "root2_im", "root3_im", "root4_im"]);
    cols.extend(["residual1", "residual2", "residual3", "residual4"]);
    if with_oracle {
        cols.push("oracle_deviation");
    }
    let mut table = Table::new(&cols);
    let mut passed = true;
    for point in cfg.sweep_points(MOMENTUM_SWEEPS)? {
        let p = momentum_at(cfg.p, &point);
        let roots = dispersion_roots(p, &f).map_err(lib_error)?;
        let coeffs = dispersion_quartic(p, &f);
        let mut row: Vec<Cell> = p.iter().map(|&x| x.into()).collect();
        row.extend(roots.roots.iter().map(|z| Cell::Num(z.re)));
        row.extend(roots.roots.iter().map(|z| Cell::Num(z.im)));
        row.extend(
            roots
                .roots
                .iter()
                .map(|&z| Cell::Num(root_residual(&coeffs, z))),
        );
        if with_oracle {
            let eig =
                eig_hermitian(&hamiltonian_matrix(p, &f, 0.0, [0.0; 3])).map_err(lib_error)?;
            let dev = roots
                .roots
                .iter()
                .zip(&eig.values)
                .map(|(z, e)| (z - e).norm())
                .fold(0.0, f64::max);
            passed &= dev <= tol;
            row.push(dev.into());
        }
        table.push(row);
    }
    Ok(Outcome {
        text: render(&table, cfg, Format::Csv),
        passed: passed || !cfg.verify,
    })
}

pub fn spectrum(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let f = fields(cfg)?;
    let case = if f.b.0[1..].iter().all(|&x| x == 0.0) {
        BackgroundCase::TimelikeB
    } else if f.b.0[0] == 0.0 {
        BackgroundCase::SpacelikeB
    } else {
        return Err(usage(
            "spectrum needs b purely timelike or purely spacelike",
        ));
    };
    let with_oracle = cfg.oracle || cfg.verify;
    let tol = cfg.tolerance.unwrap_or(1e-12);
    let mut cols = vec!["px", "py", "pz", "e_u1", "e_u2", "e_v1", "e_v2"];
    if with_oracle {
        cols.push("oracle_deviation");
    }
    let mut table = Table::new(&cols);
    let mut passed = true;
    for point in cfg.sweep_points(MOMENTUM_SWEEPS)? {
        let p = momentum_at(cfg.p, &point);
        let cf = energies_closed_form(p, &f, case).map_err(lib_error)?;
        let mut row: Vec<Cell> = p.iter().map(|&x| x.into()).collect();
        row.extend(cf.e_u.iter().chain(&cf.e_v).map(|&x| Cell::Num(x)));
        if with_oracle {
            let roots = dispersion_roots(p, &f).map_err(lib_error)?;
            let dev = cf
                .roots_at_p
                .iter()
                .zip(&roots.roots)
                .map(|(c, z)| (z - c).norm())
                .fold(0.0, f64::max);
            passed &= dev <= tol;
            row.push(dev.into());
        }
        table.push(row);
    }
    Ok(Outcome {
        text: render(&table, cfg, Format::Csv),
        passed: passed || !cfg.verify,
    })
}

pub fn penning(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let mut table = Table::new(&[
        "m",
        "B0",
        "bz",
        "omega",
        "omega_bar",
        "omega_cpt_minus",
        "omega_cpt_plus",
        "omega_bar_cpt_minus",
        "omega_bar_cpt_plus",
        "delta_omega",
        "delta_omega_bar",
        "ratio",
    ]);
    for point in cfg.sweep_points(&["B0", "bz", "m"])? {
        let mut c = cfg.clone();
        match &point {
            Some((var, x)) if var == "B0" => c.b0_field = *x,
            Some((var, x)) if var == "bz" => c.b[3] = *x,
            Some((_, x)) => c.m = *x,
            None => {}
        }
        let f = fields(&c)?;
        let pf = penning_frequencies(c.m, c.e * c.b0_field, &f).map_err(lib_error)?;
        let ratio = if c.b[3] != 0.0 {
            pf.delta_omega_bar / c.b[3]
        } else {
            f64::NAN
        };
        table.push(
            [
                c.m,
                c.b0_field,
                c.b[3],
                pf.omega,
                pf.omega_bar,
                pf.omega_cpt_minus,
                pf.omega_cpt_plus,
                pf.omega_bar_cpt_minus,
                pf.omega_bar_cpt_plus,
                pf.delta_omega,
                pf.delta_omega_bar,
                ratio,
            ]
            .into_iter()
            .map(Cell::Num)
            .collect(),
        );
    }
    Ok(Outcome {
        text: render(&table, cfg, Format::Json),
        passed: true,
    })
}

fn coupled_states(lmax: u32) -> Vec<CoupledState> {
    let mut out = Vec::new();
    for ell in 0..=lmax {
        for branch in [Branch::Plus, Branch::Minus] {
            let two_j = match branch {
                Branch::Plus => 2 * ell as i32 + 1,
                Branch::Minus => 2 * ell as i32 - 1,
            };
            for two_mj in (-two_j..=two_j).step_by(2) {
                if let Ok(s) = CoupledState::new(ell, branch, two_mj) {
                    out.push(s);
                }
            }
        }
    }
    out
}

pub fn zeeman(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    if cfg.sweep.is_some() {
        return Err(usage("zeeman does not take --sweep; use --lmax"));
    }
    let f = fields(cfg)?;
    let n = cfg.n.unwrap_or(cfg.lmax + 1);
    if n <= cfg.lmax {
        return Err(usage(format!("n = {n} must exceed lmax = {}", cfg.lmax)));
    }
    let with_oracle = cfg.oracle || cfg.verify;
    let tol = cfg.tolerance.unwrap_or(1e-8);
    let mut cols = vec!["ell", "j", "m_j", "shift"];
    if with_oracle {
        cols.extend([
            "oracle_shift",
            "deviation",
            "vector_gradient",
            "vector_potential",
            "b0_gradient",
            "sigma_dot_a",
        ]);
    }
    let grid = SphericalGrid {
        n_cos_theta: 24,
        n_phi: 24,
        n_radial: 96,
        r_max_per_n: 30.0,
    };
    let mut table = Table::new(&cols);
    let mut passed = true;
    for st in coupled_states(cfg.lmax) {
        let shift = zeeman_shift_axial(&st, cfg.b[3]);
        let mut row: Vec<Cell> = vec![
            Cell::Int(st.ell as i64),
            st.j().into(),
            st.m_j().into(),
            shift.into(),
        ];
        if with_oracle {
            let o = zeeman_shift_oracle(n, &st, &f, cfg.b0_field, grid).map_err(lib_error)?;
            let dev = (o.axial - shift).abs();
            let vanishing = [
                o.vector_gradient,
                o.vector_potential,
                o.b0_gradient,
                o.sigma_dot_a,
            ];
            passed &= dev <= tol && vanishing.iter().all(|v| v.abs() <= tol.min(1e-10));
            row.extend([o.axial, dev].into_iter().chain(vanishing).map(Cell::Num));
        }
        table.push(row);
    }
    Ok(Outcome {
        text: render(&table, cfg, Format::Csv),
        passed: passed || !cfg.verify,
    })
}

/// Step of the central difference used by `photon --verify`.
pub const GROUP_VELOCITY_STEP: f64 = 1e-5;

pub fn photon(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let eta0 = cfg
        .eta0
        .unwrap_or_else(|| eta_from_b(&four(cfg.b), cfg.e).t());
    let with_check = cfg.oracle || cfg.verify;
    let tol = cfg.tolerance.unwrap_or(1e-8);
    let mut cols = vec![
        "k",
        "omega_plus",
        "omega_plus_im",
        "omega_minus",
        "omega_minus_im",
        "vg_plus",
        "vg_minus",
        "stable",
    ];
    if with_check {
        cols.extend(["fd_vg_plus", "fd_vg_minus", "vg_deviation"]);
    }
    let mut table = Table::new(&cols);
    let mut passed = true;
    for point in cfg.sweep_points(&["k"])? {
        let k = point.map_or(cfg.k, |(_, x)| x);
        if !(k >= 0.0) {
            return Err(usage("k must be nonnegative"));
        }
        let b = birefringence_timelike(eta0, k).map_err(lib_error)?;
        let mut row: Vec<Cell> = vec![
            k.into(),
            b.omega_plus.re.into(),
            b.omega_plus.im.into(),
            b.omega_minus.re.into(),
            b.omega_minus.im.into(),
            b.vg_plus.into(),
            b.vg_minus.into(),
            b.stable.into(),
        ];
        if with_check {
            let h = GROUP_VELOCITY_STEP;
            let (mut fp, mut fm, mut dev) = (f64::NAN, f64::NAN, f64::NAN);
            if k > h {
                let up = birefringence_timelike(eta0, k + h).map_err(lib_error)?;
                let dn = birefringence_timelike(eta0, k - h).map_err(lib_error)?;
                if b.stable && up.stable && dn.stable {
                    fp = (up.omega_plus.re - dn.omega_plus.re) / (2.0 * h);
                    fm = (up.omega_minus.re - dn.omega_minus.re) / (2.0 * h);
                    let vp = b.vg_plus.unwrap_or(f64::NAN);
                    let vm = b.vg_minus.unwrap_or(f64::NAN);
                    dev = (fp - vp).abs().max((fm - vm).abs());
                    passed &= dev <= tol;
                }
            }
            row.extend([fp, fm, dev].map(Cell::Num));
        }
        table.push(row);
    }
    Ok(Outcome {
        text: render(&table, cfg, Format::Csv),
        passed: passed || !cfg.verify,
    })
}

pub fn mcs(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let lambda = match cfg.lambda {
        Some(l) => GaugeParameter::Finite(l),
        None => GaugeParameter::LandauLimit,
    };
    let params = McsParams::new(cfg.theta, lambda).map_err(lib_error)?;
    let tol = cfg.tolerance.unwrap_or(1e-11);
    let mut table = Table::new(&[
        "k0",
        "k1",
        "k2",
        "identity_residual",
        "transversality_residual",
    ]);
    let mut passed = true;
    for point in cfg.sweep_points(&["k0", "k1", "k2"])? {
        let mut k = cfg.p;
        if let Some((var, x)) = &point {
            let idx = var[1..].parse::<usize>().expect("validated sweep variable");
            k[idx] = *x;
        }
        let kv = ThreeVector::new(k[0], k[1], k[2]);
        let identity_residual = match params.lambda {
            GaugeParameter::Finite(_) => {
                let kern = mcs_kernel(&kv, &params).map_err(lib_error)?;
                let prop = mcs_propagator(&kv, &params).map_err(lib_error)?;
                let r = max_abs_diff(&(kern * prop), &(identity(3) * c64(0.0, 1.0)));
                passed &= r <= tol;
                r
            }
            GaugeParameter::LandauLimit => f64::NAN,
        };
        let landau = McsParams::new(cfg.theta, GaugeParameter::Finite(1e8)).map_err(lib_error)?;
        let tr = transversality_residual(&kv, &landau).map_err(lib_error)?;
        table.push(vec![
            k[0].into(),
            k[1].into(),
            k[2].into(),
            identity_residual.into(),
            tr.into(),
        ]);
    }
    Ok(Outcome {
        text: render(&table, cfg, Format::Csv),
        passed: passed || !cfg.verify,
    })
}

fn q_to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn loop_check(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    if cfg.sweep.is_some() {
        return Err(usage("loop-check does not take --sweep"));
    }
    let ledger = cs_ledger_4d().map_err(lib_error)?;
    let unreduced = cs_total_unreduced_4d().map_err(lib_error)?;
    let cs3 = cs_coefficient_3d(cfg.m).map_err(lib_error)?;
    let ff0 = form_factor_3d(0.0, cfg.m).map_err(lib_error)?;
    let e2 = cfg.e * cfg.e;
    let pi = std::f64::consts::PI;
    let mut table = Table::new(&["entry", "unit", "pole", "finite", "finite_value"]);
    for t in &ledger.per_term {
        let c = t.coefficient;
        table.push(vec![
            t.label.into(),
            "e^2/pi^2".into(),
            c.pole().to_string().into(),
            c.pure_finite.to_string().into(),
            (q_to_f64(c.pure_finite) * e2 / (pi * pi)).into(),
        ]);
    }
    table.push(vec![
        "total".into(),
        "e^2/pi^2".into(),
        ledger.pole_sum.to_string().into(),
        ledger.finite_total.rational.to_string().into(),
        ledger.finite_total.value(cfg.e).into(),
    ]);
    table.push(vec![
        "total_unreduced_integrand".into(),
        "e^2/pi^2".into(),
        unreduced.pole().to_string().into(),
        unreduced.pure_finite.to_string().into(),
        (q_to_f64(unreduced.pure_finite) * e2 / (pi * pi)).into(),
    ]);
    table.push(vec![
        "cs_2plus1".into(),
        "e^2/pi".into(),
        "0".into(),
        cs3.rational.to_string().into(),
        cs3.value(cfg.e).into(),
    ]);
    table.push(vec![
        "form_factor_k0".into(),
        "1".into(),
        "0".into(),
        "".into(),
        ff0.into(),
    ]);
    let sign = if cfg.m > 0.0 { 1 } else { -1 };
    let passed = ledger.pole_sum == Q::from(0)
        && ledger.finite_total.rational == Q::new(1, 12)
        && ledger.per_term.get(4).map(|t| t.coefficient.pure_finite) == Some(Q::new(1, 48))
        && cs3.rational == Q::new(-sign, 8)
        && (ff0 - 1.0 / cfg.m.abs()).abs() <= cfg.tolerance.unwrap_or(1e-10);
    Ok(Outcome {
        text: render(&table, cfg, Format::Csv),
        passed: passed || !cfg.verify,
    })
}

pub fn format_selftest(report: &SelftestReport, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    for s in &report.suites {
        out.push_str(&format!(
            "{:<16} {}  checks={}  max_deviation={}\n",
            s.name,
            if s.passed { "PASS" } else { "FAIL" },
            s.checks,
            crate::output::format_f64(s.max_deviation)
        ));
        for f in &s.failures {
            out.push_str(&format!("    {f}\n"));
        }
    }
    out.push_str(if report.passed {
        "selftest: PASS\n"
    } else {
        "selftest: FAIL\n"
    });
    out
}

pub fn selftest(cfg: &RunConfig, json: bool, corrupt_clifford: bool) -> Outcome {
    let report = run_selftest(&SelftestOptions {
        seed: cfg.seed,
        corrupt_clifford,
    });
    Outcome {
        text: format_selftest(&report, json || cfg.format == Some(Format::Json)),
        passed: report.passed,
    }
}
