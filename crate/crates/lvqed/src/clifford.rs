//! Dirac matrices in 3+1 and 2+1 dimensions, slash contraction, traces and
//! discrete-symmetry conjugation identities.
//!
//! The 3+1D basis is the Dirac representation
//! `gamma^0 = diag(1, -1)`, `gamma^i = offdiag(sigma_i, -sigma_i)` and
//! `gamma^5 = i gamma^0 gamma^1 gamma^2 gamma^3 = offdiag(1, 1)`.
//! The lowered chirality matrix `gamma_5 = -gamma^5` is the one that enters
//! the axial couplings and the five-matrix trace
//! `tr[gamma^mu gamma^nu gamma^sigma gamma^rho gamma_5] = 4 i eps^{mu nu sigma rho}`.
//!
//! The 2+1D basis is `gamma^0 = sigma_y`, `gamma^1 = i sigma_x`,
//! `gamma^2 = i sigma_z`, which gives `tr[gamma^0 gamma^1 gamma^2] = 2i`.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{LvError, LvResult};
use crate::tensor_core::{
    anticommutator, c64, identity, levi_civita, max_abs_diff, metric_sign, CMatrix,
};

/// Complete set of Dirac matrices for one spacetime dimension.
#[derive(Debug, Clone)]
pub struct GammaBasis {
    /// Spacetime dimension, 3 or 4.
    pub dimension: usize,
    /// `gamma^mu` with upper indices, `mu = 0..dimension`.
    pub gamma: Vec<CMatrix>,
    /// `gamma^5 = i gamma^0 gamma^1 gamma^2 gamma^3`; absent in 2+1D.
    pub gamma5: Option<CMatrix>,
    /// `alpha^i = gamma^0 gamma^i`.
    pub alpha: Vec<CMatrix>,
    /// `beta = gamma^0`.
    pub beta: CMatrix,
    /// Spin matrices `Sigma^i = diag(sigma_i, sigma_i)`; empty in 2+1D.
    pub sigma_spin: Vec<CMatrix>,
    /// Charge-conjugation matrix `C = i gamma^2 gamma^0`; absent in 2+1D.
    pub charge_conj: Option<CMatrix>,
}

/// Pauli matrices `(sigma_x, sigma_y, sigma_z)` as 2x2 complex matrices.
pub fn pauli() -> [CMatrix; 3] {
    let z = c64(0.0, 0.0);
    let one = c64(1.0, 0.0);
    let i = c64(0.0, 1.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    ]
}

/// Assemble a 4x4 matrix from 2x2 blocks `[[a, b], [c, d]]`.
pub fn block4(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m.view_mut((0, 0), (2, 2)).copy_from(a);
    m.view_mut((0, 2), (2, 2)).copy_from(b);
    m.view_mut((2, 0), (2, 2)).copy_from(c);
    m.view_mut((2, 2), (2, 2)).copy_from(d);
    m
}

/// Shared 3+1D Dirac-representation basis.
pub fn dirac4() -> &'static GammaBasis {
    static BASIS: OnceLock<GammaBasis> = OnceLock::new();
    BASIS.get_or_init(build_dirac_4d)
}

/// Shared 2+1D basis.
pub fn dirac3() -> &'static GammaBasis {
    static BASIS: OnceLock<GammaBasis> = OnceLock::new();
    BASIS.get_or_init(build_3d)
}

/// Build the standard basis for `dimension` 3 or 4.
pub fn build_basis(dimension: usize) -> LvResult<GammaBasis> {
    match dimension {
        4 => Ok(build_dirac_4d()),
        3 => Ok(build_3d()),
        d => Err(LvError::UnsupportedDimension(d)),
    }
}

fn build_dirac_4d() -> GammaBasis {
    let s = pauli();
    let one = identity(2);
    let zero = CMatrix::zeros(2, 2);
    let mut gamma = vec![block4(&one, &zero, &zero, &(-&one))];
    for si in &s {
        gamma.push(block4(&zero, si, &(-si), &zero));
    }
    let i = c64(0.0, 1.0);
    let gamma5 = (&gamma[0] * &gamma[1] * &gamma[2] * &gamma[3]) * i;
    let alpha = (1..4).map(|k| &gamma[0] * &gamma[k]).collect();
    let sigma_spin = s.iter().map(|si| block4(si, &zero, &zero, si)).collect();
    let charge_conj = (&gamma[2] * &gamma[0]) * i;
    GammaBasis {
        dimension: 4,
        beta: gamma[0].clone(),
        gamma,
        gamma5: Some(gamma5),
        alpha,
        sigma_spin,
        charge_conj: Some(charge_conj),
    }
}

fn build_3d() -> GammaBasis {
    let s = pauli();
    let i = c64(0.0, 1.0);
    let gamma = vec![s[1].clone(), &s[0] * i, &s[2] * i];
    let alpha = (1..3).map(|k| &gamma[0] * &gamma[k]).collect();
    GammaBasis {
        dimension: 3,
        beta: gamma[0].clone(),
        gamma,
        gamma5: None,
        alpha,
        sigma_spin: Vec::new(),
        charge_conj: None,
    }
}

impl GammaBasis {
    /// Matrix order: 4 in 3+1D, 2 in 2+1D.
    pub fn order(&self) -> usize {
        self.gamma[0].nrows()
    }

    /// `gamma_mu = g_{mu nu} gamma^nu`.
    pub fn gamma_lower(&self, mu: usize) -> CMatrix {
        &self.gamma[mu] * c64(metric_sign(mu), 0.0)
    }

    /// `gamma^5` with the upper-index definition.
    pub fn gamma5_upper(&self) -> LvResult<&CMatrix> {
        self.gamma5.as_ref().ok_or(LvError::NotAvailable {
            object: "gamma5",
            dimension: self.dimension,
        })
    }

    /// `gamma_5 = -gamma^5`, the chirality matrix used in the axial couplings.
    pub fn gamma5_lower(&self) -> LvResult<CMatrix> {
        Ok(-self.gamma5_upper()?.clone())
    }

    /// `sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu]`.
    pub fn sigma_munu(&self, mu: usize, nu: usize) -> CMatrix {
        let g = &self.gamma;
        (&g[mu] * &g[nu] - &g[nu] * &g[mu]) * c64(0.0, 0.5)
    }

    /// Charge-conjugation matrix, 3+1D only.
    pub fn c_matrix(&self) -> LvResult<&CMatrix> {
        self.charge_conj.as_ref().ok_or(LvError::NotAvailable {
            object: "charge conjugation matrix",
            dimension: self.dimension,
        })
    }

    /// Return a copy with one entry of `gamma^2` sign-flipped.
    ///
    /// This is a fault-injection hook for exercising the self-test harness;
    /// the result violates the Clifford relations.
    #[doc(hidden)]
    pub fn corrupted(&self) -> GammaBasis {
        let mut out = self.clone();
        let n = out.order();
        out.gamma[2][(0, n - 1)] = -out.gamma[2][(0, n - 1)];
        out
    }
}

/// Slash contraction `gamma^mu v_mu` for a vector given by contravariant components.
pub fn slash(basis: &GammaBasis, v: &[f64]) -> LvResult<CMatrix> {
    if v.len() != basis.dimension {
        return Err(LvError::DimensionMismatch {
            expected: basis.dimension,
            found: v.len(),
        });
    }
    let n = basis.order();
    let mut out = CMatrix::zeros(n, n);
    for (mu, &comp) in v.iter().enumerate() {
        out += &basis.gamma[mu] * c64(metric_sign(mu) * comp, 0.0);
    }
    Ok(out)
}

/// Trace of an ordered product of square matrices.
///
/// An empty product is the identity, whose trace is the matrix order of the basis.
pub fn trace_product(basis: &GammaBasis, factors: &[&CMatrix]) -> LvResult<Complex64> {
    let n = basis.order();
    let mut acc = identity(n);
    for f in factors {
        if f.nrows() != n || f.ncols() != n {
            return Err(LvError::DimensionMismatch {
                expected: n,
                found: f.nrows(),
            });
        }
        acc *= *f;
    }
    Ok(acc.trace())
}

/// One named identity together with the largest deviation observed while checking it.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub max_deviation: f64,
}

fn check(name: &str, dev: f64) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        max_deviation: dev,
    }
}

fn scalar_dev(z: Complex64, target: Complex64) -> f64 {
    (z - target).norm()
}

/// Evaluate the Clifford algebra and trace identities of the basis.
///
/// For 3+1D: anticommutators, `gamma^5` algebra, the contraction
/// `gamma_mu gamma^nu gamma^mu = -2 gamma^nu`, the traces of two, four and
/// five matrices (all 256 index tuples for the `gamma_5` trace), the
/// hermiticity of `alpha` and `beta` and the block form of `Sigma`.
/// For 2+1D: anticommutators, `gamma_mu gamma^nu gamma^mu = -gamma^nu` and the
/// traces of two, three and four matrices.
pub fn gamma_identity_report(basis: &GammaBasis) -> Vec<IdentityCheck> {
    let d = basis.dimension;
    let n = basis.order();
    let g = &basis.gamma;
    let one = identity(n);
    let tr_one = n as f64;
    let gm = |a: usize, b: usize| if a == b { metric_sign(a) } else { 0.0 };
    let mut out = Vec::new();

    let mut dev = 0.0_f64;
    for mu in 0..d {
        for nu in 0..d {
            let target = &one * c64(2.0 * gm(mu, nu), 0.0);
            dev = dev.max(max_abs_diff(&anticommutator(&g[mu], &g[nu]), &target));
        }
    }
    out.push(check("anticommutator {g^mu, g^nu} = 2 g^{mu nu}", dev));

    let mut dev = 0.0_f64;
    let factor = if d == 4 { -2.0 } else { -1.0 };
    for nu in 0..d {
        let mut acc = CMatrix::zeros(n, n);
        for mu in 0..d {
            acc += basis.gamma_lower(mu) * &g[nu] * &g[mu];
        }
        dev = dev.max(max_abs_diff(&acc, &(&g[nu] * c64(factor, 0.0))));
    }
    out.push(check("contraction g_mu g^nu g^mu", dev));

    let mut dev = scalar_dev(one.trace(), c64(tr_one, 0.0));
    for m in g {
        dev = dev.max(m.trace().norm());
    }
    out.push(check("tr 1 and tr g^mu", dev));

    let mut dev = 0.0_f64;
    for mu in 0..d {
        for nu in 0..d {
            let t = (&g[mu] * &g[nu]).trace();
            dev = dev.max(scalar_dev(t, c64(tr_one * gm(mu, nu), 0.0)));
        }
    }
    out.push(check("tr g^mu g^nu", dev));

    let mut dev3 = 0.0_f64;
    let mut dev_odd = 0.0_f64;
    for mu in 0..d {
        for nu in 0..d {
            for rho in 0..d {
                let t = (&g[mu] * &g[nu] * &g[rho]).trace();
                if d == 3 {
                    let eps = levi_civita(&[mu, nu, rho]).unwrap_or(0) as f64;
                    dev3 = dev3.max(scalar_dev(t, c64(0.0, 2.0 * eps)));
                } else {
                    dev_odd = dev_odd.max(t.norm());
                }
            }
        }
    }
    if d == 3 {
        out.push(check("tr g^mu g^rho g^nu = 2i eps", dev3));
    } else {
        out.push(check("tr of three gammas vanishes", dev_odd));
    }

    let mut dev = 0.0_f64;
    for mu in 0..d {
        for nu in 0..d {
            for sg in 0..d {
                for rho in 0..d {
                    let t = (&g[mu] * &g[nu] * &g[sg] * &g[rho]).trace();
                    let target = if d == 4 {
                        4.0 * (gm(mu, nu) * gm(sg, rho) - gm(mu, sg) * gm(nu, rho)
                            + gm(mu, rho) * gm(nu, sg))
                    } else {
                        // (mu, rho, nu, sigma) ordering of the 2+1D identity.
                        2.0 * (gm(mu, nu) * gm(sg, rho) + gm(nu, sg) * gm(rho, mu)
                            - gm(mu, sg) * gm(nu, rho))
                    };
                    dev = dev.max(scalar_dev(t, c64(target, 0.0)));
                }
            }
        }
    }
    out.push(check("tr of four gammas", dev));

    if let Some(g5) = &basis.gamma5 {
        let g5l = -g5;
        out.push(check("(gamma^5)^2 = 1", max_abs_diff(&(g5 * g5), &one)));
        let mut dev = 0.0_f64;
        for m in g {
            dev = dev.max(super::tensor_core::max_abs(&anticommutator(m, g5)));
        }
        out.push(check("{gamma^mu, gamma^5} = 0", dev));

        let mut dev = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                dev = dev.max((&g[mu] * &g[nu] * &g5l).trace().norm());
            }
        }
        out.push(check("tr g^mu g^nu gamma_5 = 0", dev));

        let mut dev = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                for sg in 0..4 {
                    for rho in 0..4 {
                        let t = (&g[mu] * &g[nu] * &g[sg] * &g[rho] * &g5l).trace();
                        let eps = levi_civita(&[mu, nu, sg, rho]).unwrap_or(0) as f64;
                        dev = dev.max(scalar_dev(t, c64(0.0, 4.0 * eps)));
                    }
                }
            }
        }
        out.push(check(
            "tr g^mu g^nu g^sigma g^rho gamma_5 = 4i eps (256 tuples)",
            dev,
        ));

        let mut dev = max_abs_diff(&basis.beta, &basis.beta.adjoint());
        dev = dev.max(max_abs_diff(&(&basis.beta * &basis.beta), &one));
        for a in &basis.alpha {
            dev = dev.max(max_abs_diff(a, &a.adjoint()));
        }
        out.push(check("alpha, beta Hermitian and beta^2 = 1", dev));

        let s = pauli();
        let z = CMatrix::zeros(2, 2);
        let mut dev = 0.0_f64;
        for k in 0..3 {
            dev = dev.max(max_abs_diff(
                &basis.sigma_spin[k],
                &block4(&s[k], &z, &z, &s[k]),
            ));
            // Sigma^k = gamma^5 alpha^k in this representation.
            dev = dev.max(max_abs_diff(&basis.sigma_spin[k], &(g5 * &basis.alpha[k])));
        }
        out.push(check("Sigma = diag(sigma, sigma) = gamma^5 alpha", dev));
    }
    out
}

/// The five families of fermion bilinears.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bilinear {
    Scalar,
    Vector,
    Pseudoscalar,
    Axial,
    Tensor,
}

/// Discrete transformations acting on bilinears.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discrete {
    C,
    P,
    T,
    Cpt,
}

/// Outcome of one bilinear/transformation pair of the conjugation table.
#[derive(Debug, Clone)]
pub struct SymmetryCheck {
    pub bilinear: Bilinear,
    pub transformation: Discrete,
    /// Overall sign in the table (before index lowering).
    pub expected_sign: i32,
    /// Whether the transformed bilinear carries lowered indices.
    pub lowers_indices: bool,
    pub max_deviation: f64,
    pub holds: bool,
}

/// Sign pattern of the transformation table: `(sign, lowers_indices)`.
pub fn expected_table_entry(b: Bilinear, t: Discrete) -> (i32, bool) {
    use Bilinear::*;
    use Discrete::*;
    match (b, t) {
        (Scalar, _) => (1, false),
        (Vector, C) => (-1, false),
        (Vector, P) | (Vector, T) => (1, true),
        (Vector, Cpt) => (-1, false),
        (Pseudoscalar, C) => (1, false),
        (Pseudoscalar, P) | (Pseudoscalar, T) => (-1, false),
        (Pseudoscalar, Cpt) => (1, false),
        (Axial, C) => (1, false),
        (Axial, P) => (-1, true),
        (Axial, T) => (1, true),
        (Axial, Cpt) => (-1, false),
        (Tensor, C) => (-1, false),
        (Tensor, P) => (1, true),
        (Tensor, T) => (-1, true),
        (Tensor, Cpt) => (1, false),
    }
}

/// Matrices of a bilinear family with the metric weight each picks up when
/// its Lorentz indices are lowered.
fn bilinear_components(basis: &GammaBasis, b: Bilinear) -> Vec<(CMatrix, f64)> {
    let g = &basis.gamma;
    let g5 = basis.gamma5.clone().expect("3+1D basis");
    let i = c64(0.0, 1.0);
    match b {
        Bilinear::Scalar => vec![(identity(4), 1.0)],
        Bilinear::Vector => (0..4).map(|mu| (g[mu].clone(), metric_sign(mu))).collect(),
        Bilinear::Pseudoscalar => vec![(&g5 * i, 1.0)],
        Bilinear::Axial => (0..4).map(|mu| (&g[mu] * &g5, metric_sign(mu))).collect(),
        Bilinear::Tensor => {
            let mut v = Vec::new();
            for mu in 0..4 {
                for nu in (mu + 1)..4 {
                    v.push((basis.sigma_munu(mu, nu), metric_sign(mu) * metric_sign(nu)));
                }
            }
            v
        }
    }
}

/// Parity: `psi -> gamma^0 psi`, so `Gamma -> gamma^0 Gamma gamma^0`.
pub fn parity_map(basis: &GammaBasis, m: &CMatrix) -> CMatrix {
    &basis.gamma[0] * m * &basis.gamma[0]
}

/// Time reversal: `psi -> gamma^1 gamma^3 psi` (antiunitary), so
/// `Gamma -> (gamma^1 gamma^3)^{-1} Gamma^* (gamma^1 gamma^3)`.
pub fn time_reversal_map(basis: &GammaBasis, m: &CMatrix) -> CMatrix {
    let t = &basis.gamma[1] * &basis.gamma[3];
    let t_inv = -&t;
    t_inv * m.conjugate() * t
}

/// Charge conjugation: `psi -> C psibar^T` with anticommuting fields, so
/// `Gamma -> -(C Gamma C)^T`.
pub fn charge_conjugation_map(basis: &GammaBasis, m: &CMatrix) -> CMatrix {
    let c = basis.charge_conj.as_ref().expect("3+1D basis");
    -(c * m * c).transpose()
}

/// Verify the sign pattern of the discrete-symmetry table as matrix identities.
pub fn discrete_symmetry_check(basis: &GammaBasis) -> LvResult<Vec<SymmetryCheck>> {
    if basis.dimension != 4 {
        return Err(LvError::NotAvailable {
            object: "discrete symmetry table",
            dimension: basis.dimension,
        });
    }
    let mut out = Vec::new();
    let families = [
        Bilinear::Scalar,
        Bilinear::Vector,
        Bilinear::Pseudoscalar,
        Bilinear::Axial,
        Bilinear::Tensor,
    ];
    for &fam in &families {
        for &tr in &[Discrete::C, Discrete::P, Discrete::T, Discrete::Cpt] {
            let (sign, lowers) = expected_table_entry(fam, tr);
            let mut dev = 0.0_f64;
            for (m, w) in bilinear_components(basis, fam) {
                let mapped = match tr {
                    Discrete::C => charge_conjugation_map(basis, &m),
                    Discrete::P => parity_map(basis, &m),
                    Discrete::T => time_reversal_map(basis, &m),
                    Discrete::Cpt => charge_conjugation_map(
                        basis,
                        &parity_map(basis, &time_reversal_map(basis, &m)),
                    ),
                };
                let weight = sign as f64 * if lowers { w } else { 1.0 };
                dev = dev.max(max_abs_diff(&mapped, &(&m * c64(weight, 0.0))));
            }
            out.push(SymmetryCheck {
                bilinear: fam,
                transformation: tr,
                expected_sign: sign,
                lowers_indices: lowers,
                max_deviation: dev,
                holds: dev <= 1e-13,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor_core::{max_abs, FourVector};

    #[test]
    fn basis_examples() {
        let b4 = build_basis(4).unwrap();
        let t = trace_product(&b4, &[&b4.gamma[0], &b4.gamma[0]]).unwrap();
        assert_eq!(t, c64(4.0, 0.0));
        let b3 = build_basis(3).unwrap();
        let t = trace_product(&b3, &[&b3.gamma[0], &b3.gamma[1]]).unwrap();
        assert_eq!(t, c64(0.0, 0.0));
        let g5 = b4.gamma5.as_ref().unwrap();
        let z = CMatrix::zeros(2, 2);
        assert_eq!(*g5, block4(&z, &identity(2), &identity(2), &z));
        assert!(build_basis(5).is_err());
        assert!(b3.gamma5_lower().is_err());
    }

    #[test]
    fn trace_examples() {
        let b4 = build_basis(4).unwrap();
        let g = &b4.gamma;
        let g5l = b4.gamma5_lower().unwrap();
        let t = trace_product(&b4, &[&g[0], &g[1], &g[2], &g[3], &g5l]).unwrap();
        assert_eq!(t, c64(0.0, 4.0));
        for mu in 0..4 {
            for nu in 0..4 {
                assert_eq!(
                    trace_product(&b4, &[&g[mu], &g[nu], &g5l]).unwrap(),
                    c64(0.0, 0.0)
                );
            }
        }
        let b3 = build_basis(3).unwrap();
        let g = &b3.gamma;
        assert_eq!(
            trace_product(&b3, &[&g[0], &g[1], &g[2]]).unwrap(),
            c64(0.0, 2.0)
        );
        assert_eq!(trace_product(&b3, &[]).unwrap(), c64(2.0, 0.0));
        assert!(trace_product(&b3, &[&b4.gamma[0]]).is_err());
    }

    #[test]
    fn identity_reports_are_exact() {
        for d in [3, 4] {
            let b = build_basis(d).unwrap();
            for c in gamma_identity_report(&b) {
                assert!(
                    c.max_deviation <= 1e-13,
                    "{d}D {}: {}",
                    c.name,
                    c.max_deviation
                );
            }
        }
    }

    #[test]
    fn corrupted_basis_is_detected() {
        let b = build_basis(4).unwrap().corrupted();
        let worst = gamma_identity_report(&b)
            .iter()
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max);
        assert!(worst > 0.5);
    }

    #[test]
    fn slash_squares_to_minkowski_square() {
        let b = build_basis(4).unwrap();
        let v = FourVector::new(2.0, 0.0, 0.0, 0.0);
        let s = slash(&b, &v.0).unwrap();
        assert!(max_abs_diff(&s, &(&b.gamma[0] * c64(2.0, 0.0))) < 1e-15);
        let e1 = FourVector::new(0.0, 1.0, 0.0, 0.0);
        let s = slash(&b, &e1.0).unwrap();
        assert!(max_abs_diff(&s, &(-&b.gamma[1])) < 1e-15);
        assert!(max_abs_diff(&(&s * &s), &(-identity(4))) < 1e-15);
        assert!(slash(&b, &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn discrete_symmetry_table_holds() {
        let b = build_basis(4).unwrap();
        let report = discrete_symmetry_check(&b).unwrap();
        assert_eq!(report.len(), 20);
        for r in &report {
            assert!(
                r.holds,
                "{:?} under {:?}: {}",
                r.bilinear, r.transformation, r.max_deviation
            );
        }
        // Axial vector under parity, written out entrywise.
        let g5 = b.gamma5.as_ref().unwrap();
        for mu in 0..4 {
            let lhs = &b.gamma[0] * (g5 * &b.gamma[mu]) * &b.gamma[0];
            let rhs = -(g5 * b.gamma_lower(mu));
            assert!(max_abs(&(lhs - rhs)) <= 1e-15);
        }
        assert!(discrete_symmetry_check(&build_basis(3).unwrap()).is_err());
    }

    #[test]
    fn flipped_table_entry_is_rejected() {
        // The vector current changes sign under C; a map without that sign must fail.
        let b = build_basis(4).unwrap();
        let c = b.charge_conj.as_ref().unwrap();
        let wrong = (c * &b.gamma[1] * c).transpose();
        assert!(max_abs_diff(&wrong, &(-&b.gamma[1])) > 0.5);
    }
}
