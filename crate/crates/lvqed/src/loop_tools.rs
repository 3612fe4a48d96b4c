//! One-loop integrals in dimensional regularisation and the induced
//! Chern–Simons coefficients in 2+1 and 3+1 dimensions.
//!
//! Minkowski integrals are normalised as
//! `I = int d^D p / (2 pi)^D  N(p) / (p^2 - m^2)^alpha`.
//! Exact results are expressed in units of `i / pi^2` (four dimensions) and
//! divergent ones through the universal block
//! `[1/eps + log(4 pi / m^2) - gamma_E]` with `D = 4 - 2 eps`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::clifford::{dirac3, dirac4, slash, GammaBasis};
use crate::error::{LvError, LvResult};
use crate::quadrature::{adaptive_gk, adaptive_half_line};
use crate::tensor_core::{c64, metric_sign, CMatrix, FourVector};

/// Exact rational used throughout the bookkeeping.
pub type Q = Ratio<i64>;

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn factorial(n: i64) -> i64 {
    (1..=n).product()
}

/// Laurent data of a dimensionally regularised integral.
///
/// The value is `unit * [block * (1/eps + log(4 pi/m^2) - gamma_E) + pure_finite] * m^mass_power`.
/// The pole coefficient equals `block`, so pole cancellation implies cancellation of
/// the logarithm and of `gamma_E` as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaurentSeries {
    pub block: Q,
    pub pure_finite: Q,
    pub mass_power: i32,
}

impl LaurentSeries {
    pub fn zero() -> Self {
        Self {
            block: Q::zero(),
            pure_finite: Q::zero(),
            mass_power: 0,
        }
    }

    pub fn divergent(block: Q) -> Self {
        Self {
            block,
            pure_finite: Q::zero(),
            mass_power: 0,
        }
    }

    pub fn finite(value: Q, mass_power: i32) -> Self {
        Self {
            block: Q::zero(),
            pure_finite: value,
            mass_power,
        }
    }

    /// Coefficient of `1/eps`.
    pub fn pole(&self) -> Q {
        self.block
    }

    pub fn has_universal_block(&self) -> bool {
        !self.block.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.block.is_zero() && self.pure_finite.is_zero()
    }

    pub fn scale(&self, s: Q) -> Self {
        Self {
            block: self.block * s,
            pure_finite: self.pure_finite * s,
            mass_power: self.mass_power,
        }
    }

    /// Multiply by `m^k`.
    pub fn times_mass_power(&self, k: i32) -> Self {
        Self {
            mass_power: self.mass_power + k,
            ..*self
        }
    }

    /// Exact sum; both operands must carry the same power of the mass unless one vanishes.
    pub fn checked_add(&self, other: &Self) -> LvResult<Self> {
        if self.is_zero() {
            return Ok(*other);
        }
        if other.is_zero() {
            return Ok(*self);
        }
        if self.mass_power != other.mass_power {
            return Err(LvError::InvalidParameter(format!(
                "cannot add terms with mass powers {} and {}",
                self.mass_power, other.mass_power
            )));
        }
        Ok(Self {
            block: self.block + other.block,
            pure_finite: self.pure_finite + other.pure_finite,
            mass_power: self.mass_power,
        })
    }
}

impl Add for LaurentSeries {
    type Output = LaurentSeries;
    /// Panics on mismatched mass powers; use [`LaurentSeries::checked_add`] to handle that case.
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("mass powers must agree")
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> Self {
        self.scale(-Q::one())
    }
}

impl Sub for LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.has_universal_block() {
            parts.push(format!("({})[1/eps + log(4pi/m^2) - gamma_E]", self.block));
        }
        if !self.pure_finite.is_zero() || parts.is_empty() {
            parts.push(format!("({})", self.pure_finite));
        }
        let body = parts.join(" + ");
        if self.mass_power != 0 {
            write!(f, "{body} m^{}", self.mass_power)
        } else {
            f.write_str(&body)
        }
    }
}

/// Numerator structure of a one-loop integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralKind {
    /// `1`
    Scalar,
    /// `p_mu p_nu`, coefficient of `g_{mu nu}`.
    TwoP,
    /// `p_mu p_nu p_rho p_sigma`, coefficient of the symmetrised `g g` sum.
    FourP,
    /// `p^2`
    P2,
    /// `p^2 p_mu p_nu`, coefficient of `g_{mu nu}`.
    P2TwoP,
    /// `(p^2)^2`
    P4,
}

impl IntegralKind {
    fn momentum_pairs(self) -> i64 {
        match self {
            IntegralKind::Scalar => 0,
            IntegralKind::TwoP | IntegralKind::P2 => 1,
            IntegralKind::FourP | IntegralKind::P2TwoP | IntegralKind::P4 => 2,
        }
    }

    /// Index contraction multiplying the tensor coefficient in `d` dimensions.
    fn contraction(self, d: i64) -> i64 {
        match self {
            IntegralKind::Scalar | IntegralKind::TwoP | IntegralKind::FourP => 1,
            IntegralKind::P2 => d,
            IntegralKind::P2TwoP => d + 2,
            IntegralKind::P4 => d * (d + 2),
        }
    }
}

/// Space-time dimension of an integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Dimension {
    Three,
    Four,
    /// `D = 4 - 2 eps`; index contractions use the four-dimensional metric trace.
    FourMinus2Eps,
}

/// Result of [`feynman_integral`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegralValue {
    /// Finite value as a complex number.
    Closed(Complex64),
    /// Exact data in units of `i / pi^2`.
    Laurent(LaurentSeries),
}

/// `Gamma(n/2)` for a positive or negative half-integer or integer `n/2`, as a float.
fn gamma_half(n: i64) -> f64 {
    if n % 2 == 0 {
        let k = n / 2;
        assert!(k > 0, "gamma pole at {k}");
        return factorial(k - 1) as f64;
    }
    // Gamma(1/2) = sqrt(pi); walk up or down with Gamma(x+1) = x Gamma(x).
    let mut x = 0.5;
    let mut g = std::f64::consts::PI.sqrt();
    let target = n as f64 / 2.0;
    while x < target {
        g *= x;
        x += 1.0;
    }
    while x > target {
        x -= 1.0;
        g /= x;
    }
    g
}

fn power_counting_finite(kind: IntegralKind, d: i64, alpha: i64) -> bool {
    d + 2 * kind.momentum_pairs() - 2 * alpha < 0
}

/// Exact four-dimensional table entry in units of `i / pi^2`.
///
/// Finite entries carry their mass power; logarithmically divergent entries
/// return the universal block with `D = 4 - 2 eps`.
pub fn table_entry(kind: IntegralKind, alpha: u32) -> LvResult<LaurentSeries> {
    let alpha = alpha as i64;
    if alpha < 1 {
        return Err(LvError::UnsupportedIntegral(
            "alpha must be positive".into(),
        ));
    }
    let k = kind.momentum_pairs();
    // Scalar prefactor of the tensor structure:
    // (-1)^(alpha-k) i / (16 pi^2) * Gamma(alpha - 2 - k) / (2^k Gamma(alpha)) * m^(4 + 2k - 2 alpha).
    let sign = if (alpha - k) % 2 == 0 { 1 } else { -1 };
    let base = q(sign, 16 * (1 << k) * factorial(alpha - 1)) * Q::from(kind.contraction(4));
    let arg = alpha - 2 - k;
    if arg > 0 {
        let mass_power = (4 + 2 * k - 2 * alpha) as i32;
        Ok(LaurentSeries::finite(
            base * Q::from(factorial(arg - 1)),
            mass_power,
        ))
    } else if arg == 0 {
        Ok(LaurentSeries::divergent(base))
    } else {
        Err(LvError::UnsupportedIntegral(format!(
            "{kind:?} with alpha = {alpha} is power divergent in four dimensions"
        )))
    }
}

/// Closed-form value of a one-loop integral.
///
/// Tensor kinds return the scalar prefactor of their metric structure.
pub fn feynman_integral(
    kind: IntegralKind,
    dim: Dimension,
    alpha: u32,
    m: f64,
) -> LvResult<IntegralValue> {
    if !(m.is_finite() && m != 0.0) {
        return Err(LvError::InvalidParameter(format!(
            "mass must be finite and nonzero, got {m}"
        )));
    }
    let a = alpha as i64;
    if a < 1 {
        return Err(LvError::UnsupportedIntegral(
            "alpha must be positive".into(),
        ));
    }
    match dim {
        Dimension::FourMinus2Eps => table_entry(kind, alpha).map(IntegralValue::Laurent),
        Dimension::Four => {
            if !power_counting_finite(kind, 4, a) {
                return Err(LvError::UnsupportedIntegral(format!(
                    "{kind:?} with alpha = {alpha} diverges in D = 4; use D = 4 - 2eps"
                )));
            }
            let entry = table_entry(kind, alpha)?;
            let r = *entry.pure_finite.numer() as f64 / *entry.pure_finite.denom() as f64;
            let v = r / std::f64::consts::PI.powi(2) * m.abs().powi(entry.mass_power);
            Ok(IntegralValue::Closed(c64(0.0, v)))
        }
        Dimension::Three => {
            if !power_counting_finite(kind, 3, a) {
                return Err(LvError::UnsupportedIntegral(format!(
                    "{kind:?} with alpha = {alpha} diverges in D = 3"
                )));
            }
            let k = kind.momentum_pairs();
            let sign = if (a - k) % 2 == 0 { 1.0 } else { -1.0 };
            let pi = std::f64::consts::PI;
            // Gamma(alpha - 3/2 - k) has argument (2 alpha - 3 - 2k)/2.
            let g = gamma_half(2 * a - 3 - 2 * k) / factorial(a - 1) as f64;
            let v = sign / (4.0 * pi).powf(1.5) / 2f64.powi(k as i32)
                * g
                * kind.contraction(3) as f64
                * m.abs().powf(3.0 + 2.0 * k as f64 - 2.0 * a as f64);
            Ok(IntegralValue::Closed(c64(0.0, v)))
        }
    }
}

/// Numerator of a Wick-rotation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WickKind {
    Scalar,
    P2,
}

/// Independent numerical value of a finite Minkowski integral by Wick rotation.
///
/// With `p^0 = i p_E^0` the integral becomes
/// `i (-1)^(k + alpha) S_{D-1} / (2 pi)^D int_0^inf dp p^(D-1+2k) / (p^2 + m^2)^alpha`,
/// evaluated by adaptive Gauss–Kronrod quadrature with `p = |m| t / (1 - t)`.
pub fn wick_oracle(kind: WickKind, dim: usize, alpha: u32, m: f64) -> LvResult<Complex64> {
    if dim != 3 && dim != 4 {
        return Err(LvError::UnsupportedDimension(dim));
    }
    if !(m.is_finite() && m != 0.0) {
        return Err(LvError::InvalidParameter(format!(
            "mass must be finite and nonzero, got {m}"
        )));
    }
    let k: i32 = match kind {
        WickKind::Scalar => 0,
        WickKind::P2 => 1,
    };
    let a = alpha as i32;
    let d = dim as i32;
    if d + 2 * k - 2 * a >= 0 {
        return Err(LvError::UnsupportedIntegral(format!(
            "integrand with D = {d}, alpha = {a} is not UV finite"
        )));
    }
    let pi = std::f64::consts::PI;
    let sphere = if dim == 3 { 4.0 * pi } else { 2.0 * pi * pi };
    let m2 = m * m;
    let power = d - 1 + 2 * k;
    let radial = adaptive_half_line(
        |p| p.powi(power) / (p * p + m2).powi(a),
        m.abs(),
        0.0,
        1e-11,
    )?;
    let sign = if (k + a) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(c64(0.0, sign * sphere / (2.0 * pi).powi(d) * radial.value))
}

/// Numerical value of `int_0^1 dz [a z + b (1 - z)]^(-2)`, which equals `1/(ab)`.
pub fn feynman_parametrize_check(a: f64, b: f64) -> LvResult<f64> {
    if !(a.is_finite() && b.is_finite()) || a == 0.0 || b == 0.0 || a.signum() != b.signum() {
        return Err(LvError::InvalidParameter(format!(
            "a = {a} and b = {b} must be nonzero with the same sign"
        )));
    }
    let r = adaptive_gk(
        |z| {
            let d = a * z + b * (1.0 - z);
            1.0 / (d * d)
        },
        0.0,
        1.0,
        0.0,
        1e-13,
    )?;
    Ok(r.value)
}

/// Unit attached to a Chern–Simons coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CsUnit {
    /// `e^2 / pi`, used in 2+1 dimensions.
    E2OverPi,
    /// `e^2 / pi^2`, used in 3+1 dimensions.
    E2OverPi2,
}

/// Chern–Simons coefficient as an exact rational multiple of its unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsCoefficient {
    pub rational: Q,
    pub unit: CsUnit,
}

impl CsCoefficient {
    /// Numerical value for charge `e`.
    pub fn value(&self, e: f64) -> f64 {
        let r = *self.rational.numer() as f64 / *self.rational.denom() as f64;
        let pi = std::f64::consts::PI;
        match self.unit {
            CsUnit::E2OverPi => r * e * e / pi,
            CsUnit::E2OverPi2 => r * e * e / (pi * pi),
        }
    }
}

impl fmt::Display for CsCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            CsUnit::E2OverPi => write!(f, "({}) e^2/pi", self.rational),
            CsUnit::E2OverPi2 => write!(f, "({}) e^2/pi^2", self.rational),
        }
    }
}

/// Integer value of `tr(M) / i` for a matrix built from integer data.
fn trace_over_i(mat: &CMatrix) -> LvResult<i64> {
    let t = mat.trace();
    let k = t.im.round();
    if t.re.abs() > 1e-9 || (t.im - k).abs() > 1e-9 {
        return Err(LvError::InvalidParameter(format!(
            "trace {t} is not an integer multiple of i"
        )));
    }
    Ok(k as i64)
}

/// Induced Chern–Simons coefficient in 2+1 dimensions at vanishing external momentum.
///
/// The parity-odd part of the vacuum polarisation is
/// `-(e^2/2) tr(gamma^0 gamma^1 gamma^2)/i * m * J` with `J = 1/(8 pi |m|)`
/// the finite scalar integral at `alpha = 2`.
pub fn cs_coefficient_3d(m: f64) -> LvResult<CsCoefficient> {
    if !m.is_finite() || m == 0.0 {
        return Err(LvError::InvalidParameter(format!(
            "the sign of m = {m} is undefined; the coefficient is discontinuous at m = 0"
        )));
    }
    let b = dirac3();
    let t = trace_over_i(&(&b.gamma[0] * &b.gamma[1] * &b.gamma[2]))?;
    // i/(8 pi |m|) in units of i/(pi |m|): (4 pi)^(-3/2) Gamma(1/2) / Gamma(2) = 1/(8 pi).
    let j = q(1, 8);
    let sign = if m > 0.0 { 1 } else { -1 };
    Ok(CsCoefficient {
        rational: -q(1, 2) * Q::from(t) * Q::from(sign) * j,
        unit: CsUnit::E2OverPi,
    })
}

/// Low-momentum form factor `int_0^1 dz / sqrt(m^2 - k^2 z (1 - z))` of the 2+1D vacuum polarisation.
///
/// Positive `k_sq` is timelike. The closed form is `(2/k) artanh(k / 2|m|)` for `k_sq > 0`,
/// `(2/K) arctan(K / 2|m|)` with `K^2 = -k_sq` for `k_sq < 0`, and `1/|m|` at `k_sq = 0`.
pub fn form_factor_3d(k_sq: f64, m: f64) -> LvResult<f64> {
    if !(m.is_finite() && m != 0.0 && k_sq.is_finite()) {
        return Err(LvError::InvalidParameter(format!(
            "need finite k^2 and nonzero m, got {k_sq}, {m}"
        )));
    }
    let am = m.abs();
    if k_sq >= 4.0 * m * m {
        return Err(LvError::InvalidParameter(format!(
            "k^2 = {k_sq} is at or above the pair threshold 4m^2 = {}",
            4.0 * m * m
        )));
    }
    if k_sq > 0.0 {
        let k = k_sq.sqrt();
        Ok(2.0 / k * (k / (2.0 * am)).atanh())
    } else if k_sq < 0.0 {
        let k = (-k_sq).sqrt();
        Ok(2.0 / k * (k / (2.0 * am)).atan())
    } else {
        Ok(1.0 / am)
    }
}

/// Quadrature value of the same Feynman-parameter integral as [`form_factor_3d`].
pub fn form_factor_3d_quadrature(k_sq: f64, m: f64) -> LvResult<f64> {
    if !(m.is_finite() && m != 0.0) || k_sq >= 4.0 * m * m {
        return Err(LvError::InvalidParameter(format!(
            "k^2 = {k_sq} outside the domain for m = {m}"
        )));
    }
    let r = adaptive_gk(
        |z| 1.0 / (m * m - k_sq * z * (1.0 - z)).sqrt(),
        0.0,
        1.0,
        0.0,
        1e-13,
    )?;
    Ok(r.value)
}

/// External vectors entering the 3+1D two-point trace.
#[derive(Debug, Clone, Copy)]
pub struct LoopVectors {
    pub b: FourVector,
    pub a1: FourVector,
    pub a2: FourVector,
    pub dpartial: FourVector,
}

/// One summand of the reduced two-point integrand: `i * coeff * m^mass_power * F(p, ..., p)`.
struct Summand {
    label: &'static str,
    coeff: i64,
    mass_power: i32,
    slots: usize,
    build: fn(&Ctx, &[FourVector]) -> CMatrix,
}

struct Ctx<'a> {
    basis: &'a GammaBasis,
    g5: CMatrix,
    v: LoopVectors,
}

impl Ctx<'_> {
    fn sl(&self, v: &FourVector) -> CMatrix {
        slash(self.basis, &v.0).expect("four-dimensional basis")
    }
    fn b(&self) -> CMatrix {
        self.sl(&self.v.b)
    }
    fn a1(&self) -> CMatrix {
        self.sl(&self.v.a1)
    }
    fn a2(&self) -> CMatrix {
        self.sl(&self.v.a2)
    }
    fn d(&self) -> CMatrix {
        self.sl(&self.v.dpartial)
    }
}

fn mul_all(ms: &[CMatrix]) -> CMatrix {
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        acc *= m;
    }
    acc
}

/// The eight reduced summands, in order. Slots are the momentum insertions.
fn summands() -> [Summand; 8] {
    [
        Summand {
            label: "i p^4 b A d A g5",
            coeff: 1,
            mass_power: 0,
            slots: 4,
            build: |c, p| {
                let s = c64(p[0].dot(&p[1]) * p[2].dot(&p[3]), 0.0);
                mul_all(&[c.b(), c.a1(), c.d(), c.a2(), c.g5.clone()]) * s
            },
        },
        Summand {
            label: "-2i p^2 b A (p.d) p A g5",
            coeff: -2,
            mass_power: 0,
            slots: 4,
            build: |c, p| {
                let s = c64(p[0].dot(&p[1]) * p[2].dot(&c.v.dpartial), 0.0);
                mul_all(&[c.b(), c.a1(), c.sl(&p[3]), c.a2(), c.g5.clone()]) * s
            },
        },
        Summand {
            label: "-2i p^2 (b.p) p A d A g5",
            coeff: -2,
            mass_power: 0,
            slots: 4,
            build: |c, p| {
                let s = c64(p[0].dot(&p[1]) * p[2].dot(&c.v.b), 0.0);
                mul_all(&[c.sl(&p[3]), c.a1(), c.d(), c.a2(), c.g5.clone()]) * s
            },
        },
        Summand {
            label: "4i (b.p) p A (p.d) p A g5",
            coeff: 4,
            mass_power: 0,
            slots: 4,
            build: |c, p| {
                let s = c64(p[0].dot(&c.v.b) * p[2].dot(&c.v.dpartial), 0.0);
                mul_all(&[c.sl(&p[1]), c.a1(), c.sl(&p[3]), c.a2(), c.g5.clone()]) * s
            },
        },
        Summand {
            label: "2i m^2 (b.p) p A d A g5",
            coeff: 2,
            mass_power: 2,
            slots: 2,
            build: |c, p| {
                let s = c64(p[0].dot(&c.v.b), 0.0);
                mul_all(&[c.sl(&p[1]), c.a1(), c.d(), c.a2(), c.g5.clone()]) * s
            },
        },
        Summand {
            label: "2i m^2 p b A (p.d) A g5",
            coeff: 2,
            mass_power: 2,
            slots: 2,
            build: |c, p| {
                let s = c64(p[1].dot(&c.v.dpartial), 0.0);
                mul_all(&[c.sl(&p[0]), c.b(), c.a1(), c.a2(), c.g5.clone()]) * s
            },
        },
        Summand {
            label: "-2i m^2 (p.A) b d p A g5",
            coeff: -2,
            mass_power: 2,
            slots: 2,
            build: |c, p| {
                let s = c64(p[0].dot(&c.v.a1), 0.0);
                mul_all(&[c.b(), c.d(), c.sl(&p[1]), c.a2(), c.g5.clone()]) * s
            },
        },
        Summand {
            label: "-i m^4 b A d A g5",
            coeff: -1,
            mass_power: 4,
            slots: 0,
            build: |c, _| mul_all(&[c.b(), c.a1(), c.d(), c.a2(), c.g5.clone()]),
        },
    ]
}

fn ctx(v: LoopVectors) -> Ctx<'static> {
    let basis = dirac4();
    Ctx {
        basis,
        g5: basis.gamma5_lower().expect("four-dimensional basis"),
        v,
    }
}

/// Unreduced integrand `(p+m) b g5 (p+m) A1 (p+m) (i d) (p+m) A2` at a fixed loop momentum.
pub fn unreduced_product(p: &FourVector, v: &LoopVectors, m: f64) -> CMatrix {
    let c = ctx(*v);
    let pm = c.sl(p) + crate::tensor_core::identity(4) * c64(m, 0.0);
    let id = c.d() * c64(0.0, 1.0);
    mul_all(&[
        pm.clone(),
        c.b(),
        c.g5.clone(),
        pm.clone(),
        c.a1(),
        pm.clone(),
        id,
        pm,
        c.a2(),
    ])
}

/// Reduced eight-term integrand at a fixed loop momentum.
pub fn reduced_sum(p: &FourVector, v: &LoopVectors, m: f64) -> CMatrix {
    let c = ctx(*v);
    let mut acc = CMatrix::zeros(4, 4);
    for s in summands() {
        let slots = vec![*p; s.slots];
        acc += (s.build)(&c, &slots) * c64(0.0, s.coeff as f64 * m.powi(s.mass_power));
    }
    acc
}

/// Trace deviation between the unreduced and reduced integrands.
///
/// Only the trace is compared: the reduction drops products with an odd number of
/// gamma matrices, whose traces vanish, and uses trace cyclicity.
pub fn trace_reduction_check(
    p: &FourVector,
    b: &FourVector,
    a1: &FourVector,
    a2: &FourVector,
    dpartial: &FourVector,
    m: f64,
) -> f64 {
    let v = LoopVectors {
        b: *b,
        a1: *a1,
        a2: *a2,
        dpartial: *dpartial,
    };
    let lhs = unreduced_product(p, &v, m).trace();
    let rhs = reduced_sum(p, &v, m).trace();
    (lhs - rhs).norm()
}

/// One line of the 3+1D divergence ledger.
#[derive(Debug, Clone)]
pub struct LedgerEntry {
    pub label: &'static str,
    /// Integral of the table used for this summand.
    pub integral: IntegralKind,
    /// Coefficient of `eps^{mu nu rho sigma} b_mu A_nu d_rho A_sigma` in the action, in units of `e^2/pi^2`.
    pub coefficient: LaurentSeries,
}

/// The 3+1D ledger: per-term entries, the summed pole and the finite total.
#[derive(Debug, Clone)]
pub struct CsLedger {
    pub per_term: Vec<LedgerEntry>,
    pub pole_sum: Q,
    pub block_sum: Q,
    pub finite_total: CsCoefficient,
}

/// Unit vector `e_mu` in contravariant components.
fn unit(mu: usize) -> FourVector {
    let mut v = [0.0; 4];
    v[mu] = 1.0;
    FourVector(v)
}

/// Vector with covariant components `delta_{mu, index}`.
fn covariant_unit(index: usize) -> FourVector {
    let mut v = [0.0; 4];
    v[index] = metric_sign(index);
    FourVector(v)
}

/// Sum over the symmetric-integration pairings of the slots of
/// `metric_sign * tr(F)/i`, with the external vectors set to covariant unit vectors
/// so that `eps^{mu nu rho sigma} b_mu A_nu d_rho A_sigma = 1`.
fn contracted_trace(c: &Ctx, s: &Summand) -> LvResult<i64> {
    let pairings: Vec<Vec<(usize, usize)>> = match s.slots {
        0 => vec![vec![]],
        2 => vec![vec![(0, 1)]],
        4 => vec![
            vec![(0, 1), (2, 3)],
            vec![(0, 2), (1, 3)],
            vec![(0, 3), (1, 2)],
        ],
        n => {
            return Err(LvError::UnsupportedIntegral(format!(
                "{n} momentum insertions"
            )));
        }
    };
    let mut total = 0i64;
    for pairing in &pairings {
        let npairs = pairing.len();
        for idx in 0..4usize.pow(npairs as u32) {
            let mut slots = vec![FourVector::ZERO; s.slots];
            let mut weight = 1.0;
            let mut rest = idx;
            for &(x, y) in pairing {
                let mu = rest % 4;
                rest /= 4;
                slots[x] = unit(mu);
                slots[y] = unit(mu);
                weight *= metric_sign(mu);
            }
            total += weight as i64 * trace_over_i(&(s.build)(c, &slots))?;
        }
    }
    Ok(total)
}

/// Induced 3+1D Chern–Simons ledger in dimensional regularisation.
///
/// Each summand `i c m^k F(p..p) / (p^2 - m^2)^4` is integrated with the table entry
/// for its number of momentum insertions, contracted by symmetric integration and traced
/// exactly. With the action prefactor `-i e^2 / 2` the contribution to the coefficient
/// of `eps b A d A` is `-(1/2) c T L` in units of `e^2/pi^2`, where `T` is the
/// contracted trace divided by `i` and `L` the table entry in units of `i/pi^2`.
pub fn cs_ledger_4d() -> LvResult<CsLedger> {
    let c = ctx(LoopVectors {
        b: covariant_unit(0),
        a1: covariant_unit(1),
        dpartial: covariant_unit(2),
        a2: covariant_unit(3),
    });
    let mut per_term = Vec::new();
    let mut total = LaurentSeries::zero();
    for s in summands() {
        let kind = match s.slots {
            0 => IntegralKind::Scalar,
            2 => IntegralKind::TwoP,
            _ => IntegralKind::FourP,
        };
        let l = table_entry(kind, 4)?.times_mass_power(s.mass_power);
        let t = contracted_trace(&c, &s)?;
        let coefficient = l.scale(-q(1, 2) * Q::from(s.coeff) * Q::from(t));
        if coefficient.mass_power != 0 && !coefficient.is_zero() {
            return Err(LvError::InvalidParameter(format!(
                "term {} keeps a mass power {}",
                s.label, coefficient.mass_power
            )));
        }
        let coefficient = LaurentSeries {
            mass_power: 0,
            ..coefficient
        };
        total = total.checked_add(&coefficient)?;
        per_term.push(LedgerEntry {
            label: s.label,
            integral: kind,
            coefficient,
        });
    }
    Ok(CsLedger {
        per_term,
        pole_sum: total.pole(),
        block_sum: total.block,
        finite_total: CsCoefficient {
            rational: total.pure_finite,
            unit: CsUnit::E2OverPi2,
        },
    })
}

/// Symmetric-integration contraction of a multilinear matrix function of `n` momentum slots.
///
/// `n = 0` evaluates once, `n = 2` replaces `p^a p^b` by `g^{ab}` and `n = 4` by the sum of
/// the three metric pairings.
fn contract_slots<F>(n: usize, mut f: F) -> LvResult<CMatrix>
where
    F: FnMut(&[FourVector]) -> CMatrix,
{
    let pairings: Vec<Vec<(usize, usize)>> = match n {
        0 => vec![vec![]],
        2 => vec![vec![(0, 1)]],
        4 => vec![
            vec![(0, 1), (2, 3)],
            vec![(0, 2), (1, 3)],
            vec![(0, 3), (1, 2)],
        ],
        _ => {
            return Err(LvError::UnsupportedIntegral(format!(
                "{n} momentum insertions"
            )));
        }
    };
    let mut total = CMatrix::zeros(4, 4);
    for pairing in &pairings {
        for idx in 0..4usize.pow(pairing.len() as u32) {
            let mut slots = vec![FourVector::ZERO; n];
            let mut weight = 1.0;
            let mut rest = idx;
            for &(x, y) in pairing {
                let mu = rest % 4;
                rest /= 4;
                slots[x] = unit(mu);
                slots[y] = unit(mu);
                weight *= metric_sign(mu);
            }
            total += f(&slots) * c64(weight, 0.0);
        }
    }
    Ok(total)
}

/// Traces of the unreduced and reduced integrands after symmetric integration,
/// split by the number of momentum insertions (0, 2 and 4).
///
/// The three entries are the coefficients multiplying the scalar, two-index and
/// four-index table integrals respectively, with `m` factored in.
#[derive(Debug, Clone, Copy)]
pub struct IntegratedTraces {
    pub unreduced: [Complex64; 3],
    pub reduced: [Complex64; 3],
}

impl IntegratedTraces {
    pub fn max_deviation(&self) -> f64 {
        self.unreduced
            .iter()
            .zip(&self.reduced)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Exact total obtained from the unreduced integrand, in units of `e^2/pi^2`.
///
/// Uses the same table entries and contraction as [`cs_ledger_4d`] but skips the
/// eight-term reduction, so it measures what the reduction changes.
pub fn cs_total_unreduced_4d() -> LvResult<LaurentSeries> {
    let v = LoopVectors {
        b: covariant_unit(0),
        a1: covariant_unit(1),
        dpartial: covariant_unit(2),
        a2: covariant_unit(3),
    };
    let traces = integrated_reduction_check(&v, 1.0)?.unreduced;
    let mut total = LaurentSeries::zero();
    for (deg, t) in traces.iter().enumerate() {
        let kind = [
            IntegralKind::Scalar,
            IntegralKind::TwoP,
            IntegralKind::FourP,
        ][deg];
        let k = t.re.round();
        if t.im.abs() > 1e-9 || (t.re - k).abs() > 1e-9 {
            return Err(LvError::InvalidParameter(format!(
                "contracted trace {t} is not an integer"
            )));
        }
        // The mass factor m^(4 - 2 deg) cancels the table entry's mass power.
        let l = table_entry(kind, 4)?.times_mass_power(4 - 2 * deg as i32);
        let term = l.scale(q(k as i64, 2));
        total = total.checked_add(&LaurentSeries {
            mass_power: 0,
            ..term
        })?;
    }
    Ok(total)
}

/// Compare both integrands after symmetric integration over the loop momentum.
pub fn integrated_reduction_check(v: &LoopVectors, m: f64) -> LvResult<IntegratedTraces> {
    let c = ctx(*v);
    let mut unreduced = [Complex64::new(0.0, 0.0); 3];
    let mut reduced = [Complex64::new(0.0, 0.0); 3];
    let id = c.d() * c64(0.0, 1.0);
    let mass = crate::tensor_core::identity(4) * c64(m, 0.0);
    // Each of the four (p + m) factors is either a momentum slot or the mass term.
    for mask in 0u32..16 {
        let n = mask.count_ones() as usize;
        if n % 2 == 1 {
            continue;
        }
        let m_acc = contract_slots(n, |slots| {
            let mut next = 0;
            let mut factor = |bit: u32| {
                if mask & (1 << bit) != 0 {
                    next += 1;
                    c.sl(&slots[next - 1])
                } else {
                    mass.clone()
                }
            };
            let f0 = factor(0);
            let f1 = factor(1);
            let f2 = factor(2);
            let f3 = factor(3);
            mul_all(&[
                f0,
                c.b(),
                c.g5.clone(),
                f1,
                c.a1(),
                f2,
                id.clone(),
                f3,
                c.a2(),
            ])
        })?;
        unreduced[n / 2] += m_acc.trace();
    }
    for s in summands() {
        let acc = contract_slots(s.slots, |slots| (s.build)(&c, slots))?;
        reduced[s.slots / 2] += acc.trace() * c64(0.0, s.coeff as f64 * m.powi(s.mass_power));
    }
    Ok(IntegratedTraces { unreduced, reduced })
}
