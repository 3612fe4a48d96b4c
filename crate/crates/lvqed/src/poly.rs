//! Polynomial utilities: evaluation, Taylor shifts, companion-matrix roots,
//! Aberth–Ehrlich refinement and characteristic polynomials.
//!
//! Coefficients are stored in descending order: `c[0] x^n + ... + c[n]`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{LvError, LvResult};
use crate::tensor_core::CMatrix;

/// Horner evaluation at a complex point.
pub fn eval_complex(c: &[f64], x: Complex64) -> Complex64 {
    c.iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &ci| acc * x + ci)
}

/// Horner evaluation at a real point.
pub fn eval_real(c: &[f64], x: f64) -> f64 {
    c.iter().fold(0.0, |acc, &ci| acc * x + ci)
}

/// Coefficients of `q(x) = p(x - s)` given those of `p`.
pub fn taylor_shift(c: &[f64], s: f64) -> Vec<f64> {
    // Repeated synthetic division by (x - (-s)) in ascending form.
    let n = c.len();
    let mut a: Vec<f64> = c.iter().rev().copied().collect();
    let shift = -s;
    for i in 0..n {
        for j in (i..n - 1).rev() {
            a[j] += shift * a[j + 1];
        }
    }
    a.into_iter().rev().collect()
}

/// Roots of a polynomial as eigenvalues of its companion matrix.
pub fn companion_roots(c: &[f64]) -> LvResult<Vec<Complex64>> {
    let lead = *c
        .first()
        .ok_or_else(|| LvError::InvalidParameter("empty polynomial".into()))?;
    if lead == 0.0 {
        return Err(LvError::InvalidParameter(
            "leading coefficient is zero".into(),
        ));
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -c[j + 1] / lead;
    }
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    if let Some(schur) = m.try_schur(f64::EPSILON, SCHUR_MAX_ITER) {
        return Ok(schur.complex_eigenvalues().iter().copied().collect());
    }
    // Shifted QR can stall on symmetric root pairs such as (x^2 - E^2)^2.
    // Start Aberth from points on a circle of the Cauchy radius instead.
    let radius = 1.0 + c[1..].iter().map(|x| (x / lead).abs()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let dc = derivative(c);
    aberth_refine(
        &mut roots,
        |x| (eval_complex(c, x), eval_complex(&dc, x)),
        radius,
        500,
    );
    if roots.iter().all(|z| z.is_finite()) {
        Ok(roots)
    } else {
        Err(LvError::NoConvergence("companion eigenvalues".into()))
    }
}

/// Iteration cap for the Schur decomposition in [`companion_roots`].
const SCHUR_MAX_ITER: usize = 10_000;

/// Coefficients of the derivative, descending order.
fn derivative(c: &[f64]) -> Vec<f64> {
    let n = c.len() - 1;
    c[..n]
        .iter()
        .enumerate()
        .map(|(i, &x)| x * (n - i) as f64)
        .collect()
}

/// Simultaneous Aberth–Ehrlich refinement of all roots.
///
/// `f` returns the polynomial value and its derivative at a point; callers
/// pass a structured evaluation when the expanded coefficients would lose
/// accuracy near clustered roots.
pub fn aberth_refine<F>(roots: &mut [Complex64], f: F, scale: f64, max_iter: usize)
where
    F: Fn(Complex64) -> (Complex64, Complex64),
{
    let n = roots.len();
    let tiny = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    for _ in 0..max_iter {
        let mut biggest = 0.0_f64;
        for k in 0..n {
            let (p, dp) = f(roots[k]);
            if p.norm() == 0.0 {
                continue;
            }
            if dp.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut rep = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = roots[k] - roots[j];
                    if d.norm() > tiny {
                        rep += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * rep;
            let step = if denom.norm() > 1e-300 {
                ratio / denom
            } else {
                ratio
            };
            if step.is_finite() {
                roots[k] -= step;
                biggest = biggest.max(step.norm());
            }
        }
        if biggest <= 4.0 * tiny {
            break;
        }
    }
}

/// Sort complex numbers by real part, then imaginary part.
pub fn sort_by_real(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Characteristic polynomial `det(x 1 - M)` by the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(m: &CMatrix) -> Vec<Complex64> {
    let n = m.nrows();
    let id = CMatrix::identity(n, n);
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    let mut mk = CMatrix::zeros(n, n);
    for k in 1..=n {
        mk = m * &mk + &id * coeffs[k - 1];
        let ck = -(m * &mk).trace() / (k as f64);
        coeffs.push(ck);
    }
    coeffs
}
