//! The decaying Weber-equation solution U(−E, x) with φ″ = (x²/4 − E)φ,
//! computed by inward integration from an asymptotic-series seed, plus the
//! Lanczos Gamma approximation used by the Wronskian identity checks.

use crate::error::{Error, Result};
use crate::numerics::{Rk45, Tolerances};
use num_complex::Complex64;

/// Largest |E| for which the seeding rule X₀ = max(12, 2√|E|+10) keeps the
/// asymptotic series usable.
pub const PARABOLIC_E_WINDOW: f64 = 50.0;

/// Asymptotic value and derivative of the decaying solution at large z > 0:
/// U = e^{−z²/4} z^{E−1/2} S(z) with S an inverse-square series summed to
/// its smallest term.
fn series_seed(e: Complex64, z: f64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    let mut sp = Complex64::new(0.0, 0.0);
    let mut term = one;
    let mut best = f64::INFINITY;
    let zz2 = 2.0 * z * z;
    for k in 0..60usize {
        s += term;
        sp += term * (-2.0 * k as f64) / z;
        // next term ratio: −(½−E+2k)(½−E+2k+1) / ((k+1)·2z²)
        let a = Complex64::new(0.5 + 2.0 * k as f64, 0.0) - e;
        let next = term * -(a * (a + one)) / ((k as f64 + 1.0) * zz2);
        let mag = next.norm();
        if mag < 1e-18 * s.norm().max(1.0) {
            break;
        }
        if mag > best {
            break; // divergence onset: stop at the smallest term
        }
        best = mag;
        term = next;
    }
    let amp = (-z * z / 4.0).exp();
    let power = Complex64::new(z, 0.0).powc(e - 0.5);
    let u = amp * power * s;
    let log_deriv = Complex64::new(-z / 2.0, 0.0) + (e - 0.5) / z + sp / s;
    (u, u * log_deriv)
}

/// Value and derivative of the solution of φ″ = (x²/4 − E)φ that decays as
/// x → +∞, normalized to e^{−x²/4} x^{E−1/2} (1 + O(1/x²)). Real E is the
/// physically relevant case; the machinery is complex throughout.
pub fn parabolic_cylinder_u(e: Complex64, x: f64, tol: &Tolerances) -> Result<(Complex64, Complex64)> {
    if !(e.re.is_finite() && e.im.is_finite() && x.is_finite()) {
        return Err(Error::InvalidInput("parabolic_cylinder_u: non-finite arguments".into()));
    }
    if e.norm() > PARABOLIC_E_WINDOW {
        return Err(Error::InvalidInput(format!(
            "parabolic_cylinder_u: |E| = {:.3} outside the validity window |E| <= {PARABOLIC_E_WINDOW}",
            e.norm()
        )));
    }
    let x0 = (2.0 * e.norm().sqrt() + 10.0).max(12.0);
    if x >= x0 {
        return Ok(series_seed(e, x));
    }
    let (u0, du0) = series_seed(e, x0);
    let rhs = |t: f64, y: &[Complex64; 2]| -> Result<[Complex64; 2]> {
        Ok([y[1], (Complex64::new(t * t / 4.0, 0.0) - e) * y[0]])
    };
    let mut stepper = Rk45::new(rhs, x0, x, [u0, du0], tol)?;
    while !stepper.done() {
        stepper.step_toward(x)?;
    }
    let [u, du] = stepper.y;
    if !(u.re.is_finite() && u.im.is_finite() && du.re.is_finite() && du.im.is_finite()) {
        return Err(Error::NonFinite("parabolic_cylinder_u".into()));
    }
    Ok((u, du))
}

// Lanczos approximation, g = 7, 9 coefficients; |relative error| < 1e-13
// over the range needed here.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real x (poles at non-positive integers return ±∞/NaN naturally
/// through the reflection formula).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x) Γ(1−x) = π / sin(πx).
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn ground_state_parameter_is_exact_gaussian() {
        // U(−½, x) = e^{−x²/4} exactly.
        let tol = Tolerances::default();
        let (u, du) = parabolic_cylinder_u(c(0.5), 1.0, &tol).unwrap();
        assert!((u.re - (-0.25f64).exp()).abs() < 1e-10, "u = {u}");
        assert!((du.re - (-0.5) * (-0.25f64).exp()).abs() < 1e-10);
        let (u0, _) = parabolic_cylinder_u(c(0.5), 0.0, &tol).unwrap();
        assert!((u0.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn matches_independent_reference_values() {
        // Frozen from an mpmath evaluation of U'(−E, x)/U(−E, x).
        let tol = Tolerances::default();
        let (u, du) = parabolic_cylinder_u(c(0.0), 1.0, &tol).unwrap();
        assert!((du.re / u.re - (-0.789_602_386_319_240_1)).abs() < 1e-9);
        let (u, du) = parabolic_cylinder_u(c(0.0), 0.0, &tol).unwrap();
        assert!((du.re / u.re - (-0.477_988_797_486_125)).abs() < 1e-9);
    }

    #[test]
    fn wronskian_of_reflected_pair_at_zero_energy() {
        // W(U(0,·), U(0,−·)) = √(2π)/Γ(½) = √2, independent of x.
        let tol = Tolerances::default();
        for &x in &[0.0, 0.5, 1.0] {
            let (f, fp) = parabolic_cylinder_u(c(0.0), x, &tol).unwrap();
            let (g0, g0p) = parabolic_cylinder_u(c(0.0), -x, &tol).unwrap();
            let w = f * (-g0p) - fp * g0;
            assert!((w.re - std::f64::consts::SQRT_2).abs() < 1e-8, "W({x}) = {w}");
        }
    }

    #[test]
    fn rejects_outside_window() {
        let err = parabolic_cylinder_u(c(80.0), 0.0, &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn gamma_reference_points() {
        assert!((gamma(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!((gamma(0.25) - 3.625_609_908_221_908_3).abs() < 1e-12);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(1.0) - 1.0).abs() < 1e-14);
        // Reflection-formula branch.
        assert!((gamma(-0.5) - (-2.0 * std::f64::consts::PI.sqrt())).abs() < 1e-12);
    }
}
