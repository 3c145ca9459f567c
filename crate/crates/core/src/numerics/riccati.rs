//! Riccati form of the Schrödinger equation for log-derivative transport.
//!
//! m(x) = φ′/φ satisfies m′ = (V − λ) − m². Poles of m (zeros of φ) are
//! traversed by switching to the inverse variable w = 1/m, which satisfies
//! w′ = 1 − (V − λ)w². The switch is hysteretic: to w when |m| > 10, back
//! when |w| > 10.

use super::{Rk45, Tolerances};
use crate::error::{Error, Result};
use crate::potentials::Potential;
use num_complex::Complex64;

const SWITCH_MAGNITUDE: f64 = 10.0;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rep {
    Direct,
    Inverse,
}

/// Transport the log-derivative m = φ′/φ from `x_from` (where it equals
/// `m_init`) to `x_to`. Poles of m along the way are crossed via the
/// inverse representation, so the result is finite unless m itself has a
/// pole exactly at `x_to` (the returned magnitude is then merely huge and
/// it is the caller's business to flag it).
pub fn integrate_riccati(
    potential: &Potential,
    lambda: Complex64,
    x_from: f64,
    x_to: f64,
    m_init: Complex64,
    tol: &Tolerances,
) -> Result<Complex64> {
    if x_from == x_to {
        return Err(Error::InvalidInput("riccati range is degenerate".into()));
    }
    let mut rep = if m_init.norm() > SWITCH_MAGNITUDE { Rep::Inverse } else { Rep::Direct };
    let mut state = match rep {
        Rep::Direct => m_init,
        Rep::Inverse => m_init.inv(),
    };
    let mut x = x_from;
    let mut steps_used = 0usize;

    while x != x_to {
        let rhs = |t: f64, y: &[Complex64; 1]| -> Result<[Complex64; 1]> {
            let v = potential.eval(t)?;
            let q = v - lambda;
            Ok(match rep {
                Rep::Direct => [q - y[0] * y[0]],
                Rep::Inverse => [Complex64::new(1.0, 0.0) - q * y[0] * y[0]],
            })
        };
        let mut stepper = Rk45::new(rhs, x, x_to, [state], tol)?;
        stepper.charge_steps(steps_used);
        loop {
            stepper.step_toward(x_to)?;
            let mag = stepper.y[0].norm();
            if mag > SWITCH_MAGNITUDE || stepper.done() {
                x = stepper.x;
                state = stepper.y[0];
                steps_used = stepper.steps;
                break;
            }
        }
        if x != x_to {
            // Switch representation and continue from the same point.
            state = state.inv();
            rep = match rep {
                Rep::Direct => Rep::Inverse,
                Rep::Inverse => Rep::Direct,
            };
        }
    }

    let m = match rep {
        Rep::Direct => state,
        Rep::Inverse => state.inv(),
    };
    if !(m.re.is_finite() && m.im.is_finite()) {
        return Err(Error::NonFinite("integrate_riccati".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Potential;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn free_fixed_point_real() {
        // V ≡ 0, λ = −1: m ≡ −1 solves m′ = −1 − m² ... = 1 - 1 = 0.
        let m = integrate_riccati(
            &Potential::free(),
            c(-1.0, 0.0),
            10.0,
            0.0,
            c(-1.0, 0.0),
            &Tolerances::default(),
        )
        .unwrap();
        assert!((m - c(-1.0, 0.0)).norm() < 1e-10, "m = {m}");
    }

    #[test]
    fn free_fixed_point_complex() {
        // V ≡ 0, λ = i: m = −√(−i) (principal, Re√ > 0) is a fixed point.
        let root = c(0.0, -1.0).sqrt();
        assert!(root.re > 0.0);
        let m0 = -root;
        let m = integrate_riccati(&Potential::free(), c(0.0, 1.0), 20.0, 0.0, m0, &Tolerances::default())
            .unwrap();
        assert!((m - m0).norm() <= 1e-9, "m = {m}, expected {m0}");
    }

    #[test]
    fn poschl_teller_bound_state_log_derivative() {
        // ℓ = 1, λ = −1: the decaying solution is sech x, so m(25) ≈ −1
        // and m(0) = 0.
        let pot = Potential::poschl_teller(1).unwrap();
        let m = integrate_riccati(&pot, c(-1.0, 0.0), 25.0, 0.0, c(-1.0, 0.0), &Tolerances::default())
            .unwrap();
        assert!(m.norm() < 1e-8, "m(0) = {m}");
    }

    #[test]
    fn crosses_poles_of_m() {
        // Harmonic, E = 5: φ oscillates between the turning points, so m has
        // poles on the way in. Compare against the direct ratio at the end.
        let pot = Potential::harmonic();
        let lambda = c(5.0, 0.0);
        let x0 = 16.0;
        let m0 = -(c(x0 * x0 / 4.0, 0.0) - lambda).sqrt();
        let tol = Tolerances::default();
        let m = integrate_riccati(&pot, lambda, x0, 2.0, m0, &tol).unwrap();

        let path = crate::numerics::integrate_schrodinger(&pot, lambda, x0, 2.0, (c(1.0, 0.0), m0), &tol)
            .unwrap();
        let (_, phi, dphi) = path.last();
        let ratio = dphi / phi;
        assert!((m - ratio).norm() < 1e-6 * (1.0 + ratio.norm()), "m = {m}, ratio = {ratio}");
    }
}
