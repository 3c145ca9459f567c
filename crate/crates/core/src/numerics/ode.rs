//! Embedded Dormand-Prince 5(4) integrator over complex state vectors.
//!
//! The state dimension is a const generic: the Schrödinger equation runs
//! with N = 2 (value and derivative), the Riccati flow with N = 1. Steps
//! are clamped so that requested abscissae (interval endpoints, sample
//! grids) are hit exactly; both integration directions are supported.

use super::{SolutionPath, Tolerances};
use crate::error::{Error, Result};
use crate::potentials::Potential;
use num_complex::Complex64;

// Dormand-Prince tableau.
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
// Fifth-order weights (also the last stage row: FSAL).
const B5: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
// b5 - b4, applied to all seven stages for the embedded error estimate.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const SHRINK_LIMIT: f64 = 0.2;
const GROW_LIMIT: f64 = 5.0;

/// Adaptive stepper. `step_toward` advances one accepted step without
/// overshooting a limit abscissa; the caller drives it to whatever stop
/// points it needs.
pub(crate) struct Rk45<'a, F, const N: usize>
where
    F: FnMut(f64, &[Complex64; N]) -> Result<[Complex64; N]>,
{
    f: F,
    pub x: f64,
    pub y: [Complex64; N],
    h: f64,
    dir: f64,
    x_end: f64,
    tol: &'a Tolerances,
    pub steps: usize,
    k1: Option<[Complex64; N]>,
}

impl<'a, F, const N: usize> Rk45<'a, F, N>
where
    F: FnMut(f64, &[Complex64; N]) -> Result<[Complex64; N]>,
{
    pub fn new(f: F, x_from: f64, x_to: f64, y0: [Complex64; N], tol: &'a Tolerances) -> Result<Self> {
        if !(x_from.is_finite() && x_to.is_finite()) || x_from == x_to {
            return Err(Error::InvalidInput(format!(
                "integration range [{x_from}, {x_to}] must be finite and non-degenerate"
            )));
        }
        let span = x_to - x_from;
        let dir = span.signum();
        let h = dir * (span.abs() * 1e-3).clamp(1e-8, span.abs());
        Ok(Self { f, x: x_from, y: y0, h, dir, x_end: x_to, tol, steps: 0, k1: None })
    }

    pub fn done(&self) -> bool {
        (self.x_end - self.x) * self.dir <= 0.0
    }

    /// Consume the step budget already used elsewhere (the Riccati driver
    /// restarts the stepper when it switches representation).
    pub fn charge_steps(&mut self, used: usize) {
        self.steps = used;
    }

    /// One accepted step, clamped to `x_limit` (which must lie between the
    /// current point and the integration end, inclusive).
    pub fn step_toward(&mut self, x_limit: f64) -> Result<()> {
        let limit = if (x_limit - self.x_end) * self.dir > 0.0 { self.x_end } else { x_limit };
        loop {
            self.steps += 1;
            if self.steps > self.tol.max_steps {
                return Err(Error::StepLimitExceeded { steps: self.steps, x: self.x });
            }

            let remaining = limit - self.x;
            let mut h = self.h;
            let mut clamped = false;
            if h.abs() >= remaining.abs() {
                h = remaining;
                clamped = true;
            }
            if h.abs() < f64::EPSILON * self.x.abs().max(1.0) {
                // Interval too thin to resolve: snap to the limit.
                self.x = limit;
                return Ok(());
            }

            let k1 = match self.k1.take() {
                Some(k) => k,
                None => (self.f)(self.x, &self.y)?,
            };
            let mut stage = |c: f64, a: &[f64], ks: &[&[Complex64; N]]| -> Result<[Complex64; N]> {
                let mut yt = self.y;
                for i in 0..N {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (w, k) in a.iter().zip(ks) {
                        acc += *w * k[i];
                    }
                    yt[i] += h * acc;
                }
                (self.f)(self.x + c * h, &yt)
            };
            let k2 = stage(C[0], &A2, &[&k1])?;
            let k3 = stage(C[1], &A3, &[&k1, &k2])?;
            let k4 = stage(C[2], &A4, &[&k1, &k2, &k3])?;
            let k5 = stage(C[3], &A5, &[&k1, &k2, &k3, &k4])?;
            let k6 = stage(C[4], &A6, &[&k1, &k2, &k3, &k4, &k5])?;

            let ks = [&k1, &k2, &k3, &k4, &k5, &k6];
            let mut y5 = self.y;
            for i in 0..N {
                let mut acc = Complex64::new(0.0, 0.0);
                for (w, k) in B5.iter().zip(&ks) {
                    acc += *w * k[i];
                }
                y5[i] += h * acc;
            }
            let k7 = (self.f)(self.x + h, &y5)?;

            let mut err_sq = 0.0;
            for i in 0..N {
                let mut e = Complex64::new(0.0, 0.0);
                for (w, k) in E.iter().zip(ks.iter().chain(std::iter::once(&&k7))) {
                    e += *w * k[i];
                }
                e *= h;
                let scale = self.tol.abs + self.tol.rel * self.y[i].norm().max(y5[i].norm());
                let r = e.norm() / scale;
                err_sq += r * r;
            }
            let err = (err_sq / N as f64).sqrt();

            if err <= 1.0 {
                self.x = if clamped { limit } else { self.x + h };
                self.y = y5;
                self.k1 = Some(k7);
                let factor = if err == 0.0 {
                    GROW_LIMIT
                } else {
                    (SAFETY * err.powf(-0.2)).clamp(SHRINK_LIMIT, GROW_LIMIT)
                };
                self.h = (h * factor).abs().max(1e-14) * self.dir;
                return Ok(());
            }
            // Rejected: shrink and retry. FSAL stage is only valid after an
            // accepted step.
            self.k1 = Some(k1);
            let factor = (SAFETY * err.powf(-0.2)).clamp(SHRINK_LIMIT, 1.0);
            let new_h = h * factor;
            if new_h.abs() < f64::EPSILON * self.x.abs().max(1.0) {
                return Err(Error::StepLimitExceeded { steps: self.steps, x: self.x });
            }
            self.h = new_h;
        }
    }
}

fn schrodinger_rhs<'p>(
    potential: &'p Potential,
    lambda: Complex64,
) -> impl FnMut(f64, &[Complex64; 2]) -> Result<[Complex64; 2]> + 'p {
    move |x, y| {
        let v = potential.eval(x)?;
        Ok([y[1], (v - lambda) * y[0]])
    }
}

/// Integrate −φ″ + Vφ = λφ from `x_from` to `x_to` with initial data
/// `init = (φ, φ′)` at `x_from`, recording every accepted step. The first
/// and last abscissae of the returned path are exactly `x_from` and `x_to`.
pub fn integrate_schrodinger(
    potential: &Potential,
    lambda: Complex64,
    x_from: f64,
    x_to: f64,
    init: (Complex64, Complex64),
    tol: &Tolerances,
) -> Result<SolutionPath> {
    let mut stepper = Rk45::new(schrodinger_rhs(potential, lambda), x_from, x_to, [init.0, init.1], tol)?;
    let mut xs = vec![x_from];
    let mut phi = vec![init.0];
    let mut dphi = vec![init.1];
    while !stepper.done() {
        stepper.step_toward(x_to)?;
        xs.push(stepper.x);
        phi.push(stepper.y[0]);
        dphi.push(stepper.y[1]);
    }
    check_finite(&phi, &dphi, "integrate_schrodinger")?;
    SolutionPath::new(xs, phi, dphi)
}

/// Like [`integrate_schrodinger`] but records (φ, φ′) exactly at the given
/// sample abscissae and nowhere else. `samples` must be strictly monotone;
/// integration starts at `samples[0]` and ends at the last sample.
pub fn sample_schrodinger(
    potential: &Potential,
    lambda: Complex64,
    init: (Complex64, Complex64),
    samples: &[f64],
    tol: &Tolerances,
) -> Result<SolutionPath> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput("need at least 2 sample points".into()));
    }
    let x_from = samples[0];
    let x_to = *samples.last().unwrap();
    let mut stepper = Rk45::new(schrodinger_rhs(potential, lambda), x_from, x_to, [init.0, init.1], tol)?;
    let mut xs = vec![x_from];
    let mut phi = vec![init.0];
    let mut dphi = vec![init.1];
    for &target in &samples[1..] {
        while (target - stepper.x) * (x_to - x_from).signum() > 0.0 {
            stepper.step_toward(target)?;
        }
        xs.push(target);
        phi.push(stepper.y[0]);
        dphi.push(stepper.y[1]);
    }
    check_finite(&phi, &dphi, "sample_schrodinger")?;
    SolutionPath::new(xs, phi, dphi)
}

fn check_finite(phi: &[Complex64], dphi: &[Complex64], what: &str) -> Result<()> {
    let bad = phi
        .iter()
        .chain(dphi)
        .any(|z| !(z.re.is_finite() && z.im.is_finite()));
    if bad {
        Err(Error::NonFinite(what.into()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Potential;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn free_constant_solution() {
        // V ≡ 0, λ = 0, init (1, 0): φ stays 1.
        let path = integrate_schrodinger(
            &Potential::free(),
            c(0.0, 0.0),
            0.0,
            1.0,
            (c(1.0, 0.0), c(0.0, 0.0)),
            &Tolerances::default(),
        )
        .unwrap();
        let (x, phi, dphi) = path.last();
        assert_eq!(x, 1.0);
        assert!((phi - c(1.0, 0.0)).norm() < 1e-12);
        assert!(dphi.norm() < 1e-12);
    }

    #[test]
    fn free_exponential_solution() {
        // V ≡ 0, λ = −1, init (1, 1): φ = e^x.
        let path = integrate_schrodinger(
            &Potential::free(),
            c(-1.0, 0.0),
            0.0,
            1.0,
            (c(1.0, 0.0), c(1.0, 0.0)),
            &Tolerances::default(),
        )
        .unwrap();
        let (_, phi, dphi) = path.last();
        let e = std::f64::consts::E;
        assert!((phi.re - e).abs() < 1e-9, "phi(1) = {phi}");
        assert!((dphi.re - e).abs() < 1e-9);
        assert!(phi.im.abs() < 1e-14);
    }

    #[test]
    fn harmonic_ground_state() {
        // V = x²/4, λ = 1/2, init (1, 0) at 0: φ = e^{−x²/4}, φ(2) = e^{−1}.
        let path = integrate_schrodinger(
            &Potential::harmonic(),
            c(0.5, 0.0),
            0.0,
            2.0,
            (c(1.0, 0.0), c(0.0, 0.0)),
            &Tolerances::default(),
        )
        .unwrap();
        let (_, phi, _) = path.last();
        assert!((phi.re - (-1.0f64).exp()).abs() < 1e-9, "phi(2) = {phi}");
    }

    #[test]
    fn integrates_backwards() {
        let path = integrate_schrodinger(
            &Potential::free(),
            c(-1.0, 0.0),
            1.0,
            0.0,
            (c(1.0, 0.0), c(1.0, 0.0)),
            &Tolerances::default(),
        )
        .unwrap();
        let (x, phi, _) = path.last();
        assert_eq!(x, 0.0);
        assert!((phi.re - (-1.0f64).exp()).abs() < 1e-9);
        assert!(path.xs().windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn step_limit_enforced() {
        let tol = Tolerances::new(1e-10, 1e-12, 40).unwrap();
        let err = integrate_schrodinger(
            &Potential::harmonic(),
            c(0.0, 0.0),
            0.0,
            50.0,
            (c(1.0, 0.0), c(0.0, 0.0)),
            &tol,
        )
        .unwrap_err();
        assert!(matches!(err, Error::StepLimitExceeded { .. }));
    }

    #[test]
    fn tabulated_domain_error_propagates() {
        let pot = Potential::tabulated(vec![0.0, 1.0], vec![0.0, 0.0]).unwrap();
        let err = integrate_schrodinger(
            &pot,
            c(0.0, 0.0),
            0.0,
            2.0,
            (c(1.0, 0.0), c(0.0, 0.0)),
            &Tolerances::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::PotentialEval { .. }));
    }

    #[test]
    fn sampling_hits_requested_points() {
        let samples: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let path = sample_schrodinger(
            &Potential::free(),
            c(-1.0, 0.0),
            (c(1.0, 0.0), c(1.0, 0.0)),
            &samples,
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(path.xs(), samples.as_slice());
        for (x, phi) in path.xs().iter().zip(path.phi()) {
            assert!((phi.re - x.exp()).abs() < 1e-9);
        }
    }
}
