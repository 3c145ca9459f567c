//! Bracketed scalar root finding (Brent) and grid scanning helpers.

use super::Tolerances;
use crate::error::{Error, Result};

/// Outcome of a bracketed root search. `f_root` is the residual at the
/// returned point; callers that root-find possibly discontinuous functions
/// must check it before trusting `root`.
#[derive(Debug, Clone, Copy)]
pub struct RootResult {
    pub root: f64,
    pub f_root: f64,
    pub bracket_width: f64,
    pub iterations: usize,
}

/// Brent's method: inverse quadratic interpolation and secant steps,
/// safeguarded by bisection. Requires a sign change on [lo, hi]; converges
/// to bracket width ≤ tol.abs + tol.rel·|root|.
pub fn find_root_bracketed(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    tol: &Tolerances,
) -> Result<RootResult> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(RootResult { root: a, f_root: 0.0, bracket_width: 0.0, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(RootResult { root: b, f_root: 0.0, bracket_width: 0.0, iterations: 0 });
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NoSignChange { lo, hi, f_lo: fa, f_hi: fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    let max_iter = tol.max_steps.min(200);

    for iter in 1..=max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * (tol.abs + tol.rel * b.abs());
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(RootResult {
                root: b,
                f_root: fb,
                bracket_width: (c - b).abs(),
                iterations: iter,
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt inverse quadratic interpolation / secant.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1 * xm.signum() };
        fb = f(b)?;
        if !fb.is_finite() {
            return Err(Error::NonFinite("find_root_bracketed".into()));
        }
    }
    Err(Error::StepLimitExceeded { steps: max_iter, x: b })
}

/// Every adjacent grid pair with a strict sign change of `f`. Non-finite
/// values split the scan and never participate in a bracket.
pub fn scan_sign_changes(f: &mut dyn FnMut(f64) -> f64, grid: &[f64]) -> Vec<(f64, f64)> {
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    sign_change_brackets(grid, &values)
}

/// Bracket extraction from precomputed values (same contract as
/// [`scan_sign_changes`]).
pub fn sign_change_brackets(grid: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    if grid.len() < 2 || grid.len() != values.len() {
        return out;
    }
    for i in 1..grid.len() {
        let (fl, fr) = (values[i - 1], values[i]);
        if fl.is_finite() && fr.is_finite() && fl != 0.0 && fr != 0.0 && fl.signum() != fr.signum() {
            out.push((grid[i - 1], grid[i]));
        }
    }
    out
}

/// Golden-section minimization of `f` on [lo, hi]. Returns (argmin, min).
pub fn minimize_bracketed(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let max_iter = tol.max_steps.min(200);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol.abs + tol.rel * (a.abs() + b.abs()) * 0.5 {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}
