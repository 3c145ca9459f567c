//! Composite quadrature over sampled data and finite-difference helpers.

use crate::error::{Error, Result};
use num_complex::Complex64;

fn validate(xs: &[f64], n_ys: usize) -> Result<bool> {
    if xs.len() != n_ys {
        return Err(Error::LengthMismatch { left: xs.len(), right: n_ys });
    }
    if xs.len() < 2 {
        return Err(Error::InvalidInput("quadrature needs at least 2 nodes".into()));
    }
    let increasing = xs[1] > xs[0];
    for w in xs.windows(2) {
        let ok = if increasing { w[1] > w[0] } else { w[1] < w[0] };
        if !ok {
            return Err(Error::InvalidInput("quadrature abscissae must be strictly monotone".into()));
        }
    }
    Ok(increasing)
}

fn is_uniform(xs: &[f64]) -> bool {
    let h0 = xs[1] - xs[0];
    xs.windows(2).all(|w| ((w[1] - w[0]) - h0).abs() <= 1e-9 * h0.abs())
}

/// ∫ y dx over the sampled grid. Composite Simpson on uniform grids (with a
/// Simpson-3/8 tail when the panel count is odd), trapezoid otherwise.
pub fn quadrature(xs: &[f64], ys: &[Complex64]) -> Result<Complex64> {
    let increasing = validate(xs, ys.len())?;
    let sign = if increasing { 1.0 } else { -1.0 };
    let n = xs.len();

    if n >= 3 && is_uniform(xs) {
        let h = (xs[1] - xs[0]).abs();
        let panels = n - 1;
        let mut acc = Complex64::new(0.0, 0.0);
        let simpson_end = if panels % 2 == 0 { n - 1 } else { n - 4 };
        let mut i = 0;
        while i + 2 <= simpson_end {
            acc += (ys[i] + 4.0 * ys[i + 1] + ys[i + 2]) * (h / 3.0);
            i += 2;
        }
        if panels % 2 != 0 {
            // Simpson 3/8 on the last three panels.
            let m = n - 4;
            acc += (ys[m] + 3.0 * ys[m + 1] + 3.0 * ys[m + 2] + ys[m + 3]) * (3.0 * h / 8.0);
        }
        return Ok(sign * acc);
    }

    let mut acc = Complex64::new(0.0, 0.0);
    for i in 1..n {
        acc += (ys[i - 1] + ys[i]) * (0.5 * (xs[i] - xs[i - 1]));
    }
    Ok(acc)
}

/// Real-valued convenience wrapper around [`quadrature`].
pub fn quadrature_real(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let cys: Vec<Complex64> = ys.iter().map(|&y| Complex64::new(y, 0.0)).collect();
    Ok(quadrature(xs, &cys)?.re)
}

/// Integral of the quadratic through three nodes over [a, b].
fn quadratic_piece(
    x0: f64,
    x1: f64,
    x2: f64,
    y0: Complex64,
    y1: Complex64,
    y2: Complex64,
    a: f64,
    b: f64,
) -> Complex64 {
    // Newton form: p(x) = y0 + c1 (x−x0) + c2 (x−x0)(x−x1).
    let c1 = (y1 - y0) / (x1 - x0);
    let c2 = ((y2 - y1) / (x2 - x1) - c1) / (x2 - x0);
    let d = x1 - x0;
    let term = |t: f64| -> Complex64 {
        let u = t - x0;
        y0 * u + c1 * (u * u / 2.0) + c2 * (u * u * u / 3.0 - d * u * u / 2.0)
    };
    term(b) - term(a)
}

/// Cumulative integral P[i] = ∫_{xs[0]}^{xs[i]} y dx on the sample grid.
/// Each interval uses the average of the quadratics through its two
/// three-point stencils (one-sided at the ends), which keeps the composite
/// rule at Simpson-like accuracy without requiring an even panel count.
pub fn cumulative_integral(xs: &[f64], ys: &[Complex64]) -> Result<Vec<Complex64>> {
    validate(xs, ys.len())?;
    let n = xs.len();
    let mut out = Vec::with_capacity(n);
    out.push(Complex64::new(0.0, 0.0));
    if n == 2 {
        out.push((ys[0] + ys[1]) * (0.5 * (xs[1] - xs[0])));
        return Ok(out);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n - 1 {
        let left = if i == 0 {
            quadratic_piece(xs[0], xs[1], xs[2], ys[0], ys[1], ys[2], xs[0], xs[1])
        } else {
            quadratic_piece(
                xs[i - 1],
                xs[i],
                xs[i + 1],
                ys[i - 1],
                ys[i],
                ys[i + 1],
                xs[i],
                xs[i + 1],
            )
        };
        let right = if i + 2 < n {
            quadratic_piece(xs[i], xs[i + 1], xs[i + 2], ys[i], ys[i + 1], ys[i + 2], xs[i], xs[i + 1])
        } else {
            left
        };
        acc += 0.5 * (left + right);
        out.push(acc);
    }
    Ok(out)
}

/// Second derivative at the interior nodes (xs[1..n−1]). Five-point central
/// differences on uniform grids, the three-point non-uniform formula
/// otherwise; the one-off ends of the five-point case fall back to three
/// points.
pub fn second_derivative(xs: &[f64], ys: &[Complex64]) -> Result<Vec<Complex64>> {
    validate(xs, ys.len())?;
    let n = xs.len();
    if n < 3 {
        return Err(Error::InvalidInput("second difference needs at least 3 nodes".into()));
    }
    let three_point = |i: usize| -> Complex64 {
        let hm = xs[i] - xs[i - 1];
        let hp = xs[i + 1] - xs[i];
        2.0 * (hm * ys[i + 1] - (hm + hp) * ys[i] + hp * ys[i - 1]) / (hm * hp * (hm + hp))
    };
    let uniform = is_uniform(xs);
    let mut out = Vec::with_capacity(n - 2);
    for i in 1..n - 1 {
        if uniform && i >= 2 && i + 2 < n {
            let h2 = (xs[1] - xs[0]) * (xs[1] - xs[0]);
            out.push((-ys[i - 2] + 16.0 * ys[i - 1] - 30.0 * ys[i] + 16.0 * ys[i + 1] - ys[i + 2]) / (12.0 * h2));
        } else {
            out.push(three_point(i));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cvec(ys: &[f64]) -> Vec<Complex64> {
        ys.iter().map(|&y| Complex64::new(y, 0.0)).collect()
    }

    #[test]
    fn constant_integrates_exactly() {
        let xs: Vec<f64> = (0..11).map(|i| i as f64 / 10.0).collect();
        let ys = cvec(&vec![1.0; 11]);
        let q = quadrature(&xs, &ys).unwrap();
        assert!((q.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn linear_integrates_exactly() {
        let xs: Vec<f64> = (0..11).map(|i| i as f64 / 10.0).collect();
        let ys: Vec<Complex64> = xs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let q = quadrature(&xs, &ys).unwrap();
        assert!((q.re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn gaussian_matches_closed_form() {
        let n = 2001;
        let xs: Vec<f64> = (0..n).map(|i| -6.0 + 12.0 * i as f64 / (n - 1) as f64).collect();
        let ys: Vec<Complex64> = xs.iter().map(|&x| Complex64::new((-x * x / 2.0).exp(), 0.0)).collect();
        let q = quadrature(&xs, &ys).unwrap();
        let sqrt_2pi = (2.0 * std::f64::consts::PI).sqrt();
        assert!((q.re - sqrt_2pi).abs() < 1e-8, "q = {}, err = {:e}", q.re, (q.re - sqrt_2pi).abs());
    }

    #[test]
    fn length_mismatch_rejected() {
        let err = quadrature(&[0.0, 1.0], &cvec(&[1.0])).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
    }

    #[test]
    fn even_panel_count_still_accurate() {
        // 12 nodes = 11 panels (odd): Simpson + 3/8 tail, cubic exact.
        let xs: Vec<f64> = (0..12).map(|i| i as f64 / 11.0).collect();
        let ys: Vec<Complex64> = xs.iter().map(|&x| Complex64::new(x * x * x, 0.0)).collect();
        let q = quadrature(&xs, &ys).unwrap();
        assert!((q.re - 0.25).abs() < 1e-13);
    }

    #[test]
    fn cumulative_matches_total() {
        let n = 101;
        let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let ys: Vec<Complex64> = xs.iter().map(|&x| Complex64::new((3.0 * x).sin(), 0.0)).collect();
        let cum = cumulative_integral(&xs, &ys).unwrap();
        let exact = |x: f64| (1.0 - (3.0 * x).cos()) / 3.0;
        for (x, p) in xs.iter().zip(&cum) {
            assert!((p.re - exact(*x)).abs() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn second_derivative_of_quartic() {
        let n = 41;
        let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let ys: Vec<Complex64> = xs.iter().map(|&x| Complex64::new(x.powi(4), 0.0)).collect();
        let dd = second_derivative(&xs, &ys).unwrap();
        for (i, d) in dd.iter().enumerate() {
            let x = xs[i + 1];
            assert!((d.re - 12.0 * x * x).abs() < 1e-6, "x = {x}, dd = {}", d.re);
        }
    }
}
