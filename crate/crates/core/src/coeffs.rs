//! Numerical Taylor-coefficient extraction at the origin.
//!
//! The function is sampled on the circle `|z| = r`, where the trapezoidal
//! rule applied to Cauchy's integral converges geometrically. Extracting the
//! n-th coefficient loses a factor of about `r^{−n}` to rounding.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;

/// First `n_wanted` Taylor coefficients of an analytic `f` at 0 from
/// `n_points` samples on the circle of the given radius.
pub fn taylor_coefficients_circle<F>(f: F, radius: f64, n_points: usize, n_wanted: usize) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let samples: Vec<Complex64> = (0..n_points)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / n_points as f64;
            f(Complex64::from_polar(radius, theta))
        })
        .collect::<Result<_>>()?;
    Ok((0..n_wanted)
        .map(|n| {
            let s: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    let theta = 2.0 * PI * (j * n) as f64 / n_points as f64;
                    v * Complex64::from_polar(1.0, -theta)
                })
                .sum();
            s / (n_points as f64 * radius.powi(n as i32))
        })
        .collect())
}
