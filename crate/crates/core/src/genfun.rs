//! Generating functions of `p_n`, `q_n` and the classical polynomials, and
//! the residual probes for the identities that tie them together.
//!
//! * `G_x(t) = Σ p_n(x) tⁿ` in closed form ([`gf_closed`], [`gf_closed_alt`])
//!   and as a truncated series ([`gf_series`]);
//! * the exponential generating function `G̃_x(t) = Σ q_n(x) tⁿ/n!`
//!   ([`egf_closed`]);
//! * the classical `g(t) = exp(2y·arctan t)/√(1+t²)` ([`classical_gf`]).

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::coeffs::taylor_coefficients_circle;
use crate::error::{Error, Result};
use crate::polynomials::{assoc_mp_sequence, real_part_checked};
use crate::special::{check_finite, gauss_2f1, SeriesControl};

/// Below this `|t|` the closed form of `G_x` (two cancelling `1/t` poles) is
/// replaced by its Taylor series.
pub const SMALL_T: f64 = 1e-3;

/// Largest `|t|` accepted by [`egf_closed`]; keeps the `2F1` argument
/// `1/2 + it/(2√2)` at modulus ≤ 0.71.
pub const EGF_MAX_T: f64 = 1.4;

const SMALL_T_TERMS: usize = 40;

/// Smallest `|t (√2x − t)|` accepted by [`gf_relation_residual`].
pub const RELATION_POLE_GUARD: f64 = 1e-8;

/// A point `(x, t)` with `|t| < 1` where `G_x(t)` converges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GFPoint {
    x: f64,
    t: f64,
}

impl GFPoint {
    pub fn new(x: f64, t: f64) -> Result<Self> {
        if !x.is_finite() || !(t.abs() < 1.0) {
            return Err(Error::DomainViolation(format!(
                "generating function needs finite x and |t| < 1, got x = {x}, t = {t}"
            )));
        }
        Ok(Self { x, t })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `c = (3 + i√2x)/2`.
fn upper_c(x: f64) -> Complex64 {
    Complex64::new(1.5, x / SQRT_2)
}

/// `2F1(1, 1; (3+i√2x)/2; 1/2)`, the constant shared by most closed forms.
pub fn base_2f1(x: f64, ctrl: &SeriesControl) -> Result<Complex64> {
    gauss_2f1(one(), one(), upper_c(x), Complex64::new(0.5, 0.0), ctrl)
}

/// `exp(√2x·arctan t)/(t√(t²+1))` times the base constant over `(√2x − i)`:
/// the classical-polynomial part shared by both closed forms of `G_x`.
fn classical_part(x: f64, t: f64, base: Complex64) -> Complex64 {
    let g = (SQRT_2 * x * t.atan()).exp() / (t * (t * t + 1.0).sqrt());
    base / Complex64::new(SQRT_2 * x, -1.0) * g
}

/// `Σ_{n < n_terms} p_n(x) tⁿ`.
pub fn gf_series(x: f64, t: f64, n_terms: usize) -> f64 {
    if n_terms == 0 {
        return 0.0;
    }
    let p = assoc_mp_sequence(n_terms - 1, x);
    // Horner from the top
    p.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// Termwise derivative `Σ n p_n(x) t^{n−1}` of the truncated series.
pub fn gf_series_derivative(x: f64, t: f64, n_terms: usize) -> f64 {
    if n_terms < 2 {
        return 0.0;
    }
    let p = assoc_mp_sequence(n_terms - 1, x);
    p.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (n, c)| acc * t + n as f64 * c)
}

/// Closed form of `G_x(t)`:
///
/// ```text
/// 2F1(1,1;c;(1+it)/2) / (t(i − √2x)) + 2F1(1,1;c;1/2)/(√2x − i) · e^{√2x·arctan t}/(t√(t²+1))
/// ```
///
/// with `c = (3+i√2x)/2`.
pub fn gf_closed(p: GFPoint, ctrl: &SeriesControl) -> Result<f64> {
    let (x, t) = (p.x, p.t);
    if t.abs() < SMALL_T {
        return Ok(gf_series(x, t, SMALL_T_TERMS));
    }
    let arg = Complex64::new(0.5, 0.5 * t);
    let moving = gauss_2f1(one(), one(), upper_c(x), arg, ctrl)?;
    let first = moving / (Complex64::new(-SQRT_2 * x, 1.0) * t);
    let second = classical_part(x, t, base_2f1(x, ctrl)?);
    real_part_checked(first + second, "G_x(t)")
}

/// The intermediate closed form of `G_x(t)` carrying the `2F1(2,2;·)` term:
///
/// ```text
/// −1/(t(√2x − t)) + (t²+1) 2F1(2,2;c+1;(1+it)/2) / (t(√2x − t)(1+i√2x)(3+i√2x)) + classical part
/// ```
///
/// It has an extra removable singularity at `t = √2x`; that point is
/// rejected with [`Error::PoleInput`].
pub fn gf_closed_alt(p: GFPoint, ctrl: &SeriesControl) -> Result<f64> {
    let (x, t) = (p.x, p.t);
    if t.abs() < SMALL_T {
        return Ok(gf_series(x, t, SMALL_T_TERMS));
    }
    let gap = SQRT_2 * x - t;
    if (t * gap).abs() < RELATION_POLE_GUARD {
        return Err(Error::PoleInput(format!("t = √2x at x = {x}")));
    }
    let arg = Complex64::new(0.5, 0.5 * t);
    let two = Complex64::new(2.0, 0.0);
    let f22 = gauss_2f1(two, two, upper_c(x) + 1.0, arg, ctrl)?;
    let denom = Complex64::new(1.0, SQRT_2 * x) * Complex64::new(3.0, SQRT_2 * x) * (t * gap);
    let value = -one() / (t * gap) + (t * t + 1.0) * f22 / denom + classical_part(x, t, base_2f1(x, ctrl)?);
    real_part_checked(value, "G_x(t) (2F1(2,2) form)")
}

/// Exponential generating function of the monic polynomials,
///
/// ```text
/// G̃_x(t) = 2F1(2,2;(5+i√2x)/2; 1/2 + it/(2√2)) / ((1+i√2x)(3+i√2x))
///        + 2F1(1,1;(3+i√2x)/2;1/2) (4x − 2t) e^{√2x·arctan(t/√2)} / ((√2x − i)(t²+2)^{3/2})
/// ```
pub fn egf_closed(x: f64, t: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !x.is_finite() || !(t.abs() <= EGF_MAX_T) {
        return Err(Error::DomainViolation(format!(
            "exponential generating function needs |t| <= {EGF_MAX_T}, got {t}"
        )));
    }
    let sx = SQRT_2 * x;
    let two = Complex64::new(2.0, 0.0);
    let arg = Complex64::new(0.5, t / (2.0 * SQRT_2));
    let f22 = gauss_2f1(two, two, Complex64::new(2.5, 0.5 * sx), arg, ctrl)?;
    let first = f22 / (Complex64::new(1.0, sx) * Complex64::new(3.0, sx));
    let growth = (4.0 * x - 2.0 * t) * (sx * (t / SQRT_2).atan()).exp() / (t * t + 2.0).powf(1.5);
    let second = base_2f1(x, ctrl)? / Complex64::new(sx, -1.0) * growth;
    real_part_checked(first + second, "exponential generating function")
}

/// `Σ_{n < n_terms} q_n(x) tⁿ/n!`, with `r_n = q_n/n!` advanced directly so
/// nothing overflows.
pub fn egf_series(x: f64, t: f64, n_terms: usize) -> f64 {
    if n_terms == 0 {
        return 0.0;
    }
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum = 0.0;
    let mut tp = 1.0;
    for n in 0..n_terms {
        sum += cur * tp;
        tp *= t;
        let nf = n as f64;
        let next = if n == 0 {
            x * cur
        } else {
            x * cur / (nf + 1.0) - (nf + 1.0) * prev / (2.0 * nf)
        };
        prev = cur;
        cur = next;
    }
    sum
}

/// `|G_x(t) − [(t²+1)/(√2xt − t²) G̃_x(√2t) + 1/(t² − √2xt)]|`.
pub fn gf_relation_residual(x: f64, t: f64) -> Result<f64> {
    if !(t != 0.0 && t.abs() < 0.7) {
        return Err(Error::DomainViolation(format!("relation checked for 0 < |t| < 0.7, got {t}")));
    }
    let gap = SQRT_2 * x * t - t * t;
    if gap.abs() < RELATION_POLE_GUARD {
        return Err(Error::PoleInput(format!("t = √2x at x = {x}")));
    }
    let ctrl = SeriesControl::default();
    let lhs = gf_closed(GFPoint::new(x, t)?, &ctrl)?;
    let rhs = (t * t + 1.0) / gap * egf_closed(x, SQRT_2 * t, &ctrl)? - 1.0 / gap;
    Ok((lhs - rhs).abs())
}

/// Residual of `(t³+t)G′ + (2t² − √2xt + 1)G − 1 = 0` for the truncated
/// series and its termwise derivative. The truncation leaves a remainder of
/// order `n_terms·|p_N|·|t|^N`, so `n_terms` must grow as `|t| → 1`.
pub fn gf_ode_residual(x: f64, t: f64, n_terms: usize) -> Result<f64> {
    if !(t.abs() < 1.0) {
        return Err(Error::DomainViolation(format!("ODE residual needs |t| < 1, got {t}")));
    }
    let g = gf_series(x, t, n_terms);
    let dg = gf_series_derivative(x, t, n_terms);
    Ok(((t * t * t + t) * dg + (2.0 * t * t - SQRT_2 * x * t + 1.0) * g - 1.0).abs())
}

/// `G_0(t) = Log(t + √(t²+1)) / (t√(t²+1))`, with value 1 at `t = 0`.
pub fn gf_at_zero_closed(t: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    t.asinh() / (t * (t * t + 1.0).sqrt())
}

/// Right-hand side `3/(t²+1) [t/√(t²+1) (iπ/2 − Log(t+√(t²+1))) + 1]`.
pub fn critical_line_rhs(t: f64) -> Complex64 {
    let s = (t * t + 1.0).sqrt();
    let log = (t + s).ln();
    let inner = Complex64::new(-log, 0.5 * PI) * (t / s) + 1.0;
    inner * (3.0 / (t * t + 1.0))
}

/// `|2F1(2, 2; 5/2; (1+it)/2) − RHS|` for the principal-branch right-hand
/// side [`critical_line_rhs`].
pub fn critical_line_residual(t: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !(t.abs() < 1.0) {
        return Err(Error::DomainViolation(format!("identity holds for |t| < 1, got {t}")));
    }
    let two = Complex64::new(2.0, 0.0);
    let lhs = gauss_2f1(two, two, Complex64::new(2.5, 0.0), Complex64::new(0.5, 0.5 * t), ctrl)?;
    Ok((lhs - critical_line_rhs(t)).norm())
}

/// `2F1(2, 2; 5/2; ξ) = 3/(4ξ(1−ξ)) [1 − (1−2ξ)/√(ξ(1−ξ)) · arcsin √ξ]` for
/// `0 < ξ < 1`.
pub fn closed_2f1_two_two(xi: f64) -> Result<f64> {
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::DomainViolation(format!("closed form valid for 0 < xi < 1, got {xi}")));
    }
    let q = xi * (1.0 - xi);
    Ok(3.0 / (4.0 * q) * (1.0 - (1.0 - 2.0 * xi) / q.sqrt() * xi.sqrt().asin()))
}

/// `e^{2y·arctan t}/√(1+t²) = Σ P_n^{(1/2)}(y; π/2) tⁿ`.
pub fn classical_gf(y: f64, t: f64) -> f64 {
    (2.0 * y * t.atan()).exp() / (1.0 + t * t).sqrt()
}

/// `G_x(t)` for complex `t` with `0 < |t| < 1`, the analytic continuation of
/// [`gf_closed`] off the real axis.
pub fn gf_closed_complex(x: f64, t: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    if !(t.norm() > 0.0 && t.norm() < 1.0) {
        return Err(Error::DomainViolation(format!("complex G_x needs 0 < |t| < 1, got {}", t.norm())));
    }
    let i = Complex64::new(0.0, 1.0);
    let moving = gauss_2f1(one(), one(), upper_c(x), (1.0 + i * t) * 0.5, ctrl)?;
    let first = moving / (Complex64::new(-SQRT_2 * x, 1.0) * t);
    let g = (SQRT_2 * x * t.atan()).exp() / (t * (t * t + 1.0).sqrt());
    let second = base_2f1(x, ctrl)? / Complex64::new(SQRT_2 * x, -1.0) * g;
    check_finite(first + second, "G_x(t)")
}

/// Taylor coefficients `p_0(x), …, p_{n_max}(x)` recovered numerically from
/// the closed form of `G_x`, sampled on the circle `|t| = 1/2`.
pub fn gf_taylor_coefficients(x: f64, n_max: usize, ctrl: &SeriesControl) -> Result<Vec<f64>> {
    let a = taylor_coefficients_circle(|t| gf_closed_complex(x, t, ctrl), 0.5, 64, n_max + 1)?;
    Ok(a.iter().map(|c| c.re).collect())
}
