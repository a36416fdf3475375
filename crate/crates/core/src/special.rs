//! Scalar special functions: Pochhammer symbols, Gauss `2F1`, Kummer `1F1`,
//! Humbert `Ψ1`, the modified Bessel functions `I0`/`K0` and `|Γ(3/2+iy)|²`.
//!
//! All hypergeometric routines are plain power series driven by a
//! [`SeriesControl`]; every argument used by this crate satisfies `|z| ≤ 0.71`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used for every hypergeometric parameter and argument.
pub type ComplexValue = Complex64;

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this `|u|` the power series of `I0` is used; above it the Hankel
/// asymptotic expansion. Both branches agree to < 1e-16 at the crossover.
pub const I0_SERIES_MAX: f64 = 17.0;

/// `K0` uses the logarithmic power series up to this argument.
pub const K0_SERIES_MAX: f64 = 2.0;

/// Above this argument `K0` switches from the integral representation to the
/// asymptotic expansion.
pub const K0_ASYMPTOTIC_MIN: f64 = 17.0;

/// Truncation policy shared by every infinite series in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub max_terms: usize,
}

impl SeriesControl {
    pub fn new(rel_tol: f64, abs_floor: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::DomainViolation(format!(
                "rel_tol must lie in (0, 1), got {rel_tol}"
            )));
        }
        if !(abs_floor >= 0.0) {
            return Err(Error::DomainViolation(format!(
                "abs_floor must be non-negative, got {abs_floor}"
            )));
        }
        if max_terms < 8 {
            return Err(Error::DomainViolation(format!(
                "max_terms must be at least 8, got {max_terms}"
            )));
        }
        Ok(Self {
            rel_tol,
            abs_floor,
            max_terms,
        })
    }

    /// A copy with tolerance tightened by `factor` and the term budget scaled
    /// by `terms_factor`. Used by self-convergence oracles.
    pub fn tightened(&self, factor: f64, terms_factor: usize) -> Self {
        Self {
            rel_tol: self.rel_tol / factor,
            abs_floor: self.abs_floor,
            max_terms: self.max_terms * terms_factor,
        }
    }

    fn small(&self, term: f64, sum: f64) -> bool {
        term <= self.rel_tol * sum + self.abs_floor
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_floor: 1e-300,
            max_terms: 10_000,
        }
    }
}

pub(crate) fn check_finite(v: ComplexValue, what: &'static str) -> Result<ComplexValue> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what))
    }
}

fn is_nonpositive_integer(c: ComplexValue) -> bool {
    c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round()
}

/// Rising factorial `a(a+1)⋯(a+n−1)`; 1 for `n = 0`.
pub fn pochhammer(a: ComplexValue, n: usize) -> ComplexValue {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

/// Gauss hypergeometric series `2F1(a, b; c; z)` for `|z| < 1`.
///
/// The term update multiplies `(a+k)(b+k)` in a fixed order, so swapping
/// `a` and `b` yields bit-identical results.
pub fn gauss_2f1(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    ctrl: &SeriesControl,
) -> Result<ComplexValue> {
    if is_nonpositive_integer(c) {
        return Err(Error::PoleParameter { what: "2F1" });
    }
    if !(z.norm() < 1.0) {
        return Err(Error::DomainViolation(format!(
            "2F1 series requires |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        term = term * ((a + kf) * (b + kf)) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if ctrl.small(term.norm(), sum.norm()) {
            quiet += 1;
            if quiet == 2 {
                return check_finite(sum, "2F1");
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "2F1",
        terms: ctrl.max_terms,
    })
}

/// Kummer confluent series `1F1(a; c; z)`.
pub fn kummer_1f1(
    a: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    ctrl: &SeriesControl,
) -> Result<ComplexValue> {
    if is_nonpositive_integer(c) {
        return Err(Error::PoleParameter { what: "1F1" });
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        term = term * (a + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if ctrl.small(term.norm(), sum.norm()) {
            quiet += 1;
            if quiet == 2 {
                return check_finite(sum, "1F1");
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "1F1",
        terms: ctrl.max_terms,
    })
}

/// Humbert's confluent double series
/// `Ψ1(α, β; γ, γ'; x, y) = Σ (α)_{m+n} (β)_m / ((γ)_m (γ')_n) x^m/m! y^n/n!`.
///
/// Summed over anti-diagonals `m + n = k`. Stops once three consecutive
/// diagonals each contribute (in absolute terms) less than
/// `rel_tol·|partial| + abs_floor`.
pub fn humbert_psi1(
    alpha: ComplexValue,
    beta: ComplexValue,
    gamma: ComplexValue,
    gamma_p: ComplexValue,
    x: ComplexValue,
    y: ComplexValue,
    ctrl: &SeriesControl,
) -> Result<ComplexValue> {
    if is_nonpositive_integer(gamma) || is_nonpositive_integer(gamma_p) {
        return Err(Error::PoleParameter { what: "Psi1" });
    }
    if !(x.norm() < 1.0) {
        return Err(Error::DomainViolation(format!(
            "Psi1 requires |x| < 1, got |x| = {}",
            x.norm()
        )));
    }
    // diag[m] holds the term (m, k-m) of the current diagonal k.
    let mut diag: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
    // term (k, 0), kept separately because diag[k] is advanced in place.
    let mut edge = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0, 0.0);
    let mut quiet = 0;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        // (m, n) -> (m, n+1)
        let lift = (alpha + kf) * y;
        for (m, t) in diag.iter_mut().enumerate() {
            let n = (k - m) as f64;
            *t = *t * lift / ((gamma_p + n) * (n + 1.0));
        }
        // (k, 0) -> (k+1, 0)
        edge = edge * (alpha + kf) * (beta + kf) / ((gamma + kf) * (kf + 1.0)) * x;
        diag.push(edge);

        let mut contribution = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0;
        for t in &diag {
            contribution += t;
            magnitude += t.norm();
        }
        sum += contribution;
        if ctrl.small(magnitude, sum.norm()) {
            quiet += 1;
            if quiet == 3 {
                return check_finite(sum, "Psi1");
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "Psi1",
        terms: ctrl.max_terms,
    })
}

fn hankel_series(u: f64, sign: f64) -> f64 {
    // Σ (±1)^k ((2k-1)!!)² / (k! (8u)^k), truncated at the smallest term.
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..200 {
        let kf = k as f64;
        let next = term * sign * (2.0 * kf - 1.0).powi(2) / (8.0 * u * kf);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Modified Bessel function of the first kind, order zero.
pub fn bessel_i0(u: f64) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::DomainViolation(format!("I0 argument {u} not finite")));
    }
    let u = u.abs();
    if u <= I0_SERIES_MAX {
        let q = 0.25 * u * u;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        while term > 1e-17 * sum {
            term *= q / (k * k);
            sum += term;
            k += 1.0;
        }
        return Ok(sum);
    }
    // e^u overflows past ~709.78; split the exponential to reach a bit further.
    let half = (0.5 * u).exp();
    let value = half * (half / (2.0 * PI * u).sqrt()) * hankel_series(u, 1.0);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { what: "I0" })
    }
}

/// MacDonald function (modified Bessel function of the second kind), order zero.
///
/// Logarithmic power series for `u ≤ 2`, the trapezoidal rule on
/// `K0(u) = ∫₀^∞ exp(−u cosh s) ds` up to 17, and the asymptotic expansion
/// beyond.
pub fn macdonald_k0(u: f64) -> Result<f64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::DomainViolation(format!(
            "K0 requires a finite positive argument, got {u}"
        )));
    }
    if u <= K0_SERIES_MAX {
        let q = 0.25 * u * u;
        let i0 = bessel_i0(u)?;
        let mut term = 1.0;
        let mut harmonic = 0.0;
        let mut correction = 0.0;
        let mut k = 1.0;
        loop {
            term *= q / (k * k);
            harmonic += 1.0 / k;
            let c = term * harmonic;
            correction += c;
            if c < 1e-18 * correction {
                break;
            }
            k += 1.0;
        }
        return Ok(-((0.5 * u).ln() + EULER_GAMMA) * i0 + correction);
    }
    if u <= K0_ASYMPTOTIC_MIN {
        // Doubly exponential decay; the error of the rule is ~exp(-π²/h).
        let h: f64 = 0.125;
        let mut sum = 0.5 * (-u).exp();
        let mut k = 1.0;
        loop {
            let term = (-u * (k * h).cosh()).exp();
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
            k += 1.0;
        }
        return Ok(h * sum);
    }
    Ok((-u).exp() * (PI / (2.0 * u)).sqrt() * hankel_series(u, -1.0))
}

/// `|Γ(3/2 + iy)|² = π (1/4 + y²) / cosh(πy)`, written so that large `|y|`
/// underflows to 0 instead of overflowing.
pub fn gamma_abs_sq_3half(y: f64) -> f64 {
    let decay = (-PI * y.abs()).exp();
    2.0 * PI * (0.25 + y * y) * decay / (1.0 + decay * decay)
}

/// The three terms of the contiguous relation
/// `z(1−z)(a+1)(b+1) F(a+2,b+2;c+2;z) + (c−(a+b+1)z)(c+1) F(a+1,b+1;c+1;z)
///  − c(c+1) F(a,b;c;z) = 0`.
pub fn contiguous_f_terms(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    ctrl: &SeriesControl,
) -> Result<[ComplexValue; 3]> {
    let f0 = gauss_2f1(a, b, c, z, ctrl)?;
    let f1 = gauss_2f1(a + 1.0, b + 1.0, c + 1.0, z, ctrl)?;
    let f2 = gauss_2f1(a + 2.0, b + 2.0, c + 2.0, z, ctrl)?;
    let one = Complex64::new(1.0, 0.0);
    Ok([
        z * (one - z) * (a + 1.0) * (b + 1.0) * f2,
        (c - (a + b + 1.0) * z) * (c + 1.0) * f1,
        -c * (c + 1.0) * f0,
    ])
}

/// Left-hand side of the contiguous relation; identically zero in exact
/// arithmetic, so its size probes the `2F1` engine.
pub fn contiguous_f_residual(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    ctrl: &SeriesControl,
) -> Result<ComplexValue> {
    let [t0, t1, t2] = contiguous_f_terms(a, b, c, z, ctrl)?;
    Ok(t0 + t1 + t2)
}
