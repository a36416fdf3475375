//! First-associated Meixner-Pollaczek polynomials `p_n(x)`, their monic
//! renormalisation `q_n`, and the classical Meixner-Pollaczek polynomials
//! `P_n^{(1/2)}(y; π/2)`.
//!
//! `p_n` satisfies
//!
//! ```text
//! x p_n(x) = (n+2)/√2 · p_{n+1}(x) + (n+1)/√2 · p_{n-1}(x),   p_{-1} = 0, p_0 = 1
//! ```
//!
//! and is available through three independent routes (see [`PolynomialRoute`]):
//! the forward recurrence, the characteristic polynomial of the truncated
//! Jacobi matrix, and the closed form in terms of `2F1` and the classical
//! polynomials.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{gauss_2f1, pochhammer, SeriesControl};

/// Largest truncation order accepted by [`jacobi_eigen_roots`].
pub const MAX_EIGEN_ORDER: usize = 200;

/// Tolerance on the imaginary part left over by the complex closed form.
pub const IMAG_RESIDUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolynomialFamily {
    /// `p_n(x) = P_n^{(1/2)}(x/√2; π/2, 1)`
    AssocMp,
    /// `P_n^{(1/2)}(y; π/2)`
    ClassicalMp,
    /// `q_n(x) = c_n! p_n(x)`
    MonicQ,
}

impl PolynomialFamily {
    pub fn eval(self, n: usize, arg: f64) -> f64 {
        match self {
            PolynomialFamily::AssocMp => assoc_mp_eval(n, arg),
            PolynomialFamily::ClassicalMp => classical_mp_eval(n, arg),
            PolynomialFamily::MonicQ => monic_q_eval(n, arg),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PolynomialFamily::AssocMp => "assoc",
            PolynomialFamily::ClassicalMp => "classical",
            PolynomialFamily::MonicQ => "monic",
        }
    }
}

impl std::str::FromStr for PolynomialFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assoc" | "assoc_mp" => Ok(PolynomialFamily::AssocMp),
            "classical" | "classical_mp" => Ok(PolynomialFamily::ClassicalMp),
            "monic" | "monic_q" => Ok(PolynomialFamily::MonicQ),
            other => Err(Error::UnknownStrategy {
                kind: "polynomial family",
                name: other.to_string(),
                available: "assoc, classical, monic".to_string(),
            }),
        }
    }
}

/// `[p_0(x), …, p_{n_max}(x)]` in one recurrence pass.
pub fn assoc_mp_sequence(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(cur);
    for k in 0..n_max {
        let kf = k as f64;
        let next = (SQRT_2 * x * cur - (kf + 1.0) * prev) / (kf + 2.0);
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

pub fn assoc_mp_eval(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = (SQRT_2 * x * cur - (kf + 1.0) * prev) / (kf + 2.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Monic polynomials: `x q_n = q_{n+1} + (n+1)²/2 · q_{n-1}`.
pub fn monic_q_eval(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = x * cur - 0.5 * (kf + 1.0) * (kf + 1.0) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `c_n! = ∏_{k=1}^{n} (k+1)/√2 = (n+1)!/2^{n/2}`, the factor linking `q_n`
/// and `p_n`.
pub fn monic_scale(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * (k as f64 + 1.0) / SQRT_2)
}

/// Classical `P_n^{(1/2)}(y; π/2)`: `(n+1) P_{n+1} = 2y P_n − n P_{n-1}`.
pub fn classical_mp_eval(n: usize, y: f64) -> f64 {
    classical_mp_sequence(n, y)[n]
}

pub fn classical_mp_sequence(n_max: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(cur);
    for k in 0..n_max {
        let kf = k as f64;
        let next = (2.0 * y * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Leading `n × n` block of the Jacobi matrix of `p_n`: zero diagonal and
/// off-diagonal entries `2/√2, 3/√2, …, n/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    off: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn dimension(&self) -> usize {
        self.off.len() + 1
    }

    pub fn diagonal(&self) -> Vec<f64> {
        vec![0.0; self.dimension()]
    }

    /// Entry at positions `(k-1, k)` and `(k, k-1)`, for `k = 1..n`.
    pub fn off_diagonal(&self, k: usize) -> f64 {
        self.off[k - 1]
    }

    pub fn off_diagonals(&self) -> &[f64] {
        &self.off
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            1 => self.off[i.max(j) - 1],
            _ => 0.0,
        }
    }

    /// `det(x I − Q_n)` by the continuant recurrence
    /// `D_k = x D_{k-1} − b_k² D_{k-2}`.
    pub fn char_poly(&self, x: f64) -> f64 {
        let diag = self.diagonal();
        let mut prev = 1.0;
        let mut cur = x - diag[0];
        for (k, b) in self.off.iter().enumerate() {
            let next = (x - diag[k + 1]) * cur - b * b * prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}

pub fn jacobi_truncation(n: usize) -> Result<TridiagonalMatrix> {
    if n == 0 {
        return Err(Error::DomainViolation("Jacobi truncation needs n >= 1".into()));
    }
    let off = (1..n).map(|k| (k as f64 + 1.0) / SQRT_2).collect();
    Ok(TridiagonalMatrix { off })
}

/// `p_n(x) = 2^{n/2}/(n+1)! · det[x I_n − Q_n]`.
pub fn assoc_mp_via_det(n: usize, x: f64) -> Result<f64> {
    let q = jacobi_truncation(n)?;
    Ok(q.char_poly(x) / monic_scale(n))
}

/// `P_n^{(1/2)}(y; π/2, 1)` from the two-term closed form
///
/// ```text
/// iⁿ (2)_n 2F1(n+2, n+2; n+5/2+iy; 1/2) / (2^{n+2} (1/2+iy)_{n+2})
///   + 2F1(1, 1; 3/2+iy; 1/2) / (2y − i) · P_{n+1}^{(1/2)}(y; π/2)
/// ```
///
/// returned as a complex number; the imaginary part vanishes analytically.
pub fn assoc_mp_explicit_complex(n: usize, y: f64, ctrl: &SeriesControl) -> Result<Complex64> {
    let iy = Complex64::new(0.0, y);
    let nf = n as f64;
    let half = Complex64::new(0.5, 0.0);
    let i_pow = Complex64::new(0.0, 1.0).powu(n as u32);
    let top = gauss_2f1(
        Complex64::new(nf + 2.0, 0.0),
        Complex64::new(nf + 2.0, 0.0),
        iy + (nf + 2.5),
        half,
        ctrl,
    )?;
    let two_n = pochhammer(Complex64::new(2.0, 0.0), n);
    let first = i_pow * two_n * top / (pochhammer(iy + 0.5, n + 2) * 2f64.powi(n as i32 + 2));
    let base = gauss_2f1(
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
        iy + 1.5,
        half,
        ctrl,
    )?;
    let second = base / Complex64::new(2.0 * y, -1.0) * classical_mp_eval(n + 1, y);
    Ok(first + second)
}

/// `p_n(x)` via the closed form at `y = x/√2`.
pub fn assoc_mp_explicit(n: usize, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    let v = assoc_mp_explicit_complex(n, x / SQRT_2, ctrl)?;
    real_part_checked(v, "explicit p_n")
}

pub(crate) fn real_part_checked(v: Complex64, what: &'static str) -> Result<f64> {
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::NonFinite(what));
    }
    if v.im.abs() >= IMAG_RESIDUE_TOL * (1.0 + v.re.abs()) {
        return Err(Error::ResidualImaginary {
            what,
            real: v.re,
            imag: v.im,
        });
    }
    Ok(v.re)
}

/// Closed-form `p_n(0)`: zero for odd `n`, `(−1)^m 4^m (m!)² / (2m+1)!` for
/// `n = 2m`.
pub fn zero_value_closed_form(n: usize) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let m = n / 2;
    // ratio of consecutive even values: −2(k+1)/(2k+3)
    (0..m).fold(1.0, |acc, k| {
        let kf = k as f64;
        -acc * 2.0 * (kf + 1.0) / (2.0 * kf + 3.0)
    })
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below
/// `x` (Sturm count through the LDLᵀ pivots of `T − xI`).
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = diag[0] - x;
    if d < 0.0 {
        count += 1;
    }
    for k in 1..diag.len() {
        let pivot = if d == 0.0 { f64::EPSILON * (off[k - 1].abs() + 1.0) } else { d };
        d = diag[k] - x - off[k - 1] * off[k - 1] / pivot;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of `Q_n` (the zeros of `p_n`) in ascending order, by
/// bisection on Sturm counts.
pub fn jacobi_eigen_roots(n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > MAX_EIGEN_ORDER {
        return Err(Error::DomainViolation(format!(
            "eigenvalue order must lie in 1..={MAX_EIGEN_ORDER}, got {n}"
        )));
    }
    let q = jacobi_truncation(n)?;
    let diag = q.diagonal();
    let off = q.off_diagonals();
    // Gershgorin
    let bound = (0..n)
        .map(|i| {
            let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { off[i].abs() } else { 0.0 };
            diag[i].abs() + left + right
        })
        .fold(0.0_f64, f64::max)
        + 1.0;
    let tol = 4.0 * f64::EPSILON * bound;

    let mut roots = Vec::with_capacity(n);
    for k in 0..n {
        // k-th eigenvalue: smallest x with count(x) > k
        let (mut lo, mut hi) = (-bound, bound);
        let mut iterations = 0;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if sturm_count(&diag, off, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            iterations += 1;
            if iterations > 200 {
                return Err(Error::ConvergenceFailure(format!(
                    "bisection for eigenvalue {k} of Q_{n} did not settle"
                )));
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    Ok(roots)
}

/// One way of computing `p_n(x)`.
pub trait PolynomialRoute: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn eval(&self, n: usize, x: f64, ctrl: &SeriesControl) -> Result<f64>;
}

pub struct RecurrenceRoute;
pub struct DeterminantRoute;
pub struct ExplicitRoute;

impl PolynomialRoute for RecurrenceRoute {
    fn name(&self) -> &'static str {
        "recurrence"
    }
    fn description(&self) -> &'static str {
        "forward three-term recurrence"
    }
    fn eval(&self, n: usize, x: f64, _ctrl: &SeriesControl) -> Result<f64> {
        Ok(assoc_mp_eval(n, x))
    }
}

impl PolynomialRoute for DeterminantRoute {
    fn name(&self) -> &'static str {
        "determinant"
    }
    fn description(&self) -> &'static str {
        "scaled characteristic polynomial of the truncated Jacobi matrix"
    }
    fn eval(&self, n: usize, x: f64, _ctrl: &SeriesControl) -> Result<f64> {
        if n == 0 {
            return Ok(1.0);
        }
        assoc_mp_via_det(n, x)
    }
}

impl PolynomialRoute for ExplicitRoute {
    fn name(&self) -> &'static str {
        "explicit"
    }
    fn description(&self) -> &'static str {
        "2F1 / classical Meixner-Pollaczek closed form"
    }
    fn eval(&self, n: usize, x: f64, ctrl: &SeriesControl) -> Result<f64> {
        assoc_mp_explicit(n, x, ctrl)
    }
}
