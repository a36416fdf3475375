//! Identity verification suites.
//!
//! Each [`Suite`] checks a group of identities and returns one
//! [`VerificationReport`] per identity. Suites are registered by name in
//! [`crate::registry::verification_suites`].

use std::f64::consts::SQRT_2;
use std::time::Instant;

use num_complex::Complex64;

use crate::bargmann::{
    bargmann_kernel, delta_closed, delta_series, kernel_parameter, lambda_closed, lambda_series, mp_shifted_egf,
    monomial_image, nlcs_wavefunction_closed, nlcs_wavefunction_series, transform_norm_residual, transform_table,
    ClosedKernel,
};
use crate::coeffs::taylor_coefficients_circle;
use crate::error::{Error, Result};
use crate::genfun::{
    critical_line_residual, egf_closed, gf_at_zero_closed, gf_closed, gf_ode_residual, gf_relation_residual, gf_series,
    gf_taylor_coefficients, closed_2f1_two_two, GFPoint,
};
use crate::measures::{
    default_radial_grid, default_weight_grid, gram_defect, nlcs_normalization, orthonormality_matrix,
    radial_moment_residual, resolution_diagonal, weight_omega, weight_on_grid, AreaConvention,
};
use crate::polynomials::{
    assoc_mp_eval, assoc_mp_explicit, assoc_mp_via_det, jacobi_eigen_roots, monic_q_eval, monic_scale,
    zero_value_closed_form, classical_mp_sequence,
};
use crate::quadrature::{build_radial_grid, QuadratureGrid};
use crate::special::{check_finite, gauss_2f1, kummer_1f1, SeriesControl};

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub identity_id: String,
    pub sample_points: Vec<String>,
    pub residuals: Vec<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime_ms: f64,
}

impl VerificationReport {
    /// Builds a report; fails if any residual is not finite.
    pub fn new(
        identity_id: &str,
        sample_points: Vec<String>,
        residuals: Vec<f64>,
        tolerance: f64,
        started: Instant,
    ) -> Result<Self> {
        if residuals.iter().any(|r| !r.is_finite()) {
            return Err(Error::NonFinite("verification residual"));
        }
        let max = residuals.iter().copied().fold(0.0, f64::max);
        Ok(Self {
            identity_id: identity_id.to_string(),
            sample_points,
            residuals,
            tolerance,
            passed: max < tolerance,
            runtime_ms: started.elapsed().as_secs_f64() * 1e3,
        })
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Reports of a suite plus free-form remarks (convention choices, values
/// kept for reference).
#[derive(Debug, Clone, Default)]
pub struct SuiteOutcome {
    pub reports: Vec<VerificationReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyContext {
    pub ctrl: SeriesControl,
    /// Replaces every default tolerance when set.
    pub tol_override: Option<f64>,
}

impl VerifyContext {
    pub fn tol(&self, default: f64) -> f64 {
        self.tol_override.unwrap_or(default)
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome>;
}

/// `|a − b| / max(|b|, 1)`: relative error that degrades to absolute error
/// near zeros of the reference.
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

pub fn rel_err_c(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn rel_err_strict_c(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// `n` points `lo + (hi − lo)(k + 1)/(n + 1)`, strictly inside `(lo, hi)`.
fn interior_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * (k + 1) as f64 / (n + 1) as f64).collect()
}

/// `n ≥ 2` points from `lo` to `hi` inclusive.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

fn fmt_c(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// Closed forms of `p_0, …, p_4` written out in monomials.
pub fn explicit_low_order(n: usize, x: f64) -> f64 {
    let x2 = x * x;
    match n {
        0 => 1.0,
        1 => x / SQRT_2,
        2 => x2 / 3.0 - 2.0 / 3.0,
        3 => SQRT_2 / 12.0 * x2 * x - 13.0 / (12.0 * SQRT_2) * x,
        4 => x2 * x2 / 30.0 - 29.0 / 60.0 * x2 + 8.0 / 15.0,
        _ => f64::NAN,
    }
}

pub struct PolynomialSuite;
pub struct GeneratingFunctionSuite;
pub struct CriticalLineSuite;
pub struct ClosedHypergeometricSuite;
pub struct DeltaSuite;
pub struct OrthonormalitySuite;
pub struct MomentsSuite;
pub struct KernelSuite;
pub struct TransformSuite;

pub fn builtin_suites() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(PolynomialSuite),
        Box::new(GeneratingFunctionSuite),
        Box::new(CriticalLineSuite),
        Box::new(ClosedHypergeometricSuite),
        Box::new(DeltaSuite),
        Box::new(OrthonormalitySuite),
        Box::new(MomentsSuite),
        Box::new(KernelSuite),
        Box::new(TransformSuite),
    ]
}

pub const EXPLICIT_SAMPLE_X: [f64; 9] = [-3.5, -2.0, -1.2, -0.5, 0.0, 0.7, 1.5, 2.6, 4.0];

pub fn explicit_forms_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let mut pts = Vec::new();
    let mut res = Vec::new();
    for n in 0..=4 {
        for &x in &EXPLICIT_SAMPLE_X {
            pts.push(format!("n={n},x={x}"));
            res.push(rel_err(assoc_mp_eval(n, x), explicit_low_order(n, x)));
        }
    }
    VerificationReport::new("explicit_low_order", pts, res, ctx.tol(1e-12), t0)
}

pub fn triple_representation_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let mut pts = Vec::new();
    let mut res = Vec::new();
    for n in 0..=15 {
        for x in linspace(-5.0, 5.0, 21) {
            let r = assoc_mp_eval(n, x);
            let d = if n == 0 { 1.0 } else { assoc_mp_via_det(n, x)? };
            let e = assoc_mp_explicit(n, x, &ctx.ctrl)?;
            pts.push(format!("n={n},x={x}"));
            res.push(rel_err(d, r).max(rel_err(e, r)));
        }
    }
    VerificationReport::new("triple_representation", pts, res, ctx.tol(1e-9), t0)
}

pub fn zero_values_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let mut pts = Vec::new();
    let mut res = Vec::new();
    for n in 0..=40 {
        pts.push(format!("n={n}"));
        res.push(rel_err(assoc_mp_eval(n, 0.0), zero_value_closed_form(n)));
    }
    VerificationReport::new("zero_values", pts, res, ctx.tol(1e-12), t0)
}

/// `max |p_n(λ)| / max_{[−λmax, λmax]} |p_n|` over the Jacobi eigenvalues.
pub fn spectral_residual(n: usize) -> Result<f64> {
    let roots = jacobi_eigen_roots(n)?;
    let lmax = roots.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let scale = linspace(-lmax, lmax, 4001)
        .into_iter()
        .map(|x| assoc_mp_eval(n, x).abs())
        .fold(0.0, f64::max);
    Ok(roots.iter().map(|&r| assoc_mp_eval(n, r).abs()).fold(0.0, f64::max) / scale)
}

pub fn spectral_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let ns = [2usize, 5, 10, 20];
    let res = ns.iter().map(|&n| spectral_residual(n)).collect::<Result<Vec<_>>>()?;
    let pts = ns.iter().map(|n| format!("n={n}")).collect();
    VerificationReport::new("spectral_roots", pts, res, ctx.tol(1e-9), t0)
}

impl Suite for PolynomialSuite {
    fn name(&self) -> &'static str {
        "polynomials"
    }
    fn description(&self) -> &'static str {
        "closed forms, cross-route agreement, zero values, parity, roots"
    }
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome> {
        let mut reports = vec![
            explicit_forms_report(ctx)?,
            triple_representation_report(ctx)?,
            zero_values_report(ctx)?,
        ];

        let t0 = Instant::now();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        for n in 0..=50 {
            for x in [0.3, 1.1, 2.7, 4.9] {
                let a = assoc_mp_eval(n, x);
                pts.push(format!("n={n},x={x}"));
                res.push(rel_err(assoc_mp_eval(n, -x), if n % 2 == 0 { a } else { -a }));
            }
        }
        reports.push(VerificationReport::new("parity", pts, res, ctx.tol(1e-14), t0)?);

        let t0 = Instant::now();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        for n in 0..=30 {
            for x in [-2.5, 0.4, 3.3] {
                let q = monic_q_eval(n, x);
                pts.push(format!("n={n},x={x}"));
                res.push((q - monic_scale(n) * assoc_mp_eval(n, x)).abs() / q.abs().max(f64::MIN_POSITIVE));
            }
        }
        reports.push(VerificationReport::new("monic_link", pts, res, ctx.tol(1e-12), t0)?);

        reports.push(spectral_report(ctx)?);

        let t0 = Instant::now();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        let mut prev = jacobi_eigen_roots(1)?;
        for n in 2..=31 {
            let cur = jacobi_eigen_roots(n)?;
            let ok = prev.iter().enumerate().all(|(k, r)| cur[k] < *r && *r < cur[k + 1]);
            pts.push(format!("n={}", n - 1));
            res.push(if ok { 0.0 } else { 1.0 });
            prev = cur;
        }
        reports.push(VerificationReport::new("interlacing", pts, res, 0.5, t0)?);

        Ok(SuiteOutcome { reports, notes: vec![] })
    }
}

pub const GF_GRID_X: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];
pub const GF_GRID_T: [f64; 7] = [-0.9, -0.6, -0.3, 0.1, 0.4, 0.7, 0.9];
/// Terms of the series oracle for the ordinary generating function.
pub const GF_SERIES_TERMS: usize = 200;
/// Terms used in the ODE residual; `|t| = 0.9` needs several hundred.
pub const GF_ODE_TERMS: usize = 600;

pub fn gf_closed_vs_series_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let mut pts = Vec::new();
    let mut res = Vec::new();
    for &x in &GF_GRID_X {
        for &t in &GF_GRID_T {
            let closed = gf_closed(GFPoint::new(x, t)?, &ctx.ctrl)?;
            pts.push(format!("x={x},t={t}"));
            res.push((closed - gf_series(x, t, GF_SERIES_TERMS)).abs() / closed.abs());
        }
    }
    VerificationReport::new("gf_closed_vs_series", pts, res, ctx.tol(1e-8), t0)
}

pub fn gf_ode_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let mut pts = Vec::new();
    let mut res = Vec::new();
    for &x in &GF_GRID_X {
        for &t in &GF_GRID_T {
            pts.push(format!("x={x},t={t}"));
            res.push(gf_ode_residual(x, t, GF_ODE_TERMS)?);
        }
    }
    VerificationReport::new("gf_ode", pts, res, ctx.tol(1e-8), t0)
}

impl Suite for GeneratingFunctionSuite {
    fn name(&self) -> &'static str {
        "gf"
    }
    fn description(&self) -> &'static str {
        "ordinary and exponential generating functions"
    }
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome> {
        let mut reports = vec![gf_closed_vs_series_report(ctx)?, gf_ode_report(ctx)?];

        let t0 = Instant::now();
        let ts = [-0.8, -0.5, -0.2, 0.2, 0.5, 0.8];
        let mut res = Vec::new();
        for &t in &ts {
            let closed = gf_closed(GFPoint::new(0.0, t)?, &ctx.ctrl)?;
            res.push(rel_err(closed, gf_at_zero_closed(t)));
        }
        let pts = ts.iter().map(|t| format!("t={t}")).collect();
        reports.push(VerificationReport::new("gf_at_zero", pts, res, ctx.tol(1e-10), t0)?);

        let t0 = Instant::now();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        for x in [-1.5, -0.5, 0.25, 1.0, 2.0] {
            for t in [-0.6, -0.35, -0.1, 0.2, 0.45] {
                pts.push(format!("x={x},t={t}"));
                res.push(gf_relation_residual(x, t)?);
            }
        }
        reports.push(VerificationReport::new("gf_egf_relation", pts, res, ctx.tol(1e-8), t0)?);

        let t0 = Instant::now();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        for x in [0.5, 1.3, 2.2] {
            for t in [0.3, 0.8, 1.2] {
                let a = egf_closed(x, t, &ctx.ctrl)?;
                pts.push(format!("x={x},t={t}"));
                res.push(rel_err(egf_closed(-x, -t, &ctx.ctrl)?, a));
            }
        }
        reports.push(VerificationReport::new("egf_parity", pts, res, ctx.tol(1e-10), t0)?);

        let t0 = Instant::now();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let coeffs = gf_taylor_coefficients(x, 12, &ctx.ctrl)?;
            for (n, c) in coeffs.iter().enumerate() {
                pts.push(format!("n={n},x={x}"));
                res.push(rel_err(*c, assoc_mp_eval(n, x)));
            }
        }
        reports.push(VerificationReport::new("gf_coefficients", pts, res, ctx.tol(1e-6), t0)?);

        Ok(SuiteOutcome { reports, notes: vec![] })
    }
}

/// 21 equispaced points strictly inside `(−0.95, 0.95)`.
pub fn critical_line_points() -> Vec<f64> {
    linspace(-0.9, 0.9, 21)
}

pub fn critical_line_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let ts = critical_line_points();
    let res = ts
        .iter()
        .map(|&t| critical_line_residual(t, &ctx.ctrl))
        .collect::<Result<Vec<_>>>()?;
    let pts = ts.iter().map(|t| format!("t={t}")).collect();
    VerificationReport::new("corollary41", pts, res, ctx.tol(1e-10), t0)
}

pub fn closed_2f1_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let xs = interior_points(0.05, 0.95, 11);
    let two = Complex64::new(2.0, 0.0);
    let mut res = Vec::new();
    for &xi in &xs {
        let f = gauss_2f1(two, two, Complex64::new(2.5, 0.0), Complex64::new(xi, 0.0), &ctx.ctrl)?;
        res.push((closed_2f1_two_two(xi)? - f.re).abs() / f.re.abs());
    }
    let pts = xs.iter().map(|x| format!("xi={x}")).collect();
    VerificationReport::new("remark41_closed_form", pts, res, ctx.tol(1e-10), t0)
}

pub fn half_value_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let two = Complex64::new(2.0, 0.0);
    let f = gauss_2f1(two, two, Complex64::new(2.5, 0.0), Complex64::new(0.5, 0.0), &ctx.ctrl)?;
    VerificationReport::new(
        "hypergeometric_half_value",
        vec!["2F1(2,2;5/2;1/2)".into()],
        vec![(f - 3.0).norm()],
        ctx.tol(1e-10),
        t0,
    )
}

impl Suite for CriticalLineSuite {
    fn name(&self) -> &'static str {
        "corollary41"
    }
    fn description(&self) -> &'static str {
        "2F1(2,2;5/2;(1+it)/2) in elementary functions"
    }
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome> {
        Ok(SuiteOutcome {
            reports: vec![critical_line_report(ctx)?, half_value_report(ctx)?],
            notes: vec![],
        })
    }
}

impl Suite for ClosedHypergeometricSuite {
    fn name(&self) -> &'static str {
        "remark41"
    }
    fn description(&self) -> &'static str {
        "2F1(2,2;5/2;xi) in elementary functions on (0,1)"
    }
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome> {
        Ok(SuiteOutcome {
            reports: vec![closed_2f1_report(ctx)?],
            notes: vec![],
        })
    }
}

pub const DELTA_XI: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];
pub const DELTA_T_IM: [f64; 3] = [0.1, 0.25, 0.4];

pub fn delta_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let x = Complex64::new(0.5, 0.0);
    let mut pts = Vec::new();
    let mut res = Vec::new();
    for &xi in &DELTA_XI {
        let c = kernel_parameter(xi);
        for &tm in &DELTA_T_IM {
            let t = Complex64::new(0.0, tm);
            let s = delta_series(t, c, x, &ctx.ctrl)?;
            pts.push(format!("xi={xi},t={tm}i"));
            res.push(rel_err_strict_c(delta_closed(t, c, x, &ctx.ctrl)?, s));
        }
    }
    VerificationReport::new("delta_series_closed_form", pts, res, ctx.tol(1e-10), t0)
}

impl Suite for DeltaSuite {
    fn name(&self) -> &'static str {
        "appendixA"
    }
    fn description(&self) -> &'static str {
        "delta series as exp(-t/x) Psi1(1,1;c,1;x,t/x); shifted classical generating function"
    }
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome> {
        let mut reports = vec![delta_report(ctx)?];

        let t0 = Instant::now();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        let cases = [
            (0.0, Complex64::new(0.0, 0.4)),
            (1.3, Complex64::new(0.2, 0.1)),
            (-0.7, Complex64::new(-0.5, 0.3)),
        ];
        for (xi, zbar) in cases {
            let p = classical_mp_sequence(41, xi / SQRT_2);
            let mut direct = Complex64::new(0.0, 0.0);
            let mut coef = Complex64::new(1.0, 0.0);
            for n in 0..40 {
                coef /= n as f64 + 1.0;
                direct += coef * p[n + 1];
                coef *= zbar;
            }
            pts.push(format!("xi={xi},zbar={}", fmt_c(zbar)));
            res.push(rel_err_c(mp_shifted_egf(xi, zbar, &ctx.ctrl)?, direct));
        }
        reports.push(VerificationReport::new("shifted_classical_egf", pts, res, ctx.tol(1e-10), t0)?);

        Ok(SuiteOutcome { reports, notes: vec![] })
    }
}

pub fn orthonormality_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let grid = default_weight_grid();
    let gram = orthonormality_matrix(10, &grid, &ctx.ctrl)?;
    VerificationReport::new(
        "orthonormality",
        vec![format!("n<=10,nodes={}", grid.len())],
        vec![gram_defect(&gram)],
        ctx.tol(1e-7),
        t0,
    )
}

pub fn weight_mass_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let grid = default_weight_grid();
    let omega = weight_on_grid(&grid, &ctx.ctrl)?;
    VerificationReport::new(
        "weight_mass",
        vec![format!("cut={}", grid.domain_cut())],
        vec![(grid.reduce(&omega) - 1.0).abs()],
        ctx.tol(1e-8),
        t0,
    )
}

impl Suite for OrthonormalitySuite {
    fn name(&self) -> &'static str {
        "orthonormality"
    }
    fn description(&self) -> &'static str {
        "Gram matrix and total mass of the weight"
    }
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome> {
        let mut reports = vec![orthonormality_report(ctx)?, weight_mass_report(ctx)?];

        let t0 = Instant::now();
        let xs = linspace(0.1, 10.0, 100);
        let mut res = Vec::new();
        for &x in &xs {
            let w = weight_omega(x, &ctx.ctrl)?;
            res.push((weight_omega(-x, &ctx.ctrl)? - w).abs() / w);
        }
        let pts = xs.iter().map(|x| format!("x={x}")).collect();
        reports.push(VerificationReport::new("weight_symmetry", pts, res, ctx.tol(1e-12), t0)?);

        Ok(SuiteOutcome {
            reports,
            notes: vec!["weight normalised to unit mass (prefactor 2*sqrt(2)/pi)".into()],
        })
    }
}

pub fn radial_moments_report(ctx: &VerifyContext, ns: std::ops::RangeInclusive<usize>, id: &str, tol: f64) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let grid = default_radial_grid();
    let mut pts = Vec::new();
    let mut res = Vec::new();
    for n in ns {
        pts.push(format!("n={n}"));
        res.push(radial_moment_residual(n, &grid)?);
    }
    VerificationReport::new(id, pts, res, ctx.tol(tol), t0)
}

impl Suite for MomentsSuite {
    fn name(&self) -> &'static str {
        "moments"
    }
    fn description(&self) -> &'static str {
        "K0 radial moments and the resolution of the identity"
    }
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome> {
        let mut reports = vec![
            radial_moments_report(ctx, 0..=3, "radial_moments_low", 1e-8)?,
            radial_moments_report(ctx, 4..=6, "radial_moments_high", 1e-6)?,
        ];

        let grid = default_radial_grid();
        let t0 = Instant::now();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        for n in 0..=6 {
            pts.push(format!("n={n}"));
            res.push((resolution_diagonal(n, &grid, AreaConvention::OverTwoPi)? - 1.0).abs());
        }
        reports.push(VerificationReport::new("resolution_of_identity", pts, res, ctx.tol(1e-6), t0)?);

        let t0 = Instant::now();
        let us = [1e-8, 1e-3, 0.5, 1.0, 2.5, 5.0];
        let mut res = Vec::new();
        for &u in &us {
            let mut term = 1.0;
            let mut direct = 1.0;
            for n in 1..30 {
                term *= u / ((n + 1) as f64 * (n + 1) as f64);
                direct += term;
            }
            res.push((nlcs_normalization(u)? - direct).abs() / direct);
        }
        let pts = us.iter().map(|u| format!("u={u}")).collect();
        reports.push(VerificationReport::new("normalization_series", pts, res, ctx.tol(1e-12), t0)?);

        let other = resolution_diagonal(0, &grid, AreaConvention::OverPi)?;
        Ok(SuiteOutcome {
            reports,
            notes: vec![
                format!("resolution of the identity uses {}", AreaConvention::OverTwoPi.label()),
                format!("with {} the diagonal entries equal {:.6}", AreaConvention::OverPi.label(), other),
            ],
        })
    }
}

pub const KERNEL_XI: [f64; 5] = [-3.0, -1.0, 0.0, 1.0, 3.0];

pub fn kernel_z_points() -> [Complex64; 5] {
    [
        Complex64::new(0.5, 0.0),
        Complex64::new(0.3, 0.4),
        Complex64::new(-1.0, 0.5),
        Complex64::new(0.0, -1.5),
        Complex64::new(1.2, 1.6),
    ]
}

pub fn wavefunction_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let mut pts = Vec::new();
    let mut res = Vec::new();
    for &xi in &KERNEL_XI {
        for z in kernel_z_points() {
            let s = nlcs_wavefunction_series(xi, z, 60)?;
            let c = nlcs_wavefunction_closed(xi, z, &ctx.ctrl)?.value;
            pts.push(format!("xi={xi},z={}", fmt_c(z)));
            res.push(rel_err_c(c, s));
        }
    }
    VerificationReport::new("wavefunction_closed_vs_series", pts, res, ctx.tol(1e-8), t0)
}

/// Coefficients `(n+1)·∂ⁿΛ/∂zⁿ(ξ, 0)` for `n ≤ n_max`, from the closed
/// kernel sampled on the unit circle.
pub fn lambda_derivative_coefficients(xi: f64, n_max: usize, ctrl: &SeriesControl) -> Result<Vec<f64>> {
    let a = taylor_coefficients_circle(|z| lambda_closed(xi, z, ctrl), 1.0, 48, n_max + 1)?;
    let mut fact = 1.0;
    Ok(a
        .iter()
        .enumerate()
        .map(|(n, c)| {
            fact *= (n + 1) as f64;
            c.re * fact
        })
        .collect())
}

pub fn lambda_coefficient_report(ctx: &VerifyContext) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let mut pts = Vec::new();
    let mut res = Vec::new();
    for xi in [-1.0, 0.0, 1.0] {
        let coeffs = lambda_derivative_coefficients(xi, 6, &ctx.ctrl)?;
        for (n, c) in coeffs.iter().enumerate() {
            pts.push(format!("n={n},xi={xi}"));
            res.push(rel_err(*c, assoc_mp_eval(n, xi)));
        }
    }
    VerificationReport::new("kernel_coefficients", pts, res, ctx.tol(1e-5), t0)
}

/// The kernel with `e^{−iz}` applied to the `1F1` term only, kept to
/// quantify how far that reading is from the series.
pub fn lambda_closed_exp_on_kummer_only(xi: f64, w: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let c = kernel_parameter(xi);
    let base = gauss_2f1(one, one, c, Complex64::new(0.5, 0.0), ctrl)?;
    let kummer = kummer_1f1(Complex64::new(0.5, -xi / SQRT_2), one, 2.0 * i * w, ctrl)?;
    let psi = crate::special::humbert_psi1(one, one, c, one, Complex64::new(0.5, 0.0), i * w, ctrl)?;
    check_finite(
        ((-i * w).exp() * base * kummer - psi) / (w * Complex64::new(SQRT_2 * xi, -1.0)),
        "kernel variant",
    )
}

impl Suite for KernelSuite {
    fn name(&self) -> &'static str {
        "kernel"
    }
    fn description(&self) -> &'static str {
        "coherent-state wavefunction and kernel, closed form against series"
    }
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome> {
        let mut reports = vec![wavefunction_report(ctx)?];

        let t0 = Instant::now();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        let mut variant_gap = 0.0f64;
        for &xi in &KERNEL_XI {
            for z in kernel_z_points() {
                let s = lambda_series(xi, z)?;
                let c = bargmann_kernel(z, xi, &ctx.ctrl)?.value;
                pts.push(format!("xi={xi},z={}", fmt_c(z)));
                res.push(rel_err_c(c, s));
                let v = lambda_closed_exp_on_kummer_only(xi, z, &ctx.ctrl)?;
                variant_gap = variant_gap.max(rel_err_c(v, s));
            }
        }
        reports.push(VerificationReport::new("kernel_closed_vs_series", pts, res, ctx.tol(1e-8), t0)?);
        reports.push(lambda_coefficient_report(ctx)?);

        Ok(SuiteOutcome {
            reports,
            notes: vec![format!(
                "exp(-iz) multiplies both bracket terms; applying it to the 1F1 term only misses the series by up to {variant_gap:.3e}"
            )],
        })
    }
}

pub fn diagonality_z_points() -> [Complex64; 3] {
    [Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.5), Complex64::new(0.2, 0.4)]
}

/// Step of the Cauchy–Riemann stencil.
pub const CR_STEP: f64 = 1e-3;

/// `B[p_n](z)` for `n ≤ 6` at the diagonality points and a square
/// Cauchy–Riemann stencil around `0.2+0.4i`, using the closed kernel.
pub fn diagonality_and_cr(ctx: &VerifyContext, grid: &QuadratureGrid) -> Result<(Vec<f64>, Vec<f64>, Vec<String>)> {
    let fs: Vec<Box<dyn Fn(f64) -> f64 + Sync>> = (0..=6usize)
        .map(|n| Box::new(move |x: f64| assoc_mp_eval(n, x)) as Box<dyn Fn(f64) -> f64 + Sync>)
        .collect();
    let refs: Vec<&(dyn Fn(f64) -> f64 + Sync)> = fs.iter().map(|f| f.as_ref()).collect();
    let centre = Complex64::new(0.2, 0.4);
    let h = CR_STEP;
    let mut zs = diagonality_z_points().to_vec();
    zs.extend([
        centre + h,
        centre - h,
        centre + Complex64::new(0.0, h),
        centre - Complex64::new(0.0, h),
    ]);
    let table = transform_table(&ClosedKernel, &refs, &zs, grid, &ctx.ctrl)?;
    let mut diag = Vec::new();
    let mut pts = Vec::new();
    for (i, z) in diagonality_z_points().iter().enumerate() {
        for n in 0..=6 {
            let target = monomial_image(n, *z);
            pts.push(format!("n={n},z={}", fmt_c(*z)));
            diag.push((table[i][n] - target).norm() / target.norm());
        }
    }
    let cr = (0..=6)
        .map(|n| {
            let dx = (table[3][n] - table[4][n]) / (2.0 * h);
            let dy = (table[5][n] - table[6][n]) / (2.0 * h);
            (dx + Complex64::new(0.0, 1.0) * dy).norm()
        })
        .collect();
    Ok((diag, cr, pts))
}

/// Radial rule for the norm check: to `ρ = 12`.
pub fn norm_check_radial_grid() -> QuadratureGrid {
    build_radial_grid(12.0, 12, 22).expect("static radial grid")
}

pub const NORM_ANGLES: usize = 64;

impl Suite for TransformSuite {
    fn name(&self) -> &'static str {
        "transform"
    }
    fn description(&self) -> &'static str {
        "Bargmann-type transform: diagonality, analyticity, norm"
    }
    fn run(&self, ctx: &VerifyContext) -> Result<SuiteOutcome> {
        let grid = default_weight_grid();
        let t0 = Instant::now();
        let (diag, cr, pts) = diagonality_and_cr(ctx, &grid)?;
        let elapsed = t0.elapsed().as_secs_f64() * 1e3;
        let mut d = VerificationReport::new("transform_diagonality", pts, diag, ctx.tol(1e-5), t0)?;
        let cr_pts = (0..=6).map(|n| format!("n={n},z=0.2+0.4i")).collect();
        let mut c = VerificationReport::new("transform_cauchy_riemann", cr_pts, cr, ctx.tol(1e-5), t0)?;
        d.runtime_ms = elapsed;
        c.runtime_ms = elapsed;
        let mut reports = vec![d, c];

        let t0 = Instant::now();
        let r_grid = norm_check_radial_grid();
        let mut pts = Vec::new();
        let mut res = Vec::new();
        let mut notes = vec!["image norm density 4|z|^2 K0(2|z|) dA/(2 pi)".to_string()];
        for n in [0usize, 1, 3] {
            let f = move |x: f64| assoc_mp_eval(n, x);
            let check = transform_norm_residual(&f, &r_grid, NORM_ANGLES, &grid, &ctx.ctrl)?;
            pts.push(format!("f=p{n}"));
            res.push(check.residual);
            notes.push(format!(
                "f=p{n}: density 4|z|^4 K0(2|z|) dA gives {:.6} against {:.6}",
                check.image_norm_quartic, check.input_norm
            ));
        }
        reports.push(VerificationReport::new("transform_norm", pts, res, ctx.tol(1e-3), t0)?);

        Ok(SuiteOutcome { reports, notes })
    }
}

/// Runs the named suite, or every suite for `"all"`.
pub fn run_suites(name: &str, ctx: &VerifyContext) -> Result<SuiteOutcome> {
    let registry = crate::registry::verification_suites();
    let mut out = SuiteOutcome::default();
    if name == "all" {
        for suite in registry.iter() {
            let o = suite.run(ctx)?;
            out.reports.extend(o.reports);
            out.notes.extend(o.notes);
        }
        return Ok(out);
    }
    match registry.get(name) {
        Ok(suite) => suite.run(ctx),
        Err(Error::UnknownStrategy { kind, name, available }) => Err(Error::UnknownStrategy {
            kind,
            name,
            available: format!("{available}, all"),
        }),
        Err(e) => Err(e),
    }
}
