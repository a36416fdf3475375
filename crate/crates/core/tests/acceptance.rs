//! Acceptance criteria, one line each. Run with
//! `cargo test -p assoc-mp --test acceptance`.

use std::f64::consts::SQRT_2;
use std::process::Command;
use std::time::{Duration, Instant};

use assoc_mp::bargmann::transform_norm_residual;
use assoc_mp::measures::default_weight_grid;
use assoc_mp::polynomials::assoc_mp_eval;
use assoc_mp::verify::{
    critical_line_report, delta_report, diagonality_and_cr, gf_closed_vs_series_report, gf_ode_report,
    half_value_report, lambda_coefficient_report, norm_check_radial_grid, orthonormality_report, radial_moments_report,
    closed_2f1_report, spectral_report, triple_representation_report, wavefunction_report, weight_mass_report,
    VerificationReport, VerifyContext, NORM_ANGLES,
};
use assoc_mp::Result;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_reports(reports: &[VerificationReport]) -> Outcome {
    let passed = reports.iter().all(|r| r.passed);
    let detail = reports
        .iter()
        .map(|r| format!("{} {:.2e}/{:.0e}", r.identity_id, r.max_residual(), r.tolerance))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { passed, detail }
}

fn within(outcome: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    Outcome {
        passed: outcome.passed && elapsed < limit,
        detail: format!("{}; {:.0} ms (limit {} s)", outcome.detail, elapsed.as_secs_f64() * 1e3, limit.as_secs()),
    }
}

/// The five lowest polynomials written out by hand.
fn hand_closed_form(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x / SQRT_2,
        2 => (x * x - 2.0) / 3.0,
        3 => (SQRT_2 / 12.0) * x.powi(3) - (13.0 / (12.0 * SQRT_2)) * x,
        4 => x.powi(4) / 30.0 - 29.0 * x * x / 60.0 + 8.0 / 15.0,
        _ => unreachable!(),
    }
}

fn c1() -> Result<Outcome> {
    let t0 = Instant::now();
    let xs = [-4.0, -2.5, -1.0, -0.3, 0.0, 0.45, 1.7, 3.2, 5.0];
    let mut worst = 0.0f64;
    for n in 0..=4 {
        for &x in &xs {
            let want = hand_closed_form(n, x);
            worst = worst.max((assoc_mp_eval(n, x) - want).abs() / want.abs().max(1.0));
        }
    }
    Ok(within(
        Outcome {
            passed: worst < 1e-12,
            detail: format!("max rel {worst:.2e}/1e-12"),
        },
        t0.elapsed(),
        Duration::from_secs(1),
    ))
}

fn c2(ctx: &VerifyContext) -> Result<Outcome> {
    let t0 = Instant::now();
    let r = triple_representation_report(ctx)?;
    Ok(within(from_reports(&[r]), t0.elapsed(), Duration::from_secs(5)))
}

fn c3(ctx: &VerifyContext) -> Result<Outcome> {
    Ok(from_reports(&[gf_closed_vs_series_report(ctx)?, gf_ode_report(ctx)?]))
}

fn c4(ctx: &VerifyContext) -> Result<Outcome> {
    Ok(from_reports(&[critical_line_report(ctx)?, closed_2f1_report(ctx)?, half_value_report(ctx)?]))
}

fn c5(ctx: &VerifyContext) -> Result<Outcome> {
    let t0 = Instant::now();
    let reports = [orthonormality_report(ctx)?, weight_mass_report(ctx)?];
    Ok(within(from_reports(&reports), t0.elapsed(), Duration::from_secs(30)))
}

fn c6() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for n in 0..=40usize {
        let want = if n % 2 == 1 {
            0.0
        } else {
            // (−1)^{n/2} 2ⁿ ((n/2)!)² / (n+1)!, built as a running product.
            let h = n / 2;
            let mut v = if h % 2 == 0 { 1.0 } else { -1.0 };
            for k in 1..=h {
                v *= (k * k) as f64;
            }
            for k in 1..=n + 1 {
                v /= k as f64;
            }
            v * 2f64.powi(n as i32)
        };
        let got = assoc_mp_eval(n, 0.0);
        let err = if want == 0.0 { got.abs() } else { (got - want).abs() / want.abs() };
        worst = worst.max(err);
    }
    Ok(Outcome {
        passed: worst < 1e-12,
        detail: format!("max rel {worst:.2e}/1e-12 over n<=40"),
    })
}

fn c7(ctx: &VerifyContext) -> Result<Outcome> {
    Ok(from_reports(&[delta_report(ctx)?]))
}

fn c8(ctx: &VerifyContext) -> Result<Outcome> {
    Ok(from_reports(&[wavefunction_report(ctx)?, lambda_coefficient_report(ctx)?]))
}

fn c9(ctx: &VerifyContext) -> Result<Outcome> {
    let grid = default_weight_grid();
    let (diag, _, _) = diagonality_and_cr(ctx, &grid)?;
    let diag_max = diag.iter().copied().fold(0.0, f64::max);
    let r_grid = norm_check_radial_grid();
    let mut norm_max = 0.0f64;
    for n in [0usize, 1, 3] {
        let f = move |x: f64| assoc_mp_eval(n, x);
        let check = transform_norm_residual(&f, &r_grid, NORM_ANGLES, &grid, &ctx.ctrl)?;
        norm_max = norm_max.max(check.residual);
    }
    Ok(Outcome {
        passed: diag_max < 1e-5 && norm_max < 1e-3,
        detail: format!("diagonality {diag_max:.2e}/1e-5; norm {norm_max:.2e}/1e-3 (density 4|z|^2 K0(2|z|) dA/2pi)"),
    })
}

fn c10(ctx: &VerifyContext) -> Result<Outcome> {
    Ok(from_reports(&[
        radial_moments_report(ctx, 0..=3, "radial_moments_low", 1e-8)?,
        radial_moments_report(ctx, 4..=6, "radial_moments_high", 1e-6)?,
    ]))
}

fn c11(ctx: &VerifyContext) -> Result<Outcome> {
    Ok(from_reports(&[spectral_report(ctx)?]))
}

fn c12() -> Result<Outcome> {
    let t0 = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_assoc-mp"))
        .args(["verify", "--suite", "all"])
        .output()
        .expect("spawn CLI");
    let elapsed = t0.elapsed();
    let failing = String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| l.starts_with("FAIL"))
        .count();
    Ok(within(
        Outcome {
            passed: out.status.code() == Some(0),
            detail: format!("exit {:?}, {failing} failing identities", out.status.code()),
        },
        elapsed,
        Duration::from_secs(120),
    ))
}

fn main() {
    let ctx = VerifyContext::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<Outcome>>)> = vec![
        ("explicit low-order forms", Box::new(c1)),
        ("recurrence / determinant / explicit agreement", Box::new(move || c2(&ctx))),
        ("generating function closed form and ODE", Box::new(move || c3(&ctx))),
        ("2F1(2,2;5/2;.) elementary forms", Box::new(move || c4(&ctx))),
        ("orthonormality and unit mass", Box::new(move || c5(&ctx))),
        ("values at the origin", Box::new(c6)),
        ("delta series closed form", Box::new(move || c7(&ctx))),
        ("kernel closed form and coefficients", Box::new(move || c8(&ctx))),
        ("transform diagonality and norm", Box::new(move || c9(&ctx))),
        ("K0 radial moments", Box::new(move || c10(&ctx))),
        ("Jacobi eigenvalues are roots", Box::new(move || c11(&ctx))),
        ("verify --suite all", Box::new(c12)),
    ];
    let mut failures = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let outcome = check().unwrap_or_else(|e| Outcome {
            passed: false,
            detail: format!("error: {e}"),
        });
        if !outcome.passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {} {}: {}",
            i + 1,
            if outcome.passed { "PASS" } else { "FAIL" },
            label,
            outcome.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
