use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use assoc_mp::bargmann::bargmann_transform_with;
use assoc_mp::measures::default_weight_grid;
use assoc_mp::polynomials::{assoc_mp_eval, PolynomialFamily};
use assoc_mp::registry::{kernel_routes, polynomial_routes};
use assoc_mp::verify::{run_suites, VerifyContext};
use assoc_mp::{Error, SeriesControl};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
/// Internal marker: stdout closed by the reader, not an error.
const EXIT_PIPE: u8 = 255;

/// Largest polynomial index accepted in a transform input.
const MAX_TRANSFORM_DEGREE: usize = 10;

#[derive(Parser)]
#[command(name = "assoc-mp", version, about = "First-associated Meixner-Pollaczek polynomials: evaluation, tables and identity checks")]
struct Cli {
    /// Output format (default: csv for plot-data, plain otherwise)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Replace every verification tolerance with this value
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Not supported; nothing here is random
    #[arg(long, global = true, hide = true)]
    seed: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one polynomial at one point
    Eval {
        /// assoc, classical or monic
        #[arg(long, default_value = "assoc")]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        /// Argument of the classical family (alias of --x)
        #[arg(long, allow_negative_numbers = true)]
        y: Option<f64>,
        /// Evaluation route for the associated family
        #[arg(long)]
        method: Option<String>,
    },
    /// Tabulate p_n on a uniform grid
    PlotData {
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, default_value_t = 401)]
        steps: usize,
    },
    /// Run identity verification suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Bargmann-type transform of a combination of p_n
    Transform {
        /// Linear combination such as "p3" or "p1+2*p2"
        #[arg(long = "f", allow_hyphen_values = true)]
        f: String,
        /// Complex point such as "0.3+0.4i"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "closed")]
        kernel: String,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownStrategy { .. } => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: if e.kind() == io::ErrorKind::BrokenPipe { EXIT_PIPE } else { EXIT_NUMERIC },
            message: e.to_string(),
        }
    }
}

/// Rounds to 15 significant digits and clears the sign of zero.
fn round15(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

fn fmt_num(v: f64) -> String {
    format!("{}", round15(v))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) if f.code == EXIT_PIPE => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if cli.seed.is_some() {
        return Err(Failure::usage("--seed is not accepted: no command uses randomness"));
    }
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::usage(format!("--tol must be positive, got {t}")));
        }
    }
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Eval {
            family,
            n,
            x,
            y,
            method,
        } => cmd_eval(&mut out, cli.format.unwrap_or(Format::Plain), &family, n, x, y, method),
        Command::PlotData {
            n_list,
            x_min,
            x_max,
            steps,
        } => cmd_plot_data(&mut out, cli.format.unwrap_or(Format::Csv), &n_list, x_min, x_max, steps),
        Command::Verify { suite } => cmd_verify(&mut out, cli.format.unwrap_or(Format::Plain), &suite, cli.tol),
        Command::Transform { f, z, kernel } => cmd_transform(&mut out, cli.format.unwrap_or(Format::Plain), &f, &z, &kernel),
    }
}

fn cmd_eval(
    out: &mut impl Write,
    format: Format,
    family: &str,
    n: usize,
    x: Option<f64>,
    y: Option<f64>,
    method: Option<String>,
) -> Result<u8, Failure> {
    let family: PolynomialFamily = family.parse().map_err(|e: Error| Failure::usage(e.to_string()))?;
    let arg = match (x, y) {
        (Some(v), None) | (None, Some(v)) => v,
        (Some(_), Some(_)) => return Err(Failure::usage("give only one of --x and --y")),
        (None, None) => return Err(Failure::usage("missing --x (or --y)")),
    };
    if !arg.is_finite() {
        return Err(Failure::usage("argument must be finite"));
    }
    let value = match (family, method) {
        (PolynomialFamily::AssocMp, Some(m)) => {
            let routes = polynomial_routes();
            routes.get(&m)?.eval(n, arg, &SeriesControl::default())?
        }
        (_, Some(_)) => return Err(Failure::usage("--method applies to the assoc family only")),
        (f, None) => f.eval(n, arg),
    };
    if !value.is_finite() {
        return Err(Error::NonFinite("polynomial value").into());
    }
    match format {
        Format::Plain => writeln!(out, "{}", fmt_num(value))?,
        Format::Csv => {
            writeln!(out, "family,n,arg,value")?;
            writeln!(out, "{},{},{},{}", family.name(), n, fmt_num(arg), fmt_num(value))?;
        }
        Format::Json => {
            let row = serde_json::json!({
                "family": family.name(),
                "n": n,
                "arg": round15(arg),
                "value": round15(value),
            });
            writeln!(out, "{row}")?;
        }
    }
    Ok(0)
}

fn cmd_plot_data(
    out: &mut impl Write,
    format: Format,
    n_list: &[usize],
    x_min: f64,
    x_max: f64,
    steps: usize,
) -> Result<u8, Failure> {
    if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
        return Err(Failure::usage(format!("need x_min < x_max, got [{x_min}, {x_max}]")));
    }
    if steps < 2 {
        return Err(Failure::usage("--steps must be at least 2"));
    }
    if n_list.is_empty() {
        return Err(Failure::usage("--n-list is empty"));
    }
    let rows: Vec<(f64, Vec<f64>)> = (0..steps)
        .map(|i| {
            // Weighted form: symmetric ranges give exactly mirrored abscissae.
            let m = (steps - 1) as f64;
            let x = ((m - i as f64) * x_min + i as f64 * x_max) / m;
            (x, n_list.iter().map(|&n| assoc_mp_eval(n, x)).collect())
        })
        .collect();
    match format {
        Format::Csv | Format::Plain => {
            let sep = if format == Format::Csv { "," } else { " " };
            let header: Vec<String> = std::iter::once("x".to_string())
                .chain(n_list.iter().map(|n| format!("p{n}")))
                .collect();
            writeln!(out, "{}", header.join(sep))?;
            for (x, vals) in &rows {
                let cells: Vec<String> = std::iter::once(fmt_num(*x))
                    .chain(vals.iter().map(|v| fmt_num(*v)))
                    .collect();
                writeln!(out, "{}", cells.join(sep))?;
            }
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|(x, vals)| {
                    let mut m = serde_json::Map::new();
                    m.insert("x".into(), round15(*x).into());
                    for (n, v) in n_list.iter().zip(vals) {
                        m.insert(format!("p{n}"), round15(*v).into());
                    }
                    serde_json::Value::Object(m)
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(arr))?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct JsonReport<'a> {
    identity_id: &'a str,
    passed: bool,
    max_residual: f64,
    tolerance: f64,
}

fn cmd_verify(out: &mut impl Write, format: Format, suite: &str, tol: Option<f64>) -> Result<u8, Failure> {
    let ctx = VerifyContext {
        ctrl: SeriesControl::default(),
        tol_override: tol,
    };
    let outcome = run_suites(suite, &ctx)?;
    let all_passed = outcome.reports.iter().all(|r| r.passed);
    match format {
        Format::Json => {
            let rows: Vec<JsonReport> = outcome
                .reports
                .iter()
                .map(|r| JsonReport {
                    identity_id: &r.identity_id,
                    passed: r.passed,
                    max_residual: r.max_residual(),
                    tolerance: r.tolerance,
                })
                .collect();
            let text = serde_json::to_string_pretty(&rows).map_err(|e| Failure {
                code: EXIT_NUMERIC,
                message: e.to_string(),
            })?;
            writeln!(out, "{text}")?;
        }
        Format::Csv => {
            writeln!(out, "identity_id,passed,max_residual,tolerance")?;
            for r in &outcome.reports {
                writeln!(out, "{},{},{:e},{:e}", r.identity_id, r.passed, r.max_residual(), r.tolerance)?;
            }
        }
        Format::Plain => {
            for r in &outcome.reports {
                writeln!(
                    out,
                    "{} {:<32} max_residual={:.3e} tolerance={:.1e} points={}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.identity_id,
                    r.max_residual(),
                    r.tolerance,
                    r.sample_points.len()
                )?;
            }
            for note in &outcome.notes {
                writeln!(out, "note: {note}")?;
            }
        }
    }
    Ok(if all_passed { 0 } else { EXIT_VERIFY })
}

/// Parses `c1*p_a + c2*p_b − …` into `(coefficient, degree)` pairs.
fn parse_combination(spec: &str) -> Result<Vec<(f64, usize)>, String> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty function spec".into());
    }
    let mut terms = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1.0, &rest[1..]),
            b'-' => (-1.0, &rest[1..]),
            _ if terms.is_empty() => (1.0, rest),
            _ => return Err(format!("expected '+' or '-' before '{rest}'")),
        };
        let p = body.find('p').ok_or_else(|| format!("missing p<n> in '{body}'"))?;
        let coef_text = body[..p].strip_suffix('*').unwrap_or(&body[..p]);
        let coef: f64 = if coef_text.is_empty() {
            1.0
        } else {
            coef_text.parse().map_err(|_| format!("bad coefficient '{coef_text}'"))?
        };
        let digits: String = body[p + 1..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(format!("missing index after 'p' in '{body}'"));
        }
        let n: usize = digits.parse().map_err(|_| format!("bad index '{digits}'"))?;
        if n > MAX_TRANSFORM_DEGREE {
            return Err(format!("p{n} exceeds p{MAX_TRANSFORM_DEGREE}"));
        }
        if !coef.is_finite() {
            return Err("coefficient must be finite".into());
        }
        terms.push((sign * coef, n));
        rest = &body[p + 1 + digits.len()..];
    }
    Ok(terms)
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (and `i`, `-i`).
fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("bad complex number '{text}'");
    let Some(body) = s.strip_suffix('i') else {
        let re: f64 = s.parse().map_err(|_| bad())?;
        return if re.is_finite() { Ok(Complex64::new(re, 0.0)) } else { Err(bad()) };
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_text.is_empty() {
        0.0
    } else {
        re_text.parse().map_err(|_| bad())?
    };
    let im = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse().map_err(|_| bad())?,
    };
    let z = Complex64::new(re, im);
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

fn cmd_transform(out: &mut impl Write, format: Format, spec: &str, z: &str, kernel: &str) -> Result<u8, Failure> {
    let terms = parse_combination(spec).map_err(Failure::usage)?;
    let z = parse_complex(z).map_err(Failure::usage)?;
    let routes = kernel_routes();
    let route = routes.get(kernel)?;
    let f = move |x: f64| terms.iter().map(|&(c, n)| c * assoc_mp_eval(n, x)).sum::<f64>();
    let grid = default_weight_grid();
    let value = bargmann_transform_with(route, &f, z, &grid, &SeriesControl::default())?;
    // Anything that prints as ±0.000000000000 is written as +0.
    let clean = |v: f64| if v.abs() < 5e-13 { 0.0 } else { v };
    let (re, im) = (clean(value.re), clean(value.im));
    match format {
        Format::Plain => writeln!(out, "{re:.12}{im:+.12}i")?,
        Format::Csv => {
            writeln!(out, "re,im")?;
            writeln!(out, "{re:.12},{im:.12}")?;
        }
        Format::Json => writeln!(out, "{}", serde_json::json!({"re": round15(re), "im": round15(im)}))?,
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_grammar() {
        assert_eq!(parse_combination("p3").unwrap(), vec![(1.0, 3)]);
        assert_eq!(parse_combination("p1+2*p2").unwrap(), vec![(1.0, 1), (2.0, 2)]);
        assert_eq!(parse_combination("-0.5*p0 - p4").unwrap(), vec![(-0.5, 0), (-1.0, 4)]);
        assert_eq!(parse_combination("3p1").unwrap(), vec![(3.0, 1)]);
        for bad in ["", "q1", "p", "p11", "p1 p2", "x*p1", "p1+"] {
            assert!(parse_combination(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn complex_grammar() {
        assert_eq!(parse_complex("0.3+0i").unwrap(), Complex64::new(0.3, 0.0));
        assert_eq!(parse_complex("0.6").unwrap(), Complex64::new(0.6, 0.0));
        assert_eq!(parse_complex("0.5i").unwrap(), Complex64::new(0.0, 0.5));
        assert_eq!(parse_complex("-1-2i").unwrap(), Complex64::new(-1.0, -2.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e-1i").unwrap(), Complex64::new(1e-3, 0.2));
        for bad in ["", "abc", "1+2j", "1++2i", "nan"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(fmt_num(-2.0 / 3.0), "-0.666666666666667");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
    }
}
