//! Orthogonality weight of `p_n`, the coherent-state normalisation, and the
//! radial measure that resolves the identity.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polynomials::assoc_mp_sequence;
use crate::quadrature::{build_hermite_style_grid, build_radial_grid, QuadratureGrid};
use crate::special::{bessel_i0, gamma_abs_sq_3half, gauss_2f1, macdonald_k0, SeriesControl};

/// `2√2/π`. With this prefactor `∫ ω = 1`; see [`weight_omega`].
pub const WEIGHT_PREFACTOR: f64 = 2.0 * SQRT_2 / PI;

/// Truncation radius of the real-line quadrature. The weight alone is
/// negligible well before 25, but `p_10(x)² ω(x)` still carries about 6e-6
/// of its mass beyond 25; at 40 the tail is below 1e-13.
pub const WEIGHT_CUT: f64 = 40.0;
pub const WEIGHT_NODES: usize = 800;

/// Radial cut for `K0`-weighted moments. At 30 the tail of
/// `ρ^15 K0(2ρ)` is below 1e-11 of its integral.
pub const RADIAL_CUT: f64 = 30.0;

/// Below this `u`, the normalisation is summed directly instead of through
/// `(I0(2√u) − 1)/u`, which cancels badly for small `u`.
const NORMALIZATION_SERIES_MAX: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightEvaluation {
    pub x: f64,
    pub omega: f64,
}

/// `ω(x) = (2√2/π) |Γ(3/2 + ix/√2)|² |2F1(1, 1; 3/2 + ix/√2; 1/2)|⁻²`,
/// the density that makes `{p_n}` orthonormal on ℝ.
pub fn weight_omega(x: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::DomainViolation(format!("weight argument {x} not finite")));
    }
    let y = x / SQRT_2;
    let one = Complex64::new(1.0, 0.0);
    let f = gauss_2f1(one, one, Complex64::new(1.5, y), Complex64::new(0.5, 0.0), ctrl)?;
    Ok(WEIGHT_PREFACTOR * gamma_abs_sq_3half(y) / f.norm_sqr())
}

pub fn weight_evaluation(x: f64, ctrl: &SeriesControl) -> Result<WeightEvaluation> {
    Ok(WeightEvaluation {
        x,
        omega: weight_omega(x, ctrl)?,
    })
}

pub fn default_weight_grid() -> QuadratureGrid {
    build_hermite_style_grid(WEIGHT_NODES, WEIGHT_CUT).expect("static grid parameters")
}

pub fn default_radial_grid() -> QuadratureGrid {
    build_radial_grid(RADIAL_CUT, 12, 58).expect("static grid parameters")
}

/// `ω` at every node of `grid`, in node order.
pub fn weight_on_grid(grid: &QuadratureGrid, ctrl: &SeriesControl) -> Result<Vec<f64>> {
    grid.nodes().par_iter().map(|&x| weight_omega(x, ctrl)).collect()
}

/// Gram matrix `G_mn = Σ_k w_k p_m(x_k) p_n(x_k) ω(x_k)` for `m, n ≤ n_max`.
pub fn orthonormality_matrix(n_max: usize, grid: &QuadratureGrid, ctrl: &SeriesControl) -> Result<Vec<Vec<f64>>> {
    if grid.len() < 40 * n_max.max(1) {
        return Err(Error::DomainViolation(format!(
            "grid with {} nodes cannot resolve p_{n_max}² ω (need ≥ {})",
            grid.len(),
            40 * n_max.max(1)
        )));
    }
    let omega = weight_on_grid(grid, ctrl)?;
    let polys: Vec<Vec<f64>> = grid
        .nodes()
        .par_iter()
        .map(|&x| assoc_mp_sequence(n_max, x))
        .collect();
    let mut gram = vec![vec![0.0; n_max + 1]; n_max + 1];
    let mut values = vec![0.0; grid.len()];
    for m in 0..=n_max {
        for n in m..=n_max {
            for (k, v) in values.iter_mut().enumerate() {
                *v = polys[k][m] * polys[k][n] * omega[k];
            }
            let g = grid.reduce(&values);
            gram[m][n] = g;
            gram[n][m] = g;
        }
    }
    Ok(gram)
}

/// `max |G − I|`.
pub fn gram_defect(gram: &[Vec<f64>]) -> f64 {
    gram.iter()
        .enumerate()
        .flat_map(|(m, row)| {
            row.iter()
                .enumerate()
                .map(move |(n, g)| (g - if m == n { 1.0 } else { 0.0 }).abs())
        })
        .fold(0.0, f64::max)
}

/// Coherent-state normalisation `N(u) = Σ uⁿ/((n+1)!)² = (I0(2√u) − 1)/u`
/// with `u = |z|²`.
pub fn nlcs_normalization(u: f64) -> Result<f64> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::DomainViolation(format!("normalisation needs finite u >= 0, got {u}")));
    }
    if u < NORMALIZATION_SERIES_MAX {
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut n = 1.0;
        while term > 1e-17 * sum {
            term *= u / ((n + 1.0) * (n + 1.0));
            sum += term;
            n += 1.0;
        }
        return Ok(sum);
    }
    Ok((bessel_i0(2.0 * u.sqrt())? - 1.0) / u)
}

/// `∫₀^R ρ^{2n+3} K0(2ρ) dρ` on the given radial grid.
pub fn radial_moment(n: usize, radial_grid: &QuadratureGrid) -> Result<f64> {
    let values: Vec<f64> = radial_grid
        .nodes()
        .iter()
        .map(|&r| Ok(r.powi(2 * n as i32 + 3) * macdonald_k0(2.0 * r)?))
        .collect::<Result<_>>()?;
    Ok(radial_grid.reduce(&values))
}

/// `((n+1)!)² / 4`, the target of [`radial_moment`].
pub fn radial_moment_target(n: usize) -> f64 {
    let f: f64 = (1..=n + 1).map(|k| k as f64).product();
    0.25 * f * f
}

/// Relative defect of the radial moment identity
/// `∫₀^∞ ρ^{2n+3} K0(2ρ) dρ = ((n+1)!)²/4`.
pub fn radial_moment_residual(n: usize, radial_grid: &QuadratureGrid) -> Result<f64> {
    if n > 8 {
        return Err(Error::DomainViolation(format!("radial moments checked for n <= 8, got {n}")));
    }
    let target = radial_moment_target(n);
    Ok((radial_moment(n, radial_grid)? - target).abs() / target)
}

/// Normalisation of the Lebesgue measure `dμ` in
/// `dν(z) = 4 K0(2|z|) (I0(2|z|) − 1) dμ(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaConvention {
    /// `dμ = dA / 2π`; this is the one that resolves the identity.
    OverTwoPi,
    /// `dμ = dA / π`.
    OverPi,
}

impl AreaConvention {
    pub fn factor(self) -> f64 {
        match self {
            AreaConvention::OverTwoPi => 1.0 / (2.0 * PI),
            AreaConvention::OverPi => 1.0 / PI,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AreaConvention::OverTwoPi => "dmu = dA/(2 pi)",
            AreaConvention::OverPi => "dmu = dA/pi",
        }
    }
}

/// Diagonal entry `⟨φ_n| ∫ |z⟩⟨z| dν |φ_n⟩` of the resolution of the
/// identity, with the angular integral done analytically. Equals 1 under
/// [`AreaConvention::OverTwoPi`].
pub fn resolution_diagonal(n: usize, radial_grid: &QuadratureGrid, convention: AreaConvention) -> Result<f64> {
    let fact: f64 = (1..=n + 1).map(|k| k as f64).product();
    let values: Vec<f64> = radial_grid
        .nodes()
        .iter()
        .map(|&r| {
            let u = r * r;
            let density = 4.0 * macdonald_k0(2.0 * r)? * (bessel_i0(2.0 * r)? - 1.0);
            let coherent = r.powi(2 * n as i32) / (fact * fact) / nlcs_normalization(u)?;
            Ok(coherent * density * r)
        })
        .collect::<Result<_>>()?;
    Ok(2.0 * PI * convention.factor() * radial_grid.reduce(&values))
}
