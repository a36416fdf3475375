//! Coherent-state wavefunctions `⟨ξ|z⟩`, the Bargmann-type kernel
//! `B(z, ξ)` and the transform `B[f](z) = ∫ B(z, ξ) f(ξ) ω(ξ) dξ`.
//!
//! The kernel equals the generating function
//!
//! ```text
//! Λ(ξ, z) = Σ zⁿ/(n+1)! · p_n(ξ)
//!         = e^{−iz} / (z(√2ξ − i)) · [2F1(1,1;c;1/2) 1F1(1/2 − iξ/√2; 1; 2iz) − Ψ1(1,1;c,1;1/2,iz)]
//! ```
//!
//! with `c = (3+i√2ξ)/2`. The exponential multiplies both bracket terms: the
//! `Ψ1` term is the closed form of the series `δ(iz/2, c; 1/2)`, which
//! carries its own `e^{−iz}`. Two routes to the kernel are registered as
//! [`KernelRoute`]s: `closed` (the formula above) and `series` (the sum).

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{nlcs_normalization, weight_on_grid};
use crate::polynomials::assoc_mp_sequence;
use crate::quadrature::QuadratureGrid;
use crate::special::{check_finite, gauss_2f1, humbert_psi1, kummer_1f1, pochhammer, SeriesControl};

/// Below this `|z|` the closed forms (which carry `1/z`) give way to series.
/// The bracket is only good to `rel_tol`, so the quotient loses about
/// `rel_tol/|z|`; at this radius that stays near `1e-11`.
pub const SMALL_Z: f64 = 0.25;

/// Hard cap on the number of terms of the kernel series.
pub const KERNEL_SERIES_MAX_TERMS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub z: Complex64,
    pub xi: f64,
    pub value: Complex64,
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `c = (3 + i√2ξ)/2`.
pub fn kernel_parameter(xi: f64) -> Complex64 {
    c64(1.5, xi / SQRT_2)
}

/// `δ(t, c; x) = Σ tⁿ/(c)_n · 2F1(n+1, n+1; n+c; x)`, summed directly.
pub fn delta_series(t: Complex64, c: Complex64, x: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    if !(x.norm() < 1.0) {
        return Err(Error::DomainViolation(format!("delta series needs |x| < 1, got {}", x.norm())));
    }
    let mut prefactor = c64(1.0, 0.0); // tⁿ/(c)_n
    let mut sum = c64(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..ctrl.max_terms {
        let nf = n as f64;
        let f = gauss_2f1(c64(nf + 1.0, 0.0), c64(nf + 1.0, 0.0), c + nf, x, ctrl)?;
        let term = prefactor * f;
        sum += term;
        if term.norm() <= ctrl.rel_tol * sum.norm() + ctrl.abs_floor {
            quiet += 1;
            if quiet == 3 {
                return check_finite(sum, "delta series");
            }
        } else {
            quiet = 0;
        }
        prefactor = prefactor * t / (c + nf);
    }
    Err(Error::NonConvergence {
        what: "delta series",
        terms: ctrl.max_terms,
    })
}

/// `δ(t, c; x) = e^{−t/x} Ψ1(1, 1; c, 1; x, t/x)`.
pub fn delta_closed(t: Complex64, c: Complex64, x: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    if x.norm() == 0.0 {
        return Err(Error::DomainViolation("delta closed form needs x != 0".into()));
    }
    let y = t / x;
    let one = c64(1.0, 0.0);
    let psi = humbert_psi1(one, one, c, one, x, y, ctrl)?;
    check_finite((-y).exp() * psi, "delta closed form")
}

/// `Σ P_{n+1}^{(1/2)}(ξ/√2; π/2) z̄ⁿ/(n+1)! = (e^{−iz̄} 1F1(1/2 − iξ/√2; 1; 2iz̄) − 1)/z̄`.
pub fn mp_shifted_egf(xi: f64, zbar: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    if zbar.norm() <= SMALL_Z {
        let y = xi / SQRT_2;
        let (mut prev, mut cur) = (1.0, 2.0 * y); // P_0, P_1
        let mut coef = c64(1.0, 0.0); // z̄ⁿ/(n+1)!
        let mut sum = c64(0.0, 0.0);
        for n in 0..KERNEL_SERIES_MAX_TERMS {
            let term = coef * cur;
            sum += term;
            let nf = n as f64;
            let next = (2.0 * y * cur - (nf + 1.0) * prev) / (nf + 2.0);
            if n >= 4 && coef.norm() * cur.abs().max(next.abs()).max(prev.abs()) <= 1e-17 * sum.norm().max(1e-300) {
                return check_finite(sum, "shifted classical generating function");
            }
            prev = cur;
            cur = next;
            coef = coef * zbar / (nf + 2.0);
        }
        return Err(Error::NonConvergence {
            what: "shifted classical generating function",
            terms: KERNEL_SERIES_MAX_TERMS,
        });
    }
    let i = c64(0.0, 1.0);
    let k = kummer_1f1(c64(0.5, -xi / SQRT_2), c64(1.0, 0.0), 2.0 * i * zbar, ctrl)?;
    check_finite(((-i * zbar).exp() * k - 1.0) / zbar, "shifted classical generating function")
}

/// `Λ(ξ, w) = Σ wⁿ/(n+1)! p_n(ξ)`, summed until the terms are negligible.
pub fn lambda_series(xi: f64, w: Complex64) -> Result<Complex64> {
    let r = w.norm();
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut coef = c64(1.0, 0.0); // wⁿ/(n+1)!
    let mut sum = c64(0.0, 0.0);
    let min_terms = (2.0 * r) as usize + 8;
    for n in 0..KERNEL_SERIES_MAX_TERMS {
        let term = coef * cur;
        sum += term;
        let nf = n as f64;
        let next = (SQRT_2 * xi * cur - (nf + 1.0) * prev) / (nf + 2.0);
        let bound = coef.norm() * cur.abs().max(next.abs()).max(prev.abs());
        if n >= min_terms && bound <= 1e-17 * sum.norm() {
            return check_finite(sum, "kernel series");
        }
        prev = cur;
        cur = next;
        coef = coef * w / (nf + 2.0);
    }
    Err(Error::NonConvergence {
        what: "kernel series",
        terms: KERNEL_SERIES_MAX_TERMS,
    })
}

/// Closed form of `Λ(ξ, w)` for `|w| > 0`.
pub fn lambda_closed(xi: f64, w: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    let i = c64(0.0, 1.0);
    let one = c64(1.0, 0.0);
    let c = kernel_parameter(xi);
    let base = gauss_2f1(one, one, c, c64(0.5, 0.0), ctrl)?;
    let kummer = kummer_1f1(c64(0.5, -xi / SQRT_2), one, 2.0 * i * w, ctrl)?;
    let psi = humbert_psi1(one, one, c, one, c64(0.5, 0.0), i * w, ctrl)?;
    let value = (-i * w).exp() * (base * kummer - psi) / (w * c64(SQRT_2 * xi, -1.0));
    check_finite(value, "kernel closed form")
}

/// `⟨ξ|z⟩ = N(|z|²)^{−1/2} Σ_{n < n_terms} z̄ⁿ/(n+1)! · p_n(ξ)`.
pub fn nlcs_wavefunction_series(xi: f64, z: Complex64, n_terms: usize) -> Result<Complex64> {
    let zbar = z.conj();
    let p = assoc_mp_sequence(n_terms.max(1) - 1, xi);
    let mut coef = c64(1.0, 0.0);
    let mut sum = c64(0.0, 0.0);
    for (n, pn) in p.iter().enumerate().take(n_terms) {
        sum += coef * *pn;
        coef = coef * zbar / (n as f64 + 2.0);
    }
    let norm = nlcs_normalization(z.norm_sqr())?;
    check_finite(sum / norm.sqrt(), "wavefunction series")
}

/// Closed-form coordinate representation `⟨ξ|z⟩ = N(|z|²)^{−1/2} Λ(ξ, z̄)`.
pub fn nlcs_wavefunction_closed(xi: f64, z: Complex64, ctrl: &SeriesControl) -> Result<KernelEval> {
    let lambda = if z.norm() < SMALL_Z {
        lambda_series(xi, z.conj())?
    } else {
        lambda_closed(xi, z.conj(), ctrl)?
    };
    let norm = nlcs_normalization(z.norm_sqr())?;
    Ok(KernelEval {
        z,
        xi,
        value: lambda / norm.sqrt(),
    })
}

/// Bargmann-type kernel `B(z, ξ) = Λ(ξ, z)`, closed form with a series
/// fallback at the removable singularity `z = 0`.
pub fn bargmann_kernel(z: Complex64, xi: f64, ctrl: &SeriesControl) -> Result<KernelEval> {
    let value = if z.norm() < SMALL_Z {
        lambda_series(xi, z)?
    } else {
        lambda_closed(xi, z, ctrl)?
    };
    Ok(KernelEval { z, xi, value })
}

/// A way of evaluating the kernel `B(z, ξ)` and transforms built on it.
pub trait KernelRoute: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn kernel(&self, z: Complex64, xi: f64, ctrl: &SeriesControl) -> Result<Complex64>;

    /// `B[f](z)` at each of `zs`, by quadrature over `grid`.
    fn transform_many(
        &self,
        f: &(dyn Fn(f64) -> f64 + Sync),
        zs: &[Complex64],
        grid: &QuadratureGrid,
        ctrl: &SeriesControl,
    ) -> Result<Vec<Complex64>> {
        let omega = weight_on_grid(grid, ctrl)?;
        let weighted: Vec<f64> = grid
            .nodes()
            .iter()
            .zip(&omega)
            .map(|(&x, w)| f(x) * w)
            .collect();
        zs.iter()
            .map(|&z| {
                let kernel: Vec<Complex64> = grid
                    .nodes()
                    .par_iter()
                    .map(|&xi| self.kernel(z, xi, ctrl))
                    .collect::<Result<_>>()?;
                let re: Vec<f64> = kernel.iter().zip(&weighted).map(|(k, v)| k.re * v).collect();
                let im: Vec<f64> = kernel.iter().zip(&weighted).map(|(k, v)| k.im * v).collect();
                Ok(c64(grid.reduce(&re), grid.reduce(&im)))
            })
            .collect()
    }
}

/// Kernel from the `2F1`/`1F1`/`Ψ1` closed form.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedKernel;

/// Kernel from the generating series `Σ zⁿ/(n+1)! p_n(ξ)`.
///
/// Transforms are evaluated by first projecting `f` onto `p_n` with the
/// quadrature and then summing the series in `z`, which is the same finite
/// double sum taken in the other order.
#[derive(Debug, Clone, Copy)]
pub struct SeriesKernel {
    pub projection_terms: usize,
}

impl Default for SeriesKernel {
    fn default() -> Self {
        Self { projection_terms: 120 }
    }
}

impl KernelRoute for ClosedKernel {
    fn name(&self) -> &'static str {
        "closed"
    }
    fn description(&self) -> &'static str {
        "2F1 · 1F1 − Psi1 closed form"
    }
    fn kernel(&self, z: Complex64, xi: f64, ctrl: &SeriesControl) -> Result<Complex64> {
        bargmann_kernel(z, xi, ctrl).map(|k| k.value)
    }
}

impl KernelRoute for SeriesKernel {
    fn name(&self) -> &'static str {
        "series"
    }
    fn description(&self) -> &'static str {
        "generating series sum z^n/(n+1)! p_n(xi)"
    }
    fn kernel(&self, z: Complex64, xi: f64, _ctrl: &SeriesControl) -> Result<Complex64> {
        lambda_series(xi, z)
    }

    fn transform_many(
        &self,
        f: &(dyn Fn(f64) -> f64 + Sync),
        zs: &[Complex64],
        grid: &QuadratureGrid,
        ctrl: &SeriesControl,
    ) -> Result<Vec<Complex64>> {
        let n_max = self.projection_terms;
        let omega = weight_on_grid(grid, ctrl)?;
        let rows: Vec<Vec<f64>> = grid
            .nodes()
            .par_iter()
            .zip(omega.par_iter())
            .map(|(&x, &w)| {
                let fw = f(x) * w;
                assoc_mp_sequence(n_max, x).into_iter().map(|p| p * fw).collect()
            })
            .collect();
        let mut values = vec![0.0; grid.len()];
        let projections: Vec<f64> = (0..=n_max)
            .map(|n| {
                for (v, row) in values.iter_mut().zip(&rows) {
                    *v = row[n];
                }
                grid.reduce(&values)
            })
            .collect();
        zs.iter()
            .map(|&z| {
                let mut coef = c64(1.0, 0.0);
                let mut sum = c64(0.0, 0.0);
                for (n, c) in projections.iter().enumerate() {
                    sum += coef * *c;
                    coef = coef * z / (n as f64 + 2.0);
                }
                check_finite(sum, "series transform")
            })
            .collect()
    }
}

/// `B[f](z) = Σ_k w_k B(z, ξ_k) f(ξ_k) ω(ξ_k)` with the closed-form kernel.
pub fn bargmann_transform(
    f: &(dyn Fn(f64) -> f64 + Sync),
    z: Complex64,
    grid: &QuadratureGrid,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    bargmann_transform_with(&ClosedKernel, f, z, grid, ctrl)
}

pub fn bargmann_transform_with(
    route: &dyn KernelRoute,
    f: &(dyn Fn(f64) -> f64 + Sync),
    z: Complex64,
    grid: &QuadratureGrid,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    Ok(route.transform_many(f, &[z], grid, ctrl)?[0])
}

/// `B[f_j](z_i)` for several inputs, evaluating each kernel value once.
/// Row `i` of the result holds the images at `zs[i]`.
pub fn transform_table(
    route: &dyn KernelRoute,
    fs: &[&(dyn Fn(f64) -> f64 + Sync)],
    zs: &[Complex64],
    grid: &QuadratureGrid,
    ctrl: &SeriesControl,
) -> Result<Vec<Vec<Complex64>>> {
    let omega = weight_on_grid(grid, ctrl)?;
    let weighted: Vec<Vec<f64>> = fs
        .iter()
        .map(|f| grid.nodes().iter().zip(&omega).map(|(&x, w)| f(x) * w).collect())
        .collect();
    zs.iter()
        .map(|&z| {
            let kernel: Vec<Complex64> = grid
                .nodes()
                .par_iter()
                .map(|&xi| route.kernel(z, xi, ctrl))
                .collect::<Result<_>>()?;
            Ok(weighted
                .iter()
                .map(|fw| {
                    let re: Vec<f64> = kernel.iter().zip(fw).map(|(k, v)| k.re * v).collect();
                    let im: Vec<f64> = kernel.iter().zip(fw).map(|(k, v)| k.im * v).collect();
                    c64(grid.reduce(&re), grid.reduce(&im))
                })
                .collect())
        })
        .collect()
}

/// Outcome of the norm-preservation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormCheck {
    /// `∫ |f|² ω dx`
    pub input_norm: f64,
    /// `∫ |B[f](z)|² 4|z|² K0(2|z|) dA/(2π)`
    pub image_norm: f64,
    /// The image norm with the density `4|z|⁴ K0(2|z|) dA`, kept for reference.
    pub image_norm_quartic: f64,
    pub residual: f64,
    pub zero_input: bool,
}

/// Compares `‖f‖²` in `L²(ω)` with the norm of its transform under the
/// density `4|z|² K0(2|z|) dA/(2π)`, the one fixed by the radial moments
/// `∫ ρ^{2n} 4ρ³K0(2ρ) dρ = ((n+1)!)²`. The polar integral uses
/// `angle_count` equispaced angles and the radial rule `r_grid`.
pub fn transform_norm_residual(
    f: &(dyn Fn(f64) -> f64 + Sync),
    r_grid: &QuadratureGrid,
    angle_count: usize,
    x_grid: &QuadratureGrid,
    ctrl: &SeriesControl,
) -> Result<NormCheck> {
    transform_norm_residual_with(&SeriesKernel::default(), f, r_grid, angle_count, x_grid, ctrl)
}

pub fn transform_norm_residual_with(
    route: &dyn KernelRoute,
    f: &(dyn Fn(f64) -> f64 + Sync),
    r_grid: &QuadratureGrid,
    angle_count: usize,
    x_grid: &QuadratureGrid,
    ctrl: &SeriesControl,
) -> Result<NormCheck> {
    if angle_count == 0 {
        return Err(Error::DomainViolation("angle_count must be positive".into()));
    }
    let omega = weight_on_grid(x_grid, ctrl)?;
    let sq: Vec<f64> = x_grid
        .nodes()
        .iter()
        .zip(&omega)
        .map(|(&x, w)| f(x) * f(x) * w)
        .collect();
    let input_norm = x_grid.reduce(&sq);
    if input_norm == 0.0 {
        return Ok(NormCheck {
            input_norm,
            image_norm: 0.0,
            image_norm_quartic: 0.0,
            residual: 0.0,
            zero_input: true,
        });
    }

    let dtheta = 2.0 * PI / angle_count as f64;
    let zs: Vec<Complex64> = r_grid
        .nodes()
        .iter()
        .flat_map(|&r| (0..angle_count).map(move |j| Complex64::from_polar(r, j as f64 * dtheta)))
        .collect();
    let images = route.transform_many(f, &zs, x_grid, ctrl)?;

    let mut radial = Vec::with_capacity(r_grid.len());
    let mut radial_quartic = Vec::with_capacity(r_grid.len());
    for (i, &r) in r_grid.nodes().iter().enumerate() {
        let ring: f64 = images[i * angle_count..(i + 1) * angle_count]
            .iter()
            .map(|b| b.norm_sqr())
            .sum::<f64>()
            * dtheta;
        let k0 = crate::special::macdonald_k0(2.0 * r)?;
        radial.push(4.0 * r * r * k0 * ring * r);
        radial_quartic.push(4.0 * r.powi(4) * k0 * ring * r);
    }
    let image_norm = r_grid.reduce(&radial) / (2.0 * PI);
    let image_norm_quartic = r_grid.reduce(&radial_quartic);
    Ok(NormCheck {
        input_norm,
        image_norm,
        image_norm_quartic,
        residual: (input_norm - image_norm).abs() / input_norm,
        zero_input: false,
    })
}

/// `(2)_n`-free helper: `zⁿ/(n+1)!`, the image of `p_n` under the transform.
pub fn monomial_image(n: usize, z: Complex64) -> Complex64 {
    z.powu(n as u32) / pochhammer(c64(1.0, 0.0), n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn delta_series_reductions() {
        let c = kernel_parameter(0.5);
        let x = c64(0.5, 0.0);
        let v = delta_series(c64(0.0, 0.0), c, x, &ctrl()).unwrap();
        let f = gauss_2f1(c64(1.0, 0.0), c64(1.0, 0.0), c, x, &ctrl()).unwrap();
        assert!((v - f).norm() < 1e-14);
        // x = 0: Σ tⁿ/(c)_n = 1F1(1; c; t)
        let t = c64(0.3, -0.2);
        let v = delta_series(t, c, c64(0.0, 0.0), &ctrl()).unwrap();
        let k = kummer_1f1(c64(1.0, 0.0), c, t, &ctrl()).unwrap();
        assert!((v - k).norm() < 1e-13 * k.norm());
        assert!(delta_closed(t, c, c64(0.0, 0.0), &ctrl()).is_err());
    }

    #[test]
    fn delta_closed_at_zero_t() {
        let c = kernel_parameter(-1.0);
        let x = c64(0.5, 0.0);
        let tight = ctrl().tightened(1e3, 1);
        let v = delta_closed(c64(0.0, 0.0), c, x, &tight).unwrap();
        let f = gauss_2f1(c64(1.0, 0.0), c64(1.0, 0.0), c, x, &tight).unwrap();
        assert!((v - f).norm() < 1e-13 * f.norm());
    }

    #[test]
    fn shifted_egf_small_argument_limit() {
        let xi = 0.8;
        let v = mp_shifted_egf(xi, c64(1e-8, 0.0), &ctrl()).unwrap();
        assert!((v - c64(SQRT_2 * xi, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn wavefunction_at_origin() {
        let z = c64(0.0, 0.0);
        assert_eq!(nlcs_wavefunction_series(1.3, z, 10).unwrap(), c64(1.0, 0.0));
        assert_eq!(nlcs_wavefunction_closed(1.3, z, &ctrl()).unwrap().value, c64(1.0, 0.0));
        assert_eq!(bargmann_kernel(z, -0.4, &ctrl()).unwrap().value, c64(1.0, 0.0));
    }

    #[test]
    fn zero_input_guard() {
        let r = crate::quadrature::build_radial_grid(4.0, 2, 3).unwrap();
        let x = crate::quadrature::build_hermite_style_grid(32, 5.0).unwrap();
        let check = transform_norm_residual(&|_| 0.0, &r, 8, &x, &ctrl()).unwrap();
        assert!(check.zero_input);
        assert_eq!(check.residual, 0.0);
    }

    #[test]
    fn monomial_images() {
        let z = c64(0.6, 0.0);
        assert!((monomial_image(2, z) - c64(0.06, 0.0)).norm() < 1e-16);
        assert_eq!(monomial_image(0, z), c64(1.0, 0.0));
    }
}
