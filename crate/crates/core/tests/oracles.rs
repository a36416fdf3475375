//! Reference values for each module, checked through the public API.

use std::f64::consts::{PI, SQRT_2};

use approx::assert_relative_eq;
use num_complex::Complex64;

use assoc_mp::bargmann::{
    bargmann_kernel, bargmann_transform, delta_closed, delta_series, kernel_parameter, mp_shifted_egf,
    nlcs_wavefunction_closed, nlcs_wavefunction_series, transform_norm_residual, SMALL_Z,
};
use assoc_mp::genfun::{
    classical_gf, egf_closed, egf_series, gf_closed, gf_relation_residual, gf_series, GFPoint,
};
use assoc_mp::measures::{
    default_radial_grid, default_weight_grid, nlcs_normalization, orthonormality_matrix, radial_moment,
    radial_moment_residual, weight_omega, weight_on_grid, WEIGHT_CUT,
};
use assoc_mp::polynomials::{
    assoc_mp_eval, assoc_mp_explicit, assoc_mp_sequence, classical_mp_eval, jacobi_truncation, monic_q_eval,
    zero_value_closed_form,
};
use assoc_mp::quadrature::build_hermite_style_grid;
use assoc_mp::special::{contiguous_f_residual, gauss_2f1, SeriesControl};
use assoc_mp::verify::norm_check_radial_grid;
use assoc_mp::Error;

fn ctrl() -> SeriesControl {
    SeriesControl::default()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn first_polynomials() {
    for x in [-3.1, 0.0, 0.4, 7.5] {
        assert_eq!(assoc_mp_eval(0, x), 1.0);
        assert_relative_eq!(assoc_mp_eval(2, x), x * x / 3.0 - 2.0 / 3.0, max_relative = 1e-14, epsilon = 1e-15);
    }
    assert_relative_eq!(assoc_mp_eval(4, 0.0), 8.0 / 15.0, max_relative = 1e-15);
    let s = assoc_mp_sequence(4, 0.0);
    let want = [1.0, 0.0, -2.0 / 3.0, 0.0, 8.0 / 15.0];
    for (a, b) in s.iter().zip(want) {
        assert_relative_eq!(*a, b, max_relative = 1e-15);
    }
    let s = assoc_mp_sequence(1, 1.0);
    assert_eq!(s[0], 1.0);
    assert_relative_eq!(s[1], 1.0 / SQRT_2, max_relative = 1e-15);
}

#[test]
fn jacobi_off_diagonals() {
    let q2 = jacobi_truncation(2).unwrap();
    assert_relative_eq!(q2.off_diagonal(1), SQRT_2, max_relative = 1e-15);
    let q3 = jacobi_truncation(3).unwrap();
    assert_relative_eq!(q3.off_diagonal(1), SQRT_2, max_relative = 1e-15);
    assert_relative_eq!(q3.off_diagonal(2), 3.0 / SQRT_2, max_relative = 1e-15);
    assert!(q3.diagonal().iter().all(|&d| d == 0.0));
}

#[test]
fn values_at_origin() {
    assert_relative_eq!(assoc_mp_explicit(2, 0.0, &ctrl()).unwrap(), -2.0 / 3.0, max_relative = 1e-12);
    assert_relative_eq!(zero_value_closed_form(2), -2.0 / 3.0, max_relative = 1e-15);
    assert_relative_eq!(zero_value_closed_form(4), 8.0 / 15.0, max_relative = 1e-15);
    for n in [1, 3, 9, 27] {
        assert_eq!(zero_value_closed_form(n), 0.0);
        assert_eq!(assoc_mp_eval(n, 0.0), 0.0);
    }
}

#[test]
fn classical_and_monic() {
    assert_relative_eq!(classical_mp_eval(1, 0.5), 1.0, max_relative = 1e-15);
    assert_relative_eq!(monic_q_eval(2, 1.5), 1.5 * 1.5 - 2.0, max_relative = 1e-15);
    // generating function of the classical family
    let (y, t) = (0.7, 0.3_f64);
    let series: f64 = (0..80).map(|n| classical_mp_eval(n, y) * t.powi(n as i32)).sum();
    assert_relative_eq!(classical_gf(y, t), series, max_relative = 1e-13);
}

#[test]
fn contiguous_relation_at_the_two_parameter_choices() {
    let x: f64 = 0.7;
    let z = c(0.5, 0.0);
    let r = contiguous_f_residual(c(1.0, 0.0), c(1.0, 0.0), c(1.5, x / SQRT_2), z, &ctrl()).unwrap();
    assert!(r.norm() < 1e-10);
    let r = contiguous_f_residual(c(0.0, 0.0), c(0.0, 0.0), c(0.5, x / SQRT_2), z, &ctrl()).unwrap();
    assert!(r.norm() < 1e-10);
}

#[test]
fn generating_function_at_zero_argument() {
    let t: f64 = 0.5;
    let s = (t * t + 1.0).sqrt();
    let v = gf_closed(GFPoint::new(0.0, t).unwrap(), &ctrl()).unwrap();
    assert_relative_eq!(v, (t + s).ln() / (t * s), max_relative = 1e-10);
    assert_relative_eq!(v, 0.860_817_88, max_relative = 1e-8);
}

#[test]
fn even_only_series_at_zero_argument() {
    let t: f64 = 0.45_f64;
    let mut direct = 0.0;
    let mut fact_ratio = 1.0; // (n!)² / (2n+1)!
    for n in 0..60 {
        if n > 0 {
            fact_ratio *= (n * n) as f64 / ((2 * n) as f64 * (2 * n + 1) as f64);
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        direct += sign * fact_ratio * (2.0 * t).powi(2 * n + 1) / (2.0 * t);
    }
    assert_relative_eq!(gf_series(0.0, t, 200), direct, max_relative = 1e-13);
}

#[test]
fn series_self_convergence() {
    let a = gf_series(1.0, 0.3, 80);
    let b = gf_series(1.0, 0.3, 160);
    assert!((a - b).abs() < 1e-12);
}

#[test]
fn exponential_generating_function() {
    for x in [-1.2, 0.0, 0.8, 2.5] {
        assert_relative_eq!(egf_closed(x, 0.0, &ctrl()).unwrap(), 1.0, max_relative = 1e-11);
        let h = 1e-4;
        let d = (egf_closed(x, h, &ctrl()).unwrap() - egf_closed(x, -h, &ctrl()).unwrap()) / (2.0 * h);
        assert!((d - x).abs() < 1e-6, "x = {x}: {d}");
        let t = 0.9;
        assert_relative_eq!(egf_closed(x, t, &ctrl()).unwrap(), egf_series(x, t, 200), max_relative = 1e-8);
    }
}

#[test]
fn relation_between_generating_functions() {
    assert!(gf_relation_residual(1.0, 0.3).unwrap() < 1e-8);
    assert!(gf_relation_residual(0.0, 0.5).unwrap() < 1e-8);
    let x = 0.3;
    assert!(matches!(gf_relation_residual(x, SQRT_2 * x), Err(Error::PoleInput(_))));
}

#[test]
fn hypergeometric_values() {
    let one = c(1.0, 0.0);
    let v = gauss_2f1(one, one, c(1.5, 0.0), c(0.5, 0.0), &ctrl()).unwrap();
    assert_relative_eq!(v.re, PI / 2.0, max_relative = 1e-11);
}

#[test]
fn weight_values() {
    // unit-mass normalisation: twice the literal 2/π prefactor divided by √2
    assert_relative_eq!(weight_omega(0.0, &ctrl()).unwrap(), 2.0 * SQRT_2 / (PI * PI), max_relative = 1e-11);
    let grid = default_weight_grid();
    let mass = grid.reduce(&weight_on_grid(&grid, &ctrl()).unwrap());
    assert!((mass - 1.0).abs() < 1e-8);
}

#[test]
fn grid_engine() {
    let grid = build_hermite_style_grid(800, WEIGHT_CUT).unwrap();
    let total: f64 = grid.weights().iter().sum();
    assert_relative_eq!(total, 2.0 * WEIGHT_CUT, max_relative = 1e-12);
    let gauss = grid.integrate(|x| x * x * (-x * x).exp());
    assert!((gauss - PI.sqrt() / 2.0).abs() < 1e-10);
    let coarse = build_hermite_style_grid(400, WEIGHT_CUT).unwrap();
    let fine = build_hermite_style_grid(800, WEIGHT_CUT).unwrap();
    let m1 = coarse.reduce(&weight_on_grid(&coarse, &ctrl()).unwrap());
    let m2 = fine.reduce(&weight_on_grid(&fine, &ctrl()).unwrap());
    assert!((m1 - m2).abs() < 1e-10);
}

#[test]
fn gram_matrix_entries() {
    let g = orthonormality_matrix(10, &default_weight_grid(), &ctrl()).unwrap();
    assert!((g[0][0] - 1.0).abs() < 1e-8);
    for m in 0..=10 {
        for n in 0..=10 {
            if (m + n) % 2 == 1 {
                assert_eq!(g[m][n], 0.0, "({m}, {n})");
            }
        }
    }
}

#[test]
fn normalization_values() {
    assert_eq!(nlcs_normalization(0.0).unwrap(), 1.0);
    assert_relative_eq!(nlcs_normalization(1.0).unwrap(), 1.279_585_302_336_067_3, max_relative = 1e-13);
    let mut last = 0.0;
    for k in 0..=200 {
        let v = nlcs_normalization(0.05 * k as f64).unwrap();
        assert!(v > last);
        last = v;
    }
}

#[test]
fn radial_moments() {
    let grid = default_radial_grid();
    assert_relative_eq!(radial_moment(0, &grid).unwrap(), 0.25, max_relative = 1e-8);
    assert_relative_eq!(radial_moment(1, &grid).unwrap(), 1.0, max_relative = 1e-8);
    assert!(radial_moment_residual(6, &grid).unwrap() < 1e-6);
}

#[test]
fn delta_series_examples() {
    let x = c(0.5, 0.0);
    let cc = kernel_parameter(0.5);
    let t = c(0.0, 0.2);
    let s = delta_series(t, cc, x, &ctrl()).unwrap();
    let d = delta_closed(t, cc, x, &ctrl()).unwrap();
    assert!((s - d).norm() < 1e-10 * s.norm());
    for tr in [-0.2, 0.0, 0.2] {
        for ti in [-0.2, 0.0, 0.2] {
            let t = c(tr, ti);
            let s = delta_series(t, cc, x, &ctrl()).unwrap();
            assert!((delta_closed(t, cc, x, &ctrl()).unwrap() - s).norm() < 1e-10 * s.norm());
        }
    }
    assert!(matches!(delta_closed(t, cc, c(0.0, 0.0), &ctrl()), Err(Error::DomainViolation(_))));
}

#[test]
fn shifted_classical_generating_function() {
    for (xi, zbar) in [(0.0, c(0.0, 0.4)), (1.3, c(0.2, 0.1))] {
        let mut direct = c(0.0, 0.0);
        let mut coef = c(1.0, 0.0);
        for n in 0..40 {
            coef /= n as f64 + 1.0;
            direct += coef * classical_mp_eval(n + 1, xi / SQRT_2);
            coef *= zbar;
        }
        assert!((mp_shifted_egf(xi, zbar, &ctrl()).unwrap() - direct).norm() < 1e-10);
    }
}

#[test]
fn wavefunction_examples() {
    let z = c(0.5, 0.0);
    let s = nlcs_wavefunction_series(0.0, z, 60).unwrap();
    assert!((nlcs_wavefunction_closed(0.0, z, &ctrl()).unwrap().value - s).norm() < 1e-8);
    let z = c(0.3, 0.4);
    let s = nlcs_wavefunction_series(2.0, z, 60).unwrap();
    assert!((nlcs_wavefunction_closed(2.0, z, &ctrl()).unwrap().value - s).norm() < 1e-8);
    // no jump where the closed form takes over from the series
    for xi in [-2.0, 0.7, 3.0] {
        for phase in [0.0, 1.0, 2.5] {
            let below = nlcs_wavefunction_closed(xi, Complex64::from_polar(0.999 * SMALL_Z, phase), &ctrl()).unwrap();
            let above = nlcs_wavefunction_closed(xi, Complex64::from_polar(1.001 * SMALL_Z, phase), &ctrl()).unwrap();
            let exact = nlcs_wavefunction_series(xi, above.z, 60).unwrap();
            assert!((above.value - exact).norm() < 1e-10, "xi = {xi}: {}", above.value - exact);
            assert!((below.value - above.value).norm() < 1e-2);
        }
    }
    for r in [1e-7, 1e-6, 1e-4, 1e-2] {
        let w = nlcs_wavefunction_closed(0.7, c(r, 0.0), &ctrl()).unwrap().value;
        let exact = nlcs_wavefunction_series(0.7, c(r, 0.0), 60).unwrap();
        assert!((w - exact).norm() < 1e-14, "r = {r}");
    }
    let k = bargmann_kernel(c(0.0, 0.0), 2.0, &ctrl()).unwrap();
    assert_eq!(k.value, c(1.0, 0.0));
}

#[test]
fn transform_examples() {
    let grid = default_weight_grid();
    let z = c(0.3, -0.2);
    let t0 = bargmann_transform(&|x| assoc_mp_eval(0, x), z, &grid, &ctrl()).unwrap();
    assert!((t0 - c(1.0, 0.0)).norm() < 1e-6);
    let t2 = bargmann_transform(&|x| assoc_mp_eval(2, x), z, &grid, &ctrl()).unwrap();
    assert!((t2 - z * z / 6.0).norm() < 1e-6);
    let t12 = bargmann_transform(&|x| assoc_mp_eval(1, x) + assoc_mp_eval(2, x), z, &grid, &ctrl()).unwrap();
    assert!((t12 - (z / 2.0 + z * z / 6.0)).norm() < 1e-6);
}

#[test]
fn norm_preservation() {
    let x_grid = default_weight_grid();
    let r_grid = norm_check_radial_grid();
    let p0 = transform_norm_residual(&|x| assoc_mp_eval(0, x), &r_grid, 64, &x_grid, &ctrl()).unwrap();
    assert!(p0.residual < 1e-4, "{p0:?}");
    let p3 = transform_norm_residual(&|x| assoc_mp_eval(3, x), &r_grid, 64, &x_grid, &ctrl()).unwrap();
    assert!(p3.residual < 1e-3, "{p3:?}");
    let zero = transform_norm_residual(&|_| 0.0, &r_grid, 64, &x_grid, &ctrl()).unwrap();
    assert!(zero.zero_input && zero.residual == 0.0);
}
