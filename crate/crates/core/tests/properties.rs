use num_complex::Complex64;
use proptest::prelude::*;

use assoc_mp::bargmann::{
    bargmann_transform_with, delta_closed, delta_series, kernel_parameter, lambda_series, nlcs_wavefunction_closed,
    nlcs_wavefunction_series, SeriesKernel,
};
use assoc_mp::genfun::{critical_line_residual, egf_closed, gf_closed, gf_series, GFPoint};
use assoc_mp::measures::{
    default_weight_grid, gram_defect, nlcs_normalization, orthonormality_matrix, weight_omega, WEIGHT_CUT,
};
use assoc_mp::polynomials::{
    assoc_mp_eval, assoc_mp_explicit, assoc_mp_via_det, jacobi_eigen_roots, monic_q_eval, monic_scale,
};
use assoc_mp::quadrature::build_hermite_style_grid;
use assoc_mp::registry::{kernel_routes, polynomial_routes, verification_suites};
use assoc_mp::special::{
    bessel_i0, contiguous_f_terms, gauss_2f1, humbert_psi1, macdonald_k0, SeriesControl,
};
use assoc_mp::verify::{rel_err, spectral_residual};

fn ctrl() -> SeriesControl {
    SeriesControl::default()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn small_complex(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parity(n in 0usize..=50, x in -10.0f64..10.0) {
        let a = assoc_mp_eval(n, x);
        let b = assoc_mp_eval(n, -x);
        let expected = if n % 2 == 0 { a } else { -a };
        prop_assert!((b - expected).abs() <= 1e-14 * a.abs().max(1e-300));
    }

    #[test]
    fn three_routes_agree(n in 1usize..=15, x in -5.0f64..5.0) {
        let r = assoc_mp_eval(n, x);
        prop_assert!(rel_err(assoc_mp_via_det(n, x).unwrap(), r) < 1e-9);
        prop_assert!(rel_err(assoc_mp_explicit(n, x, &ctrl()).unwrap(), r) < 1e-9);
    }

    #[test]
    fn monic_link(n in 0usize..=30, x in -6.0f64..6.0) {
        let q = monic_q_eval(n, x);
        prop_assert!(rel_err(q / monic_scale(n), assoc_mp_eval(n, x)) < 1e-12);
    }

    #[test]
    fn gauss_2f1_symmetric(a in small_complex(3.0), b in small_complex(3.0), cc in small_complex(2.0), z in small_complex(0.7)) {
        let cp = cc + 1.5;
        prop_assert_eq!(gauss_2f1(a, b, cp, z, &ctrl()).unwrap(), gauss_2f1(b, a, cp, z, &ctrl()).unwrap());
    }

    #[test]
    fn euler_transformation(a in small_complex(1.5), b in small_complex(1.5), cc in small_complex(1.0), z in small_complex(0.7)) {
        let cp = cc + 2.0;
        let lhs = gauss_2f1(a, b, cp, z, &ctrl()).unwrap();
        let rhs = (c(1.0, 0.0) - z).powc(cp - a - b) * gauss_2f1(cp - a, cp - b, cp, z, &ctrl()).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(rhs.norm()));
    }

    #[test]
    fn psi1_collapses_to_2f1(al in small_complex(2.0), be in small_complex(2.0), g in small_complex(1.0), x in small_complex(0.7)) {
        let gp = c(1.0, 0.3);
        let gamma = g + 1.5;
        let psi = humbert_psi1(al, be, gamma, gp, x, c(0.0, 0.0), &ctrl()).unwrap();
        let f = gauss_2f1(al, be, gamma, x, &ctrl()).unwrap();
        prop_assert!((psi - f).norm() < 1e-10 * f.norm().max(1.0));
    }

    #[test]
    fn contiguous_relation(a in small_complex(2.0), b in small_complex(2.0), cc in small_complex(1.0), z in small_complex(0.6)) {
        let cp = cc + 1.5;
        let terms = contiguous_f_terms(a, b, cp, z, &ctrl()).unwrap();
        let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        let sum = terms[0] + terms[1] + terms[2];
        prop_assert!(sum.norm() < 1e-10 * scale.max(1e-300));
    }

    #[test]
    fn weight_even(x in 0.0f64..30.0) {
        let w = weight_omega(x, &ctrl()).unwrap();
        prop_assert!((weight_omega(-x, &ctrl()).unwrap() - w).abs() <= 1e-12 * w);
    }

    #[test]
    fn normalization_matches_series(u in 0.0f64..5.0) {
        let mut term = 1.0;
        let mut direct = 1.0;
        for n in 1..30 {
            term *= u / ((n + 1) as f64 * (n + 1) as f64);
            direct += term;
        }
        prop_assert!((nlcs_normalization(u).unwrap() - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn gf_closed_matches_series(x in -2.5f64..2.5, t in -0.8f64..0.8) {
        let v = gf_closed(GFPoint::new(x, t).unwrap(), &ctrl()).unwrap();
        let s = gf_series(x, t, 300);
        prop_assert!((v - s).abs() < 1e-9 * s.abs().max(1.0));
    }

    #[test]
    fn egf_parity(x in -2.5f64..2.5, t in -1.3f64..1.3) {
        let a = egf_closed(x, t, &ctrl()).unwrap();
        let b = egf_closed(-x, -t, &ctrl()).unwrap();
        prop_assert!(rel_err(b, a) < 1e-10);
    }

    #[test]
    fn critical_line_identity_anywhere(t in -0.95f64..0.95) {
        prop_assert!(critical_line_residual(t, &ctrl()).unwrap() < 1e-10);
    }

    #[test]
    fn delta_closed_matches_series(xi in -2.0f64..2.0, t in small_complex(0.5)) {
        let cc = kernel_parameter(xi);
        let x = c(0.5, 0.0);
        let s = delta_series(t, cc, x, &ctrl()).unwrap();
        let d = delta_closed(t, cc, x, &ctrl()).unwrap();
        prop_assert!((s - d).norm() < 1e-10 * s.norm());
    }

    #[test]
    fn wavefunction_closed_matches_series(xi in -3.0f64..3.0, z in small_complex(2.0)) {
        let s = nlcs_wavefunction_series(xi, z, 60).unwrap();
        let w = nlcs_wavefunction_closed(xi, z, &ctrl()).unwrap();
        prop_assert!(w.value.re.is_finite() && w.value.im.is_finite());
        prop_assert!((w.value - s).norm() < 1e-8 * s.norm().max(1.0));
    }

    #[test]
    fn kernel_series_is_conjugate_symmetric(xi in -3.0f64..3.0, z in small_complex(3.0)) {
        let a = lambda_series(xi, z).unwrap();
        let b = lambda_series(xi, z.conj()).unwrap();
        prop_assert!((a.conj() - b).norm() < 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn eigenvalues_are_roots(n in 2usize..=40) {
        prop_assert_eq!(jacobi_eigen_roots(n).unwrap().len(), n);
        prop_assert!(spectral_residual(n).unwrap() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn transform_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, z in small_complex(2.0)) {
        let grid = default_weight_grid();
        let route = SeriesKernel::default();
        let p1 = |x: f64| assoc_mp_eval(1, x);
        let p2 = |x: f64| assoc_mp_eval(2, x);
        let mix = move |x: f64| a * assoc_mp_eval(1, x) + b * assoc_mp_eval(2, x);
        let t1 = bargmann_transform_with(&route, &p1, z, &grid, &ctrl()).unwrap();
        let t2 = bargmann_transform_with(&route, &p2, z, &grid, &ctrl()).unwrap();
        let tm = bargmann_transform_with(&route, &mix, z, &grid, &ctrl()).unwrap();
        prop_assert!((tm - (a * t1 + b * t2)).norm() < 1e-12 * (1.0 + tm.norm()));
    }
}

#[test]
fn roots_interlace() {
    let mut prev = jacobi_eigen_roots(1).unwrap();
    for n in 2..=31 {
        let cur = jacobi_eigen_roots(n).unwrap();
        for (k, r) in prev.iter().enumerate() {
            assert!(cur[k] < *r && *r < cur[k + 1], "n = {n}, k = {k}");
        }
        prev = cur;
    }
}

#[test]
fn i0_k0_product_decreasing() {
    let mut last = f64::INFINITY;
    for k in 1..=200 {
        let u = 0.05 * k as f64;
        let v = bessel_i0(u).unwrap() * macdonald_k0(u).unwrap();
        assert!(v < last, "u = {u}");
        last = v;
    }
}

#[test]
fn gram_defect_shrinks_as_nodes_double() {
    let defects: Vec<f64> = [96, 192, 384]
        .iter()
        .map(|&n| {
            let grid = build_hermite_style_grid(n, WEIGHT_CUT).unwrap();
            gram_defect(&orthonormality_matrix(2, &grid, &ctrl()).unwrap())
        })
        .collect();
    assert!(defects[0] > defects[1] && defects[1] > defects[2], "{defects:?}");
    let full = gram_defect(&orthonormality_matrix(10, &default_weight_grid(), &ctrl()).unwrap());
    assert!(full < 1e-7, "{full}");
}

#[test]
fn odd_integrands_cancel_exactly() {
    let grid = default_weight_grid();
    for n in [1usize, 3, 7, 15] {
        let v = grid.integrate(|x| assoc_mp_eval(n, x) * weight_omega(x, &ctrl()).unwrap());
        assert_eq!(v, 0.0, "n = {n}");
    }
}

#[test]
fn registries_resolve_every_name() {
    let routes = polynomial_routes();
    for name in routes.names() {
        let v = routes.get(name).unwrap().eval(3, 1.1, &ctrl()).unwrap();
        assert!(rel_err(v, assoc_mp_eval(3, 1.1)) < 1e-12, "{name}");
    }
    let kernels = kernel_routes();
    let z = c(0.4, -0.3);
    let reference = lambda_series(0.7, z).unwrap();
    for name in kernels.names() {
        let v = kernels.get(name).unwrap().kernel(z, 0.7, &ctrl()).unwrap();
        assert!((v - reference).norm() < 1e-12, "{name}");
    }
    let suites = verification_suites();
    assert!(suites.names().contains(&"transform"));
    assert!(suites.get("all").is_err());
}
