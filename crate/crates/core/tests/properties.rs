//! Property tests for the spectral building blocks.

use cpslsm::chebyshev::{
    cgl_nodes, cheb_derivative_eval, derivative_coeffs, discrete_transform, series_eval, ChebSeries,
};
use cpslsm::cpsdm::{full_diff_matrix, row_diff_matrix};
use cpslsm::cubic::{
    classify_roots, cubic_eval, scale_coeffs, viete_roots, CubicDerivative, RootClassification,
    DEFAULT_EPS_C,
};
use cpslsm::line_search::{golden_section_step, Objective1D, GOLDEN_RATIO_SQ};
use proptest::prelude::*;

fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

fn poly_deriv(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &v)| i as f64 * v)
        .collect()
}

// T_k in monomial form via the recurrence, for expanding series symbolically.
fn cheb_poly(k: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for _ in 1..k {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn series_to_monomials(coeffs: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; coeffs.len()];
    for (k, &c) in coeffs.iter().enumerate() {
        for (i, &p) in cheb_poly(k).iter().enumerate() {
            out[i] += c * p;
        }
    }
    out
}

#[test]
fn grid_symmetry_is_exact_up_to_order_64() {
    for n in 1..=64 {
        let g = cgl_nodes(n).unwrap();
        for k in 0..=n {
            assert_eq!(
                g.node(k) + g.node(n - k),
                0.0,
                "n={n} k={k}: {} vs {}",
                g.node(k),
                g.node(n - k)
            );
        }
    }
}

proptest! {
    #[test]
    fn transform_eval_round_trip(
        deg_sel in 0usize..3,
        coeffs in proptest::collection::vec(-1.0f64..1.0, 13),
        xs in proptest::collection::vec(-1.0f64..1.0, 20),
    ) {
        let n = [4usize, 8, 12][deg_sel];
        let poly = &coeffs[..=n];
        let grid = cgl_nodes(n).unwrap();
        let samples: Vec<f64> = grid.nodes().iter().map(|&x| poly_eval(poly, x)).collect();
        let series = discrete_transform(&samples).unwrap();
        for &x in &xs {
            let want = poly_eval(poly, x);
            let got = series_eval(&series, x).unwrap();
            prop_assert!((got - want).abs() <= 1e-11, "n={n} x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn derivative_closed_form_matches_symbolic(
        k in 0usize..=10,
        m in 0usize..=4,
        x in -0.999f64..0.999,
    ) {
        let mut p = cheb_poly(k);
        for _ in 0..m {
            p = poly_deriv(&p);
        }
        let want = poly_eval(&p, x);
        let got = cheb_derivative_eval(k, m, x).unwrap();
        prop_assert!(
            (got - want).abs() <= 1e-9 * want.abs().max(1.0),
            "k={k} m={m} x={x}: {got} vs {want}"
        );
    }

    #[test]
    fn derivative_coefficients_match_symbolic_derivative(
        coeffs in proptest::collection::vec(-2.0f64..2.0, 5),
    ) {
        let series = ChebSeries::new(coeffs.clone());
        let dser = derivative_coeffs(&series).unwrap();
        let got = series_to_monomials(&dser.coeffs);
        let want = poly_deriv(&series_to_monomials(&coeffs));
        for (i, w) in want.iter().enumerate() {
            prop_assert!((got[i] - w).abs() <= 1e-12, "x^{i}: {} vs {w}", got[i]);
        }
        // the top derivative coefficient is identically zero
        prop_assert_eq!(dser.coeffs[4], 0.0);
    }

    #[test]
    fn operators_are_exact_on_polynomials(
        n in 2usize..=16,
        m_sel in 0usize..2,
        coeffs in proptest::collection::vec(-1.0f64..1.0, 17),
    ) {
        let m = m_sel + 1;
        prop_assume!(n >= m);
        let poly = &coeffs[..=n];
        let grid = cgl_nodes(n).unwrap();
        let samples: Vec<f64> = grid.nodes().iter().map(|&x| poly_eval(poly, x)).collect();
        let mut dp = poly.to_vec();
        for _ in 0..m {
            dp = poly_deriv(&dp);
        }
        let tol = 1e-8 * (n as f64).powi(2 * m as i32);
        let out = full_diff_matrix(n, m).unwrap().apply(&samples).unwrap();
        for (i, &x) in grid.nodes().iter().enumerate() {
            let want = poly_eval(&dp, x);
            prop_assert!((out[i] - want).abs() <= tol, "full n={n} m={m} i={i}");
        }
        // a row operator at an off-grid point sees the same polynomial
        let xt = 2.0 * coeffs[16].abs().fract() - 0.99;
        let xt = xt.clamp(-1.0, 1.0);
        let row = row_diff_matrix(n, m, xt).unwrap();
        let got = row.apply_scalar(&samples).unwrap();
        prop_assert!((got - poly_eval(&dp, xt)).abs() <= tol, "row n={n} m={m} xt={xt}");
    }

    #[test]
    fn cubic_roots_from_known_factors(
        r in proptest::collection::vec(-1.0f64..1.0, 3),
        lead in 0.2f64..5.0,
    ) {
        let (mut r1, mut r2, mut r3) = (r[0], r[1], r[2]);
        // sort descending
        if r1 < r2 { std::mem::swap(&mut r1, &mut r2); }
        if r2 < r3 { std::mem::swap(&mut r2, &mut r3); }
        if r1 < r2 { std::mem::swap(&mut r1, &mut r2); }
        prop_assume!(r1 - r2 > 1e-3 && r2 - r3 > 1e-3);
        let a1 = lead;
        let a2 = -lead * (r1 + r2 + r3);
        let a3 = lead * (r1 * r2 + r1 * r3 + r2 * r3);
        let a4 = -lead * r1 * r2 * r3;
        let cubic = CubicDerivative {
            coeffs: [a1, a2, a3, a4],
            scaled: false,
            depressed: None,
            roots: None,
        };
        let solved = viete_roots(scale_coeffs(cubic), DEFAULT_EPS_C).unwrap();
        prop_assert_eq!(
            classify_roots(&solved).unwrap(),
            RootClassification::AllRealDistinctInUnit
        );
        let set = solved.roots.unwrap();
        // descending order and residuals after scaling
        prop_assert!(set.roots[0].re > set.roots[1].re && set.roots[1].re > set.roots[2].re);
        for (root, want) in set.roots.iter().zip([r1, r2, r3]) {
            prop_assert!((root.re - want).abs() <= 1e-7, "{} vs {want}", root.re);
            prop_assert!(cubic_eval(&solved, root.re).abs() <= 1e-10);
        }
    }

    #[test]
    fn argmin_root_is_invariant_under_scaling(
        r in proptest::collection::vec(-1.0f64..1.0, 3),
        scale in 1.5f64..200.0,
    ) {
        let (mut r1, mut r2, mut r3) = (r[0], r[1], r[2]);
        if r1 < r2 { std::mem::swap(&mut r1, &mut r2); }
        if r2 < r3 { std::mem::swap(&mut r2, &mut r3); }
        if r1 < r2 { std::mem::swap(&mut r1, &mut r2); }
        prop_assume!(r1 - r2 > 1e-2 && r2 - r3 > 1e-2);
        let a2 = -(r1 + r2 + r3);
        let a3 = r1 * r2 + r1 * r3 + r2 * r3;
        let a4 = -r1 * r2 * r3;
        // antiderivative of the cubic plays the interpolant
        let quartic_value = |roots: &[f64; 3], s: f64, x: f64| {
            s * (x.powi(4) / 4.0 + a2 * x.powi(3) / 3.0 + a3 * x * x / 2.0 + a4 * x)
                + roots.len() as f64 * 0.0
        };
        let roots = [r1, r2, r3];
        let argmin = |s: f64| {
            let mut best = 0;
            for i in 1..3 {
                if quartic_value(&roots, s, roots[i]) < quartic_value(&roots, s, roots[best]) {
                    best = i;
                }
            }
            best
        };
        // scaling the cubic's coefficients by a positive factor does not move
        // the minimizing root
        prop_assert_eq!(argmin(1.0), argmin(scale));
        // and scale_coeffs preserves the root set itself
        let unscaled = viete_roots(
            CubicDerivative {
                coeffs: [scale, scale * a2, scale * a3, scale * a4],
                scaled: false,
                depressed: None,
                roots: None,
            },
            DEFAULT_EPS_C,
        )
        .unwrap();
        let rescaled = viete_roots(
            scale_coeffs(CubicDerivative {
                coeffs: [scale, scale * a2, scale * a3, scale * a4],
                scaled: false,
                depressed: None,
                roots: None,
            }),
            DEFAULT_EPS_C,
        )
        .unwrap();
        let ru = unscaled.roots.unwrap();
        let rs = rescaled.roots.unwrap();
        for (u, s) in ru.roots.iter().zip(rs.roots.iter()) {
            prop_assert!((u.re - s.re).abs() <= 1e-9);
        }
    }

    #[test]
    fn golden_step_shrinks_by_golden_square(
        a in -50.0f64..50.0,
        width in 0.5f64..100.0,
        c in -40.0f64..40.0,
    ) {
        let b = a + width;
        let f = Objective1D::new(move |t: f64| (t - c) * (t - c));
        let g = golden_section_step(&f, a, b, 1e-12).unwrap();
        let ratio = (g.b - g.a) / width;
        prop_assert!((ratio - 1.0 / GOLDEN_RATIO_SQ).abs() <= 1e-9, "ratio {ratio}");
        prop_assert!(g.a >= a - 1e-12 && g.b <= b + 1e-12);
        prop_assert!(g.t_best > g.a && g.t_best < g.b);
    }
}
