use proptest::prelude::*;
use spne::numeric::{golden_max, grid_max, maximize_1d, quad_max_on_interval, GridSpec, Quadratic};

fn brute(q: Quadratic, d: f64, e: f64, n: usize) -> f64 {
    (0..n)
        .map(|i| q.eval(d + (e - d) * i as f64 / (n - 1) as f64))
        .fold(f64::NEG_INFINITY, f64::max)
}

proptest! {
    #[test]
    fn quadratic_max_dominates_grid(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, d in -3.0f64..3.0, w in 0.0f64..3.0) {
        let q = Quadratic::new(a, b, c);
        let m = quad_max_on_interval(q, d, d + w);
        prop_assert!(m.argmax >= d && m.argmax <= d + w);
        prop_assert!(m.value >= brute(q, d, d + w, 1001) - 1e-12);
        prop_assert!((m.value - q.eval(m.argmax)).abs() < 1e-15 * m.value.abs().max(1.0));
    }

    #[test]
    fn concave_maximum_matches_golden(a in -5.0f64..-0.01, b in -5.0f64..5.0, d in -3.0f64..0.0, w in 0.1f64..3.0) {
        let q = Quadratic::new(a, b, 0.0);
        let m = quad_max_on_interval(q, d, d + w);
        let (x, _) = golden_max(&|x| q.eval(x), d, d + w);
        prop_assert!((m.argmax - x).abs() < 1e-6);
    }

    #[test]
    fn maximize_1d_agrees_with_golden_on_unimodal(x0 in -2.0f64..2.0, k in 0.1f64..10.0) {
        let f = |x: f64| -k * (x - x0).powi(2) + (x - x0).cos();
        let m = maximize_1d(&f, -3.0, Some(3.0)).unwrap();
        prop_assert!(m.is_unique());
        prop_assert!((m.argmax[0] - x0).abs() < 1e-6);
    }

    #[test]
    fn grid_max_is_within_refined_step(x0 in 0.0f64..1.0) {
        let f = |x: f64| -(x - x0).abs();
        let g = GridSpec::new(0.0, 1.0, 101, 2).unwrap();
        let r = grid_max(&f, &g);
        prop_assert!((r.argmax - x0).abs() <= g.final_step());
    }
}

#[test]
fn symmetric_bimodal_reports_both_peaks() {
    let f = |x: f64| -(x * x - 1.0).powi(2);
    let m = maximize_1d(&f, -2.0, Some(2.0)).unwrap();
    assert_eq!(m.argmax.len(), 2);
    assert!((m.argmax[0] + 1.0).abs() < 1e-6 && (m.argmax[1] - 1.0).abs() < 1e-6);
}

#[test]
fn unbounded_domain_expands() {
    let f = |x: f64| 10.0 * x - x * x;
    let m = maximize_1d(&f, 0.1, None).unwrap();
    assert!((m.argmax[0] - 5.0).abs() < 1e-6);
}

#[test]
fn convex_tie_reports_lower_endpoint() {
    let m = quad_max_on_interval(Quadratic::new(1.0, 0.0, 0.0), -1.0, 1.0);
    assert!(m.tie);
    assert_eq!(m.argmax, -1.0);
}

#[test]
fn invalid_grid_is_rejected() {
    assert!(GridSpec::new(1.0, 0.0, 11, 0).is_err());
    assert!(GridSpec::new(0.0, 1.0, 1, 0).is_err());
}
