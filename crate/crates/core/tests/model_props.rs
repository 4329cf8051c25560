use proptest::prelude::*;
use spne::model::{base_outcome, indifferent_location, metrics, payoffs, subscriptions};
use spne::{MarketParams, StrategyProfile};

fn profile() -> impl Strategy<Value = StrategyProfile> {
    (0.01f64..5.0, 0.0f64..1.0, 0.0f64..4.0, 0.0f64..4.0)
        .prop_map(|(il, frac, pl, pf)| StrategyProfile::new(il, frac * il, pl, pf))
}

fn market() -> impl Strategy<Value = MarketParams> {
    (0.1f64..5.0, 0.01f64..0.09, 0.0f64..2.0, -2.0f64..2.0)
        .prop_map(|(s, g, c, d)| MarketParams::new(s, g, c).with_delta(d))
}

proptest! {
    #[test]
    fn swapping_roles_mirrors_the_indifferent_user(p in market(), prof in profile()) {
        let swapped = StrategyProfile::new(prof.i_l, prof.i_l - prof.i_f, prof.p_f, prof.p_l);
        let q = p.with_delta(-p.delta());
        let a = indifferent_location(&p, &prof).unwrap();
        let b = indifferent_location(&q, &swapped).unwrap();
        prop_assert!((a + b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn subscriptions_partition_the_market(x in -3.0f64..3.0) {
        let (a, b) = subscriptions(x);
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((a + b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn payoffs_are_affine_in_prices(p in market(), prof in profile(), n in 0.0f64..1.0, dp in -1.0f64..1.0) {
        let (l0, f0) = payoffs(&p, &prof, n, 1.0 - n);
        let moved = StrategyProfile { p_l: prof.p_l + dp, p_f: prof.p_f + dp, ..prof };
        let (l1, f1) = payoffs(&p, &moved, n, 1.0 - n);
        prop_assert!((l1 - l0 - n * dp).abs() < 1e-12);
        prop_assert!((f1 - f0 - (1.0 - n) * dp).abs() < 1e-12);
    }

    #[test]
    fn lease_fee_is_a_transfer(p in market(), prof in profile()) {
        let o = base_outcome(&p, &prof).unwrap();
        let total = o.n_l * (prof.p_l - p.c) + o.n_f * (prof.p_f - p.c) - p.gamma * prof.i_l * prof.i_l;
        prop_assert!((o.pi_l + o.pi_f - total).abs() < 1e-9);
    }

    #[test]
    fn degree_is_a_fraction(prof in profile()) {
        let prof = StrategyProfile { p_l: prof.p_l + 0.1, p_f: prof.p_f + 0.1, ..prof };
        let o = base_outcome(&MarketParams::default(), &prof).unwrap();
        let m = metrics(&prof, &o).unwrap();
        prop_assert!((0.0..=1.0).contains(&m.degree_of_cooperation));
        prop_assert!(m.eu_resource_cost >= 0.0);
    }
}

#[test]
fn zero_investment_is_a_domain_error() {
    let prof = StrategyProfile::new(0.0, 0.0, 1.0, 1.0);
    assert!(indifferent_location(&MarketParams::default(), &prof).is_err());
}

#[test]
fn parameter_validation() {
    assert!(MarketParams::new(0.4, 0.5, 1.0).validate().is_err());
    assert!(MarketParams::new(1.0, 0.5, 1.0)
        .with_delta_lb(0.0)
        .validate()
        .is_err());
    assert!(MarketParams::new(1.0, 0.5, 1.0)
        .with_bound(Some(0.001))
        .validate()
        .is_err());
    assert!(MarketParams::new(1.0, 0.5, 1.0).validate().is_ok());
}
