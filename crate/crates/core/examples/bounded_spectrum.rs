use spne::base::solve_base;
use spne::outside::solve_outside_option;
use spne::three_player::solve_three_player;
use spne::{EquilibriumResult, MarketParams};

fn show(label: &str, bound: Option<f64>, r: &EquilibriumResult) {
    let e = r.primary().expect("equilibrium");
    let m = bound.map_or("none".to_string(), |m| format!("{m:.3}"));
    println!(
        "{label:<14} M = {m:<6} I_L = {:.5} I_F = {:.5} p_L = {:.5} p_F = {:.5}",
        e.profile.i_l, e.profile.i_f, e.profile.p_l, e.profile.p_f
    );
}

/// A cap on the regulator's spectrum forces full leasing once it binds.
fn main() -> spne::Result<()> {
    let line = MarketParams::new(5.0, 0.5, 1.0);
    let outside = MarketParams {
        s: 2.0,
        gamma: 0.8,
        k: 1.0,
        b: 2.0,
        alpha: 1.0,
        ..Default::default()
    };
    let circle = MarketParams {
        s: 1.0,
        t: 1.0,
        ..Default::default()
    };
    for bound in [None, Some(0.1), Some(0.3), Some(0.6), Some(1.2)] {
        show("base", bound, &solve_base(&line.with_bound(bound))?);
        show(
            "outside",
            bound,
            &solve_outside_option(&outside.with_bound(bound))?,
        );
        show(
            "three player",
            bound,
            &solve_three_player(&circle.with_bound(bound))?,
        );
        println!();
    }
    Ok(())
}
