//! Run the grid oracle against the equilibrium of every model variant.

use spne::base::{corner_profile, BaseGame};
use spne::experiment::{solve, verify, Config, Variant};
use spne::{oracle_verify_spne, MarketParams, OracleConfig};

fn main() -> spne::Result<()> {
    let oracle = OracleConfig::default();
    let scenarios = [
        (
            "base, s = 1",
            Variant::Base,
            MarketParams::new(1.0, 0.5, 1.0),
        ),
        (
            "base, s = 4.5",
            Variant::Base,
            MarketParams::new(4.5, 0.5, 1.0),
        ),
        (
            "base, delta = 0.6",
            Variant::Base,
            MarketParams::new(3.0, 0.5, 1.0).with_delta(0.6),
        ),
        (
            "base, delta = 1",
            Variant::Base,
            MarketParams::new(1.0, 0.5, 1.0).with_delta(1.0),
        ),
        (
            "outside, s = 1.5",
            Variant::Outside,
            MarketParams {
                s: 1.5,
                gamma: 0.8,
                ..Default::default()
            },
        ),
        (
            "outside, s = 4",
            Variant::Outside,
            MarketParams {
                s: 4.0,
                gamma: 0.8,
                ..Default::default()
            },
        ),
        (
            "three player",
            Variant::ThreePlayer,
            MarketParams {
                t: 2.0,
                ..Default::default()
            },
        ),
        (
            "line comparison",
            Variant::TwoPlayerComparison,
            MarketParams {
                delta_lb: 0.1,
                ..Default::default()
            },
        ),
    ];
    for (name, variant, params) in scenarios {
        let cfg = Config {
            variant,
            params,
            corner_frac: 0.5,
        };
        let result = solve(&cfg)?;
        for (i, r) in verify(&cfg, &result, &oracle)?.iter().enumerate() {
            let g = r.max_unilateral_gain_per_stage;
            println!(
                "{name:<20} #{i} {:?}  gains [{:.2e} {:.2e} {:.2e}]  eps {:.1e}",
                r.verdict, g[0], g[1], g[2], r.epsilon
            );
        }
    }

    let corner = MarketParams::new(1.0, 0.5, 1.0)
        .with_delta(1.5)
        .with_delta_lb(0.05);
    for price in [1.9, 2.0, 2.25, 2.5, 2.6] {
        let prof = corner_profile(&corner, price)?;
        let r = oracle_verify_spne(&BaseGame::for_profile(&corner, &prof), &prof, &oracle)?;
        println!("delta = 1.5, p_l = {price:<4}  {:?}", r.verdict);
    }
    let corner = corner.with_delta(-1.5);
    for price in [1.9, 2.0, 2.25, 2.5, 2.6] {
        let prof = corner_profile(&corner, price)?;
        let r = oracle_verify_spne(&BaseGame::for_profile(&corner, &prof), &prof, &oracle)?;
        println!("delta = -1.5, p_f = {price:<4} {:?}", r.verdict);
    }
    Ok(())
}
