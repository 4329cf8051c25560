//! Outside-option equilibrium across the leasing fee, next to the base game.
//!
//! Run with `cargo run --example outside_option`.

use spne::base::solve_base;
use spne::outside::solve_outside_option;
use spne::MarketParams;

fn main() -> spne::Result<()> {
    println!(
        "{:>6} {:>9} {:>9} {:>9} {:>9} {:>9} {:>11} {:>11}",
        "s", "I_L", "I_F", "p_L", "p_F", "degree", "EU cost", "base cost"
    );
    for i in 0..20 {
        let s = 0.9 + 0.2 * i as f64;
        let p = MarketParams {
            s,
            gamma: 0.8,
            c: 1.0,
            k: 1.0,
            b: 2.0,
            alpha: 1.0,
            ..Default::default()
        };
        let r = solve_outside_option(&p)?;
        let base = solve_base(&MarketParams::new(s, 0.8, 1.0))?;
        let Some(e) = r.primary() else {
            println!("{s:>6.2} no equilibrium: {:?}", r.diagnostics);
            continue;
        };
        let b = base
            .primary()
            .map_or(f64::NAN, |e| e.metrics.eu_resource_cost);
        println!(
            "{s:>6.2} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>11.5} {:>11.5}",
            e.profile.i_l,
            e.profile.i_f,
            e.profile.p_l,
            e.profile.p_f,
            e.metrics.degree_of_cooperation,
            e.metrics.eu_resource_cost,
            b
        );
    }
    println!();
    println!("with a spectrum cap at s = 2:");
    for m in [0.05, 0.1, 0.2, 0.4, 0.8, 1.2, 1.6] {
        let p = MarketParams {
            s: 2.0,
            gamma: 0.8,
            c: 1.0,
            k: 1.0,
            b: 2.0,
            alpha: 1.0,
            m_ub: Some(m),
            ..Default::default()
        };
        let r = solve_outside_option(&p)?;
        match r.primary() {
            Some(e) => println!(
                "  M = {m:<5} I_L = {:.6}  I_F = {:.6}",
                e.profile.i_l, e.profile.i_f
            ),
            None => println!("  M = {m:<5} none"),
        }
    }
    Ok(())
}
