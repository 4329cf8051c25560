//! Circular market with two MNOs and one MVNO, compared with the two-provider line benchmark.

use spne::three_player::{full_lease_profile, solve_three_player, solve_two_player_comparison};
use spne::MarketParams;

fn main() -> spne::Result<()> {
    println!(
        "{:>5} {:>9} {:>9} {:>9} {:>8} {:>10} {:>10} {:>10}",
        "s", "I_L", "I_F", "p_L", "degree", "pi_L", "cost(3p)", "cost(2p)"
    );
    for s in [0.6, 1.0, 2.0, 4.0, 8.0] {
        let params = MarketParams {
            s,
            gamma: 0.5,
            c: 1.0,
            t: 1.0,
            delta_lb: 0.05,
            ..Default::default()
        };
        let three = solve_three_player(&params)?;
        let two = solve_two_player_comparison(&params)?;
        let (e, b) = (three.primary().unwrap(), two.primary().unwrap());
        println!(
            "{s:>5} {:>9.5} {:>9.5} {:>9.5} {:>8.5} {:>10.5} {:>10.5} {:>10.5}",
            e.profile.i_l,
            e.profile.i_f,
            e.profile.p_l,
            e.metrics.degree_of_cooperation,
            e.outcome.pi_l,
            e.metrics.eu_resource_cost,
            b.metrics.eu_resource_cost
        );
        let full = full_lease_profile(&params)?;
        println!(
            "      full-lease point I = {:.5}, pi_L there = {:.5}",
            full.profile.i_l, full.outcome.pi_l
        );
    }
    Ok(())
}
