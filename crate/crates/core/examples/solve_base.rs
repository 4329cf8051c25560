//! Solve the two-provider game for one parameter set and print everything it reports.
//!
//! `cargo run --example solve_base -- 5.0 0.5 1.0 0.2` takes `s gamma c delta`.

use spne::base::{solve_base, BaseGame};
use spne::{oracle_verify_spne, MarketParams, OracleConfig};

fn main() -> spne::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let get = |i: usize, d: f64| args.get(i).copied().unwrap_or(d);
    let params = MarketParams::new(get(0, 5.0), get(1, 0.5), get(2, 1.0)).with_delta(get(3, 0.0));

    let result = solve_base(&params)?;
    println!("{}", result.tag.as_str());
    for (i, e) in result.candidates.iter().enumerate() {
        let p = &e.profile;
        println!("candidate {i}");
        println!("  spectrum  I_L = {:.6}  I_F = {:.6}", p.i_l, p.i_f);
        println!("  prices    p_L = {:.6}  p_F = {:.6}", p.p_l, p.p_f);
        println!(
            "  users     n_L = {:.6}  n_F = {:.6}",
            e.outcome.n_l, e.outcome.n_f
        );
        println!(
            "  payoffs  pi_L = {:.6} pi_F = {:.6}",
            e.outcome.pi_l, e.outcome.pi_f
        );
        println!(
            "  degree of cooperation {:.6}, EU resource cost {:.6}",
            e.metrics.degree_of_cooperation, e.metrics.eu_resource_cost
        );
        let report = oracle_verify_spne(
            &BaseGame::for_profile(&params, p),
            p,
            &OracleConfig::default(),
        )?;
        println!(
            "  oracle {:?}: stage gains {:.2e} {:.2e} {:.2e} (tolerance {:.2e})",
            report.verdict,
            report.max_unilateral_gain_per_stage[0],
            report.max_unilateral_gain_per_stage[1],
            report.max_unilateral_gain_per_stage[2],
            report.epsilon
        );
    }
    for note in &result.diagnostics {
        println!("note: {note}");
    }
    Ok(())
}
