//! When one provider is valued far above the other, the equilibrium is a family
//! indexed by a price. This walks the family and probes a little past each end.

use spne::base::{corner_interval, corner_profile, BaseGame};
use spne::{oracle_verify_spne, MarketParams, OracleConfig};

fn main() -> spne::Result<()> {
    for delta in [1.5, -1.5, 3.0] {
        let params = MarketParams::new(1.0, 0.5, 1.0)
            .with_delta(delta)
            .with_delta_lb(0.05);
        let interval = corner_interval(&params)?;
        println!(
            "delta = {delta}: {:?} price in [{}, {}]",
            interval.side, interval.lo, interval.hi
        );
        let probes = [
            interval.lo - 0.1,
            interval.lo,
            interval.at(0.5),
            interval.hi,
            interval.hi + 0.1,
        ];
        for price in probes {
            let profile = corner_profile(&params, price)?;
            let game = BaseGame::for_profile(&params, &profile);
            let r = oracle_verify_spne(&game, &profile, &OracleConfig::default())?;
            println!(
                "  price {price:.3}: I_L {:.3} I_F {:.3} p_L {:.3} p_F {:.3} -> {:?} (largest gain {:.2e})",
                profile.i_l,
                profile.i_f,
                profile.p_l,
                profile.p_f,
                r.verdict,
                r.max_unilateral_gain_per_stage.iter().fold(f64::MIN, |m, g| m.max(*g))
            );
        }
    }
    Ok(())
}
