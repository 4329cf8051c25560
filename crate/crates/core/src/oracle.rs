//! Grid-based one-shot deviation check of a candidate equilibrium.
//!
//! Each stage is probed by letting one player deviate on a grid while all
//! later play follows the solver's closed-form continuation.

use crate::error::{Result, SpneError};
use crate::model::StrategyProfile;
use crate::numeric::{grid_max, GridSpec};

/// A four-stage game as seen by the oracle.
pub trait SequentialGame: Sync {
    /// Stage-4 payoffs `(pi_l, pi_f)` for an arbitrary profile.
    fn payoffs(&self, profile: &StrategyProfile) -> (f64, f64);
    /// Closed-form stage-3 prices `(p_l, p_f)`; `NaN` marks a subgame the
    /// continuation does not cover, and such deviations are skipped.
    fn stage3(&self, i_l: f64, i_f: f64) -> (f64, f64);
    /// Closed-form stage-2 lease.
    fn stage2(&self, i_l: f64) -> f64;
    /// Search interval for the stage-1 deviation.
    fn il_range(&self, profile: &StrategyProfile) -> (f64, f64);
    /// Characteristic price magnitude; price deviations span ±2 of these.
    fn price_scale(&self) -> f64 {
        1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub n_points: usize,
    pub refinement_rounds: usize,
    /// Overrides the default tolerance `5 × payoff scale × grid step`.
    pub epsilon: Option<f64>,
    /// Largest acceptable coarse grid step.
    pub resolution: Option<f64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            n_points: 2001,
            refinement_rounds: 2,
            epsilon: None,
            resolution: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub profile: StrategyProfile,
    /// Largest unilateral improvement at stages 1, 2, 3, 4 (in that order).
    pub max_unilateral_gain_per_stage: [f64; 4],
    pub epsilon: f64,
    pub verdict: Verdict,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn spec(lo: f64, hi: f64, cfg: &OracleConfig) -> Result<GridSpec> {
    let g = GridSpec::new(lo, hi, cfg.n_points, cfg.refinement_rounds)?;
    if let Some(r) = cfg.resolution {
        if g.step() > r {
            return Err(SpneError::GridTooCoarse {
                step: g.step(),
                resolution: r,
            });
        }
    }
    Ok(g)
}

pub fn oracle_verify_spne<G: SequentialGame>(
    game: &G,
    profile: &StrategyProfile,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    let (pi_l, pi_f) = game.payoffs(profile);
    if !(pi_l.is_finite() && pi_f.is_finite()) {
        return Err(SpneError::Numeric(
            "candidate payoffs are not finite".into(),
        ));
    }
    let StrategyProfile { i_l, p_l, p_f, .. } = *profile;
    let w = 2.0 * game.price_scale();

    let gl = spec(p_l - w, p_l + w, cfg)?;
    let dev_l = grid_max(
        &|p: f64| game.payoffs(&StrategyProfile { p_l: p, ..*profile }).0,
        &gl,
    );
    let gf = spec(p_f - w, p_f + w, cfg)?;
    let dev_f = grid_max(
        &|p: f64| game.payoffs(&StrategyProfile { p_f: p, ..*profile }).1,
        &gf,
    );
    let stage3 = (dev_l.value - pi_l).max(dev_f.value - pi_f);

    let g2 = spec(0.0, i_l, cfg)?;
    let follower = |x: f64| {
        let (a, b) = game.stage3(i_l, x);
        game.payoffs(&StrategyProfile::new(i_l, x, a, b)).1
    };
    let stage2 = grid_max(&follower, &g2).value - pi_f;

    let (lo, hi) = game.il_range(profile);
    let g1 = spec(lo, hi, cfg)?;
    let leader = |x: f64| {
        let y = game.stage2(x);
        let (a, b) = game.stage3(x, y);
        game.payoffs(&StrategyProfile::new(x, y, a, b)).0
    };
    let stage1 = grid_max(&leader, &g1).value - pi_l;

    let step = [gl, gf, g2, g1]
        .iter()
        .map(|g| g.final_step())
        .fold(0.0, f64::max);
    let scale = 1f64.max(pi_l.abs()).max(pi_f.abs());
    let epsilon = cfg.epsilon.unwrap_or(5.0 * scale * step);
    let gains = [stage1, stage2, stage3, 0.0];
    let verdict = if gains.iter().all(|g| *g <= epsilon) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(OracleReport {
        profile: *profile,
        max_unilateral_gain_per_stage: gains,
        epsilon,
        verdict,
    })
}
