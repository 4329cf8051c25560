//! Circular market with two symmetric MNOs and one MVNO, plus the two-provider benchmark on a line of length 2π.

use std::f64::consts::PI;

use crate::error::{Result, SpneError};
use crate::model::{
    metrics, metrics_three_player, Equilibrium, EquilibriumResult, MarketOutcome, MarketParams,
    StrategyProfile, Tag,
};
use crate::numeric::maximize_1d;
use crate::oracle::SequentialGame;

/// Arc lengths between neighbouring providers on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcLayout {
    pub phi_01: f64,
    pub phi_02: f64,
    pub phi_12: f64,
    pub zeta: f64,
}

pub fn arcs(i_l: f64, i_f: f64) -> Result<ArcLayout> {
    if !(i_l > 0.0) {
        return Err(SpneError::Domain("arcs need i_l > 0".into()));
    }
    let phi = PI * (i_f + i_l) / (2.0 * i_l);
    Ok(ArcLayout {
        phi_01: phi,
        phi_02: phi,
        phi_12: PI * (i_l - i_f) / i_l,
        zeta: PI,
    })
}

/// `(n_mvno, n_mno1, n_mno2)`; errors in the regime where every user would pick the MVNO.
pub fn three_player_demand(
    params: &MarketParams,
    profile: &StrategyProfile,
) -> Result<(f64, f64, f64)> {
    let a = arcs(profile.i_l, profile.i_f)?;
    let gap = profile.p_l - profile.p_f;
    if gap >= params.t * a.phi_01 {
        return Err(SpneError::Regime(format!(
            "p_l - p_f = {gap} >= t * phi_01 = {}; no equilibrium in this regime",
            params.t * a.phi_01
        )));
    }
    let x0 = a.phi_01 / 2.0 + gap / (2.0 * params.t);
    if x0 <= 0.0 {
        return Ok((0.0, PI, PI));
    }
    let n_mvno = a.phi_01 + gap / params.t;
    let n_mno =
        PI * (3.0 * profile.i_l - profile.i_f) / (4.0 * profile.i_l) - gap / (2.0 * params.t);
    Ok((n_mvno, n_mno, n_mno))
}

/// Demand on every price pair, assigning all users to the MVNO past the regime boundary.
fn total_demand(params: &MarketParams, profile: &StrategyProfile) -> (f64, f64) {
    match three_player_demand(params, profile) {
        Ok((f, l, _)) => (f, l),
        Err(_) => (2.0 * PI, 0.0),
    }
}

fn outcome(params: &MarketParams, profile: &StrategyProfile) -> MarketOutcome {
    let (n_f, n_l) = total_demand(params, profile);
    let phi = PI * (profile.i_f + profile.i_l) / (2.0 * profile.i_l);
    let fee = params.s * profile.i_f * profile.i_f;
    MarketOutcome {
        x0: phi / 2.0 + (profile.p_l - profile.p_f) / (2.0 * params.t),
        n_l,
        n_f,
        pi_f: n_f * (profile.p_f - params.c) - 2.0 * fee,
        pi_l: n_l * (profile.p_l - params.c) + fee - params.gamma * profile.i_l * profile.i_l,
    }
}

pub fn three_player_stage3(params: &MarketParams, i_l: f64, i_f: f64) -> Result<(f64, f64)> {
    if !(i_l > 0.0) {
        return Err(SpneError::Domain("i_l must be positive".into()));
    }
    let u = params.t * PI / 3.0;
    Ok((
        u * (7.0 * i_l - i_f) / (2.0 * i_l) + params.c,
        u * (i_f + 5.0 * i_l) / (2.0 * i_l) + params.c,
    ))
}

/// Smallest degree of cooperation `i_f / i_l` at which the MVNO cannot gain by
/// undercutting the MNOs far enough to take the whole circle.
///
/// At the closed-form prices the MVNO earns `t (phi + 2 pi)^2 / 9`, while the
/// capture price earns `8 pi t (pi - phi) / 3`; equating the two in terms of the
/// degree gives `tau^2 + 58 tau - 23 = 0`.
pub fn min_interior_degree() -> f64 {
    864f64.sqrt() - 29.0
}

/// Whether the closed-form prices form a price equilibrium of the subgame.
pub fn has_interior_prices(i_l: f64, i_f: f64) -> bool {
    i_l > 0.0 && i_f / i_l >= min_interior_degree()
}

/// Largest `i_l` whose stage-2 lease still admits interior prices.
pub fn interior_price_cap(params: &MarketParams) -> f64 {
    PI * (params.t * (1.0 + 5.0 / min_interior_degree()) / (72.0 * params.s)).sqrt()
}

pub fn full_lease_threshold(params: &MarketParams) -> f64 {
    PI / 2.0 * (params.t / (3.0 * params.s)).sqrt()
}

pub fn three_player_stage2(params: &MarketParams, i_l: f64) -> f64 {
    if i_l < full_lease_threshold(params) {
        i_l
    } else {
        let tp2 = params.t * PI * PI;
        5.0 * tp2 * i_l / (72.0 * i_l * i_l * params.s - tp2)
    }
}

fn validate(params: &MarketParams) -> Result<f64> {
    params.validate()?;
    if !(params.t > 0.0) {
        return Err(SpneError::Validation("t must be positive".into()));
    }
    let thr = full_lease_threshold(params);
    if !(params.delta_lb < thr) {
        return Err(SpneError::Validation(format!(
            "delta_lb must lie below (pi/2) sqrt(t/(3 s)) = {thr}"
        )));
    }
    Ok(thr)
}

/// The MNO's stage-1 payoff with the stage-2 and stage-3 responses substituted.
/// MNO payoff along the equilibrium path; `-inf` where the subgame has no interior prices.
pub fn three_player_stage1_objective(params: &MarketParams, i_l: f64) -> f64 {
    let i_f = three_player_stage2(params, i_l);
    if !has_interior_prices(i_l, i_f) {
        return f64::NEG_INFINITY;
    }
    let r = (7.0 * i_l - i_f) / (2.0 * i_l);
    params.t * PI * PI / 18.0 * r * r + params.s * i_f * i_f - params.gamma * i_l * i_l
}

fn candidate(params: &MarketParams, i_l: f64) -> Result<Equilibrium> {
    let i_f = three_player_stage2(params, i_l);
    let (p_l, p_f) = three_player_stage3(params, i_l, i_f)?;
    let profile = StrategyProfile::new(i_l, i_f, p_l, p_f);
    let outcome = outcome(params, &profile);
    let metrics = metrics_three_player(&profile, &outcome)?;
    Ok(Equilibrium {
        profile,
        outcome,
        metrics,
        price_interval: None,
    })
}

/// The full-lease point `I_L = I_F = (π/2)√(t/3s)` (or `M` below it) with prices `tπ + c`.
///
/// Without a binding bound this point is not optimal for the MNOs, see [`solve_three_player`].
pub fn full_lease_profile(params: &MarketParams) -> Result<Equilibrium> {
    let thr = validate(params)?;
    candidate(params, params.m_ub.map_or(thr, |m| m.min(thr)))
}

/// Symmetric equilibrium of the circular game.
///
/// The MNO payoff rises on `[δ, threshold]` and keeps rising just past the
/// threshold (slope `π√(t/3s)(s − γ)`), so unless `M` binds the investment is
/// found by maximizing the stage-1 objective above the threshold.
pub fn solve_three_player(params: &MarketParams) -> Result<EquilibriumResult> {
    let thr = validate(params)?;
    let mut diagnostics = Vec::new();
    let argmax = match params.m_ub {
        Some(m) if m <= thr => {
            diagnostics.push(format!(
                "bound M = {m} is at or below the full-lease threshold {thr:.6}"
            ));
            vec![m]
        }
        m => {
            let cap = interior_price_cap(params);
            let hi = m.map_or(cap, |m| m.min(cap));
            let obj = |x: f64| three_player_stage1_objective(params, x);
            let best = maximize_1d(&obj, thr, Some(hi))?;
            diagnostics.push(format!(
                "full-lease point {thr:.6} earns the MNO {:.6}; the optimum {:.6} earns {:.6}",
                obj(thr),
                best.argmax[0],
                best.value
            ));
            if best.argmax.iter().any(|&x| (x - cap).abs() <= 1e-9 * cap) {
                diagnostics.push(format!(
                    "investment stops at {cap:.6}: beyond it the MVNO prefers to undercut and serve the whole circle"
                ));
            }
            best.argmax
        }
    };
    let candidates = argmax
        .iter()
        .map(|&x| candidate(params, x))
        .collect::<Result<Vec<_>>>()?;
    if let Some(e) = candidates.first() {
        diagnostics.push(format!(
            "aggregate MVNO spectrum {:.6}, aggregate reservation fee {:.6}",
            2.0 * e.profile.i_f,
            2.0 * params.s * e.profile.i_f * e.profile.i_f
        ));
    }
    let tag = if candidates.len() == 1 {
        Tag::UniqueInterior
    } else {
        Tag::MultipleCandidates
    };
    Ok(EquilibriumResult {
        tag,
        candidates,
        diagnostics,
    })
}

/// The symmetric game where both MNOs move together.
#[derive(Debug, Clone, Copy)]
pub struct ThreePlayerGame(pub MarketParams);

impl SequentialGame for ThreePlayerGame {
    fn payoffs(&self, profile: &StrategyProfile) -> (f64, f64) {
        let o = outcome(&self.0, profile);
        (o.pi_l, o.pi_f)
    }

    /// Subgames without interior prices yield `NaN`, which the oracle treats as unavailable.
    fn stage3(&self, i_l: f64, i_f: f64) -> (f64, f64) {
        if !has_interior_prices(i_l, i_f) {
            return (f64::NAN, f64::NAN);
        }
        three_player_stage3(&self.0, i_l, i_f).unwrap_or((f64::NAN, f64::NAN))
    }

    fn stage2(&self, i_l: f64) -> f64 {
        three_player_stage2(&self.0, i_l)
    }

    fn il_range(&self, profile: &StrategyProfile) -> (f64, f64) {
        (self.0.delta_lb, self.0.m_ub.unwrap_or(4.0 * profile.i_l))
    }

    fn price_scale(&self) -> f64 {
        self.0.t * PI
    }
}

fn line_outcome(params: &MarketParams, profile: &StrategyProfile) -> MarketOutcome {
    let x0 = PI + (profile.p_f - profile.p_l) / (2.0 * params.t);
    let n_l = x0.clamp(0.0, 2.0 * PI);
    let n_f = 2.0 * PI - n_l;
    let fee = params.s * profile.i_f * profile.i_f;
    MarketOutcome {
        x0,
        n_l,
        n_f,
        pi_f: n_f * (profile.p_f - params.c) - fee,
        pi_l: n_l * (profile.p_l - params.c) + fee - params.gamma * profile.i_l * profile.i_l,
    }
}

/// Two providers on a line of length 2π with a constant transport cost.
pub fn solve_two_player_comparison(params: &MarketParams) -> Result<EquilibriumResult> {
    params.validate()?;
    if !(params.t > 0.0) {
        return Err(SpneError::Validation("t must be positive".into()));
    }
    let p = 2.0 * params.t * PI + params.c;
    let profile = StrategyProfile::new(params.delta_lb, 0.0, p, p);
    let outcome = line_outcome(params, &profile);
    let metrics = metrics(&profile, &outcome)?;
    Ok(EquilibriumResult {
        tag: Tag::UniqueInterior,
        candidates: vec![Equilibrium {
            profile,
            outcome,
            metrics,
            price_interval: None,
        }],
        diagnostics: vec!["leader payoff includes the regulator fee gamma * delta^2".into()],
    })
}

#[derive(Debug, Clone, Copy)]
pub struct TwoPlayerLineGame(pub MarketParams);

impl SequentialGame for TwoPlayerLineGame {
    fn payoffs(&self, profile: &StrategyProfile) -> (f64, f64) {
        let o = line_outcome(&self.0, profile);
        (o.pi_l, o.pi_f)
    }

    fn stage3(&self, _i_l: f64, _i_f: f64) -> (f64, f64) {
        let p = 2.0 * self.0.t * PI + self.0.c;
        (p, p)
    }

    fn stage2(&self, _i_l: f64) -> f64 {
        0.0
    }

    fn il_range(&self, profile: &StrategyProfile) -> (f64, f64) {
        (
            self.0.delta_lb,
            self.0.m_ub.unwrap_or(4.0 * profile.i_l.max(0.25)),
        )
    }

    fn price_scale(&self) -> f64 {
        2.0 * self.0.t * PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn arc_examples() {
        let a = arcs(1.0, 1.0).unwrap();
        assert_eq!((a.phi_01, a.phi_12), (PI, 0.0));
        let a = arcs(1.0, 0.0).unwrap();
        assert_abs_diff_eq!(a.phi_01, PI / 2.0);
        assert_abs_diff_eq!(a.phi_12, PI);
        let a = arcs(2.0, 1.0).unwrap();
        assert_abs_diff_eq!(a.phi_01 + a.phi_02 + a.phi_12, 2.0 * PI, epsilon = 1e-14);
        assert!(arcs(0.0, 0.0).is_err());
    }

    #[test]
    fn demand_examples() {
        let p = MarketParams::default();
        let (f, l1, l2) =
            three_player_demand(&p, &StrategyProfile::new(1.0, 1.0, 2.0, 2.0)).unwrap();
        assert_abs_diff_eq!(f, PI);
        assert_abs_diff_eq!(l1, PI / 2.0);
        assert_eq!(l1, l2);
        let r = three_player_demand(&p, &StrategyProfile::new(1.0, 0.0, 1.0, 5.0)).unwrap();
        assert_eq!(r, (0.0, PI, PI));
        assert!(matches!(
            three_player_demand(&p, &StrategyProfile::new(1.0, 1.0, 5.0, 1.0)),
            Err(SpneError::Regime(_))
        ));
    }

    #[test]
    fn stage_examples() {
        let p = MarketParams {
            t: 1.0,
            c: 0.0,
            ..Default::default()
        };
        let (pl, pf) = three_player_stage3(&p, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(pf, 5.0 * PI / 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(pl, 7.0 * PI / 6.0, epsilon = 1e-14);
        let thr = full_lease_threshold(&p);
        assert_abs_diff_eq!(three_player_stage2(&p, thr), thr, epsilon = 1e-12);
        assert_abs_diff_eq!(
            three_player_stage2(&p, 2.0),
            10.0 * PI * PI / (288.0 - PI * PI),
            epsilon = 1e-14
        );
    }

    #[test]
    fn solve_examples() {
        let p = MarketParams {
            t: 3.0,
            s: 1.0,
            ..Default::default()
        };
        let e = full_lease_profile(&p).unwrap();
        assert_abs_diff_eq!(e.profile.i_l, PI / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.profile.p_l, 3.0 * PI + 1.0, epsilon = 1e-12);
        let e = solve_three_player(&p).unwrap().candidates[0].clone();
        assert!(e.profile.i_l > PI / 2.0);
        assert!(e.metrics.degree_of_cooperation < 1.0);
        let p = MarketParams {
            t: 1.0,
            m_ub: Some(0.5),
            ..Default::default()
        };
        let e = solve_three_player(&p).unwrap().candidates[0].clone();
        assert_eq!((e.profile.i_l, e.profile.i_f), (0.5, 0.5));
    }

    #[test]
    fn comparison_example() {
        let p = MarketParams {
            t: 1.0,
            delta_lb: 0.1,
            ..Default::default()
        };
        let e = solve_two_player_comparison(&p).unwrap().candidates[0].clone();
        assert_abs_diff_eq!(e.profile.p_l, 2.0 * PI + 1.0);
        assert_abs_diff_eq!(e.outcome.n_l, PI);
        assert_abs_diff_eq!(e.outcome.pi_f, 2.0 * PI * PI, epsilon = 1e-12);
    }
}
