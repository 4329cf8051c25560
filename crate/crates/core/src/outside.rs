//! Two-provider game where end users may also take an outside option.

use crate::error::{Result, SpneError};
use crate::model::{
    indifferent_location, metrics, subscriptions, Equilibrium, EquilibriumResult, MarketOutcome,
    MarketParams, StrategyProfile, Tag,
};
use crate::numeric::{maximize_1d, quad_max_on_interval, Quadratic};
use crate::oracle::SequentialGame;

/// The `f`, `g` helpers at a given leader investment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutsideOptionAux {
    pub i_l: f64,
    pub f_val: f64,
    pub g_val: f64,
    pub if0: f64,
}

impl OutsideOptionAux {
    pub fn new(params: &MarketParams, i_l: f64) -> Self {
        let f_val = 1.0 / (5.0 * i_l) + params.b / 5.0;
        let g_val = params.b * i_l / 15.0 + 1.0 / 15.0 - params.c / 3.0 + params.k / 3.0;
        let a = 2.0 * params.alpha * f_val * f_val - params.s;
        OutsideOptionAux {
            i_l,
            f_val,
            g_val,
            if0: -2.0 * params.alpha * f_val * g_val / a,
        }
    }

    /// Leader payoff when the follower leases `y`.
    pub fn theta(&self, params: &MarketParams, y: f64) -> f64 {
        let m = params.b * self.i_l / 5.0 + 0.2 + self.g_val - self.f_val * y;
        2.0 * params.alpha * m * m + params.s * y * y - params.gamma * self.i_l * self.i_l
    }

    /// Follower payoff as a quadratic in its lease.
    pub fn follower_quadratic(&self, params: &MarketParams) -> Quadratic {
        let a = params.alpha;
        let (f, g) = (self.f_val, self.g_val);
        Quadratic::new(2.0 * a * f * f - params.s, 4.0 * a * f * g, 2.0 * a * g * g)
    }

    pub fn regions(&self, params: &MarketParams) -> RegionMembership {
        let a = params.alpha;
        let (f, g, x, s) = (self.f_val, self.g_val, self.i_l, params.s);
        let base = 2.0 * a * f * f;
        let in_l1 = s > base + 2.0 * a * f * g / x && g >= 0.0;
        let in_l2 = (g >= 0.0 && base <= s && s <= base + 2.0 * a * f * g / x)
            || (base + 4.0 * a * f * g / x >= s && base > s);
        RegionMembership { in_l1, in_l2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionMembership {
    pub in_l1: bool,
    pub in_l2: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeaseBranch {
    /// Stationary point strictly inside `(0, i_l)`.
    Stationary,
    /// Full lease.
    Full,
}

/// `(ñ_l, ñ_f)` from common-pool shares.
pub fn tilde_demand(
    params: &MarketParams,
    profile: &StrategyProfile,
    n_l: f64,
    n_f: f64,
) -> (f64, f64) {
    let a = params.alpha;
    let nl = a * (n_l + params.k - profile.p_l + params.b * (profile.i_l - profile.i_f));
    let nf = a * (n_f + params.k - profile.p_f + params.b * profile.i_f);
    (nl, nf)
}

pub fn outside_outcome(params: &MarketParams, profile: &StrategyProfile) -> Result<MarketOutcome> {
    let x0 = indifferent_location(params, profile)?;
    let (n_l, n_f) = subscriptions(x0);
    let (tl, tf) = tilde_demand(params, profile, n_l, n_f);
    let fee = params.s * profile.i_f * profile.i_f;
    Ok(MarketOutcome {
        x0,
        n_l: tl,
        n_f: tf,
        pi_l: tl * (profile.p_l - params.c) + fee - params.gamma * profile.i_l * profile.i_l,
        pi_f: tf * (profile.p_f - params.c) - fee,
    })
}

fn il_cap(params: &MarketParams) -> Option<f64> {
    (params.b > 0.0).then(|| 4.0 / params.b)
}

fn closed_prices(params: &MarketParams, i_l: f64, i_f: f64) -> (f64, f64) {
    let (b, c, k) = (params.b, params.c, params.k);
    let t_l = i_f / i_l;
    let common = 1.0 / 15.0 + 2.0 * c / 3.0 + k / 3.0;
    let p_l = common + (1.0 - t_l) / 5.0 - b * i_f / 5.0 + 4.0 * b * i_l / 15.0;
    let p_f = common + t_l / 5.0 + b * i_l / 15.0 + b * i_f / 5.0;
    (p_l, p_f)
}

pub fn oo_stage3_prices(params: &MarketParams, i_l: f64, i_f: f64) -> Result<(f64, f64)> {
    if !(i_l > 0.0) {
        return Err(SpneError::Domain("i_l must be positive".into()));
    }
    if let Some(cap) = il_cap(params) {
        if i_l >= cap {
            return Err(SpneError::Domain(format!(
                "i_l = {i_l} must stay below 4/b = {cap}"
            )));
        }
    }
    Ok(closed_prices(params, i_l, i_f))
}

/// Stage-2 lease with its branch, or a domain error when no positive lease is optimal.
pub fn oo_stage2_if(params: &MarketParams, i_l: f64) -> Result<(f64, LeaseBranch)> {
    let aux = OutsideOptionAux::new(params, i_l);
    let r = aux.regions(params);
    if r.in_l1 {
        Ok((aux.if0, LeaseBranch::Stationary))
    } else if r.in_l2 {
        Ok((i_l, LeaseBranch::Full))
    } else {
        Err(SpneError::Domain(format!("no interior i_f at i_l = {i_l}")))
    }
}

/// Leader's objective over the two lease regions; excluded points are `-inf`.
pub fn stage1_objective(params: &MarketParams, i_l: f64) -> f64 {
    match oo_stage2_if(params, i_l) {
        Ok((y, _)) => OutsideOptionAux::new(params, i_l).theta(params, y),
        Err(_) => f64::NEG_INFINITY,
    }
}

fn validate(params: &MarketParams) -> Result<()> {
    params.validate()?;
    if params.delta() != 0.0 {
        return Err(SpneError::Validation(
            "outside-option variant requires v_L = v_F".into(),
        ));
    }
    if !(params.alpha > 0.0) || params.b < 0.0 {
        return Err(SpneError::Validation(
            "outside-option variant requires alpha > 0 and b >= 0".into(),
        ));
    }
    if let Some(cap) = il_cap(params) {
        if params.delta_lb >= cap {
            return Err(SpneError::Validation(format!(
                "delta_lb must lie below 4/b = {cap}"
            )));
        }
    }
    Ok(())
}

pub fn solve_outside_option(params: &MarketParams) -> Result<EquilibriumResult> {
    validate(params)?;
    let hi = match (il_cap(params), params.m_ub) {
        (Some(cap), Some(m)) => Some(m.min(cap * (1.0 - 1e-9))),
        (Some(cap), None) => Some(cap * (1.0 - 1e-9)),
        (None, m) => m,
    };
    let obj = |x: f64| stage1_objective(params, x);
    let best = match maximize_1d(&obj, params.delta_lb, hi) {
        Ok(b) => b,
        Err(_) => {
            return Ok(EquilibriumResult::no_equilibrium(
                "both lease regions are empty on the investment domain",
            ))
        }
    };
    let mut diagnostics = vec!["only interior equilibria are searched".to_string()];
    let mut candidates = Vec::new();
    for &i_l in &best.argmax {
        let (i_f, branch) = oo_stage2_if(params, i_l)?;
        let (p_l, p_f) = closed_prices(params, i_l, i_f);
        let profile = StrategyProfile::new(i_l, i_f, p_l, p_f);
        let outcome = outside_outcome(params, &profile)?;
        if !(outcome.x0 > 0.0 && outcome.x0 < 1.0) {
            diagnostics.push(format!(
                "candidate at i_l = {i_l} is not interior (x0 = {})",
                outcome.x0
            ));
            continue;
        }
        if outcome.n_l < 0.0 || outcome.n_f < 0.0 {
            diagnostics.push(format!(
                "negative demand at i_l = {i_l}: ({}, {})",
                outcome.n_l, outcome.n_f
            ));
        }
        diagnostics.push(format!("lease branch at i_l = {i_l}: {branch:?}"));
        let metrics = metrics(&profile, &outcome)?;
        candidates.push(Equilibrium {
            profile,
            outcome,
            metrics,
            price_interval: None,
        });
    }
    let tag = match candidates.len() {
        0 => {
            return Ok(EquilibriumResult {
                tag: Tag::NoEquilibrium,
                candidates,
                diagnostics,
            })
        }
        1 => Tag::UniqueInterior,
        _ => Tag::MultipleCandidates,
    };
    Ok(EquilibriumResult {
        tag,
        candidates,
        diagnostics,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct OutsideGame(pub MarketParams);

impl SequentialGame for OutsideGame {
    fn payoffs(&self, profile: &StrategyProfile) -> (f64, f64) {
        outside_outcome(&self.0, profile).map_or((f64::NAN, f64::NAN), |o| (o.pi_l, o.pi_f))
    }

    fn stage3(&self, i_l: f64, i_f: f64) -> (f64, f64) {
        closed_prices(&self.0, i_l, i_f)
    }

    fn stage2(&self, i_l: f64) -> f64 {
        let q = OutsideOptionAux::new(&self.0, i_l).follower_quadratic(&self.0);
        quad_max_on_interval(q, 0.0, i_l).argmax
    }

    fn il_range(&self, profile: &StrategyProfile) -> (f64, f64) {
        let p = &self.0;
        let reach = il_cap(p).map_or(4.0 * profile.i_l, |cap| cap * (1.0 - 1e-9));
        (p.delta_lb, p.m_ub.map_or(reach, |m| m.min(reach)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fig(s: f64) -> MarketParams {
        MarketParams {
            s,
            gamma: 0.8,
            c: 1.0,
            k: 1.0,
            b: 2.0,
            alpha: 1.0,
            ..Default::default()
        }
    }

    #[test]
    fn tilde_examples() {
        let p = MarketParams {
            b: 0.0,
            k: 1.3,
            ..Default::default()
        };
        let prof = StrategyProfile::new(1.0, 0.5, 1.3, 1.3);
        let (a, b) = tilde_demand(&p, &prof, 0.4, 0.6);
        assert_abs_diff_eq!(a, 0.4, epsilon = 1e-14);
        assert_abs_diff_eq!(b, 0.6, epsilon = 1e-14);
        let p = fig(1.0);
        let (a, _) = tilde_demand(&p, &StrategyProfile::new(1.0, 0.5, 1.2, 1.0), 0.5, 0.5);
        assert_abs_diff_eq!(a, 1.3, epsilon = 1e-14);
    }

    #[test]
    fn price_examples() {
        let (pl, _) = oo_stage3_prices(&fig(1.0), 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(
            pl,
            1.0 / 15.0 + 2.0 / 3.0 + 1.0 / 3.0 - 0.4 + 8.0 / 15.0,
            epsilon = 1e-14
        );
        let p = MarketParams {
            b: 0.0,
            k: 1.0,
            c: 1.0,
            ..Default::default()
        };
        let (pl, _) = oo_stage3_prices(&p, 2.0, 0.5).unwrap();
        assert_abs_diff_eq!(pl, 1.0 / 15.0 + 1.0 + 0.75 / 5.0, epsilon = 1e-14);
        assert!(oo_stage3_prices(&fig(1.0), 2.0, 0.5).is_err());
    }

    #[test]
    fn linear_follower_leases_fully() {
        let mut p = fig(1.0);
        let aux = OutsideOptionAux::new(&p, 0.5);
        p.s = 2.0 * aux.f_val * aux.f_val;
        assert_eq!(oo_stage2_if(&p, 0.5).unwrap(), (0.5, LeaseBranch::Full));
    }

    #[test]
    fn large_fee_gives_partial_lease() {
        let r = solve_outside_option(&fig(5.0)).unwrap();
        let e = r.primary().unwrap();
        assert!(e.profile.i_f < e.profile.i_l);
        let r = solve_outside_option(&fig(1.5)).unwrap();
        assert_abs_diff_eq!(
            r.primary().unwrap().metrics.degree_of_cooperation,
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn rejects_unequal_static_factors() {
        assert!(matches!(
            solve_outside_option(&fig(1.0).with_delta(0.2)),
            Err(SpneError::Validation(_))
        ));
    }
}
