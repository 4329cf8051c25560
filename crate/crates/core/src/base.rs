//! Two-provider game on the unit line.

use crate::error::{Result, SpneError};
use crate::model::{
    base_outcome, metrics, Equilibrium, EquilibriumResult, MarketParams, PriceInterval, PriceSide,
    StrategyProfile, Tag,
};
use crate::numeric::{maximize_1d, quad_max_on_interval, Maximum, Quadratic};
use crate::oracle::SequentialGame;

/// Key breakpoints of the stage-2 and stage-1 problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseCaseBranches {
    pub lb: f64,
    pub singularity: f64,
}

impl BaseCaseBranches {
    pub fn new(params: &MarketParams) -> Self {
        BaseCaseBranches {
            lb: ((2.0 - params.delta()) / (9.0 * params.s)).sqrt(),
            singularity: 1.0 / (9.0 * params.s).sqrt(),
        }
    }

    /// Stationary point of the follower's stage-2 quadratic.
    pub fn f1(&self, params: &MarketParams, i_l: f64) -> f64 {
        (1.0 - params.delta()) * i_l / (9.0 * params.s * i_l * i_l - 1.0)
    }
}

fn require_interior(params: &MarketParams) -> Result<()> {
    if params.delta().abs() < 1.0 {
        Ok(())
    } else {
        Err(SpneError::Domain(format!(
            "interior regime needs |delta| < 1, got {}",
            params.delta()
        )))
    }
}

fn interior_prices(params: &MarketParams, i_l: f64, i_f: f64) -> (f64, f64) {
    let r = i_f / (3.0 * i_l);
    let d = params.delta() / 3.0;
    (params.c + 2.0 / 3.0 - r + d, params.c + 1.0 / 3.0 + r - d)
}

/// Stage-3 prices in the interior regime.
pub fn stage3_prices(params: &MarketParams, i_l: f64, i_f: f64) -> Result<(f64, f64)> {
    require_interior(params)?;
    if !(i_l > 0.0) || i_f < 0.0 || i_f > i_l {
        return Err(SpneError::Domain("need 0 <= i_f <= i_l and i_l > 0".into()));
    }
    Ok(interior_prices(params, i_l, i_f))
}

/// The follower's lease for any `i_l`, including the full-lease band below `lb`.
fn lease(params: &MarketParams, i_l: f64) -> f64 {
    let br = BaseCaseBranches::new(params);
    if i_l <= br.lb {
        i_l
    } else {
        br.f1(params, i_l).min(i_l)
    }
}

/// Stage-2 lease on the domain `i_l >= lb`.
pub fn stage2_if(params: &MarketParams, i_l: f64) -> Result<f64> {
    require_interior(params)?;
    let lb = BaseCaseBranches::new(params).lb;
    if i_l < lb * (1.0 - 1e-12) {
        return Err(SpneError::Domain(format!(
            "i_l = {i_l} is below the lower bound {lb}"
        )));
    }
    Ok(lease(params, i_l))
}

/// The follower's stage-2 payoff as a quadratic in `i_f`, with interior prices.
pub fn stage2_quadratic(params: &MarketParams, i_l: f64) -> Quadratic {
    let d = 1.0 - params.delta();
    Quadratic::new(
        1.0 / (9.0 * i_l * i_l) - params.s,
        2.0 * d / (9.0 * i_l),
        d * d / 9.0,
    )
}

/// The leader's stage-1 objective with the stage-2 and stage-3 responses substituted.
pub fn stage1_objective(params: &MarketParams, i_l: f64) -> f64 {
    let i_f = lease(params, i_l);
    let n_l = (2.0 + params.delta()) / 3.0 - i_f / (3.0 * i_l);
    n_l * n_l + params.s * i_f * i_f - params.gamma * i_l * i_l
}

fn check_lower_bound(params: &MarketParams) -> Result<BaseCaseBranches> {
    let br = BaseCaseBranches::new(params);
    if !(params.delta_lb < br.lb) {
        return Err(SpneError::Validation(format!(
            "delta_lb = {} must lie below sqrt((2 - delta)/(9 s)) = {}",
            params.delta_lb, br.lb
        )));
    }
    debug_assert!(br.singularity < br.lb);
    Ok(br)
}

/// Leader's optimal investment(s) in the interior regime.
pub fn stage1_il(params: &MarketParams) -> Result<Maximum> {
    params.validate()?;
    require_interior(params)?;
    let br = check_lower_bound(params)?;
    let obj = |x: f64| stage1_objective(params, x);
    match params.m_ub {
        Some(m) if m <= br.lb => Ok(Maximum {
            argmax: vec![m],
            value: obj(m),
        }),
        m => maximize_1d(&obj, br.lb, m),
    }
}

fn assemble(
    params: &MarketParams,
    profile: StrategyProfile,
    price_interval: Option<PriceInterval>,
) -> Result<Equilibrium> {
    let outcome = base_outcome(params, &profile)?;
    let metrics = metrics(&profile, &outcome)?;
    Ok(Equilibrium {
        profile,
        outcome,
        metrics,
        price_interval,
    })
}

fn interior_candidate(params: &MarketParams, i_l: f64) -> Result<Equilibrium> {
    let i_f = lease(params, i_l);
    let (p_l, p_f) = interior_prices(params, i_l, i_f);
    assemble(params, StrategyProfile::new(i_l, i_f, p_l, p_f), None)
}

/// Interval of the free price in a corner family.
pub fn corner_interval(params: &MarketParams) -> Result<PriceInterval> {
    let d = params.delta();
    let c = params.c;
    if d >= 1.0 {
        Ok(PriceInterval {
            side: PriceSide::Leader,
            lo: c + 1.0,
            hi: c + d,
        })
    } else if d <= -1.0 {
        Ok(PriceInterval {
            side: PriceSide::Follower,
            lo: c + 1.0,
            hi: c - d,
        })
    } else {
        Err(SpneError::Domain(
            "corner families need |delta| >= 1".into(),
        ))
    }
}

/// Investment of the negative corner: full lease at `1/sqrt(2s)`, capped by `M`.
fn negative_corner_investment(params: &MarketParams) -> f64 {
    let i = 1.0 / (2.0 * params.s).sqrt();
    params.m_ub.map_or(i, |m| i.min(m))
}

/// Corner-family member whose free price is `price` (not required to lie in the interval).
pub fn corner_profile(params: &MarketParams, price: f64) -> Result<StrategyProfile> {
    let d = params.delta();
    let interval = corner_interval(params)?;
    Ok(match interval.side {
        PriceSide::Leader => StrategyProfile::new(params.delta_lb, 0.0, price, price - d),
        PriceSide::Follower => {
            let i = negative_corner_investment(params);
            StrategyProfile::new(i, i, price + d, price)
        }
    })
}

fn corner_candidate(params: &MarketParams, frac: f64) -> Result<Equilibrium> {
    let interval = corner_interval(params)?;
    let profile = corner_profile(params, interval.at(frac))?;
    assemble(params, profile, Some(interval))
}

/// Largest follower payoff reachable by leasing into the band where interior prices exist.
fn interior_regime_deviation(params: &MarketParams, i_l: f64) -> Option<f64> {
    let d = params.delta();
    let lo = ((d - 1.0) * i_l).max(0.0);
    let hi = ((d + 2.0) * i_l).min(i_l);
    (lo < hi).then(|| quad_max_on_interval(stage2_quadratic(params, i_l), lo, hi).value)
}

fn corner_notes(params: &MarketParams, eq: &Equilibrium) -> Vec<String> {
    let mut notes = vec![format!(
        "corner family: metrics evaluated at free price {:.6} inside [{:.6}, {:.6}]",
        eq.price_interval.map_or(f64::NAN, |iv| match iv.side {
            PriceSide::Leader => eq.profile.p_l,
            PriceSide::Follower => eq.profile.p_f,
        }),
        eq.price_interval.map_or(f64::NAN, |iv| iv.lo),
        eq.price_interval.map_or(f64::NAN, |iv| iv.hi),
    )];
    let i_l = eq.profile.i_l;
    if let Some(v) = interior_regime_deviation(params, i_l) {
        let on_path = eq.outcome.pi_f;
        let verdict = if v > on_path {
            "exceeds"
        } else {
            "does not exceed"
        };
        notes.push(format!(
            "follower leasing into the interior-price band would earn {v:.6}, which {verdict} its on-path payoff {on_path:.6}; \
             the family is subgame perfect under the corner continuation only"
        ));
    }
    notes
}

pub fn solve_base(params: &MarketParams) -> Result<EquilibriumResult> {
    solve_base_with(params, 0.5)
}

/// Like [`solve_base`], placing corner-family metrics at fraction `corner_frac` of the price interval.
pub fn solve_base_with(params: &MarketParams, corner_frac: f64) -> Result<EquilibriumResult> {
    params.validate()?;
    let d = params.delta();
    if d.abs() < 1.0 {
        let br = check_lower_bound(params)?;
        let best = stage1_il(params)?;
        let mut diagnostics = Vec::new();
        if let Some(m) = params.m_ub {
            if m <= br.lb {
                diagnostics.push(format!(
                    "bounded spectrum: M = {m} <= sqrt((2 - delta)/(9 s)) = {}, so I_L = I_F = M \
                     (square-root threshold used; the unrooted printed form is inconsistent with its derivation)",
                    br.lb
                ));
            }
        }
        let candidates = best
            .argmax
            .iter()
            .map(|&x| interior_candidate(params, x))
            .collect::<Result<Vec<_>>>()?;
        let tag = if candidates.len() == 1 {
            Tag::UniqueInterior
        } else {
            Tag::MultipleCandidates
        };
        if tag == Tag::MultipleCandidates {
            diagnostics.push(format!(
                "stage-1 objective has {} tied maximizers",
                candidates.len()
            ));
        }
        return Ok(EquilibriumResult {
            tag,
            candidates,
            diagnostics,
        });
    }

    if d <= -1.0 && params.delta_lb > negative_corner_investment(params) {
        return Err(SpneError::Validation(
            "delta_lb must not exceed 1/sqrt(2 s)".into(),
        ));
    }
    let corner = corner_candidate(params, corner_frac)?;
    let mut diagnostics = corner_notes(params, &corner);
    if d != 1.0 {
        return Ok(EquilibriumResult {
            tag: Tag::CornerFamily,
            candidates: vec![corner],
            diagnostics,
        });
    }

    let lb = BaseCaseBranches::new(params).lb;
    let i = params.m_ub.map_or(lb, |m| m.min(lb));
    let interior = interior_candidate(params, i)?;
    let leader_if_deviating = 1.0 - params.gamma * i * i;
    diagnostics.push(format!(
        "delta = 1: the full-lease point I_L = I_F = {i:.6} is reported as an additional candidate; \
         a leader investing slightly more faces a zero lease and earns about {leader_if_deviating:.6} \
         versus {:.6} on path",
        interior.outcome.pi_l
    ));
    Ok(EquilibriumResult {
        tag: Tag::MultipleCandidates,
        candidates: vec![corner, interior],
        diagnostics,
    })
}

/// The base game with the continuation matching a particular candidate.
#[derive(Debug, Clone, Copy)]
pub enum BaseGame {
    Interior(MarketParams),
    /// Leader price held at `p_l`; the follower price keeps the indifferent user at 1.
    PositiveCorner {
        params: MarketParams,
        p_l: f64,
    },
    /// Leader price held at `p_l`; the follower price keeps the indifferent user at 0.
    NegativeCorner {
        params: MarketParams,
        p_l: f64,
    },
}

impl BaseGame {
    pub fn for_profile(params: &MarketParams, profile: &StrategyProfile) -> Self {
        let d = params.delta();
        let p = *params;
        if d >= 1.0 && profile.i_f == 0.0 {
            BaseGame::PositiveCorner {
                params: p,
                p_l: profile.p_l,
            }
        } else if d <= -1.0 {
            BaseGame::NegativeCorner {
                params: p,
                p_l: profile.p_l,
            }
        } else {
            BaseGame::Interior(p)
        }
    }

    fn params(&self) -> &MarketParams {
        match self {
            BaseGame::Interior(p) => p,
            BaseGame::PositiveCorner { params, .. } | BaseGame::NegativeCorner { params, .. } => {
                params
            }
        }
    }
}

impl SequentialGame for BaseGame {
    fn payoffs(&self, profile: &StrategyProfile) -> (f64, f64) {
        match base_outcome(self.params(), profile) {
            Ok(o) => (o.pi_l, o.pi_f),
            Err(_) => (f64::NAN, f64::NAN),
        }
    }

    fn stage3(&self, i_l: f64, i_f: f64) -> (f64, f64) {
        match *self {
            BaseGame::Interior(p) => interior_prices(&p, i_l, i_f),
            BaseGame::PositiveCorner { params, p_l } => {
                let t_f = 1.0 - i_f / i_l;
                (p_l, p_l - params.delta() - t_f + 1.0)
            }
            BaseGame::NegativeCorner { params, p_l } => {
                let t_f = 1.0 - i_f / i_l;
                (p_l, p_l - params.delta() - t_f)
            }
        }
    }

    fn stage2(&self, i_l: f64) -> f64 {
        match self {
            BaseGame::Interior(p) => lease(p, i_l),
            BaseGame::PositiveCorner { .. } => 0.0,
            BaseGame::NegativeCorner { params, .. } => (1.0 / (2.0 * params.s * i_l)).min(i_l),
        }
    }

    fn il_range(&self, profile: &StrategyProfile) -> (f64, f64) {
        let p = self.params();
        let reach = 4.0 * profile.i_l.max(BaseCaseBranches::new(p).lb.max(0.25));
        (p.delta_lb, p.m_ub.unwrap_or(reach))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p0() -> MarketParams {
        MarketParams::new(1.0, 0.5, 1.0)
    }

    #[test]
    fn price_examples() {
        let (a, b) = stage3_prices(&p0(), 0.7, 0.7).unwrap();
        assert_abs_diff_eq!(a, 4.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b, 5.0 / 3.0, epsilon = 1e-14);
        let (a, b) = stage3_prices(&p0(), 0.7, 0.0).unwrap();
        assert_abs_diff_eq!(a, 5.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b, 4.0 / 3.0, epsilon = 1e-14);
        assert!(stage3_prices(&p0().with_delta(1.2), 1.0, 0.5).is_err());
    }

    #[test]
    fn lease_examples() {
        let lb = (2.0f64 / 9.0).sqrt();
        assert_abs_diff_eq!(stage2_if(&p0(), lb).unwrap(), lb, epsilon = 1e-14);
        assert_abs_diff_eq!(stage2_if(&p0(), 1.0).unwrap(), 0.125, epsilon = 1e-14);
        assert!(stage2_if(&p0(), 0.3).is_err());
    }

    #[test]
    fn branches_are_ordered() {
        for d in [-0.9, 0.0, 0.9] {
            let br = BaseCaseBranches::new(&p0().with_delta(d));
            assert!(br.singularity < br.lb);
        }
    }

    #[test]
    fn full_cooperation_point() {
        let r = solve_base(&p0()).unwrap();
        assert_eq!(r.tag, Tag::UniqueInterior);
        let e = r.primary().unwrap();
        assert_abs_diff_eq!(e.profile.i_l, (2.0f64 / 9.0).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(e.metrics.degree_of_cooperation, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.outcome.n_l, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.profile.p_f, 5.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn corner_examples() {
        let p = p0().with_delta(1.5).with_delta_lb(0.05);
        let r = solve_base(&p).unwrap();
        assert_eq!(r.tag, Tag::CornerFamily);
        let e = r.primary().unwrap();
        let iv = e.price_interval.unwrap();
        assert_eq!((iv.lo, iv.hi), (2.0, 2.5));
        assert_eq!((e.outcome.n_l, e.profile.i_f), (1.0, 0.0));

        let p = MarketParams::new(2.0, 0.5, 1.0).with_delta(-1.2);
        let e = solve_base(&p).unwrap().candidates[0].clone();
        assert_abs_diff_eq!(e.profile.i_l, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(e.profile.i_f, 0.5, epsilon = 1e-14);
        assert_eq!(e.outcome.n_f, 1.0);
    }

    #[test]
    fn delta_one_reports_both() {
        let r = solve_base(&p0().with_delta(1.0)).unwrap();
        assert_eq!(r.tag, Tag::MultipleCandidates);
        let e = &r.candidates[1];
        assert_abs_diff_eq!(e.profile.i_l, 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.outcome.n_l, 2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn lower_bound_is_enforced() {
        assert!(solve_base(&p0().with_delta_lb(0.5)).is_err());
    }
}
