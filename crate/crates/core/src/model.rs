//! Shared domain types, the hotelling demand map, payoffs and metrics.

use crate::error::{Result, SpneError};

/// Exogenous constants of one scenario.
///
/// `v_l` and `v_f` are only ever used through their difference, see [`MarketParams::delta`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketParams {
    pub s: f64,
    pub gamma: f64,
    pub c: f64,
    pub v_l: f64,
    pub v_f: f64,
    pub delta_lb: f64,
    pub m_ub: Option<f64>,
    pub alpha: f64,
    pub k: f64,
    pub b: f64,
    pub t: f64,
}

impl Default for MarketParams {
    fn default() -> Self {
        MarketParams {
            s: 1.0,
            gamma: 0.5,
            c: 1.0,
            v_l: 0.0,
            v_f: 0.0,
            delta_lb: 0.01,
            m_ub: None,
            alpha: 1.0,
            k: 1.0,
            b: 2.0,
            t: 1.0,
        }
    }
}

impl MarketParams {
    pub fn new(s: f64, gamma: f64, c: f64) -> Self {
        MarketParams {
            s,
            gamma,
            c,
            ..Default::default()
        }
    }

    /// Sets the static-factor difference by putting it entirely on `v_l`.
    pub fn with_delta(mut self, delta: f64) -> Self {
        self.v_l = delta;
        self.v_f = 0.0;
        self
    }

    pub fn with_bound(mut self, m: Option<f64>) -> Self {
        self.m_ub = m;
        self
    }

    pub fn with_delta_lb(mut self, d: f64) -> Self {
        self.delta_lb = d;
        self
    }

    pub fn delta(&self) -> f64 {
        self.v_l - self.v_f
    }

    /// Checks the invariants shared by every variant.
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("s", self.s),
            ("gamma", self.gamma),
            ("c", self.c),
            ("v_L", self.v_l),
            ("v_F", self.v_f),
            ("delta_lb", self.delta_lb),
            ("alpha", self.alpha),
            ("k", self.k),
            ("b", self.b),
            ("t", self.t),
        ];
        for (name, v) in named {
            if !v.is_finite() {
                return Err(SpneError::Validation(format!("{name} must be finite")));
            }
        }
        if !(self.gamma > 0.0) {
            return Err(SpneError::Validation("gamma must be > 0".into()));
        }
        if !(self.s > self.gamma) {
            return Err(SpneError::Validation(format!(
                "s > gamma required (s = {}, gamma = {})",
                self.s, self.gamma
            )));
        }
        if !(self.delta_lb > 0.0) {
            return Err(SpneError::Validation("delta_lb must be > 0".into()));
        }
        if let Some(m) = self.m_ub {
            if !m.is_finite() || m < self.delta_lb {
                return Err(SpneError::Validation(format!(
                    "m_ub >= delta_lb required (m_ub = {m}, delta_lb = {})",
                    self.delta_lb
                )));
            }
        }
        Ok(())
    }
}

/// One joint choice of the two providers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyProfile {
    pub i_l: f64,
    pub i_f: f64,
    pub p_l: f64,
    pub p_f: f64,
}

impl StrategyProfile {
    pub fn new(i_l: f64, i_f: f64, p_l: f64, p_f: f64) -> Self {
        StrategyProfile { i_l, i_f, p_l, p_f }
    }

    pub fn t_l(&self) -> f64 {
        self.i_f / self.i_l
    }

    pub fn t_f(&self) -> f64 {
        1.0 - self.t_l()
    }

    /// Feasibility against the spectrum constraints of `params`.
    pub fn validate(&self, params: &MarketParams) -> Result<()> {
        let tol = 1e-12;
        if !(self.i_l > 0.0) || self.i_f < -tol || self.i_f > self.i_l * (1.0 + tol) {
            return Err(SpneError::Domain(format!(
                "need 0 <= i_f <= i_l and i_l > 0 (i_l = {}, i_f = {})",
                self.i_l, self.i_f
            )));
        }
        if self.i_l < params.delta_lb * (1.0 - tol) {
            return Err(SpneError::Domain("i_l below delta_lb".into()));
        }
        if let Some(m) = params.m_ub {
            if self.i_l > m * (1.0 + tol) {
                return Err(SpneError::Domain("i_l above m_ub".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketOutcome {
    pub x0: f64,
    pub n_l: f64,
    pub n_f: f64,
    pub pi_l: f64,
    pub pi_f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub degree_of_cooperation: f64,
    pub eu_resource_cost: f64,
    pub subscription_split: (f64, f64),
}

/// Unclamped location of the indifferent end user on `[0, 1]`.
pub fn indifferent_location(params: &MarketParams, profile: &StrategyProfile) -> Result<f64> {
    if profile.i_l == 0.0 {
        return Err(SpneError::Domain(
            "i_l = 0 leaves transport costs undefined".into(),
        ));
    }
    Ok(params.delta() + profile.t_f() + profile.p_f - profile.p_l)
}

pub fn subscriptions(x0: f64) -> (f64, f64) {
    let n_l = x0.clamp(0.0, 1.0);
    (n_l, 1.0 - n_l)
}

/// Returns `(pi_l, pi_f)`.
pub fn payoffs(params: &MarketParams, profile: &StrategyProfile, n_l: f64, n_f: f64) -> (f64, f64) {
    let fee = params.s * profile.i_f * profile.i_f;
    let pi_f = n_f * (profile.p_f - params.c) - fee;
    let pi_l = n_l * (profile.p_l - params.c) + fee - params.gamma * profile.i_l * profile.i_l;
    (pi_l, pi_f)
}

/// Stage-4 outcome of the base game: demand followed by payoffs.
pub fn base_outcome(params: &MarketParams, profile: &StrategyProfile) -> Result<MarketOutcome> {
    let x0 = indifferent_location(params, profile)?;
    let (n_l, n_f) = subscriptions(x0);
    let (pi_l, pi_f) = payoffs(params, profile, n_l, n_f);
    Ok(MarketOutcome {
        x0,
        n_l,
        n_f,
        pi_l,
        pi_f,
    })
}

fn check_metric_domain(profile: &StrategyProfile) -> Result<()> {
    let needs_f = profile.i_f > 0.0;
    let needs_l = profile.i_l > profile.i_f;
    if (needs_f && !(profile.p_f > 0.0)) || (needs_l && !(profile.p_l > 0.0)) {
        return Err(SpneError::Domain(
            "EU-resource-cost needs positive prices".into(),
        ));
    }
    if !(profile.i_l > 0.0) {
        return Err(SpneError::Domain(
            "degree of cooperation needs i_l > 0".into(),
        ));
    }
    Ok(())
}

pub fn metrics(profile: &StrategyProfile, outcome: &MarketOutcome) -> Result<MetricsReport> {
    check_metric_domain(profile)?;
    let share = |spectrum: f64, price: f64| {
        if spectrum > 0.0 {
            spectrum / price
        } else {
            0.0
        }
    };
    Ok(MetricsReport {
        degree_of_cooperation: profile.i_f / profile.i_l,
        eu_resource_cost: share(profile.i_f, profile.p_f)
            + share(profile.i_l - profile.i_f, profile.p_l),
        subscription_split: (outcome.n_l, outcome.n_f),
    })
}

/// Metrics of the circular model, where both MNOs contribute spectrum.
pub fn metrics_three_player(
    profile: &StrategyProfile,
    outcome: &MarketOutcome,
) -> Result<MetricsReport> {
    let mut m = metrics(profile, outcome)?;
    m.eu_resource_cost *= 2.0;
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    UniqueInterior,
    CornerFamily,
    MultipleCandidates,
    NoEquilibrium,
}

impl Tag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tag::UniqueInterior => "UniqueInterior",
            Tag::CornerFamily => "CornerFamily",
            Tag::MultipleCandidates => "MultipleCandidates",
            Tag::NoEquilibrium => "NoEquilibrium",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriceSide {
    Leader,
    Follower,
}

/// The free price of a corner family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceInterval {
    pub side: PriceSide,
    pub lo: f64,
    pub hi: f64,
}

impl PriceInterval {
    pub fn at(&self, frac: f64) -> f64 {
        self.lo + frac * (self.hi - self.lo)
    }

    pub fn contains(&self, p: f64) -> bool {
        p >= self.lo - 1e-12 && p <= self.hi + 1e-12
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equilibrium {
    pub profile: StrategyProfile,
    pub outcome: MarketOutcome,
    pub metrics: MetricsReport,
    pub price_interval: Option<PriceInterval>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumResult {
    pub tag: Tag,
    pub candidates: Vec<Equilibrium>,
    pub diagnostics: Vec<String>,
}

impl EquilibriumResult {
    /// The first (best-valued) candidate, if any.
    pub fn primary(&self) -> Option<&Equilibrium> {
        self.candidates.first()
    }

    pub fn no_equilibrium(reason: impl Into<String>) -> Self {
        EquilibriumResult {
            tag: Tag::NoEquilibrium,
            candidates: vec![],
            diagnostics: vec![reason.into()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn location_examples() {
        let p = MarketParams::default();
        let x = indifferent_location(&p, &StrategyProfile::new(1.0, 0.5, 1.3, 1.3)).unwrap();
        assert_abs_diff_eq!(x, 0.5, epsilon = 1e-15);
        let x = indifferent_location(
            &p,
            &StrategyProfile::new(0.7, 0.7, 1.0 + 1.0 / 3.0, 1.0 + 2.0 / 3.0),
        )
        .unwrap();
        assert_abs_diff_eq!(x, 1.0 / 3.0, epsilon = 1e-12);
        let q = p.with_delta(0.3);
        let x = indifferent_location(&q, &StrategyProfile::new(1.0, 0.25, 1.4, 1.2)).unwrap();
        assert_abs_diff_eq!(x, 0.85, epsilon = 1e-12);
        assert!(indifferent_location(&p, &StrategyProfile::new(0.0, 0.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn subscription_clamps() {
        assert_eq!(subscriptions(-0.2), (0.0, 1.0));
        let (a, b) = subscriptions(0.4);
        assert_abs_diff_eq!(a, 0.4);
        assert_abs_diff_eq!(b, 0.6);
        assert_eq!(subscriptions(1.7), (1.0, 0.0));
    }

    #[test]
    fn payoff_examples() {
        let p = MarketParams::new(1.0, 0.5, 1.0);
        let (_, pf) = payoffs(&p, &StrategyProfile::new(1.0, 0.0, 2.0, 1.0), 0.0, 1.0);
        assert_eq!(pf, 0.0);
        let prof = StrategyProfile::new(1.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0, 5.0 / 3.0);
        let (pl, _) = payoffs(&p, &prof, 1.0 / 3.0, 2.0 / 3.0);
        assert_abs_diff_eq!(pl, 1.0 / 9.0 + 1.0 / 9.0 - 0.5 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn metric_examples() {
        let prof = StrategyProfile::new(1.0, 1.0, 1.5, 2.0);
        let out = MarketOutcome {
            x0: 0.5,
            n_l: 0.5,
            n_f: 0.5,
            pi_l: 0.0,
            pi_f: 0.0,
        };
        assert_abs_diff_eq!(metrics(&prof, &out).unwrap().eu_resource_cost, 0.5);
        let prof = StrategyProfile::new(1.0, 0.0, 1.5, 2.0);
        assert_eq!(metrics(&prof, &out).unwrap().degree_of_cooperation, 0.0);
        assert!(metrics(&StrategyProfile::new(1.0, 0.0, 0.0, 2.0), &out).is_err());
    }

    #[test]
    fn validation_names_the_invariant() {
        let err = MarketParams::new(0.4, 0.5, 1.0).validate().unwrap_err();
        assert!(err.to_string().contains("s > gamma"));
        assert!(MarketParams::default()
            .with_bound(Some(0.001))
            .validate()
            .is_err());
    }
}
