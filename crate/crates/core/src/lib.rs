//! Subgame perfect equilibria of sequential spectrum-market games between a
//! mobile network operator (the leader, `L`) and a virtual operator (the
//! follower, `F`).
//!
//! Every game has four stages: the leader buys spectrum `I_L`, the follower
//! leases `I_F <= I_L` from it, both set access fees, and end users subscribe.
//! Solvers combine closed-form stages with a numeric search over `I_L`;
//! [`oracle`] checks the result by grid search.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod base;
pub mod error;
pub mod experiment;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod outside;
pub mod three_player;

pub use error::{Result, SpneError};
pub use model::{
    Equilibrium, EquilibriumResult, MarketOutcome, MarketParams, MetricsReport, PriceInterval,
    PriceSide, StrategyProfile, Tag,
};
pub use oracle::{oracle_verify_spne, OracleConfig, OracleReport, SequentialGame, Verdict};
