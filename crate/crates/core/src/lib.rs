//! Evidential positive-opinion influence maximization.
//!
//! The pipeline finds the top-k users most likely to spread *positive*
//! opinion through a social network:
//!
//! 1. [`graph`] ingests a follow graph and a message log, extracts per-edge
//!    evidence (common neighbors, mentions, retweets), and fuses it into an
//!    edge influence mass via the belief machinery in [`belief`];
//! 2. [`opinion`] scores each user's positive/negative/objective
//!    distribution from message text against a sentiment lexicon;
//! 3. [`influence`] combines both into the pairwise influence measure and
//!    the submodular-style spread objective σ;
//! 4. [`maximize`] selects seeds with CELF lazy greedy (plain greedy and
//!    exhaustive search serve as oracles), and [`report`] renders the
//!    seed-quality tables and model comparisons;
//! 5. [`synth`] generates deterministic synthetic fixtures at desk scale.
//!
//! All numeric code is generic over the [`Real`] scalar (instantiable at
//! `f32` or `f64`); the crate root exports `f64`-concrete aliases, which the
//! CLI and the serialized interchange formats use.

pub mod belief;
pub mod graph;
pub mod influence;
pub mod maximize;
pub mod opinion;
pub mod report;
mod rng;
pub mod scalar;
pub mod synth;

pub use crate::influence::{GainFormula, InfluenceMode};
pub use crate::scalar::{round_sig12, Real};

/// Basic belief assignment over `f64`.
pub type Bba = belief::Bba<f64>;
/// Sentiment lexicon over `f64`.
pub type Lexicon = opinion::Lexicon<f64>;
/// Opinion distribution over `f64`.
pub type OpinionDistribution = opinion::OpinionDistribution<f64>;
/// Social graph over `f64`.
pub type SocialGraph = graph::SocialGraph<f64>;
/// Influence view over `f64`.
pub type InfluenceView<'g> = influence::InfluenceView<'g, f64>;
/// Seed selection over `f64`.
pub type SeedSelection = maximize::SeedSelection<f64>;
