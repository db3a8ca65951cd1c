//! Dense-minor extraction, minor models and the parameter system behind them.

mod engine;
mod model;
mod params;

pub use engine::{
    blocked_threshold, chernoff_tail_bound, dense_minor_via_balls, densest_sub_model, extract_dense_minor,
    radius3_ball_sizes, randomized_contraction, sample_anchors, search_dense_minor, viable_edge_graph, Anchors,
    BallOutcome, MinorSearch, RoundSummary,
};
pub use model::{quotient_graph, validate_minor_model, MinorCertificate, MinorModel};
pub use params::{derive_params, derive_params_with, Constants, Params, Regime};
