//! Dense minors versus large independent sets in triangle-free graphs.
//!
//! Given a triangle-free graph and a clique size `t`, [`pipeline::dichotomy`]
//! returns one of two certificates:
//!
//! * a [`minor::MinorModel`] whose quotient has average degree at least
//!   `t * sqrt(ln t) / 3`, or
//! * an [`indep::IndependentSetCertificate`].
//!
//! Every intermediate object (path packings, minor models, vertex covers,
//! independent sets) can be re-checked against the input graph, and the
//! [`oracles`] module holds brute-force references for small instances.

pub mod error;
pub mod generators;
pub mod graph;
pub mod indep;
pub mod io;
pub mod minor;
pub mod oracles;
pub mod paths;
pub mod pipeline;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Graph, Subgraph, Vertex, VertexSet};
pub use indep::{IndependentSetCertificate, Provenance};
pub use minor::{Constants, MinorCertificate, MinorModel, Params};
pub use paths::{PathPacking, PowerGraph};
pub use pipeline::{dichotomy, DichotomyConfig, DichotomyResult, Outcome, Report};
