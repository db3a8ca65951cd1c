//! Independent-set machinery: greedy and peeling procedures, König covers,
//! the power-graph certificate, and the neighbourhood-ratio recursion.

mod cover;
mod g3k;
mod greedy;
mod recursion;

use serde::{Deserialize, Serialize};

use crate::error::{validation_err, Result};
use crate::graph::{Graph, Subgraph, VertexSet};

pub use cover::{bipartite_min_vertex_cover, VertexCover};
pub use g3k::{g3k_certificate, G3kCertificate};
pub use greedy::{peel_low_degree, strip_high_degree, turan_greedy, Peeling, Stripped};
pub use recursion::{
    recursive_independent_set, recursive_independent_set_traced, sparse_neighborhood_set, RecursionConfig,
    RecursionOutcome, DEFAULT_SET_CAP,
};

/// Which procedure produced an independent set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Turan,
    PeelCenters,
    G3kCertificate,
    Recursion,
    Manual,
}

/// A set of pairwise non-adjacent vertices, checked against its host when
/// constructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSetCertificate {
    pub members: VertexSet,
    pub provenance: Provenance,
}

impl IndependentSetCertificate {
    pub fn new(host: &Graph, members: VertexSet, provenance: Provenance) -> Result<Self> {
        let cert = Self { members, provenance };
        cert.verify(host)?;
        Ok(cert)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Re-checks range and pairwise non-adjacency.
    pub fn verify(&self, host: &Graph) -> Result<()> {
        host.check_set(&self.members)
            .map_err(|e| validation_err!("independent set out of range: {e}"))?;
        let members = self.members.as_slice();
        for (i, &u) in members.iter().enumerate() {
            if let Some(&v) = host.neighbors(u).iter().find(|&&v| v > u && members[i + 1..].binary_search(&v).is_ok()) {
                return Err(validation_err!("vertices {u} and {v} are adjacent"));
            }
        }
        Ok(())
    }

    /// Maps members from a subgraph's labels to its host's. The subgraph is
    /// induced, so independence carries over.
    pub fn lift(&self, sub: &Subgraph) -> Self {
        Self { members: sub.lift(&self.members), provenance: self.provenance }
    }
}
