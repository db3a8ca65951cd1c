use serde::{Deserialize, Serialize};

use crate::error::{validation_err, Result};
use crate::graph::{Graph, Subgraph, Vertex};

/// A minor given by disjoint connected branch sets of a host graph.
///
/// Vertices outside every branch are deleted; each branch is contracted to a
/// single vertex of the minor. The host is not stored: validation takes it as
/// an argument, so the same model can be checked against any graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub branches: Vec<Vec<Vertex>>,
}

impl MinorModel {
    /// Sorts each branch; branch order is kept as given.
    pub fn new(mut branches: Vec<Vec<Vertex>>) -> Self {
        for b in &mut branches {
            b.sort_unstable();
        }
        Self { branches }
    }

    /// One singleton branch per host vertex.
    pub fn identity(n: usize) -> Self {
        Self { branches: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// Branch index of every host vertex, `None` for deleted vertices.
    /// Assumes the model has already been validated.
    pub fn branch_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, b) in self.branches.iter().enumerate() {
            for &v in b {
                owner[v] = Some(i);
            }
        }
        owner
    }

    /// Rewrites vertex ids from a subgraph's local labels to its host's.
    pub fn lift(&self, sub: &Subgraph) -> MinorModel {
        MinorModel::new(
            self.branches.iter().map(|b| b.iter().map(|&v| sub.host_id(v)).collect()).collect(),
        )
    }

    /// Keeps only the listed branches, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> MinorModel {
        MinorModel { branches: keep.iter().map(|&i| self.branches[i].clone()).collect() }
    }
}

/// A validated minor: the model plus its recomputed simple quotient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinorCertificate {
    pub model: MinorModel,
    pub quotient_n: usize,
    pub quotient_m: usize,
    pub achieved_average_degree: f64,
}

impl MinorCertificate {
    /// Validates the stored model against `host` from scratch and checks the
    /// stored quotient figures against the recomputed ones.
    pub fn revalidate(&self, host: &Graph) -> Result<MinorCertificate> {
        let fresh = validate_minor_model(host, &self.model)?;
        if fresh.quotient_n != self.quotient_n || fresh.quotient_m != self.quotient_m {
            return Err(validation_err!(
                "stored quotient ({}, {}) differs from recomputed ({}, {})",
                self.quotient_n,
                self.quotient_m,
                fresh.quotient_n,
                fresh.quotient_m
            ));
        }
        if (fresh.achieved_average_degree - self.achieved_average_degree).abs() > 1e-9 {
            return Err(validation_err!(
                "stored average degree {} differs from recomputed {}",
                self.achieved_average_degree,
                fresh.achieved_average_degree
            ));
        }
        Ok(fresh)
    }
}

/// Checks that branch sets are non-empty, in range, pairwise disjoint and
/// connected in `host`, then builds the simple quotient graph.
pub fn validate_minor_model(host: &Graph, model: &MinorModel) -> Result<MinorCertificate> {
    if model.is_empty() {
        return Err(validation_err!("model has no branch sets"));
    }
    let n = host.n();
    let mut owner = vec![usize::MAX; n];
    for (i, branch) in model.branches.iter().enumerate() {
        if branch.is_empty() {
            return Err(validation_err!("branch {i} is empty"));
        }
        for &v in branch {
            if v >= n {
                return Err(validation_err!("branch {i} names vertex {v}, host has {n} vertices"));
            }
            if owner[v] != usize::MAX {
                return Err(validation_err!("vertex {v} lies in branches {} and {i}", owner[v]));
            }
            owner[v] = i;
        }
    }
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    for (i, branch) in model.branches.iter().enumerate() {
        stack.push(branch[0]);
        seen[branch[0]] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in host.neighbors(v) {
                if owner[u] == i && !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        if reached != branch.len() {
            return Err(validation_err!(
                "branch {i} is disconnected: {reached} of {} vertices reachable",
                branch.len()
            ));
        }
    }
    let mut quotient_edges: Vec<(usize, usize)> = host
        .edges()
        .filter_map(|(u, v)| {
            let (a, b) = (owner[u], owner[v]);
            (a != usize::MAX && b != usize::MAX && a != b).then(|| (a.min(b), a.max(b)))
        })
        .collect();
    quotient_edges.sort_unstable();
    quotient_edges.dedup();
    let quotient_n = model.len();
    let quotient_m = quotient_edges.len();
    Ok(MinorCertificate {
        model: model.clone(),
        quotient_n,
        quotient_m,
        achieved_average_degree: 2.0 * quotient_m as f64 / quotient_n as f64,
    })
}

/// The quotient of a validated model as a graph on branch indices.
pub fn quotient_graph(host: &Graph, model: &MinorModel) -> Graph {
    let owner = model.branch_of(host.n());
    let edges = host.edges().filter_map(|(u, v)| match (owner[u], owner[v]) {
        (Some(a), Some(b)) if a != b => Some((a, b)),
        _ => None,
    });
    Graph::from_edges_merged(model.len(), edges).expect("branch indices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    #[test]
    fn identity_model_on_c5() {
        let c5 = named::cycle(5);
        let cert = validate_minor_model(&c5, &MinorModel::identity(5)).unwrap();
        assert_eq!((cert.quotient_n, cert.quotient_m), (5, 5));
        assert_eq!(cert.achieved_average_degree, 2.0);
        assert_eq!(quotient_graph(&c5, &cert.model), c5);
        cert.revalidate(&c5).unwrap();
    }

    #[test]
    fn rejects_broken_models() {
        let c5 = named::cycle(5);
        let err = validate_minor_model(&c5, &MinorModel::new(vec![vec![0, 2]])).unwrap_err();
        assert!(err.to_string().contains("branch 0 is disconnected"), "{err}");
        assert!(validate_minor_model(&c5, &MinorModel::new(vec![vec![0, 1], vec![1, 2]])).is_err());
        assert!(validate_minor_model(&c5, &MinorModel::new(vec![vec![7]])).is_err());
        assert!(validate_minor_model(&c5, &MinorModel::new(vec![vec![]])).is_err());
        assert!(validate_minor_model(&c5, &MinorModel::new(vec![])).is_err());
    }

    #[test]
    fn contracting_c5_to_triangle() {
        let c5 = named::cycle(5);
        let model = MinorModel::new(vec![vec![0, 1], vec![2, 3], vec![4]]);
        let cert = validate_minor_model(&c5, &model).unwrap();
        assert_eq!((cert.quotient_n, cert.quotient_m), (3, 3));
    }

    #[test]
    fn tampered_certificate_fails_revalidation() {
        let c5 = named::cycle(5);
        let mut cert = validate_minor_model(&c5, &MinorModel::identity(5)).unwrap();
        cert.achieved_average_degree = 2.5;
        assert!(cert.revalidate(&c5).is_err());
    }
}
