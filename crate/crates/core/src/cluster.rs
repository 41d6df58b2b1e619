//! Cluster and partition validity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::measure::Measure;
use crate::vertex_set::VertexSet;

/// Constraint triple shared by all solvers: `μ(C) ≤ p` and `d(C) ≤ q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub mu: Measure,
    pub p: usize,
    pub q: usize,
}

impl Bounds {
    pub fn new(mu: Measure, p: usize, q: usize) -> Self {
        Self { mu, p, q }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClusterStats {
    pub mu_value: usize,
    pub cut_value: usize,
}

impl ClusterStats {
    pub fn of(g: &MultiGraph, mu: Measure, c: &VertexSet) -> Result<Self> {
        Ok(Self {
            mu_value: mu.eval(g, c)?,
            cut_value: g.boundary(c)?.size,
        })
    }
}

/// Whether `c` is nonempty and satisfies both bounds.
pub fn is_cluster(g: &MultiGraph, b: Bounds, c: &VertexSet) -> Result<bool> {
    if c.is_empty() {
        return Ok(false);
    }
    let stats = ClusterStats::of(g, b.mu, c)?;
    Ok(stats.mu_value <= b.p && stats.cut_value <= b.q)
}

/// A partition of the vertex set into clusters, with per-cluster statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSolution {
    pub clusters: Vec<VertexSet>,
    pub stats: Vec<ClusterStats>,
}

impl PartitionSolution {
    /// Computes statistics and sorts clusters by smallest member.
    pub fn new(g: &MultiGraph, mu: Measure, mut clusters: Vec<VertexSet>) -> Result<Self> {
        clusters.sort();
        let stats = clusters
            .iter()
            .map(|c| ClusterStats::of(g, mu, c))
            .collect::<Result<_>>()?;
        Ok(Self { clusters, stats })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("cluster {cluster} contains vertex {vertex} outside the graph")]
    OutOfRange { cluster: usize, vertex: usize },
    #[error("cluster {0} is empty")]
    Empty(usize),
    #[error("vertex {vertex} lies in clusters {first} and {second}")]
    Overlap {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("vertex {0} is not covered")]
    Uncovered(usize),
    #[error("measure {0} is undefined on graphs with parallel edges")]
    MeasureUndefined(Measure),
    #[error("cluster {cluster} has measure {value} > p = {bound}")]
    MeasureExceeded {
        cluster: usize,
        value: usize,
        bound: usize,
    },
    #[error("cluster {cluster} has {value} outgoing edges > q = {bound}")]
    CutExceeded {
        cluster: usize,
        value: usize,
        bound: usize,
    },
}

/// Outcome of [`verify_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCheck {
    pub violation: Option<Violation>,
    /// Statistics for each cluster, present when every cluster could be
    /// evaluated.
    pub stats: Vec<ClusterStats>,
}

impl PartitionCheck {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `clusters` is a partition of `V(g)` into `(μ, p, q)`-clusters.
/// The first violated constraint is reported.
pub fn verify_partition(g: &MultiGraph, b: Bounds, clusters: &[VertexSet]) -> PartitionCheck {
    let fail = |v| PartitionCheck {
        violation: Some(v),
        stats: Vec::new(),
    };
    if b.mu.needs_simple() && !g.is_simple() {
        return fail(Violation::MeasureUndefined(b.mu));
    }
    let mut owner: Vec<Option<usize>> = vec![None; g.n()];
    for (i, c) in clusters.iter().enumerate() {
        if c.is_empty() {
            return fail(Violation::Empty(i));
        }
        for u in c {
            if u >= g.n() {
                return fail(Violation::OutOfRange {
                    cluster: i,
                    vertex: u,
                });
            }
            if let Some(first) = owner[u] {
                return fail(Violation::Overlap {
                    vertex: u,
                    first,
                    second: i,
                });
            }
            owner[u] = Some(i);
        }
    }
    if let Some(u) = owner.iter().position(Option::is_none) {
        return fail(Violation::Uncovered(u));
    }
    let mut stats = Vec::with_capacity(clusters.len());
    for (i, c) in clusters.iter().enumerate() {
        let s = ClusterStats {
            mu_value: b.mu.eval_unchecked(g, c),
            cut_value: g.cut_size(c),
        };
        if s.mu_value > b.p {
            return fail(Violation::MeasureExceeded {
                cluster: i,
                value: s.mu_value,
                bound: b.p,
            });
        }
        if s.cut_value > b.q {
            return fail(Violation::CutExceeded {
                cluster: i,
                value: s.cut_value,
                bound: b.q,
            });
        }
        stats.push(s);
    }
    PartitionCheck {
        violation: None,
        stats,
    }
}

pub(crate) fn require_simple(g: &MultiGraph, mu: Measure) -> Result<()> {
    if mu.needs_simple() && !g.is_simple() {
        Err(Error::MeasureNeedsSimple(mu))
    } else {
        Ok(())
    }
}
