//! Turning a cover by clusters into a partition.
//!
//! For intersecting clusters `A` and `B`, posimodularity gives
//! `d(A) + d(B) ≥ d(A∖B) + d(B∖A)`, so at least one of them can lose the
//! overlap without its boundary growing. Measures are monotone, so the shrunk
//! set is still a cluster and the union is unchanged.

use crate::cluster::{is_cluster, Bounds, PartitionSolution};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::vertex_set::VertexSet;

/// Bookkeeping from one uncrossing run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncrossTrace {
    /// Intersecting pairs after subset removal, before the first shrink.
    pub initial_crossing_pairs: usize,
    /// Intersecting pairs after each shrink step.
    pub crossing_pairs_after_step: Vec<usize>,
    /// Clusters after validation, in input order.
    pub input: Vec<VertexSet>,
}

impl UncrossTrace {
    pub fn steps(&self) -> usize {
        self.crossing_pairs_after_step.len()
    }
}

/// Uncrosses a cover of `V(g)` by `(μ, p, q)`-clusters into a partition.
pub fn partition_from_cover(
    g: &MultiGraph,
    b: Bounds,
    cover: &[VertexSet],
) -> Result<PartitionSolution> {
    uncross_traced(g, b, cover).map(|(p, _)| p)
}

/// Same as [`partition_from_cover`], also returning step counts.
pub fn uncross_traced(
    g: &MultiGraph,
    b: Bounds,
    cover: &[VertexSet],
) -> Result<(PartitionSolution, UncrossTrace)> {
    validate_cover(g, b, cover)?;
    let mut sets: Vec<VertexSet> = cover.to_vec();
    drop_redundant(&mut sets);
    let initial = crossing_pairs(&sets);
    let mut history = Vec::new();

    while let Some((i, j)) = first_crossing(&sets) {
        let j_minus_i = sets[j].difference(&sets[i]);
        if g.cut_size(&j_minus_i) <= g.cut_size(&sets[j]) {
            sets[j] = j_minus_i;
        } else {
            let i_minus_j = sets[i].difference(&sets[j]);
            debug_assert!(g.cut_size(&i_minus_j) <= g.cut_size(&sets[i]));
            sets[i] = i_minus_j;
        }
        drop_redundant(&mut sets);
        history.push(crossing_pairs(&sets));
    }

    let solution = PartitionSolution::new(g, b.mu, sets)?;
    let trace = UncrossTrace {
        initial_crossing_pairs: initial,
        crossing_pairs_after_step: history,
        input: cover.to_vec(),
    };
    Ok((solution, trace))
}

fn validate_cover(g: &MultiGraph, b: Bounds, cover: &[VertexSet]) -> Result<()> {
    let mut union = VertexSet::new();
    for (i, c) in cover.iter().enumerate() {
        g.check_set(c)?;
        if !is_cluster(g, b, c)? {
            return Err(Error::InvalidCover(format!(
                "set {i} {c:?} is not a ({}, {}, {})-cluster",
                b.mu, b.p, b.q
            )));
        }
        union.union_with(c);
    }
    if let Some(u) = union.complement(g.n()).first() {
        return Err(Error::InvalidCover(format!("vertex {u} is not covered")));
    }
    Ok(())
}

/// Removes empty sets and sets contained in another one; of equal sets the
/// first survives.
fn drop_redundant(sets: &mut Vec<VertexSet>) {
    let mut keep = vec![true; sets.len()];
    for j in 0..sets.len() {
        if sets[j].is_empty() {
            keep[j] = false;
            continue;
        }
        for i in 0..sets.len() {
            if i == j || !keep[i] {
                continue;
            }
            let contained = sets[j].is_subset(&sets[i]);
            if contained && (sets[j] != sets[i] || i < j) {
                keep[j] = false;
                break;
            }
        }
    }
    let mut idx = 0;
    sets.retain(|_| {
        idx += 1;
        keep[idx - 1]
    });
}

fn first_crossing(sets: &[VertexSet]) -> Option<(usize, usize)> {
    (0..sets.len())
        .flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j)))
        .find(|&(i, j)| sets[i].intersects(&sets[j]))
}

fn crossing_pairs(sets: &[VertexSet]) -> usize {
    (0..sets.len())
        .flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| sets[i].intersects(&sets[j]))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Measure;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn diamond() -> MultiGraph {
        MultiGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn worked_example_keeps_the_earlier_cluster() {
        let g = diamond();
        let b = Bounds::new(Measure::Size, 3, 2);
        let (out, trace) = uncross_traced(&g, b, &[set(&[0, 1, 2]), set(&[1, 2, 3])]).unwrap();
        assert_eq!(out.clusters, vec![set(&[0, 1, 2]), set(&[3])]);
        assert_eq!(trace.steps(), 1);
    }

    #[test]
    fn disjoint_cover_is_unchanged() {
        let g = diamond();
        let b = Bounds::new(Measure::Size, 3, 2);
        let out = partition_from_cover(&g, b, &[set(&[3]), set(&[0, 1, 2])]).unwrap();
        assert_eq!(out.clusters, vec![set(&[0, 1, 2]), set(&[3])]);
    }

    #[test]
    fn contained_clusters_are_dropped() {
        let g = diamond();
        let b = Bounds::new(Measure::Size, 3, 2);
        let out = partition_from_cover(&g, b, &[set(&[0]), set(&[0, 1, 2]), set(&[3])]).unwrap();
        assert_eq!(out.clusters, vec![set(&[0, 1, 2]), set(&[3])]);
    }

    #[test]
    fn invalid_covers_are_rejected() {
        let g = diamond();
        let b = Bounds::new(Measure::Size, 3, 2);
        assert!(matches!(
            partition_from_cover(&g, b, &[set(&[0, 1, 2])]),
            Err(Error::InvalidCover(_))
        ));
        assert!(matches!(
            partition_from_cover(&g, b, &[set(&[0, 3]), set(&[1, 2])]),
            Err(Error::InvalidCover(_))
        ));
    }
}
