//! Important edge separators and important sets.
//!
//! An `s`-`t` separator `S` is important when it is inclusion-minimal and no
//! separator of at most `|S|` edges has a strictly larger source side. The
//! enumeration branches on an edge `e` of the furthest minimum cut: either
//! `e` belongs to the separator (delete it, spend one unit of budget) or it
//! does not (pull the far endpoint of `e` into the source). Each branch strictly
//! decreases `2k - λ`, so the tree is finite, and every leaf candidate is
//! re-checked against the definition before it is reported.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{bounded_min_cut, min_cut_between};
use crate::graph::{EdgeCut, MultiGraph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ImportantSeparator {
    pub cut: EdgeCut,
    /// Component of `G - cut` containing the source.
    pub source_side: VertexSet,
}

/// All important `s`-`t` separators with at most `k` edges, ordered by size
/// and then by source side.
pub fn enumerate_important_separators(
    g: &MultiGraph,
    s: usize,
    t: usize,
    k: usize,
) -> Result<Vec<ImportantSeparator>> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SameTerminals(s));
    }
    let mut candidates = BTreeSet::new();
    let blobs = (0..g.n()).map(VertexSet::singleton).collect();
    branch(g.clone(), blobs, s, t, k, &mut candidates);

    let mut out: Vec<ImportantSeparator> = candidates
        .into_iter()
        .filter(|side| is_important_source_side(g, side, t, k))
        .map(|side| ImportantSeparator {
            cut: g.boundary(&side).expect("source side is in range"),
            source_side: side,
        })
        .collect();
    out.sort_by(|a, b| (a.cut.size, &a.source_side).cmp(&(b.cut.size, &b.source_side)));
    Ok(out)
}

/// One node of the search tree. `h` is the current contracted graph and
/// `blobs[x]` the original vertices merged into `x`.
fn branch(
    h: MultiGraph,
    blobs: Vec<VertexSet>,
    s: usize,
    t: usize,
    k: usize,
    out: &mut BTreeSet<VertexSet>,
) {
    let Some(cut) = bounded_min_cut(&h, &VertexSet::singleton(s), &VertexSet::singleton(t), k)
    else {
        return;
    };
    let comp = h.component_of(s, &cut.max_source_side);
    if cut.value == 0 {
        let mut side = VertexSet::new();
        for x in &comp {
            side.union_with(&blobs[x]);
        }
        out.insert(side);
        return;
    }

    let (x, y) = comp
        .iter()
        .flat_map(|x| h.adjacency(x).iter().map(move |&(y, _)| (x, y)))
        .filter(|&(_, y)| !comp.contains(y))
        .min()
        .expect("positive cut has a boundary edge");

    let without = h.without_edge(x, y).expect("boundary edge exists");
    branch(without, blobs.clone(), s, t, k - 1, out);

    if y != t {
        let mut merged = comp;
        merged.insert(y);
        let contraction = h
            .contract_into(&merged, s)
            .expect("source is in the merged set");
        let mut new_blobs = vec![VertexSet::new(); contraction.graph.n()];
        for (old, blob) in blobs.into_iter().enumerate() {
            new_blobs[contraction.map[old]].union_with(&blob);
        }
        let (s2, t2) = (contraction.map[s], contraction.map[t]);
        branch(contraction.graph, new_blobs, s2, t2, k, out);
    }
}

/// Whether `side` is the source side of an important separator towards `t`
/// with at most `k` edges.
fn is_important_source_side(g: &MultiGraph, side: &VertexSet, t: usize, k: usize) -> bool {
    if side.contains(t) || !g.is_connected_set(side) {
        return false;
    }
    let d = g.cut_size(side);
    if d > k {
        return false;
    }
    let rest = side.complement(g.n());
    let t_comp = g.component_of(t, &rest);
    let minimal = side
        .iter()
        .flat_map(|x| g.adjacency(x).iter().map(|&(y, _)| y))
        .filter(|&y| !side.contains(y))
        .all(|y| t_comp.contains(y));
    minimal && is_undominated(g, side, t, d)
}

/// No connected superset of `x` avoiding `t` has boundary at most `d = d(x)`.
fn is_undominated(g: &MultiGraph, x: &VertexSet, t: usize, d: usize) -> bool {
    let r = min_cut_between(g, x, &VertexSet::singleton(t));
    if r.value != d {
        return false;
    }
    let anchor = x.first().expect("nonempty");
    g.component_of(anchor, &r.max_source_side) == *x
}

/// All connected sets `X` with `v ∉ X`, `d(X) ≤ q`, and no connected strict
/// superset avoiding `v` with boundary at most `d(X)`. Sorted.
pub fn enumerate_important_sets(g: &MultiGraph, v: usize, q: usize) -> Result<Vec<VertexSet>> {
    g.check_vertex(v)?;
    let mut sets = BTreeSet::new();
    for u in (0..g.n()).filter(|&u| u != v) {
        if sets
            .iter()
            .any(|x: &VertexSet| x.contains(u) && g.cut_size(x) == 0)
        {
            continue;
        }
        for sep in enumerate_important_separators(g, u, v, q)? {
            sets.insert(sep.source_side);
        }
    }
    Ok(sets.into_iter().collect())
}

/// Direct test of the important-set definition for `x` with respect to `v`.
pub fn is_important_set(g: &MultiGraph, v: usize, x: &VertexSet, q: usize) -> Result<bool> {
    g.check_vertex(v)?;
    g.check_set(x)?;
    if x.contains(v) || !g.is_connected_set(x) {
        return Ok(false);
    }
    let d = g.cut_size(x);
    Ok(d <= q && is_undominated(g, x, v, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn disconnected_terminals_have_the_empty_separator() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        for k in 0..3 {
            let seps = enumerate_important_separators(&g, 0, 3, k).unwrap();
            assert_eq!(seps.len(), 1);
            assert!(seps[0].cut.is_empty());
            assert_eq!(seps[0].source_side, set(&[0, 1]));
        }
    }

    #[test]
    fn path_keeps_only_the_far_edge() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let seps = enumerate_important_separators(&g, 0, 2, 1).unwrap();
        assert_eq!(seps.len(), 1);
        assert_eq!(seps[0].cut.edges, vec![(1, 2, 1)]);
        assert_eq!(seps[0].source_side, set(&[0, 1]));
    }

    #[test]
    fn budget_below_min_cut_gives_nothing() {
        let g = MultiGraph::from_multiplicities(2, &[(0, 1, 3)]).unwrap();
        assert!(enumerate_important_separators(&g, 0, 1, 2)
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_important_separators(&g, 0, 1, 3).unwrap().len(),
            1
        );
    }

    #[test]
    fn important_sets_of_a_star() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let sets = enumerate_important_sets(&g, 0, 1).unwrap();
        assert_eq!(sets, vec![set(&[1]), set(&[2]), set(&[3])]);
        assert!(!is_important_set(&g, 0, &set(&[1, 2]), 2).unwrap());
    }

    #[test]
    fn important_sets_of_a_path() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            enumerate_important_sets(&g, 0, 1).unwrap(),
            vec![set(&[1, 2])]
        );
        assert!(is_important_set(&g, 0, &set(&[1, 2]), 1).unwrap());
        assert!(!is_important_set(&g, 0, &set(&[2]), 1).unwrap());
        assert!(enumerate_important_sets(&g, 0, 0).unwrap().is_empty());
    }
}
