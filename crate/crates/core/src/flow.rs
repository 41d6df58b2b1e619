//! Minimum edge cuts between vertex sets by augmenting paths.
//!
//! Every parallel edge carries one unit of capacity in each direction, so the
//! flow value equals the minimum number of edge copies separating the sides.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::vertex_set::VertexSet;

/// A minimum cut together with the two extreme source sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCutResult {
    pub value: usize,
    /// Smallest source side among all minimum cuts.
    pub min_source_side: VertexSet,
    /// Largest source side among all minimum cuts.
    pub max_source_side: VertexSet,
}

/// Minimum `s`-`t` edge cut.
pub fn min_cut(g: &MultiGraph, s: usize, t: usize) -> Result<MinCutResult> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SameTerminals(s));
    }
    Ok(min_cut_between(
        g,
        &VertexSet::singleton(s),
        &VertexSet::singleton(t),
    ))
}

/// Minimum cut separating `sources` from `sinks`, both treated as contracted
/// terminals. The sets must be disjoint and in range.
pub fn min_cut_between(g: &MultiGraph, sources: &VertexSet, sinks: &VertexSet) -> MinCutResult {
    bounded_min_cut(g, sources, sinks, usize::MAX).expect("unbounded flow always completes")
}

/// Like [`min_cut_between`] but gives up as soon as the flow exceeds `limit`,
/// returning `None`.
pub fn bounded_min_cut(
    g: &MultiGraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    limit: usize,
) -> Option<MinCutResult> {
    debug_assert!(sources.is_disjoint(sinks));
    let mut net = Network::new(g);
    let mut value = 0usize;
    while let Some(pushed) = net.augment(sources, sinks) {
        value += pushed;
        if value > limit {
            return None;
        }
    }
    let min_source_side = net.reachable_from(sources);
    let max_source_side = net.coreachable_to(sinks).complement(g.n());
    Some(MinCutResult {
        value,
        min_source_side,
        max_source_side,
    })
}

struct Network<'g> {
    g: &'g MultiGraph,
    /// Net flow along each distinct edge from its smaller to its larger endpoint.
    flow: Vec<i64>,
    /// Per vertex, `(edge index, other endpoint)`.
    arcs: Vec<Vec<(usize, usize)>>,
}

impl<'g> Network<'g> {
    fn new(g: &'g MultiGraph) -> Self {
        let mut arcs = vec![Vec::new(); g.n()];
        for (i, &(u, v, _)) in g.edges().iter().enumerate() {
            arcs[u].push((i, v));
            arcs[v].push((i, u));
        }
        Self {
            g,
            flow: vec![0; g.edges().len()],
            arcs,
        }
    }

    /// Residual capacity from `x` along edge `e`.
    fn residual(&self, e: usize, x: usize) -> i64 {
        let (u, _, c) = self.g.edges()[e];
        if x == u {
            c as i64 - self.flow[e]
        } else {
            c as i64 + self.flow[e]
        }
    }

    fn push(&mut self, e: usize, x: usize, amount: i64) {
        if x == self.g.edges()[e].0 {
            self.flow[e] += amount;
        } else {
            self.flow[e] -= amount;
        }
    }

    fn augment(&mut self, sources: &VertexSet, sinks: &VertexSet) -> Option<usize> {
        let n = self.g.n();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = sources.clone();
        let mut queue: VecDeque<usize> = sources.iter().collect();
        let mut hit = None;
        'bfs: while let Some(x) = queue.pop_front() {
            for &(e, y) in &self.arcs[x] {
                if seen.contains(y) || self.residual(e, x) <= 0 {
                    continue;
                }
                seen.insert(y);
                parent[y] = Some((e, x));
                if sinks.contains(y) {
                    hit = Some(y);
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
        let t = hit?;
        let mut bottleneck = i64::MAX;
        let mut y = t;
        while let Some((e, x)) = parent[y] {
            bottleneck = bottleneck.min(self.residual(e, x));
            y = x;
        }
        let mut y = t;
        while let Some((e, x)) = parent[y] {
            self.push(e, x, bottleneck);
            y = x;
        }
        Some(bottleneck as usize)
    }

    fn reachable_from(&self, sources: &VertexSet) -> VertexSet {
        let mut seen = sources.clone();
        let mut stack: Vec<usize> = sources.iter().collect();
        while let Some(x) = stack.pop() {
            for &(e, y) in &self.arcs[x] {
                if self.residual(e, x) > 0 && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Vertices that can still push flow into `sinks`.
    fn coreachable_to(&self, sinks: &VertexSet) -> VertexSet {
        let mut seen = sinks.clone();
        let mut stack: Vec<usize> = sinks.iter().collect();
        while let Some(x) = stack.pop() {
            for &(e, y) in &self.arcs[x] {
                if self.residual(e, y) > 0 && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}
