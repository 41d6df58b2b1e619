//! Exhaustive reference implementations.
//!
//! Everything here is computed from the raw edge list with plain bitmasks and
//! direct transcriptions of the definitions. Nothing is shared with the
//! solvers, so agreement between the two is evidence rather than tautology.

use std::collections::BTreeSet;

use crate::cluster::{Bounds, PartitionSolution};
use crate::error::{Error, Result};
use crate::graph::{EdgeCut, MultiGraph};
use crate::measure::Measure;
use crate::satellite::{SatelliteInstance, SatelliteSolution};
use crate::vertex_set::VertexSet;

/// Limits checked before any exponential enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_subsets: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_vertices: 20,
            max_edges: 64,
            max_subsets: 1 << 24,
        }
    }
}

impl OracleBudget {
    fn check_vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices || n >= 63 {
            return Err(Error::OracleBudget(format!(
                "{n} vertices exceed the limit of {}",
                self.max_vertices
            )));
        }
        Ok(())
    }

    fn check_subsets(&self, count: u64) -> Result<()> {
        if count > self.max_subsets {
            return Err(Error::OracleBudget(format!(
                "{count} subsets exceed the limit of {}",
                self.max_subsets
            )));
        }
        Ok(())
    }
}

/// Raw copy of a graph as bitmasks.
struct Raw {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
    adj: Vec<u64>,
}

impl Raw {
    fn new(g: &MultiGraph) -> Self {
        let n = g.n();
        let edges = g.edges().to_vec();
        let mut adj = vec![0u64; n];
        for &(u, v, _) in &edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Self { n, edges, adj }
    }

    fn cut(&self, x: u64) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| (x >> u & 1) != (x >> v & 1))
            .map(|&(_, _, c)| c as usize)
            .sum()
    }

    fn nonedge(&self, x: u64) -> usize {
        let mut count = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if x >> u & 1 == 1 && x >> v & 1 == 1 && self.adj[u] >> v & 1 == 0 {
                    count += 1;
                }
            }
        }
        count
    }

    fn nondeg(&self, x: u64) -> usize {
        let mut worst = 0;
        for u in 0..self.n {
            if x >> u & 1 == 0 {
                continue;
            }
            let missing = (0..self.n)
                .filter(|&w| w != u && x >> w & 1 == 1 && self.adj[u] >> w & 1 == 0)
                .count();
            worst = worst.max(missing);
        }
        worst
    }

    fn measure(&self, mu: Measure, x: u64) -> usize {
        match mu {
            Measure::Size => x.count_ones() as usize,
            Measure::NonEdge => self.nonedge(x),
            Measure::NonDeg => self.nondeg(x),
        }
    }

    fn is_cluster(&self, b: Bounds, x: u64) -> bool {
        x != 0 && self.measure(b.mu, x) <= b.p && self.cut(x) <= b.q
    }

    /// Vertices reachable from `s` within `within` using edges with positive
    /// remaining multiplicity.
    fn reach(&self, s: usize, within: u64, removed: &[u32]) -> u64 {
        let mut seen = 1u64 << s;
        loop {
            let mut grown = seen;
            for (i, &(u, v, c)) in self.edges.iter().enumerate() {
                if c > removed[i] && within >> u & 1 == 1 && within >> v & 1 == 1 {
                    if seen >> u & 1 == 1 {
                        grown |= 1 << v;
                    }
                    if seen >> v & 1 == 1 {
                        grown |= 1 << u;
                    }
                }
            }
            if grown == seen {
                return seen;
            }
            seen = grown;
        }
    }

    fn connected(&self, x: u64) -> bool {
        if x == 0 {
            return false;
        }
        let none = vec![0; self.edges.len()];
        self.reach(x.trailing_zeros() as usize, x, &none) == x
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

fn to_set(x: u64) -> VertexSet {
    VertexSet::from_mask(x)
}

fn require_simple(g: &MultiGraph, mu: Measure) -> Result<()> {
    if mu != Measure::Size && !g.is_simple() {
        return Err(Error::MeasureNeedsSimple(mu));
    }
    Ok(())
}

/// Every `(μ, p, q)`-cluster containing `v`, in increasing bitmask order.
pub fn oracle_all_clusters(
    g: &MultiGraph,
    b: Bounds,
    v: usize,
    budget: OracleBudget,
) -> Result<Vec<VertexSet>> {
    g.check_vertex(v)?;
    require_simple(g, b.mu)?;
    budget.check_vertices(g.n())?;
    budget.check_subsets(1u64 << g.n().saturating_sub(1))?;
    let raw = Raw::new(g);
    Ok((0..=raw.all())
        .filter(|&x| x >> v & 1 == 1 && raw.is_cluster(b, x))
        .map(to_set)
        .collect())
}

/// A smallest `(μ, p, q)`-cluster containing `v` (ties broken by bitmask).
pub fn oracle_cluster(
    g: &MultiGraph,
    b: Bounds,
    v: usize,
    budget: OracleBudget,
) -> Result<Option<VertexSet>> {
    let all = oracle_all_clusters(g, b, v, budget)?;
    Ok(all.into_iter().min_by_key(|c| (c.len(), c.as_mask())))
}

/// Clusters containing `v` with no proper subset that is also a cluster
/// containing `v`.
pub fn oracle_minimal_clusters(
    g: &MultiGraph,
    b: Bounds,
    v: usize,
    budget: OracleBudget,
) -> Result<Vec<VertexSet>> {
    let all = oracle_all_clusters(g, b, v, budget)?;
    Ok(all
        .iter()
        .filter(|c| !all.iter().any(|d| d.is_proper_subset(c)))
        .cloned()
        .collect())
}

/// All partitions of `V(g)` into `(μ, p, q)`-clusters, each sorted by
/// smallest member.
pub fn oracle_all_partitions(
    g: &MultiGraph,
    b: Bounds,
    budget: OracleBudget,
) -> Result<Vec<Vec<VertexSet>>> {
    require_simple(g, b.mu)?;
    budget.check_vertices(g.n())?;
    budget.check_subsets(1u64 << g.n())?;
    let raw = Raw::new(g);
    let valid: Vec<bool> = (0..=raw.all()).map(|x| raw.is_cluster(b, x)).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    collect_partitions(raw.all(), &valid, &mut current, &mut out, usize::MAX);
    for p in &mut out {
        p.sort();
    }
    out.sort();
    Ok(out)
}

/// One partition of `V(g)` into `(μ, p, q)`-clusters, if any exists.
pub fn oracle_partition(
    g: &MultiGraph,
    b: Bounds,
    budget: OracleBudget,
) -> Result<Option<PartitionSolution>> {
    require_simple(g, b.mu)?;
    budget.check_vertices(g.n())?;
    budget.check_subsets(1u64 << g.n())?;
    let raw = Raw::new(g);
    let valid: Vec<bool> = (0..=raw.all()).map(|x| raw.is_cluster(b, x)).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    collect_partitions(raw.all(), &valid, &mut current, &mut out, 1);
    match out.pop() {
        Some(clusters) => Ok(Some(PartitionSolution::new(g, b.mu, clusters)?)),
        None => Ok(None),
    }
}

/// The block of the lowest remaining vertex is chosen among all valid
/// clusters inside `rest`, then the rest is partitioned recursively.
fn collect_partitions(
    rest: u64,
    valid: &[bool],
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<VertexSet>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if rest == 0 {
        out.push(current.iter().map(|&x| to_set(x)).collect());
        return;
    }
    let low = rest & rest.wrapping_neg();
    let others = rest & !low;
    // Enumerate subsets of `others` and add the lowest vertex.
    let mut sub = others;
    loop {
        let block = sub | low;
        if valid[block as usize] {
            current.push(block);
            collect_partitions(rest & !block, valid, current, out, limit);
            current.pop();
            if out.len() >= limit {
                return;
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & others;
    }
}

/// An important separator as seen by the oracle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleSeparator {
    pub cut: EdgeCut,
    pub source_side: VertexSet,
}

/// Important `s`-`t` separators of at most `k` edges: every edge
/// sub-multiset of size at most `k` is tried, inclusion-minimal separators are
/// kept, and any separator whose source side is strictly contained in the
/// source side of another one with no more edges is discarded.
pub fn oracle_important_separators(
    g: &MultiGraph,
    s: usize,
    t: usize,
    k: usize,
    budget: OracleBudget,
) -> Result<Vec<OracleSeparator>> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SameTerminals(s));
    }
    budget.check_vertices(g.n())?;
    if g.m() > budget.max_edges {
        return Err(Error::OracleBudget(format!(
            "{} edges exceed the limit of {}",
            g.m(),
            budget.max_edges
        )));
    }
    let raw = Raw::new(g);
    budget.check_subsets(count_multisets(&raw.edges, k))?;

    let all = raw.all();
    let mut minimal: Vec<(Vec<u32>, usize, u64)> = Vec::new();
    let mut removed = vec![0u32; raw.edges.len()];
    for_each_multiset(&raw.edges, k, 0, 0, &mut removed, &mut |removed, size| {
        let side = raw.reach(s, all, removed);
        if side >> t & 1 == 1 {
            return;
        }
        let mut trial = removed.to_vec();
        for i in 0..trial.len() {
            if trial[i] == 0 {
                continue;
            }
            trial[i] -= 1;
            let still_separates = raw.reach(s, all, &trial) >> t & 1 == 0;
            trial[i] += 1;
            if still_separates {
                return;
            }
        }
        minimal.push((removed.to_vec(), size, side));
    });

    let mut out = Vec::new();
    for (removed, size, side) in &minimal {
        let dominated = minimal
            .iter()
            .any(|(_, size2, side2)| size2 <= size && side2 & side == *side && side2 != side);
        if dominated {
            continue;
        }
        let pairs = removed.iter().enumerate().flat_map(|(i, &c)| {
            let (u, v, _) = raw.edges[i];
            std::iter::repeat_n((u, v), c as usize)
        });
        out.push(OracleSeparator {
            cut: EdgeCut::from_pairs(pairs),
            source_side: to_set(*side),
        });
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn count_multisets(edges: &[(usize, usize, u32)], k: usize) -> u64 {
    // ways[j]: number of sub-multisets of total size j.
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for &(_, _, c) in edges {
        let mut next = vec![0u64; k + 1];
        for (j, &w) in ways.iter().enumerate() {
            for take in 0..=(c as usize).min(k - j) {
                next[j + take] = next[j + take].saturating_add(w);
            }
        }
        ways = next;
    }
    ways.iter().fold(0u64, |a, &b| a.saturating_add(b))
}

fn for_each_multiset(
    edges: &[(usize, usize, u32)],
    budget: usize,
    idx: usize,
    size: usize,
    removed: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32], usize),
) {
    if idx == edges.len() {
        f(removed, size);
        return;
    }
    let max = (edges[idx].2 as usize).min(budget - size);
    for take in 0..=max {
        removed[idx] = take as u32;
        for_each_multiset(edges, budget, idx + 1, size + take, removed, f);
    }
    removed[idx] = 0;
}

/// Important sets for `v`: connected sets avoiding `v` with boundary at most
/// `q` that no connected strict superset avoiding `v` dominates.
pub fn oracle_important_sets(
    g: &MultiGraph,
    v: usize,
    q: usize,
    budget: OracleBudget,
) -> Result<Vec<VertexSet>> {
    g.check_vertex(v)?;
    budget.check_vertices(g.n())?;
    budget.check_subsets(1u64 << g.n())?;
    let raw = Raw::new(g);
    let candidates: Vec<(u64, usize)> = (1..=raw.all())
        .filter(|&x| x >> v & 1 == 0 && raw.connected(x))
        .map(|x| (x, raw.cut(x)))
        .collect();
    Ok(candidates
        .iter()
        .filter(|&&(x, d)| {
            d <= q
                && !candidates
                    .iter()
                    .any(|&(y, dy)| y != x && y & x == x && dy <= d)
        })
        .map(|&(x, _)| to_set(x))
        .collect())
}

/// First subset of satellites (in increasing bitmask order) whose cluster
/// meets both bounds.
pub fn oracle_satellite(
    inst: &SatelliteInstance,
    budget: OracleBudget,
) -> Result<Option<SatelliteSolution>> {
    let g = inst.graph();
    let b = inst.bounds();
    require_simple(g, b.mu)?;
    budget.check_vertices(g.n())?;
    let r = inst.satellite_count();
    budget.check_subsets(1u64 << r)?;
    let raw = Raw::new(g);
    let masks: Vec<u64> = inst
        .parts()
        .iter()
        .map(|p| p.as_mask().unwrap_or(0))
        .collect();
    for pick in 0..(1u64 << r) {
        let mut x = masks[0];
        for i in 0..r {
            if pick >> i & 1 == 1 {
                x |= masks[i + 1];
            }
        }
        if raw.measure(b.mu, x) <= b.p && raw.cut(x) <= b.q {
            let chosen: Vec<usize> = (0..r)
                .filter(|i| pick >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            return Ok(Some(SatelliteSolution {
                chosen,
                cluster: to_set(x),
                stats: crate::cluster::ClusterStats {
                    mu_value: raw.measure(b.mu, x),
                    cut_value: raw.cut(x),
                },
            }));
        }
    }
    Ok(None)
}

/// Connected sets `C` with `v ∉ C`, `|C| ≤ max_size`, such that every proper
/// subset `C'` (including the empty set) has `d(C' ∪ {v}) > d(C ∪ {v})`.
pub fn oracle_vminimal_sets(
    g: &MultiGraph,
    v: usize,
    max_size: usize,
    budget: OracleBudget,
) -> Result<Vec<VertexSet>> {
    g.check_vertex(v)?;
    budget.check_vertices(g.n())?;
    budget.check_subsets(1u64 << g.n())?;
    let raw = Raw::new(g);
    let vbit = 1u64 << v;
    let out = (1..=raw.all())
        .filter(|&c| c & vbit == 0 && c.count_ones() as usize <= max_size && raw.connected(c))
        .filter(|&c| oracle_is_vminimal(&raw, vbit, c))
        .map(to_set)
        .collect();
    Ok(out)
}

fn oracle_is_vminimal(raw: &Raw, vbit: u64, c: u64) -> bool {
    let d = raw.cut(c | vbit);
    let mut sub = (c - 1) & c;
    loop {
        if raw.cut(sub | vbit) <= d {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & c;
    }
}

/// Whether `c` (with `v ∉ c`) is v-minimal, by checking every proper subset.
pub fn oracle_check_vminimal(g: &MultiGraph, v: usize, c: &VertexSet) -> Result<bool> {
    OracleBudget::default().check_vertices(g.n())?;
    let raw = Raw::new(g);
    let x = c.as_mask().unwrap_or(0);
    if x == 0 {
        return Ok(true);
    }
    Ok(oracle_is_vminimal(&raw, 1 << v, x))
}

/// Sets `C` with `v ∉ C`, `|C| ≥ 3p`, `nondeg(C ∪ {v}) ≤ p` that are
/// v-minimal, by exhaustive search.
pub fn oracle_large_nondeg_sets(
    g: &MultiGraph,
    v: usize,
    p: usize,
    budget: OracleBudget,
) -> Result<Vec<VertexSet>> {
    g.check_vertex(v)?;
    require_simple(g, Measure::NonDeg)?;
    budget.check_vertices(g.n())?;
    budget.check_subsets(1u64 << g.n())?;
    let raw = Raw::new(g);
    let vbit = 1u64 << v;
    Ok((1..=raw.all())
        .filter(|&c| c & vbit == 0 && c.count_ones() as usize >= 3 * p)
        .filter(|&c| raw.nondeg(c | vbit) <= p && oracle_is_vminimal(&raw, vbit, c))
        .map(to_set)
        .collect())
}

/// Sets containing `apex` that induce a clique (ignoring multiplicities) and
/// have at most `q` outgoing edges.
pub fn oracle_apex_cliques(
    g: &MultiGraph,
    apex: usize,
    q: u64,
    budget: OracleBudget,
) -> Result<Vec<VertexSet>> {
    g.check_vertex(apex)?;
    budget.check_vertices(g.n())?;
    budget.check_subsets(1u64 << g.n().saturating_sub(1))?;
    let raw = Raw::new(g);
    Ok((0..=raw.all())
        .filter(|&x| x >> apex & 1 == 1)
        .filter(|&x| (0..raw.n).all(|u| x >> u & 1 == 0 || (raw.adj[u] | 1 << u) & x == x))
        .filter(|&x| raw.cut(x) as u64 <= q)
        .map(to_set)
        .collect())
}

/// Size of the largest clique of a simple graph, by exhaustive search.
pub fn oracle_clique_number(g: &MultiGraph, budget: OracleBudget) -> Result<usize> {
    budget.check_vertices(g.n())?;
    budget.check_subsets(1u64 << g.n())?;
    let raw = Raw::new(g);
    Ok((0..=raw.all())
        .filter(|&x| (0..raw.n).all(|u| x >> u & 1 == 0 || (raw.adj[u] | 1 << u) & x == x))
        .map(|x| x.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Distinct edge sets of a list of separators, for set comparisons.
pub fn separator_cuts(seps: &[OracleSeparator]) -> BTreeSet<EdgeCut> {
    seps.iter().map(|s| s.cut.clone()).collect()
}
