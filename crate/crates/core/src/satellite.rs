//! The satellite problem: extend a core `V₀` by whole satellite parts.
//!
//! An instance partitions `V(G)` into `V₀ ∋ v` and satellites `V₁ … V_r`
//! with no edges between different satellites. A solution picks satellites
//! `S` so that `C(S) = V₀ ∪ ⋃_{i∈S} V_i` satisfies `μ(C) ≤ p` and `d(C) ≤ q`.
//! Because satellites only touch `V₀`, adding `V_i` removes exactly `d(V_i)`
//! edges from the boundary.

use indexmap::IndexMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cluster::{Bounds, ClusterStats};
use crate::error::{Error, Result};
use crate::families::{perfect_colorings, random_coloring_trials, random_colorings, Coloring};
use crate::graph::MultiGraph;
use crate::measure::{self, Measure};
use crate::vertex_set::VertexSet;

/// Colorings used by the nondeg solver.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ColoringStrategy {
    /// A deterministic family that makes every small bin set rainbow.
    #[default]
    Deterministic,
    /// Seeded random colorings, enough to miss a fixed solution with
    /// probability at most `delta`.
    Randomized { seed: u64, delta: f64 },
}

#[derive(Debug, Clone)]
pub struct SatelliteInstance<'g> {
    g: &'g MultiGraph,
    v: usize,
    /// `parts[0]` is `V₀`; the rest are satellites.
    parts: Vec<VertexSet>,
    bounds: Bounds,
    sizes: Vec<usize>,
    cuts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatelliteSolution {
    /// Indices `i ≥ 1` of the chosen satellites, increasing.
    pub chosen: Vec<usize>,
    pub cluster: VertexSet,
    pub stats: ClusterStats,
}

impl<'g> SatelliteInstance<'g> {
    /// Validates that `parts` partitions `V(g)`, that `v ∈ parts[0]`, that
    /// satellites are nonempty and that no edge joins two satellites.
    pub fn new(g: &'g MultiGraph, v: usize, parts: Vec<VertexSet>, bounds: Bounds) -> Result<Self> {
        g.check_vertex(v)?;
        let invalid = |msg: String| Err(Error::InvalidInstance(msg));
        let Some(core) = parts.first() else {
            return invalid("no core part".into());
        };
        if !core.contains(v) {
            return invalid(format!("vertex {v} is not in the core"));
        }
        let mut owner = vec![usize::MAX; g.n()];
        for (i, part) in parts.iter().enumerate() {
            g.check_set(part)?;
            if i > 0 && part.is_empty() {
                return invalid(format!("satellite {i} is empty"));
            }
            for u in part {
                if owner[u] != usize::MAX {
                    return invalid(format!("vertex {u} lies in parts {} and {i}", owner[u]));
                }
                owner[u] = i;
            }
        }
        if let Some(u) = owner.iter().position(|&o| o == usize::MAX) {
            return invalid(format!("vertex {u} is in no part"));
        }
        for &(a, b, _) in g.edges() {
            let (i, j) = (owner[a], owner[b]);
            if i != j && i != 0 && j != 0 {
                return invalid(format!("edge {a}-{b} joins satellites {i} and {j}"));
            }
        }
        let sizes = parts.iter().map(VertexSet::len).collect();
        let cuts = parts.iter().map(|p| g.cut_size(p)).collect();
        Ok(Self {
            g,
            v,
            parts,
            bounds,
            sizes,
            cuts,
        })
    }

    pub fn graph(&self) -> &'g MultiGraph {
        self.g
    }

    pub fn vertex(&self) -> usize {
        self.v
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Number of satellites `r`.
    pub fn satellite_count(&self) -> usize {
        self.parts.len() - 1
    }

    /// `C(S)` for satellite indices `chosen`.
    pub fn cluster_of(&self, chosen: &[usize]) -> VertexSet {
        let mut c = self.parts[0].clone();
        for &i in chosen {
            c.union_with(&self.parts[i]);
        }
        c
    }

    /// Builds a solution for `chosen` if it meets both bounds.
    pub fn solution(&self, chosen: Vec<usize>) -> Option<SatelliteSolution> {
        let cluster = self.cluster_of(&chosen);
        let stats = ClusterStats {
            mu_value: self.bounds.mu.eval_unchecked(self.g, &cluster),
            cut_value: self.g.cut_size(&cluster),
        };
        (stats.mu_value <= self.bounds.p && stats.cut_value <= self.bounds.q).then_some(
            SatelliteSolution {
                chosen,
                cluster,
                stats,
            },
        )
    }

    fn expect_measure(&self, mu: Measure) -> Result<()> {
        if self.bounds.mu != mu {
            return Err(Error::WrongMeasure {
                expected: mu,
                got: self.bounds.mu,
            });
        }
        if mu.needs_simple() && !self.g.is_simple() {
            return Err(Error::MeasureNeedsSimple(mu));
        }
        Ok(())
    }
}

/// Dispatches to the solver for the instance's measure.
pub fn solve(
    inst: &SatelliteInstance,
    coloring: ColoringStrategy,
) -> Result<Option<SatelliteSolution>> {
    match inst.bounds.mu {
        Measure::Size => solve_size(inst),
        Measure::NonEdge => solve_nonedge(inst),
        Measure::NonDeg => solve_nondeg(inst, coloring),
    }
}

/// Size measure as a knapsack: item `i` has value `d(V_i)` and weight
/// `|V_i|`; we need value at least `d(V₀) - q` within weight `p - |V₀|`.
pub fn solve_size(inst: &SatelliteInstance) -> Result<Option<SatelliteSolution>> {
    inst.expect_measure(Measure::Size)?;
    let Bounds { p, q, .. } = inst.bounds;
    let Some(capacity) = p.checked_sub(inst.sizes[0]) else {
        return Ok(None);
    };
    let capacity = capacity.min(inst.g.n());
    let need = inst.cuts[0].saturating_sub(q);
    let r = inst.satellite_count();

    // best[i][w]: largest value using items 1..=i with weight at most w.
    let mut best = vec![vec![0usize; capacity + 1]; r + 1];
    for i in 1..=r {
        let (wi, vi) = (inst.sizes[i], inst.cuts[i]);
        for w in 0..=capacity {
            let skip = best[i - 1][w];
            let take = if wi <= w { best[i - 1][w - wi] + vi } else { 0 };
            best[i][w] = skip.max(take);
        }
    }
    if best[r][capacity] < need {
        return Ok(None);
    }
    let mut chosen = Vec::new();
    let mut w = capacity;
    for i in (1..=r).rev() {
        if best[i][w] != best[i - 1][w] {
            chosen.push(i);
            w -= inst.sizes[i];
        }
    }
    chosen.reverse();
    let sol = inst.solution(chosen);
    debug_assert!(sol.is_some(), "knapsack witness must verify");
    Ok(sol)
}

/// A reachable state of the nonedge program together with one witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonEdgeState {
    pub size: usize,
    pub cut: usize,
    pub nonedges: usize,
    pub chosen: Vec<usize>,
}

type NeKey = (usize, usize, usize);

/// Layered reachability over `(|C(S)|, d(C(S)), nonedge(C(S)))`.
/// Returns the final layer with parent links resolved into witnesses.
fn nonedge_layers(inst: &SatelliteInstance) -> Vec<NonEdgeState> {
    let g = inst.g;
    let p = inst.bounds.p;
    let ne: Vec<usize> = inst.parts.iter().map(|x| measure::nonedge(g, x)).collect();
    let start = (inst.sizes[0], inst.cuts[0], ne[0]);
    if start.2 > p {
        return Vec::new();
    }
    // layers[i] maps a state to (parent index in layers[i-1], included).
    let mut layers: Vec<IndexMap<NeKey, (usize, bool)>> = Vec::new();
    let mut first = IndexMap::new();
    first.insert(start, (usize::MAX, false));
    layers.push(first);
    for i in 1..=inst.satellite_count() {
        let prev = &layers[i - 1];
        let mut next: IndexMap<NeKey, (usize, bool)> = IndexMap::new();
        for (idx, &(j, k, l)) in prev.keys().enumerate() {
            next.entry((j, k, l)).or_insert((idx, false));
            let l2 = l + ne[i] + j * inst.sizes[i] - inst.cuts[i];
            if l2 <= p {
                next.entry((j + inst.sizes[i], k - inst.cuts[i], l2))
                    .or_insert((idx, true));
            }
        }
        layers.push(next);
    }
    let last = layers.len() - 1;
    layers[last]
        .keys()
        .enumerate()
        .map(|(idx, &(size, cut, nonedges))| {
            let mut chosen = Vec::new();
            let mut at = idx;
            for i in (1..=last).rev() {
                let (parent, included) = layers[i][at];
                if included {
                    chosen.push(i);
                }
                at = parent;
            }
            chosen.reverse();
            NonEdgeState {
                size,
                cut,
                nonedges,
                chosen,
            }
        })
        .collect()
}

/// Every state of the nonedge program after all satellites are processed.
pub fn nonedge_reachable_states(inst: &SatelliteInstance) -> Result<Vec<NonEdgeState>> {
    inst.expect_measure(Measure::NonEdge)?;
    Ok(nonedge_layers(inst))
}

/// Nonedge measure by reachability over `(i, |C|, d(C), nonedge(C))`.
pub fn solve_nonedge(inst: &SatelliteInstance) -> Result<Option<SatelliteSolution>> {
    inst.expect_measure(Measure::NonEdge)?;
    let q = inst.bounds.q;
    let found = nonedge_layers(inst).into_iter().find(|s| s.cut <= q);
    Ok(found.and_then(|s| {
        let sol = inst.solution(s.chosen);
        debug_assert!(sol.is_some(), "nonedge witness must verify");
        sol
    }))
}

/// Number of bins of a core vertex: how many of its edges may leave a
/// cluster of size `c` while its non-degree stays within `p`.
pub fn nondeg_capacity(p: usize, degree: usize, c: usize) -> i64 {
    p as i64 + degree as i64 - c as i64 + 1
}

/// Nondeg measure by color coding over boundary edges.
///
/// For each target size `c`, satellites containing a vertex of degree below
/// `c - p - 1` cannot be included. Each core vertex `w` receives `cap(w)`
/// bins; under a coloring of the bins with distinct colors per edge, excluded
/// satellites must claim pairwise disjoint color sets, each matchable to the
/// satellite's boundary edges.
pub fn solve_nondeg(
    inst: &SatelliteInstance,
    strategy: ColoringStrategy,
) -> Result<Option<SatelliteSolution>> {
    inst.expect_measure(Measure::NonDeg)?;
    let g = inst.g;
    let Bounds { p, q, .. } = inst.bounds;
    let r = inst.satellite_count();
    let core = &inst.parts[0];
    let core_list = core.to_vec();

    for c in inst.sizes[0]..=g.n() {
        let min_degree = (c as i64) - (p as i64) - 1;
        let forced: Vec<bool> = (0..=r)
            .map(|i| {
                i > 0
                    && inst.parts[i]
                        .iter()
                        .any(|u| (g.degree(u) as i64) < min_degree)
            })
            .collect();
        let forced_cut: usize = (1..=r).filter(|&i| forced[i]).map(|i| inst.cuts[i]).sum();
        let Some(q_c) = q.checked_sub(forced_cut) else {
            continue;
        };
        let free: Vec<usize> = (1..=r).filter(|&i| !forced[i]).collect();
        let full_size = inst.sizes[0] + free.iter().map(|&i| inst.sizes[i]).sum::<usize>();
        if c > full_size {
            continue;
        }

        let mut free_set = VertexSet::new();
        let mut forced_set = VertexSet::new();
        for i in 1..=r {
            if forced[i] {
                forced_set.union_with(&inst.parts[i]);
            } else {
                free_set.union_with(&inst.parts[i]);
            }
        }
        let mut bins = Vec::with_capacity(core_list.len());
        let mut feasible_c = true;
        for &w in &core_list {
            let cap = nondeg_capacity(p, g.degree(w), c)
                - g.edges_between(&VertexSet::singleton(w), &forced_set) as i64;
            if cap < 0 {
                feasible_c = false;
                break;
            }
            let to_free = g.edges_between(&VertexSet::singleton(w), &free_set);
            bins.push((cap as usize).min(to_free).min(q_c));
        }
        if !feasible_c {
            continue;
        }
        let total_bins: usize = bins.iter().sum();
        let free_edges: usize = free.iter().map(|&i| inst.cuts[i]).sum();
        let k = q_c.min(total_bins).min(free_edges);
        if k > 63 {
            return Err(Error::LimitExceeded(k as u64));
        }

        let colorings: Vec<Coloring> = match strategy {
            ColoringStrategy::Deterministic => perfect_colorings(total_bins, k),
            ColoringStrategy::Randomized { seed, delta } => {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed ^ (c as u64).wrapping_mul(0x9e37_79b9));
                random_colorings(total_bins, k, random_coloring_trials(k, delta), &mut rng)
            }
        };

        let mut tried = std::collections::HashSet::new();
        for coloring in colorings {
            let mut masks = vec![0u64; g.n()];
            let mut at = 0;
            for (idx, &w) in core_list.iter().enumerate() {
                for _ in 0..bins[idx] {
                    masks[w] |= 1u64 << coloring[at];
                    at += 1;
                }
            }
            let key: Vec<u64> = core_list.iter().map(|&w| masks[w]).collect();
            if !tried.insert(key) {
                continue;
            }
            if let Some(excluded) = colorful_exclusion(inst, &free, &masks, k, full_size, c) {
                let chosen: Vec<usize> = free
                    .iter()
                    .copied()
                    .filter(|i| !excluded.contains(i))
                    .collect();
                if let Some(sol) = inst.solution(chosen) {
                    debug_assert_eq!(sol.cluster.len(), c);
                    return Ok(Some(sol));
                }
                debug_assert!(false, "colorful witness failed verification");
            }
        }
    }
    Ok(None)
}

/// Forward pass over the free satellites with states `(|C|, used colors)`,
/// starting from all satellites included. Excluding `V_i` shrinks `|C|` by
/// `|V_i|` and consumes a color set that can be matched to `Δ(V_i)`.
/// Returns the excluded satellite indices of a state with `|C| = c`.
fn colorful_exclusion(
    inst: &SatelliteInstance,
    free: &[usize],
    colors: &[u64],
    k: usize,
    full_size: usize,
    c: usize,
) -> Option<Vec<usize>> {
    let g = inst.g;
    let core = &inst.parts[0];
    // States with parent links: (size, used) -> (parent position, satellite).
    let mut states: IndexMap<(usize, u64), (usize, usize)> = IndexMap::new();
    states.insert((full_size, 0), (usize::MAX, 0));
    for &i in free {
        let edges: Vec<usize> = boundary_core_endpoints(g, &inst.parts[i], core);
        let options = matchable_color_sets(&edges, colors, k);
        if options.is_empty() {
            continue;
        }
        let snapshot: Vec<((usize, u64), usize)> = states
            .keys()
            .enumerate()
            .map(|(pos, &key)| (key, pos))
            .collect();
        for ((size, used), pos) in snapshot {
            let Some(next_size) = size.checked_sub(inst.sizes[i]) else {
                continue;
            };
            if next_size < c {
                continue;
            }
            for &set in &options {
                if set & used == 0 {
                    states.entry((next_size, used | set)).or_insert((pos, i));
                }
            }
        }
    }
    let mut at = states.keys().position(|&(size, _)| size == c)?;
    let mut excluded = Vec::new();
    loop {
        let (_, &(parent, sat)) = states.get_index(at).expect("valid index");
        if parent == usize::MAX {
            break;
        }
        excluded.push(sat);
        at = parent;
    }
    excluded.reverse();
    Some(excluded)
}

/// Core endpoint of each boundary edge copy of a satellite.
fn boundary_core_endpoints(g: &MultiGraph, part: &VertexSet, core: &VertexSet) -> Vec<usize> {
    let mut out = Vec::new();
    for u in part {
        for &(w, m) in g.adjacency(u) {
            if core.contains(w) {
                out.extend(std::iter::repeat_n(w, m as usize));
            }
        }
    }
    out
}

/// All color sets `R` with `|R| = |edges|` admitting a perfect matching from
/// edges to colors, where an edge at core vertex `w` may take any color of
/// `w`.
fn matchable_color_sets(edges: &[usize], colors: &[u64], k: usize) -> Vec<u64> {
    if edges.is_empty() {
        return vec![0];
    }
    if edges.len() > k {
        return Vec::new();
    }
    let reach = edges.iter().fold(0u64, |acc, &w| acc | colors[w]);
    let mut out = Vec::new();
    crate::families::for_each_subset(k, edges.len(), |subset| {
        let set = subset.iter().fold(0u64, |acc, &x| acc | (1u64 << x));
        if set & !reach == 0 && has_perfect_matching(edges, colors, set) {
            out.push(set);
        }
    });
    out
}

/// Kuhn's augmenting-path matching of edges into the colors of `set`.
fn has_perfect_matching(edges: &[usize], colors: &[u64], set: u64) -> bool {
    let mut owner = [usize::MAX; 64];
    for e in 0..edges.len() {
        let mut visited = 0u64;
        if !augment(e, edges, colors, set, &mut owner, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(
    e: usize,
    edges: &[usize],
    colors: &[u64],
    set: u64,
    owner: &mut [usize; 64],
    visited: &mut u64,
) -> bool {
    let mut options = colors[edges[e]] & set & !*visited;
    while options != 0 {
        let col = options.trailing_zeros() as usize;
        options &= options - 1;
        *visited |= 1u64 << col;
        if owner[col] == usize::MAX || augment(owner[col], edges, colors, set, owner, visited) {
            owner[col] = e;
            return true;
        }
    }
    false
}
