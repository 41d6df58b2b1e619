//! Instance generators: random graphs, planted partitions, and the apex
//! gadget that turns clique questions into clustering questions.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cluster::{Bounds, PartitionSolution};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::measure::Measure;
use crate::vertex_set::VertexSet;

/// Simple graph where each pair is an edge with probability `density`.
pub fn random_graph<R: Rng>(n: usize, density: f64, rng: &mut R) -> MultiGraph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                pairs.push((u, v));
            }
        }
    }
    MultiGraph::from_edges(n, &pairs).expect("pairs are valid")
}

/// Like [`random_graph`], with each present pair getting a multiplicity
/// drawn uniformly from `1..=max_mult`.
pub fn random_multigraph<R: Rng>(n: usize, density: f64, max_mult: u32, rng: &mut R) -> MultiGraph {
    let mut triples = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                triples.push((u, v, rng.gen_range(1..=max_mult.max(1))));
            }
        }
    }
    MultiGraph::from_multiplicities(n, &triples).expect("pairs are valid")
}

/// Random `d`-regular simple graph by repeated random pairing of vertex
/// stubs, discarding pairings with loops or repeated pairs. Dense degrees are
/// sampled as complements of sparse ones.
pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<MultiGraph> {
    if d >= n.max(1) && !(n == 0 && d == 0) || (n * d) % 2 == 1 {
        return Err(Error::Infeasible(format!(
            "no {d}-regular simple graph on {n} vertices"
        )));
    }
    if 2 * d > n.saturating_sub(1) {
        let sparse = random_regular(n, n - 1 - d, rng)?;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| sparse.multiplicity(u, v) == 0)
            .collect();
        return MultiGraph::from_edges(n, &pairs);
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..100_000 {
        stubs.shuffle(rng);
        let mut seen = std::collections::HashSet::new();
        let mut pairs = Vec::with_capacity(stubs.len() / 2);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            pairs.push((u, v));
        }
        return MultiGraph::from_edges(n, &pairs);
    }
    Err(Error::Infeasible(format!(
        "no {d}-regular pairing found on {n} vertices"
    )))
}

/// The common degree, if every vertex has the same one.
pub fn regular_degree(g: &MultiGraph) -> Option<usize> {
    let d = if g.n() == 0 { 0 } else { g.degree(0) };
    (0..g.n()).all(|v| g.degree(v) == d).then_some(d)
}

/// Parameters of the apex gadget built from a `d`-regular base graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetSpec {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub k: usize,
    pub apex: usize,
}

impl GadgetSpec {
    /// `(n - k)(m + 1) + k(d - k)`, the bound tied to `k`-cliques.
    pub fn threshold(&self) -> i64 {
        let (n, m, d, k) = (self.n as i64, self.m as i64, self.d as i64, self.k as i64);
        (n - k) * (m + 1) + k * (d - k)
    }

    /// Number of edges leaving the apex together with `j` pairwise adjacent
    /// base vertices: `(n - j)(m + 1) + j(d - j + 1)`.
    pub fn clique_cut(&self, j: usize) -> i64 {
        let (n, m, d, j) = (self.n as i64, self.m as i64, self.d as i64, j as i64);
        (n - j) * (m + 1) + j * (d - j + 1)
    }
}

#[derive(Debug, Clone)]
pub struct Gadget {
    pub graph: MultiGraph,
    pub spec: GadgetSpec,
}

/// Adds an apex joined to every base vertex by `m + 1` parallel edges.
pub fn gen_hardness_gadget(base: &MultiGraph, k: usize) -> Result<Gadget> {
    if !base.is_simple() {
        return Err(Error::NotSimple("gadget base"));
    }
    let d = regular_degree(base).ok_or(Error::NotRegular)?;
    let (n, m) = (base.n(), base.m());
    let apex = n;
    let spokes: Vec<(usize, usize, u32)> = (0..n).map(|v| (v, apex, m as u32 + 1)).collect();
    let graph = base.with_added(1, &spokes)?;
    Ok(Gadget {
        graph,
        spec: GadgetSpec { n, m, d, k, apex },
    })
}

/// Parameters for [`gen_planted`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlantedSpec {
    pub n: usize,
    pub clusters: usize,
    /// Pairs removed from each planted clique.
    pub intra_nonedges: usize,
    /// Edges added between distinct planted clusters.
    pub inter_edges: usize,
    pub measure: Measure,
}

#[derive(Debug, Clone)]
pub struct Planted {
    pub graph: MultiGraph,
    pub solution: PartitionSolution,
    /// The tightest bounds the planted partition meets.
    pub bounds: Bounds,
}

/// Splits `n` vertices into random nonempty blocks, makes each block a
/// clique minus `intra_nonedges` random pairs, and adds `inter_edges` random
/// edges between blocks.
pub fn gen_planted<R: Rng>(spec: PlantedSpec, rng: &mut R) -> Result<Planted> {
    let PlantedSpec {
        n,
        clusters,
        intra_nonedges,
        inter_edges,
        measure,
    } = spec;
    if clusters == 0 && n > 0 || clusters > n {
        return Err(Error::Infeasible(format!(
            "{clusters} nonempty clusters on {n} vertices"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(clusters.saturating_sub(1)).collect();
    cuts.sort_unstable();
    let mut blocks: Vec<VertexSet> = Vec::new();
    let mut start = 0;
    for end in cuts.into_iter().chain(std::iter::once(n)) {
        if end > start {
            blocks.push(order[start..end].iter().copied().collect());
        }
        start = end;
    }

    let mut label = vec![0usize; n];
    for (i, b) in blocks.iter().enumerate() {
        b.iter().for_each(|v| label[v] = i);
    }
    let mut pairs = Vec::new();
    for b in &blocks {
        let mut inside: Vec<(usize, usize)> = Vec::new();
        let members = b.to_vec();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                inside.push((u, v));
            }
        }
        if intra_nonedges > inside.len() && members.len() > 1 {
            return Err(Error::Infeasible(format!(
                "cannot remove {intra_nonedges} pairs from a block of {}",
                members.len()
            )));
        }
        inside.shuffle(rng);
        pairs.extend(inside.into_iter().skip(intra_nonedges));
    }
    let mut across: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| label[u] != label[v])
        .collect();
    if inter_edges > across.len() {
        return Err(Error::Infeasible(format!(
            "only {} pairs between clusters, asked for {inter_edges}",
            across.len()
        )));
    }
    across.shuffle(rng);
    pairs.extend(across.into_iter().take(inter_edges));

    let graph = MultiGraph::from_edges(n, &pairs)?;
    let solution = PartitionSolution::new(&graph, measure, blocks)?;
    let p = solution.stats.iter().map(|s| s.mu_value).max().unwrap_or(0);
    let q = solution
        .stats
        .iter()
        .map(|s| s.cut_value)
        .max()
        .unwrap_or(0);
    Ok(Planted {
        graph,
        solution,
        bounds: Bounds::new(measure, p, q),
    })
}
