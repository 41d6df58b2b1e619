//! Algorithms parameterized by the measure bound `p`, for simple graphs.
//!
//! A set `C` with `v ∉ C` is v-minimal when every proper subset `C'` has
//! `d(C' ∪ {v}) > d(C ∪ {v})`. Some cluster contains `v` iff one of the form
//! `C ∪ {v}` with `C` v-minimal exists, and every v-minimal set is a disjoint,
//! non-adjacent union of connected v-minimal sets. Small connected ones are
//! cataloged by branching; color coding then picks disjoint catalog members
//! while a dynamic program tracks the boundary and the measure of the union.

use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cluster::{is_cluster, Bounds};
use crate::error::{Error, Result};
use crate::families::{perfect_colorings, random_coloring_trials, random_colorings, Coloring};
use crate::flow::min_cut_between;
use crate::graph::MultiGraph;
use crate::measure::{nondeg, nonedge, Measure};
use crate::satellite::ColoringStrategy;
use crate::solver_q::{partition_with, PartitionRun};
use crate::vertex_set::VertexSet;

fn require_simple_graph(g: &MultiGraph) -> Result<()> {
    if g.is_simple() {
        Ok(())
    } else {
        Err(Error::NotSimple("parameter-p algorithms"))
    }
}

/// Whether `c` is v-minimal. Decided by one minimum cut from `v` to the
/// vertices outside `c ∪ {v}`: `c` is v-minimal iff `c ∪ {v}` is the smallest
/// minimum-cut source side.
pub fn is_v_minimal(g: &MultiGraph, v: usize, c: &VertexSet) -> Result<bool> {
    g.check_vertex(v)?;
    g.check_set(c)?;
    require_simple_graph(g)?;
    if c.contains(v) {
        return Err(Error::InvalidInstance(format!(
            "vertex {v} lies in the tested set"
        )));
    }
    if c.is_empty() {
        return Ok(true);
    }
    let mut closed = c.clone();
    closed.insert(v);
    // An isolated extra sink keeps the flow well defined when `c ∪ {v} = V`.
    let padded = g.with_added(1, &[])?;
    let mut sinks = closed.complement(padded.n());
    sinks.insert(g.n());
    let cut = min_cut_between(&padded, &VertexSet::singleton(v), &sinks);
    Ok(cut.value == g.cut_size(&closed) && cut.min_source_side == closed)
}

/// A connected v-minimal set with the quantities the dynamic programs use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub set: VertexSet,
    /// `d(S, v)`: edges between `S` and `v`.
    pub to_v: usize,
    /// `d̄(S, v)`: the other boundary edges of `S`.
    pub other: usize,
    pub size: usize,
    pub nonedge: usize,
    /// Largest number of non-neighbors within `S ∪ {v}` over `w ∈ S`.
    pub nondeg_v: usize,
}

impl CatalogEntry {
    fn new(g: &MultiGraph, v: usize, set: VertexSet) -> Self {
        let to_v = g.neighbors(v).intersection_len(&set);
        let other = g.cut_size(&set) - to_v;
        let mut closed = set.clone();
        closed.insert(v);
        let nondeg_v = set
            .iter()
            .map(|w| closed.len() - 1 - g.neighbors(w).intersection_len(&closed))
            .max()
            .unwrap_or(0);
        Self {
            size: set.len(),
            nonedge: nonedge(g, &set),
            to_v,
            other,
            nondeg_v,
            set,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VMinimalCatalog {
    pub v: usize,
    pub entries: Vec<CatalogEntry>,
}

impl VMinimalCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sets(&self) -> impl Iterator<Item = &VertexSet> {
        self.entries.iter().map(|e| &e.set)
    }
}

/// All connected v-minimal sets of size at most `max_size`, sorted.
///
/// Starting from `S = {u}`, `F = ∅` for every `u ≠ v`, a neighbor `u` of `S`
/// outside `F ∪ {v}` either joins `S` or joins `F`. Leaves are `S` itself
/// once `|S| = max_size` or `S` has no such neighbor, and the component of
/// `G - (F ∪ {v})` around `S` once `|F| = max_size - 1`.
pub fn enumerate_vminimal_small(
    g: &MultiGraph,
    v: usize,
    max_size: usize,
) -> Result<VMinimalCatalog> {
    g.check_vertex(v)?;
    require_simple_graph(g)?;
    let mut found = BTreeSet::new();
    if max_size > 0 {
        for u in (0..g.n()).filter(|&u| u != v) {
            grow(
                g,
                v,
                max_size,
                VertexSet::singleton(u),
                VertexSet::new(),
                &mut found,
            );
        }
    }
    let mut entries = Vec::new();
    for set in found {
        if is_v_minimal(g, v, &set)? {
            entries.push(CatalogEntry::new(g, v, set));
        }
    }
    Ok(VMinimalCatalog { v, entries })
}

fn grow(
    g: &MultiGraph,
    v: usize,
    max_size: usize,
    s: VertexSet,
    f: VertexSet,
    out: &mut BTreeSet<VertexSet>,
) {
    if s.len() == max_size {
        out.insert(s);
        return;
    }
    if f.len() == max_size - 1 {
        let mut blocked = f.clone();
        blocked.insert(v);
        let comp = g.component_of(s.first().expect("nonempty"), &blocked.complement(g.n()));
        if comp.len() <= max_size {
            out.insert(comp);
        }
        return;
    }
    let mut frontier = VertexSet::new();
    for x in s.iter() {
        frontier.union_with(g.neighbors(x));
    }
    let frontier = frontier.difference(&s).difference(&f);
    let Some(u) = frontier.iter().find(|&u| u != v) else {
        out.insert(s);
        return;
    };
    let mut s_in = s.clone();
    s_in.insert(u);
    grow(g, v, max_size, s_in, f.clone(), out);
    let mut f_in = f;
    f_in.insert(u);
    grow(g, v, max_size, s, f_in, out);
}

/// All v-minimal sets `C` with `|C| ≥ 3p` and `nondeg(C ∪ {v}) ≤ p`, sorted.
///
/// Such a `C` contains some `u` with `N[u] - v ⊆ C`, and its other members
/// have at most `p` non-neighbors in `N[u] - v`. When more than `p + 2`
/// vertices qualify, no such `C` exists for this `u`.
pub fn enumerate_vminimal_large_nondeg(
    g: &MultiGraph,
    v: usize,
    p: usize,
) -> Result<Vec<VertexSet>> {
    g.check_vertex(v)?;
    require_simple_graph(g)?;
    let mut found = BTreeSet::new();
    for u in (0..g.n()).filter(|&u| u != v) {
        let mut base = g.neighbors(u).clone();
        base.insert(u);
        base.remove(v);
        let mut outside = base.complement(g.n());
        outside.remove(v);
        let extra: Vec<usize> = outside
            .iter()
            .filter(|&w| base.len() - g.neighbors(w).intersection_len(&base) <= p)
            .collect();
        if extra.len() >= p + 3 {
            continue;
        }
        for mask in 0u32..(1 << extra.len()) {
            let mut c = base.clone();
            c.extend(
                extra
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &w)| w),
            );
            if c.len() < 3 * p || found.contains(&c) {
                continue;
            }
            let mut closed = c.clone();
            closed.insert(v);
            if nondeg(g, &closed) <= p && is_v_minimal(g, v, &c)? {
                found.insert(c);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// A union of catalog members accepted by a dynamic program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpWitness {
    /// Indices into the catalog.
    pub parts: Vec<usize>,
    /// `{v}` together with the parts.
    pub cluster: VertexSet,
    /// Tracked boundary size of the cluster.
    pub cut: usize,
    /// Tracked measure of the cluster (`|C|` for size).
    pub measure: usize,
}

/// Colorings of `V - v` used to pick pairwise disjoint catalog members.
fn colorings(n: usize, k: usize, strategy: ColoringStrategy) -> Vec<Coloring> {
    match strategy {
        ColoringStrategy::Deterministic => perfect_colorings(n, k),
        ColoringStrategy::Randomized { seed, delta } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_colorings(n, k, random_coloring_trials(k, delta), &mut rng)
        }
    }
}

/// Runs the color-coding dynamic program for `b.mu` over `catalog`. Members
/// are only combined when their colors are disjoint, with at most `colors`
/// colors in play.
pub fn dp_search(
    g: &MultiGraph,
    b: Bounds,
    catalog: &VMinimalCatalog,
    colors: usize,
    strategy: ColoringStrategy,
) -> Result<Option<DpWitness>> {
    require_simple_graph(g)?;
    if colors > 64 {
        return Err(Error::LimitExceeded(64));
    }
    let v = catalog.v;
    let index = |w: usize| if w < v { w } else { w - 1 };
    for coloring in colorings(g.n().saturating_sub(1), colors, strategy) {
        // Members with a repeated color cannot be part of a rainbow union.
        let usable: Vec<(usize, u64)> = catalog
            .entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let mut mask = 0u64;
                for w in e.set.iter() {
                    let bit = 1u64 << coloring[index(w)];
                    if mask & bit != 0 {
                        return None;
                    }
                    mask |= bit;
                }
                Some((i, mask))
            })
            .collect();
        if let Some(w) = run_table(g, b, catalog, &usable)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// DP key beyond the color mask: the measure-specific accumulators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Acc {
    Size,
    /// Non-edges of the union so far.
    NonEdge(usize),
    /// `x`: non-neighbors of `v`; `y`: best `nondeg_v(S ∪ {v}) - |S|`.
    NonDeg(usize, i64),
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    cut: i64,
    node: Option<usize>,
}

fn run_table(
    g: &MultiGraph,
    b: Bounds,
    catalog: &VMinimalCatalog,
    usable: &[(usize, u64)],
) -> Result<Option<DpWitness>> {
    let v = catalog.v;
    let p = b.p;
    let start = match b.mu {
        Measure::Size => Acc::Size,
        Measure::NonEdge => Acc::NonEdge(0),
        Measure::NonDeg => Acc::NonDeg(0, i64::MIN / 2),
    };
    // Parent pointers: (catalog index, previous node).
    let mut nodes: Vec<(usize, Option<usize>)> = Vec::new();
    let mut table: HashMap<(u64, Acc), Cell> = HashMap::new();
    table.insert(
        (0, start),
        Cell {
            cut: g.degree(v) as i64,
            node: None,
        },
    );

    for &(i, colors) in usable {
        let e = &catalog.entries[i];
        let snapshot: Vec<((u64, Acc), Cell)> = table
            .iter()
            .filter(|((m, _), _)| m & colors == 0)
            .map(|(k, c)| (*k, *c))
            .collect();
        for ((mask, acc), cell) in snapshot {
            let r = mask.count_ones() as usize;
            let next = match acc {
                Acc::Size => {
                    if 1 + r + e.size > p {
                        continue;
                    }
                    Acc::Size
                }
                Acc::NonEdge(l) => {
                    let l = l + e.nonedge + e.size - e.to_v + e.size * r;
                    if l > p {
                        continue;
                    }
                    Acc::NonEdge(l)
                }
                Acc::NonDeg(x, y) => {
                    let x = x + e.size - e.to_v;
                    let y = y.max(e.nondeg_v as i64 - e.size as i64);
                    if x > p || y + (r + e.size) as i64 > p as i64 {
                        continue;
                    }
                    Acc::NonDeg(x, y)
                }
            };
            let cut = cell.cut + e.other as i64 - e.to_v as i64;
            let key = (mask | colors, next);
            if table.get(&key).is_none_or(|c| c.cut > cut) {
                nodes.push((i, cell.node));
                table.insert(
                    key,
                    Cell {
                        cut,
                        node: Some(nodes.len() - 1),
                    },
                );
            }
        }
    }

    let best = table
        .iter()
        .filter(|(_, c)| c.cut <= b.q as i64)
        .min_by_key(|((mask, acc), c)| (c.cut, *mask, *acc));
    let Some(((mask, acc), cell)) = best else {
        return Ok(None);
    };
    let mut parts = Vec::new();
    let mut node = cell.node;
    while let Some(k) = node {
        parts.push(nodes[k].0);
        node = nodes[k].1;
    }
    parts.reverse();
    let mut cluster = VertexSet::singleton(v);
    for &i in &parts {
        cluster.union_with(&catalog.entries[i].set);
    }
    let r = mask.count_ones() as usize;
    let measure = match *acc {
        Acc::Size => 1 + r,
        Acc::NonEdge(l) => l,
        Acc::NonDeg(x, y) => (x as i64).max(y + r as i64).max(0) as usize,
    };
    let witness = DpWitness {
        parts,
        cluster,
        cut: cell.cut as usize,
        measure,
    };
    // Adjacent parts only lower both quantities, so the tracked values bound
    // the real ones from above.
    if !is_cluster(g, b, &witness.cluster)? {
        return Err(Error::Infeasible(format!(
            "dynamic program accepted {:?} which is not a cluster",
            witness.cluster
        )));
    }
    Ok(Some(witness))
}

/// Finds a `(μ, p, q)`-cluster containing `v` on a simple graph.
pub fn cluster_fpt_p(
    g: &MultiGraph,
    b: Bounds,
    v: usize,
    strategy: ColoringStrategy,
) -> Result<Option<VertexSet>> {
    g.check_vertex(v)?;
    require_simple_graph(g)?;
    if b.mu == Measure::Size && b.p == 0 {
        return Ok(None);
    }
    let single = VertexSet::singleton(v);
    if is_cluster(g, b, &single)? {
        return Ok(Some(single));
    }
    let bound = match b.mu {
        Measure::Size => b.p - 1,
        Measure::NonEdge | Measure::NonDeg => {
            for c in enumerate_vminimal_large_nondeg(g, v, b.p)? {
                let mut closed = c;
                closed.insert(v);
                if is_cluster(g, b, &closed)? {
                    return Ok(Some(closed));
                }
            }
            3 * b.p
        }
    };
    let catalog = enumerate_vminimal_small(g, v, bound)?;
    Ok(dp_search(g, b, &catalog, bound, strategy)?.map(|w| w.cluster))
}

/// Finds a cluster for every uncovered vertex with [`cluster_fpt_p`] and
/// uncrosses the cover.
pub fn partition_fpt_p(
    g: &MultiGraph,
    b: Bounds,
    strategy: ColoringStrategy,
) -> Result<PartitionRun> {
    require_simple_graph(g)?;
    partition_with(g, b, |v| cluster_fpt_p(g, b, v, strategy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{
        oracle_check_vminimal, oracle_cluster, oracle_vminimal_sets, OracleBudget,
    };
    use crate::solver_q::PartitionOutcome;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn diamond() -> MultiGraph {
        MultiGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn star() -> MultiGraph {
        MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn v_minimality() {
        let g = star();
        assert!(is_v_minimal(&g, 0, &set(&[1])).unwrap());
        assert!(is_v_minimal(&g, 0, &VertexSet::new()).unwrap());
        assert!(is_v_minimal(&g, 0, &set(&[1, 2, 3])).unwrap());
        let path = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        // d({0,1,2,3}) = 0 while every smaller set containing 0 has cut 1.
        assert!(is_v_minimal(&path, 0, &set(&[1, 2, 3])).unwrap());
        assert!(!is_v_minimal(&path, 0, &set(&[1, 2])).unwrap());
        let multi = MultiGraph::from_multiplicities(2, &[(0, 1, 2)]).unwrap();
        assert!(matches!(
            is_v_minimal(&multi, 0, &set(&[1])),
            Err(Error::NotSimple(_))
        ));
    }

    #[test]
    fn star_catalog_is_the_leaves() {
        let cat = enumerate_vminimal_small(&star(), 0, 2).unwrap();
        assert_eq!(
            cat.sets().cloned().collect::<Vec<_>>(),
            vec![set(&[1]), set(&[2]), set(&[3])]
        );
        assert!(enumerate_vminimal_small(&star(), 0, 0).unwrap().is_empty());
    }

    #[test]
    fn catalog_matches_exhaustive_check_on_small_graphs() {
        let graphs = [
            diamond(),
            star(),
            MultiGraph::complete(5),
            MultiGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
                .unwrap(),
        ];
        for g in &graphs {
            for v in 0..g.n() {
                for k in 0..=g.n() {
                    let cat = enumerate_vminimal_small(g, v, k).unwrap();
                    let got: Vec<VertexSet> = cat.sets().cloned().collect();
                    let mut want = oracle_vminimal_sets(g, v, k, OracleBudget::default()).unwrap();
                    want.sort();
                    assert_eq!(got, want, "v {v}, k {k}");
                    for e in &cat.entries {
                        assert!(e.other < e.to_v && e.to_v <= e.size);
                        assert!(oracle_check_vminimal(g, v, &e.set).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn worked_example_clusters() {
        let g = diamond();
        let b = Bounds::new(Measure::Size, 3, 2);
        let c = cluster_fpt_p(&g, b, 1, ColoringStrategy::Deterministic)
            .unwrap()
            .unwrap();
        assert!(c.contains(1) && is_cluster(&g, b, &c).unwrap());
        for mu in Measure::ALL {
            for p in 0..4 {
                for q in 0..4 {
                    let b = Bounds::new(mu, p, q);
                    for v in 0..4 {
                        let got = cluster_fpt_p(&g, b, v, ColoringStrategy::Deterministic).unwrap();
                        let want = oracle_cluster(&g, b, v, OracleBudget::default()).unwrap();
                        assert_eq!(got.is_some(), want.is_some(), "{mu} p {p} q {q} v {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn size_one_needs_a_small_degree() {
        let g = star();
        for q in 0..5 {
            let b = Bounds::new(Measure::Size, 1, q);
            let got = cluster_fpt_p(&g, b, 0, ColoringStrategy::Deterministic).unwrap();
            assert_eq!(got.is_some(), q >= 3);
        }
    }

    #[test]
    fn partitions() {
        let g = diamond();
        let run = partition_fpt_p(
            &g,
            Bounds::new(Measure::Size, 3, 2),
            ColoringStrategy::Deterministic,
        )
        .unwrap();
        assert!(matches!(run.outcome, PartitionOutcome::Found(_)));
        let k4 = MultiGraph::complete(4);
        let run = partition_fpt_p(
            &k4,
            Bounds::new(Measure::Size, 2, 2),
            ColoringStrategy::Deterministic,
        )
        .unwrap();
        assert_eq!(run.outcome, PartitionOutcome::NotFound { vertex: 0 });
    }
}
