//! Algorithms parameterized by the cut bound `q`.
//!
//! A smallest cluster `C ∋ v` leaves components of `G - C` that are all
//! important sets for `v`. Selecting a subfamily of important sets whose
//! union `Z` covers those components but avoids the vertices of `C` on its
//! boundary turns the search into a satellite instance with core `V - Z`.
//! The selection is random (each set `K` kept with probability `4^-d(K)`)
//! or driven by splitter families, which try every small selection that
//! matters.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cluster::{is_cluster, require_simple, Bounds, PartitionSolution};
use crate::error::{Error, Result};
use crate::families::{for_each_subset, SplitterFamily};
use crate::graph::MultiGraph;
use crate::satellite::{solve, ColoringStrategy, SatelliteInstance};
use crate::separators::enumerate_important_sets;
use crate::uncross::partition_from_cover;
use crate::vertex_set::VertexSet;

/// Deduplicated important sets for a vertex, with cached boundary sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportantFamily {
    pub sets: Vec<VertexSet>,
    pub cuts: Vec<usize>,
}

impl ImportantFamily {
    pub fn compute(g: &MultiGraph, v: usize, q: usize) -> Result<Self> {
        let sets = enumerate_important_sets(g, v, q)?;
        let cuts = sets.iter().map(|s| g.cut_size(s)).collect();
        Ok(Self { sets, cuts })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Indices of members with boundary size exactly `i`.
    pub fn group(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.cuts[j] == i).collect()
    }
}

/// How the important sets are selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QMode {
    Randomized,
    DerandSimple,
    DerandGrouped,
    /// Grouped for `q ≤ 2`, simple for `q ≤ 4`, randomized otherwise.
    Auto,
}

impl QMode {
    pub fn resolve(self, q: usize) -> QMode {
        match self {
            QMode::Auto if q <= 2 => QMode::DerandGrouped,
            QMode::Auto if q <= 4 => QMode::DerandSimple,
            QMode::Auto => QMode::Randomized,
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QConfig {
    pub mode: QMode,
    pub seed: u64,
    /// Randomized trial budget; `None` uses [`default_trials`].
    pub trials: Option<u64>,
    pub coloring: ColoringStrategy,
    /// Worker threads for randomized trials.
    pub threads: usize,
}

impl Default for QConfig {
    fn default() -> Self {
        Self {
            mode: QMode::Auto,
            seed: 0,
            trials: None,
            coloring: ColoringStrategy::Deterministic,
            threads: 1,
        }
    }
}

/// `min(⌈4^q · ⌈e^{4q/3}⌉ · ln 100⌉, 10^6)`.
pub fn default_trials(q: usize) -> u64 {
    let q = q as f64;
    let raw = 4f64.powf(q) * (4.0 * q / 3.0).exp().ceil() * 100f64.ln();
    raw.ceil().min(1e6) as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClusterOutcome {
    Found(VertexSet),
    /// Proven: no cluster contains the vertex.
    NotFound,
    /// Randomized budget spent without success.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterRun {
    pub outcome: ClusterOutcome,
    /// Randomized trials performed.
    pub trials: u64,
    /// Distinct satellite instances solved.
    pub instances: u64,
}

/// Exhaustive search over edge sets: for every set `F` of distinct edges
/// (all parallel copies together) with at most `q` edges in total, tests
/// the component of `v` in `G - F`. At most `limit` edge sets are visited.
pub fn brute_cluster(g: &MultiGraph, b: Bounds, v: usize, limit: u64) -> Result<Option<VertexSet>> {
    g.check_vertex(v)?;
    require_simple(g, b.mu)?;
    let edges = g.edges();
    let mut removed = vec![false; edges.len()];
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut visited = 0u64;
    let mut found = None;
    brute_rec(
        g,
        b,
        v,
        0,
        0,
        &mut removed,
        &mut seen,
        &mut visited,
        limit,
        &mut found,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn brute_rec(
    g: &MultiGraph,
    b: Bounds,
    v: usize,
    start: usize,
    used: usize,
    removed: &mut Vec<bool>,
    seen: &mut HashSet<VertexSet>,
    visited: &mut u64,
    limit: u64,
    found: &mut Option<VertexSet>,
) -> Result<()> {
    *visited += 1;
    if *visited > limit {
        return Err(Error::LimitExceeded(limit));
    }
    let comp = component_avoiding(g, v, removed);
    if seen.insert(comp.clone()) && is_cluster(g, b, &comp)? {
        *found = Some(comp);
        return Ok(());
    }
    for i in start..g.edges().len() {
        let c = g.edges()[i].2 as usize;
        if used + c > b.q {
            continue;
        }
        removed[i] = true;
        brute_rec(
            g,
            b,
            v,
            i + 1,
            used + c,
            removed,
            seen,
            visited,
            limit,
            found,
        )?;
        removed[i] = false;
        if found.is_some() {
            return Ok(());
        }
    }
    Ok(())
}

fn component_avoiding(g: &MultiGraph, v: usize, removed: &[bool]) -> VertexSet {
    let edges = g.edges();
    let mut comp = VertexSet::singleton(v);
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for &(y, _) in g.adjacency(x) {
            if comp.contains(y) {
                continue;
            }
            let key = (x.min(y), x.max(y));
            let idx = edges
                .binary_search_by_key(&key, |e| (e.0, e.1))
                .expect("edge exists");
            if !removed[idx] {
                comp.insert(y);
                stack.push(y);
            }
        }
    }
    comp
}

/// Satellite instance with satellites the components of `G[Z]`, `Z` the union
/// of the selected family members.
pub fn instance_from_selection<'g>(
    g: &'g MultiGraph,
    b: Bounds,
    v: usize,
    family: &ImportantFamily,
    selected: impl IntoIterator<Item = usize>,
) -> Result<SatelliteInstance<'g>> {
    let mut z = VertexSet::new();
    for i in selected {
        z.union_with(&family.sets[i]);
    }
    instance_from_union(g, b, v, &z)
}

fn instance_from_union<'g>(
    g: &'g MultiGraph,
    b: Bounds,
    v: usize,
    z: &VertexSet,
) -> Result<SatelliteInstance<'g>> {
    let mut parts = vec![z.complement(g.n())];
    parts.extend(g.components(z)?);
    SatelliteInstance::new(g, v, parts, b)
}

/// Keeps each family member `K` independently with probability `4^-d(K)`.
pub fn reduce_randomized<'g, R: Rng>(
    g: &'g MultiGraph,
    b: Bounds,
    v: usize,
    family: &ImportantFamily,
    rng: &mut R,
) -> Result<SatelliteInstance<'g>> {
    let selected: Vec<usize> = (0..family.len())
        .filter(|&i| rng.gen::<f64>() < 0.25f64.powi(family.cuts[i] as i32))
        .collect();
    instance_from_selection(g, b, v, family, selected)
}

/// Finds a `(μ, p, q)`-cluster containing `v` through satellite reductions.
/// Deterministic modes are complete; randomized mode reports
/// [`ClusterOutcome::Exhausted`] when its budget runs out.
pub fn cluster_fpt_q(g: &MultiGraph, b: Bounds, v: usize, cfg: &QConfig) -> Result<ClusterRun> {
    g.check_vertex(v)?;
    require_simple(g, b.mu)?;
    let family = ImportantFamily::compute(g, v, b.q)?;
    let mut solver = UnionSolver {
        g,
        b,
        v,
        coloring: cfg.coloring,
        seen: HashSet::new(),
    };
    let run = match cfg.mode.resolve(b.q) {
        QMode::Randomized => return randomized(g, b, v, &family, cfg),
        QMode::DerandSimple => derand_simple(&family, b.q, &mut solver)?,
        QMode::DerandGrouped => derand_grouped(&family, b.q, &mut solver)?,
        QMode::Auto => unreachable!("resolved above"),
    };
    let instances = solver.seen.len() as u64;
    Ok(ClusterRun {
        outcome: match run {
            Some(c) => ClusterOutcome::Found(c),
            None => ClusterOutcome::NotFound,
        },
        trials: 0,
        instances,
    })
}

/// Solves the satellite instance of each distinct union once.
struct UnionSolver<'g> {
    g: &'g MultiGraph,
    b: Bounds,
    v: usize,
    coloring: ColoringStrategy,
    seen: HashSet<VertexSet>,
}

impl UnionSolver<'_> {
    fn try_union(&mut self, z: VertexSet) -> Result<Option<VertexSet>> {
        if !self.seen.insert(z.clone()) {
            return Ok(None);
        }
        let inst = instance_from_union(self.g, self.b, self.v, &z)?;
        Ok(solve(&inst, self.coloring)?.map(|s| s.cluster))
    }

    fn try_selection(
        &mut self,
        family: &ImportantFamily,
        sel: &[usize],
    ) -> Result<Option<VertexSet>> {
        let mut z = VertexSet::new();
        for &i in sel {
            z.union_with(&family.sets[i]);
        }
        self.try_union(z)
    }
}

fn randomized(
    g: &MultiGraph,
    b: Bounds,
    v: usize,
    family: &ImportantFamily,
    cfg: &QConfig,
) -> Result<ClusterRun> {
    let budget = cfg.trials.unwrap_or_else(|| default_trials(b.q));
    let threads = cfg.threads.max(1) as u64;
    let trial = |t: u64| -> Result<Option<VertexSet>> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(t);
        let inst = reduce_randomized(g, b, v, family, &mut rng)?;
        Ok(solve(&inst, cfg.coloring)?.map(|s| s.cluster))
    };
    // Trials run in rounds of `threads`; the lowest successful index wins, so
    // the answer does not depend on the thread count.
    let mut next = 0u64;
    while next < budget {
        let round: Vec<u64> = (next..(next + threads).min(budget)).collect();
        let results: Vec<Result<Option<VertexSet>>> = if threads == 1 {
            round.iter().map(|&t| trial(t)).collect()
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = round.iter().map(|&t| s.spawn(move || trial(t))).collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("trial panicked"))
                    .collect()
            })
        };
        for (t, r) in round.iter().zip(results) {
            if let Some(c) = r? {
                return Ok(ClusterRun {
                    outcome: ClusterOutcome::Found(c),
                    trials: t + 1,
                    instances: t + 1,
                });
            }
        }
        next += round.len() as u64;
    }
    Ok(ClusterRun {
        outcome: ClusterOutcome::Exhausted,
        trials: budget,
        instances: budget,
    })
}

/// Members with empty boundary are whole components avoiding `v`; they are
/// never adjacent to the cluster and are always selected.
fn always_selected(family: &ImportantFamily) -> Vec<usize> {
    family.group(0)
}

/// One splitter over all members with positive boundary, `k = q + q·4^q`;
/// selections are preimages of at most `q` image values.
fn derand_simple(
    family: &ImportantFamily,
    q: usize,
    solver: &mut UnionSolver,
) -> Result<Option<VertexSet>> {
    let base = always_selected(family);
    let universe: Vec<usize> = (0..family.len()).filter(|&i| family.cuts[i] > 0).collect();
    let a = q;
    let k = a + q * 4usize.pow(q as u32);
    let splitter = SplitterFamily::new(universe.len(), k);
    let mut selections_seen: HashSet<Vec<usize>> = HashSet::new();
    for f in splitter.functions() {
        let buckets = buckets_by_image(universe.len(), |x| f.apply(x));
        for size in 0..=a.min(buckets.len()) {
            let mut found = None;
            let mut err = None;
            for_each_subset(buckets.len(), size, |pick| {
                if found.is_some() || err.is_some() {
                    return;
                }
                let mut sel = base.clone();
                for &bkt in pick {
                    sel.extend(buckets[bkt].iter().map(|&x| universe[x]));
                }
                sel.sort_unstable();
                if !selections_seen.insert(sel.clone()) {
                    return;
                }
                match solver.try_selection(family, &sel) {
                    Ok(Some(c)) => found = Some(c),
                    Ok(None) => {}
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// Universe elements grouped by hash value, in increasing value order.
fn buckets_by_image(n: usize, hash: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..n {
        map.entry(hash(x)).or_default().push(x);
    }
    map.into_values().collect()
}

/// Guesses how many selected sets have each boundary size `i`, then selects
/// within each size class through its own splitter with
/// `k_i = a_i + q·4^i`.
fn derand_grouped(
    family: &ImportantFamily,
    q: usize,
    solver: &mut UnionSolver,
) -> Result<Option<VertexSet>> {
    let base = always_selected(family);
    let groups: Vec<Vec<usize>> = (0..=q).map(|i| family.group(i)).collect();
    for counts in weighted_compositions(q) {
        // Per class, every distinct selection reachable by some (f_i, F_i).
        let mut choices: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut feasible = true;
        for (i, &a_i) in counts.iter().enumerate().skip(1) {
            if a_i == 0 {
                continue;
            }
            let class = &groups[i];
            let opts = class_selections(class, a_i, a_i + q * 4usize.pow(i as u32));
            if opts.is_empty() {
                feasible = false;
                break;
            }
            choices.push(opts);
        }
        if !feasible {
            continue;
        }
        let mut pick = vec![0usize; choices.len()];
        loop {
            let mut sel = base.clone();
            for (c, &idx) in choices.iter().zip(&pick) {
                sel.extend_from_slice(&c[idx]);
            }
            if let Some(c) = solver.try_selection(family, &sel)? {
                return Ok(Some(c));
            }
            // Odometer over the cartesian product.
            let mut pos = 0;
            loop {
                if pos == pick.len() {
                    break;
                }
                pick[pos] += 1;
                if pick[pos] < choices[pos].len() {
                    break;
                }
                pick[pos] = 0;
                pos += 1;
            }
            if pos == pick.len() {
                break;
            }
        }
    }
    Ok(None)
}

/// Distinct selections from `class` obtained as preimages of `a` image
/// values under a splitter of the class into `[k²]`.
fn class_selections(class: &[usize], a: usize, k: usize) -> Vec<Vec<usize>> {
    let splitter = SplitterFamily::new(class.len(), k);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for f in splitter.functions() {
        let buckets = buckets_by_image(class.len(), |x| f.apply(x));
        for_each_subset(buckets.len(), a, |pick| {
            let mut sel: Vec<usize> = pick
                .iter()
                .flat_map(|&b| buckets[b].iter().map(|&x| class[x]))
                .collect();
            sel.sort_unstable();
            if seen.insert(sel.clone()) {
                out.push(sel);
            }
        });
    }
    out
}

/// All `(a_0, a_1, …, a_q)` with `a_0 = 0` and `Σ i·a_i ≤ q`.
pub fn weighted_compositions(q: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, q: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i > q {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left / i {
            cur.push(a);
            rec(i + 1, q, left - a * i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, q, q, &mut vec![0], &mut out);
    out
}

/// Result of a partition search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionOutcome {
    Found(PartitionSolution),
    /// Proven: `vertex` lies in no cluster.
    NotFound {
        vertex: usize,
    },
    /// Randomized budget ran out while looking for a cluster at `vertex`.
    Exhausted {
        vertex: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRun {
    pub outcome: PartitionOutcome,
    pub trials: u64,
}

/// Finds a cluster for every vertex not yet covered, then uncrosses the
/// cover into a partition.
pub fn partition_fpt_q(g: &MultiGraph, b: Bounds, cfg: &QConfig) -> Result<PartitionRun> {
    partition_by(g, b, |v| cluster_fpt_q(g, b, v, cfg))
}

/// Partition search driven by any exact per-vertex cluster finder.
pub fn partition_with(
    g: &MultiGraph,
    b: Bounds,
    mut find: impl FnMut(usize) -> Result<Option<VertexSet>>,
) -> Result<PartitionRun> {
    partition_by(g, b, |v| {
        let outcome = match find(v)? {
            Some(c) => ClusterOutcome::Found(c),
            None => ClusterOutcome::NotFound,
        };
        Ok(ClusterRun {
            outcome,
            trials: 0,
            instances: 0,
        })
    })
}

pub(crate) fn partition_by(
    g: &MultiGraph,
    b: Bounds,
    mut find: impl FnMut(usize) -> Result<ClusterRun>,
) -> Result<PartitionRun> {
    let mut cover: Vec<VertexSet> = Vec::new();
    let mut covered = VertexSet::new();
    let mut trials = 0;
    for v in 0..g.n() {
        if covered.contains(v) {
            continue;
        }
        let run = find(v)?;
        trials += run.trials;
        match run.outcome {
            ClusterOutcome::Found(c) => {
                covered.union_with(&c);
                cover.push(c);
            }
            ClusterOutcome::NotFound => {
                return Ok(PartitionRun {
                    outcome: PartitionOutcome::NotFound { vertex: v },
                    trials,
                })
            }
            ClusterOutcome::Exhausted => {
                return Ok(PartitionRun {
                    outcome: PartitionOutcome::Exhausted { vertex: v },
                    trials,
                })
            }
        }
    }
    let solution = partition_from_cover(g, b, &cover)?;
    Ok(PartitionRun {
        outcome: PartitionOutcome::Found(solution),
        trials,
    })
}
