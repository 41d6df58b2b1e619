//! Undirected multigraphs with dense vertex ids.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Undirected multigraph on vertices `0..n`. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    /// Per vertex, `(neighbor, multiplicity)` sorted by neighbor.
    adj: Vec<Vec<(usize, u32)>>,
    nbrs: Vec<VertexSet>,
    degree: Vec<usize>,
    /// Distinct pairs `(u, v, multiplicity)` with `u < v`, sorted.
    edges: Vec<(usize, usize, u32)>,
    m: usize,
    simple: bool,
}

/// A multiset of edges, each stored once as `(u, v, multiplicity)` with `u < v`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeCut {
    pub edges: Vec<(usize, usize, u32)>,
    pub size: usize,
}

impl EdgeCut {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (u, v) in pairs {
            *counts.entry((u.min(v), u.max(v))).or_default() += 1;
        }
        let edges: Vec<_> = counts.into_iter().map(|((u, v), c)| (u, v, c)).collect();
        let size = edges.iter().map(|e| e.2 as usize).sum();
        Self { edges, size }
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }
}

/// Result of contracting a vertex set to a single vertex.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: MultiGraph,
    /// Old vertex id to new vertex id; every member of the contracted set maps
    /// to the image of the representative.
    pub map: Vec<usize>,
}

impl MultiGraph {
    /// Builds a graph from an edge list; repeated pairs become parallel edges.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(u, v) in pairs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            *counts.entry((u.min(v), u.max(v))).or_default() += 1;
        }
        Ok(Self::build(n, counts))
    }

    /// Builds a graph from `(u, v, multiplicity)` triples. Zero multiplicities
    /// are ignored and repeated pairs accumulate.
    pub fn from_multiplicities(n: usize, triples: &[(usize, usize, u32)]) -> Result<Self> {
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(u, v, c) in triples {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if c > 0 {
                *counts.entry((u.min(v), u.max(v))).or_default() += c;
            }
        }
        Ok(Self::build(n, counts))
    }

    pub fn empty(n: usize) -> Self {
        Self::build(n, BTreeMap::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut counts = BTreeMap::new();
        for u in 0..n {
            for v in u + 1..n {
                counts.insert((u, v), 1);
            }
        }
        Self::build(n, counts)
    }

    fn build(n: usize, counts: BTreeMap<(usize, usize), u32>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut nbrs = vec![VertexSet::new(); n];
        let mut degree = vec![0usize; n];
        let mut edges = Vec::with_capacity(counts.len());
        let mut m = 0usize;
        let mut simple = true;
        for ((u, v), c) in counts {
            adj[u].push((v, c));
            adj[v].push((u, c));
            nbrs[u].insert(v);
            nbrs[v].insert(u);
            degree[u] += c as usize;
            degree[v] += c as usize;
            edges.push((u, v, c));
            m += c as usize;
            simple &= c == 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self {
            n,
            adj,
            nbrs,
            degree,
            edges,
            m,
            simple,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total edge count, parallel copies included.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn adjacency(&self, u: usize) -> &[(usize, u32)] {
        &self.adj[u]
    }

    pub fn neighbors(&self, u: usize) -> &VertexSet {
        &self.nbrs[u]
    }

    /// Degree counted with multiplicity.
    pub fn degree(&self, u: usize) -> usize {
        self.degree[u]
    }

    /// Distinct edges `(u, v, multiplicity)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        match self.adj.get(u) {
            Some(list) => list
                .binary_search_by_key(&v, |e| e.0)
                .map_or(0, |i| list[i].1),
            None => 0,
        }
    }

    pub fn check_set(&self, x: &VertexSet) -> Result<()> {
        match x.last() {
            Some(v) if v >= self.n => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            _ => Ok(()),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        check_vertex(v, self.n)
    }

    /// Edges with exactly one endpoint in `x`.
    pub fn boundary(&self, x: &VertexSet) -> Result<EdgeCut> {
        self.check_set(x)?;
        let mut edges = Vec::new();
        for u in x {
            for &(w, c) in &self.adj[u] {
                if !x.contains(w) {
                    edges.push((u.min(w), u.max(w), c));
                }
            }
        }
        edges.sort_unstable();
        let size = edges.iter().map(|e| e.2 as usize).sum();
        Ok(EdgeCut { edges, size })
    }

    /// `d(x)`: number of edges leaving `x`, with multiplicity. Members out of
    /// range are a logic error.
    pub fn cut_size(&self, x: &VertexSet) -> usize {
        let mut total = 0usize;
        for u in x {
            for &(w, c) in &self.adj[u] {
                if !x.contains(w) {
                    total += c as usize;
                }
            }
        }
        total
    }

    /// Number of edges with one endpoint in `a` and the other in `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        let mut total = 0usize;
        for u in a {
            for &(w, c) in &self.adj[u] {
                if b.contains(w) && !a.contains(w) {
                    total += c as usize;
                }
            }
        }
        total
    }

    /// Connected components of the subgraph induced by `restrict`, ordered by
    /// smallest member.
    pub fn components(&self, restrict: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(restrict)?;
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for s in restrict {
            if seen.contains(s) {
                continue;
            }
            let comp = self.component_of(s, restrict);
            seen.union_with(&comp);
            out.push(comp);
        }
        Ok(out)
    }

    /// Vertices reachable from `s` inside `restrict`. Empty if `s ∉ restrict`.
    pub fn component_of(&self, s: usize, restrict: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::new();
        if !restrict.contains(s) {
            return comp;
        }
        comp.insert(s);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(w, _) in &self.adj[u] {
                if restrict.contains(w) && comp.insert(w) {
                    stack.push(w);
                }
            }
        }
        comp
    }

    /// Whether `x` is nonempty and induces a connected subgraph.
    pub fn is_connected_set(&self, x: &VertexSet) -> bool {
        match x.first() {
            Some(s) => self.component_of(s, x).len() == x.len(),
            None => false,
        }
    }

    /// Replaces `x` by the single vertex `rep`. Edges inside `x` vanish, edges
    /// leaving `x` become parallel edges at `rep`. Surviving vertices are
    /// renumbered in increasing order; `map` records the renaming.
    pub fn contract_into(&self, x: &VertexSet, rep: usize) -> Result<Contraction> {
        self.check_set(x)?;
        if !x.contains(rep) {
            return Err(Error::RepresentativeNotInSet(rep));
        }
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0usize;
        for u in 0..self.n {
            if u == rep || !x.contains(u) {
                map[u] = next;
                next += 1;
            }
        }
        let rep_new = map[rep];
        for u in x {
            map[u] = rep_new;
        }
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(u, v, c) in &self.edges {
            let (a, b) = (map[u], map[v]);
            if a != b {
                *counts.entry((a.min(b), a.max(b))).or_default() += c;
            }
        }
        Ok(Contraction {
            graph: Self::build(next, counts),
            map,
        })
    }

    /// Removes one copy of the edge `uv`.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        let key = (u.min(v), u.max(v));
        if self.multiplicity(key.0, key.1) == 0 {
            return Err(Error::NoSuchEdge(u, v));
        }
        let counts = self
            .edges
            .iter()
            .map(|&(a, b, c)| ((a, b), if (a, b) == key { c - 1 } else { c }))
            .filter(|&(_, c)| c > 0)
            .collect();
        Ok(Self::build(self.n, counts))
    }

    /// Adds `extra` vertices with no edges, plus the given edges.
    pub fn with_added(&self, extra: usize, triples: &[(usize, usize, u32)]) -> Result<Self> {
        let mut all = self.edges.clone();
        all.extend_from_slice(triples);
        Self::from_multiplicities(self.n + extra, &all)
    }
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n })
    }
}
