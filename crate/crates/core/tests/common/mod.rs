//! Graph families shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use pqcluster::generate::{random_graph, random_multigraph};
use pqcluster::{MultiGraph, VertexSet};
use rand::Rng;

pub fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

/// The four-vertex example: every pair adjacent except vertices 0 and 3.
pub fn diamond() -> MultiGraph {
    MultiGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn is_connected(g: &MultiGraph) -> bool {
    g.n() == 0 || g.components(&g.vertices()).unwrap().len() == 1
}

/// One representative of every isomorphism class of connected simple graphs
/// on exactly `n ≤ 7` vertices, with `n` from 1 to `max_n`.
pub fn connected_graph_catalog(max_n: usize) -> Vec<Vec<MultiGraph>> {
    assert!(max_n <= 7, "catalog limited to 7 vertices");
    // Adjacency as a bitmask over the rows of an n×n matrix, 8 bits per row.
    let mut classes: Vec<Vec<u64>> = vec![vec![0]];
    for n in 2..=max_n {
        let mut next = BTreeSet::new();
        for &g in &classes[n - 2] {
            for nbrs in 0u64..1 << (n - 1) {
                let mut h = g;
                for u in 0..n - 1 {
                    if nbrs >> u & 1 == 1 {
                        h |= 1 << (8 * u + n - 1) | 1 << (8 * (n - 1) + u);
                    }
                }
                next.insert(canonical(h, n));
            }
        }
        classes.push(next.into_iter().collect());
    }
    classes
        .iter()
        .enumerate()
        .map(|(i, reps)| {
            let n = i + 1;
            reps.iter()
                .map(|&a| {
                    let pairs: Vec<(usize, usize)> = (0..n)
                        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                        .filter(|&(u, v)| a >> (8 * u + v) & 1 == 1)
                        .collect();
                    MultiGraph::from_edges(n, &pairs).unwrap()
                })
                .filter(is_connected)
                .collect()
        })
        .collect()
}

fn row(a: u64, u: usize) -> u64 {
    a >> (8 * u) & 0xff
}

/// Smallest relabeled adjacency over orderings that list vertices by
/// decreasing degree.
fn canonical(a: u64, n: usize) -> u64 {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(row(a, u).count_ones()));
    let degrees: Vec<u32> = order.iter().map(|&u| row(a, u).count_ones()).collect();
    let mut best = u64::MAX;
    let mut perm = order.clone();
    permute_classes(a, n, &degrees, &mut perm, 0, &mut best);
    best
}

fn permute_classes(
    a: u64,
    n: usize,
    degrees: &[u32],
    perm: &mut Vec<usize>,
    i: usize,
    best: &mut u64,
) {
    if i == n {
        let mut pos = [0usize; 8];
        for (p, &u) in perm.iter().enumerate() {
            pos[u] = p;
        }
        let mut code = 0u64;
        for u in 0..n {
            for v in 0..n {
                if row(a, u) >> v & 1 == 1 {
                    code |= 1 << (8 * pos[u] + pos[v]);
                }
            }
        }
        *best = (*best).min(code);
        return;
    }
    for j in i..n {
        if degrees[j] != degrees[i] {
            break;
        }
        perm.swap(i, j);
        permute_classes(a, n, degrees, perm, i + 1, best);
        perm.swap(i, j);
    }
}

fn path(n: usize) -> MultiGraph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    MultiGraph::from_edges(n, &e).unwrap()
}

fn cycle(n: usize) -> MultiGraph {
    let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    e.push((n - 1, 0));
    MultiGraph::from_edges(n, &e).unwrap()
}

fn star(n: usize) -> MultiGraph {
    let e: Vec<_> = (1..n).map(|i| (0, i)).collect();
    MultiGraph::from_edges(n, &e).unwrap()
}

fn wheel(n: usize) -> MultiGraph {
    let mut e: Vec<_> = (1..n).map(|i| (0, i)).collect();
    e.extend((2..n).map(|i| (i - 1, i)));
    e.push((n - 1, 1));
    MultiGraph::from_edges(n, &e).unwrap()
}

fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let e: Vec<_> = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .collect();
    MultiGraph::from_edges(a + b, &e).unwrap()
}

fn grid(rows: usize, cols: usize) -> MultiGraph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                e.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                e.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    MultiGraph::from_edges(rows * cols, &e).unwrap()
}

/// Paths, cycles, stars, wheels, complete and complete bipartite graphs,
/// grids and a triangular prism, all on at most 7 vertices.
pub fn structured_graphs() -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for n in 6..=7 {
        out.extend([
            path(n),
            cycle(n),
            star(n),
            wheel(n),
            MultiGraph::complete(n),
        ]);
    }
    for (a, b) in [(2, 4), (3, 3), (2, 5), (3, 4), (1, 6)] {
        out.push(complete_bipartite(a, b));
    }
    out.push(grid(2, 3));
    out.push(
        MultiGraph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap(),
    );
    out
}

pub fn random_connected<R: Rng>(n: usize, density: f64, rng: &mut R) -> MultiGraph {
    loop {
        let g = random_graph(n, density, rng);
        if is_connected(&g) {
            return g;
        }
    }
}

pub fn random_multi<R: Rng>(n: usize, density: f64, max_mult: u32, rng: &mut R) -> MultiGraph {
    random_multigraph(n, density, max_mult, rng)
}

/// Prints one summary line for an acceptance criterion and returns whether
/// it held. Writes to stderr directly so the line survives output capture.
pub fn report(id: usize, name: &str, ok: bool, detail: &str, start: Instant) -> bool {
    let line = format!(
        "criterion {id} [{name}]: {} ({detail}; {:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    let _ = writeln!(std::io::stderr().lock(), "{line}");
    ok
}
