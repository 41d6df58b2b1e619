//! Text formats for graphs and solutions.
//!
//! Graphs use a DIMACS-like layout with 1-based vertex ids:
//!
//! ```text
//! c pqcluster graph v1
//! p edge 4 5
//! e 1 2
//! ```
//!
//! Lines starting with `c` are comments and a pair listed twice is a double
//! edge. Solutions are JSON documents tagged with [`SOLUTION_FORMAT`].

use serde::{Deserialize, Serialize};

use crate::cluster::{verify_partition, Bounds, ClusterStats, PartitionCheck};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::vertex_set::VertexSet;

pub const GRAPH_FORMAT: &str = "pqcluster graph v1";
pub const SOLUTION_FORMAT: &str = "pqcluster-solution/1";

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(err(format!("expected `p edge <n> <m>`, got `{trimmed}`")));
                }
                let n = parse_num(fields[2], line)?;
                let m = parse_num(fields[3], line)?;
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(err("edge line before the problem line".into()));
                };
                if fields.len() != 3 {
                    return Err(err(format!("expected `e <u> <v>`, got `{trimmed}`")));
                }
                let u = parse_num(fields[1], line)?;
                let v = parse_num(fields[2], line)?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(format!("vertex id {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                pairs.push((u - 1, v - 1));
            }
            other => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: 0,
            msg: "missing problem line".into(),
        });
    };
    if pairs.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header announces {m} edges, found {}", pairs.len()),
        });
    }
    MultiGraph::from_edges(n, &pairs)
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("`{s}` is not a number"),
    })
}

/// Canonical text: format comment, header, then edges in sorted order with
/// parallel copies repeated.
pub fn serialize_graph(g: &MultiGraph) -> String {
    let total: usize = g.edges().iter().map(|e| e.2 as usize).sum();
    let mut out = format!("c {GRAPH_FORMAT}\np edge {} {}\n", g.n(), total);
    for &(u, v, c) in g.edges() {
        for _ in 0..c {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Partition,
    Cluster,
    None,
    BudgetExhausted,
}

/// Solver output: either a partition, a single cluster, or a negative answer.
/// Vertex ids are 1-based, as in graph files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub format: String,
    pub problem: Bounds,
    pub status: Status,
    /// Query vertex for cluster searches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    pub clusters: Vec<Vec<usize>>,
    pub stats: Vec<ClusterStats>,
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub trials_used: u64,
}

impl SolutionFile {
    pub fn new(problem: Bounds, status: Status, algorithm: &str) -> Self {
        Self {
            format: SOLUTION_FORMAT.to_string(),
            problem,
            status,
            vertex: None,
            clusters: Vec::new(),
            stats: Vec::new(),
            algorithm: algorithm.to_string(),
            seed: None,
            trials_used: 0,
        }
    }

    /// Stores 0-based clusters with their statistics.
    pub fn with_clusters(mut self, g: &MultiGraph, clusters: &[VertexSet]) -> Result<Self> {
        self.stats = clusters
            .iter()
            .map(|c| ClusterStats::of(g, self.problem.mu, c))
            .collect::<Result<_>>()?;
        self.clusters = clusters
            .iter()
            .map(|c| c.iter().map(|v| v + 1).collect())
            .collect();
        Ok(self)
    }

    /// Clusters as 0-based sets.
    pub fn vertex_sets(&self) -> Result<Vec<VertexSet>> {
        self.clusters
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| {
                        v.checked_sub(1)
                            .ok_or_else(|| Error::Solution("vertex id 0 in a cluster".into()))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let sol: Self = serde_json::from_str(text).map_err(|e| Error::Solution(e.to_string()))?;
        if sol.format != SOLUTION_FORMAT {
            return Err(Error::Solution(format!(
                "unknown format tag `{}`",
                sol.format
            )));
        }
        Ok(sol)
    }
}

/// Outcome of checking a solution file against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
    /// Negative answers carry no certificate.
    NothingToCheck,
}

pub fn verify_solution(g: &MultiGraph, sol: &SolutionFile) -> Result<Verdict> {
    let sets = sol.vertex_sets()?;
    let b = sol.problem;
    let recorded_stats_match = |sets: &[VertexSet]| -> Result<bool> {
        let fresh = sets
            .iter()
            .map(|c| ClusterStats::of(g, b.mu, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(fresh == sol.stats)
    };
    match sol.status {
        Status::None | Status::BudgetExhausted => Ok(Verdict::NothingToCheck),
        Status::Partition => {
            let PartitionCheck { violation, .. } = verify_partition(g, b, &sets);
            if let Some(v) = violation {
                return Ok(Verdict::Invalid(v.to_string()));
            }
            if !recorded_stats_match(&sets)? {
                return Ok(Verdict::Invalid("recorded statistics are wrong".into()));
            }
            Ok(Verdict::Valid)
        }
        Status::Cluster => {
            let [c] = sets.as_slice() else {
                return Ok(Verdict::Invalid(format!(
                    "expected one cluster, found {}",
                    sets.len()
                )));
            };
            if let Err(e) = g.check_set(c) {
                return Ok(Verdict::Invalid(e.to_string()));
            }
            if let Some(v) = sol.vertex {
                if v == 0 || !c.contains(v - 1) {
                    return Ok(Verdict::Invalid(format!(
                        "cluster does not contain vertex {v}"
                    )));
                }
            }
            match crate::cluster::is_cluster(g, b, c) {
                Ok(true) => {}
                Ok(false) => return Ok(Verdict::Invalid("set violates the bounds".into())),
                Err(e) => return Ok(Verdict::Invalid(e.to_string())),
            }
            if !recorded_stats_match(&sets)? {
                return Ok(Verdict::Invalid("recorded statistics are wrong".into()));
            }
            Ok(Verdict::Valid)
        }
    }
}
