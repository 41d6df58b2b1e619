//! Monotone density measures on vertex sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// Number of vertices.
    Size,
    /// Number of unordered non-adjacent pairs.
    NonEdge,
    /// Largest number of non-neighbors any member has inside the set.
    NonDeg,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Size, Measure::NonEdge, Measure::NonDeg];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Size => "size",
            Measure::NonEdge => "nonedge",
            Measure::NonDeg => "nondeg",
        }
    }

    pub fn needs_simple(self) -> bool {
        !matches!(self, Measure::Size)
    }

    /// Evaluates the measure on `x`.
    ///
    /// `NonEdge` and `NonDeg` are rejected on graphs with parallel edges.
    pub fn eval(self, g: &MultiGraph, x: &VertexSet) -> Result<usize> {
        g.check_set(x)?;
        if self.needs_simple() && !g.is_simple() {
            return Err(Error::MeasureNeedsSimple(self));
        }
        Ok(self.eval_unchecked(g, x))
    }

    /// Same as [`Measure::eval`] without validation. On a multigraph the
    /// density measures count adjacent pairs, not edge copies.
    pub fn eval_unchecked(self, g: &MultiGraph, x: &VertexSet) -> usize {
        match self {
            Measure::Size => x.len(),
            Measure::NonEdge => nonedge(g, x),
            Measure::NonDeg => nondeg(g, x),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "size" => Ok(Measure::Size),
            "nonedge" => Ok(Measure::NonEdge),
            "nondeg" => Ok(Measure::NonDeg),
            other => Err(format!(
                "unknown measure `{other}` (expected size, nonedge or nondeg)"
            )),
        }
    }
}

pub(crate) fn nonedge(g: &MultiGraph, x: &VertexSet) -> usize {
    let k = x.len();
    let inner: usize = x.iter().map(|u| g.neighbors(u).intersection_len(x)).sum();
    k * k.saturating_sub(1) / 2 - inner / 2
}

pub(crate) fn nondeg(g: &MultiGraph, x: &VertexSet) -> usize {
    let k = x.len();
    if k <= 1 {
        return 0;
    }
    x.iter()
        .map(|u| k - 1 - g.neighbors(u).intersection_len(x))
        .max()
        .unwrap_or(0)
}
