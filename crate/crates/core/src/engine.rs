//! Extended Sprague-Grundy values on finite loopy graphs.
//!
//! The iterate `G_n` is computed in synchronous passes: `G_0` is `0` on
//! terminal positions and `∞` elsewhere, and pass `n` reads only `G_{n-1}`.
//! A position `x` becomes finite with value `m = mex{G_{n-1}(y)}` once every
//! option `y` either already has a finite value below `m` or has an option
//! `z` with `G_{n-1}(z) = m`. Finite values never change afterwards, so the
//! first pass that assigns nothing new is a fixed point. The pass index at
//! which `x` became finite is its rank.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::graph::{GameGraph, PositionId};
use crate::value::{mex, Outcome, SGValue};

/// Rank of a position: the first `n` with `G_n(x)` finite, or `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Finite(u32),
    Omega,
}

impl Rank {
    pub fn finite(self) -> Option<u32> {
        match self {
            Rank::Finite(n) => Some(n),
            Rank::Omega => None,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Omega => f.write_str("omega"),
        }
    }
}

impl Serialize for Rank {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Rank::Finite(n) => serializer.serialize_u32(*n),
            Rank::Omega => serializer.serialize_str("omega"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    ids: Vec<PositionId>,
    root: Option<usize>,
    pub values: Vec<SGValue>,
    pub ranks: Vec<Rank>,
    pub outcomes: Vec<Outcome>,
    /// Synchronous passes performed, including the final quiescent one.
    pub iterations_used: u32,
}

impl Solution {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn id(&self, ix: usize) -> &PositionId {
        &self.ids[ix]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|p| p.as_str() == id)
    }

    pub fn value(&self, ix: usize) -> &SGValue {
        &self.values[ix]
    }

    pub fn value_of(&self, id: &str) -> Option<&SGValue> {
        self.index_of(id).map(|ix| &self.values[ix])
    }

    pub fn root_value(&self) -> Option<&SGValue> {
        self.root.map(|r| &self.values[r])
    }

    /// True if no position is drawn.
    pub fn is_draw_free(&self) -> bool {
        self.outcomes.iter().all(|&o| o != Outcome::D)
    }

    /// Aligned human-readable table.
    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 4]> = (0..self.len())
            .map(|i| {
                [
                    self.ids[i].to_string(),
                    self.values[i].to_string(),
                    self.ranks[i].to_string(),
                    self.outcomes[i].to_string(),
                ]
            })
            .collect();
        let header = ["position", "value", "rank", "outcome"];
        let mut width = header.map(str::len);
        for row in &rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut push_row = |cells: [&str; 4]| {
            let line: Vec<String> = cells.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        };
        push_row(header);
        for row in &rows {
            push_row([&row[0], &row[1], &row[2], &row[3]]);
        }
        out
    }
}

struct PositionEntry<'a> {
    id: &'a PositionId,
    value: &'a SGValue,
    rank: Rank,
    outcome: Outcome,
}

impl Serialize for PositionEntry<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Position", 4)?;
        s.serialize_field("id", self.id.as_str())?;
        s.serialize_field("value", self.value)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("outcome", &self.outcome)?;
        s.end()
    }
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let positions: Vec<PositionEntry> = (0..self.len())
            .map(|i| PositionEntry {
                id: &self.ids[i],
                value: &self.values[i],
                rank: self.ranks[i],
                outcome: self.outcomes[i],
            })
            .collect();
        let mut s = serializer.serialize_struct("Solution", 3)?;
        s.serialize_field("root", &self.root.map(|r| self.ids[r].as_str()))?;
        s.serialize_field("iterations_used", &self.iterations_used)?;
        s.serialize_field("positions", &positions)?;
        s.end()
    }
}

/// Raw output of the `G_n` iteration: finite values and ranks, `None` for `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Iterate {
    pub finite: Vec<Option<u32>>,
    pub rank: Vec<Option<u32>>,
    pub passes: u32,
}

/// Runs the synchronous iteration. Positions flagged in `pinned` stay `∞`
/// at every step whatever their options are. Stops at the first quiescent
/// pass, or after `max_passes` passes.
pub(crate) fn iterate(graph: &GameGraph, pinned: Option<&[bool]>, max_passes: Option<u32>) -> Iterate {
    let n = graph.len();
    let is_pinned = |x: usize| pinned.is_some_and(|p| p[x]);
    let mut cur: Vec<Option<u32>> = (0..n)
        .map(|x| (graph.is_terminal(x) && !is_pinned(x)).then_some(0))
        .collect();
    let mut rank: Vec<Option<u32>> = cur.iter().map(|v| v.map(|_| 0)).collect();
    let mut open: Vec<usize> = (0..n).filter(|&x| cur[x].is_none() && !is_pinned(x)).collect();
    let mut passes = 0;
    let mut fresh: Vec<(usize, u32)> = Vec::new();

    while !open.is_empty() && max_passes.is_none_or(|cap| passes < cap) {
        passes += 1;
        fresh.clear();
        for &x in &open {
            let opts = graph.options(x);
            let m = mex(opts.iter().filter_map(|&y| cur[y]));
            let settled = opts.iter().all(|&y| match cur[y] {
                Some(v) if v < m => true,
                _ => graph.options(y).iter().any(|&z| cur[z] == Some(m)),
            });
            if settled {
                fresh.push((x, m));
            }
        }
        if fresh.is_empty() {
            break;
        }
        for &(x, m) in &fresh {
            cur[x] = Some(m);
            rank[x] = Some(passes);
        }
        open.retain(|&x| cur[x].is_none());
    }
    if open.is_empty() && max_passes.is_none_or(|cap| passes < cap) {
        // The next pass would be quiescent; count it for a uniform report.
        passes += 1;
    }
    Iterate { finite: cur, rank, passes }
}

/// Infinite-rank sets from the converged finite values.
fn finish(graph: &GameGraph, it: Iterate) -> Solution {
    let values: Vec<SGValue> = (0..graph.len())
        .map(|x| match it.finite[x] {
            Some(m) => SGValue::Finite(m),
            None => SGValue::InfiniteRank(graph.options(x).iter().filter_map(|&y| it.finite[y]).collect()),
        })
        .collect();
    let ranks = it.rank.iter().map(|r| r.map_or(Rank::Omega, Rank::Finite)).collect();
    let outcomes = values.iter().map(SGValue::outcome).collect();
    Solution {
        ids: graph.ids().to_vec(),
        root: graph.root(),
        values,
        ranks,
        outcomes,
        iterations_used: it.passes,
    }
}

/// Extended Sprague-Grundy values, ranks and outcomes of every position.
pub fn solve(graph: &GameGraph) -> Solution {
    finish(graph, iterate(graph, None, None))
}
