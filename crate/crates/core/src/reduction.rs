//! Removal of P-positions, iterated reductions and mex labellings.

use serde::Serialize;

use crate::engine::{solve, Solution};
use crate::error::{Error, Result};
use crate::graph::{GameGraph, RootedTree};
use crate::value::{mex, SGValue};

/// Default bound on the graph size accepted by [`enumerate_mex_labellings`].
pub const DEFAULT_LABELLING_BOUND: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionReport {
    #[serde(skip)]
    pub reduced: GameGraph,
    /// Ids removed over all levels, sorted.
    pub removed: Vec<String>,
    pub level: usize,
    /// Draw-freeness of `V, R(V), ..., R^level(V)`.
    pub draw_free_at_each_level: Vec<bool>,
}

fn sorted_ids(graph: &GameGraph, drop: &[bool]) -> Vec<String> {
    let mut ids: Vec<String> = (0..graph.len())
        .filter(|&x| drop[x])
        .map(|x| graph.id(x).to_string())
        .collect();
    ids.sort();
    ids
}

fn remove_below(graph: &GameGraph, solution: &Solution, k: u32) -> (GameGraph, Vec<bool>) {
    let drop: Vec<bool> = solution
        .values
        .iter()
        .map(|v| matches!(v, SGValue::Finite(m) if *m < k))
        .collect();
    let keep: Vec<bool> = drop.iter().map(|d| !d).collect();
    (graph.induced_subgraph(&keep), drop)
}

/// `R(V)`: the induced subgraph on positions that are not P-positions.
pub fn reduce(graph: &GameGraph) -> ReductionReport {
    let solution = solve(graph);
    let (reduced, drop) = remove_below(graph, &solution, 1);
    let after = solve(&reduced).is_draw_free();
    ReductionReport {
        removed: sorted_ids(graph, &drop),
        reduced,
        level: 1,
        draw_free_at_each_level: vec![solution.is_draw_free(), after],
    }
}

/// `R` applied `k` times, re-solving between steps.
///
/// When `V, R(V), ..., R^{k-1}(V)` are all draw-free the result must equal
/// the direct removal of every position with value below `k` in `V`; a
/// disagreement is reported as [`Error::ReductionMismatch`].
pub fn reduce_k(graph: &GameGraph, k: usize) -> Result<ReductionReport> {
    let original = solve(graph);
    let mut draw_free = vec![original.is_draw_free()];
    let mut current = graph.clone();
    let mut current_solution = original.clone();
    for _ in 0..k {
        let (next, _) = remove_below(&current, &current_solution, 1);
        current_solution = solve(&next);
        draw_free.push(current_solution.is_draw_free());
        current = next;
    }

    let survivors: Vec<bool> = (0..graph.len())
        .map(|x| current.index_of(graph.id(x).as_str()).is_some())
        .collect();
    let removed: Vec<bool> = survivors.iter().map(|s| !s).collect();

    if k > 0 && draw_free[..k].iter().all(|&d| d) {
        let (direct, _) = remove_below(graph, &original, k as u32);
        if direct != current {
            return Err(Error::ReductionMismatch {
                level: k,
                detail: format!(
                    "iterated reduction keeps {} positions, direct removal keeps {}",
                    current.len(),
                    direct.len()
                ),
            });
        }
    }

    Ok(ReductionReport {
        removed: sorted_ids(graph, &removed),
        reduced: current,
        level: k,
        draw_free_at_each_level: draw_free,
    })
}

/// `V` is k-stable if every infinite-rank value `∞(A)` has `{0..=k} ⊆ A`.
///
/// Computed from the values directly and, independently, as draw-freeness
/// of `V, R(V), ..., R^k(V)`; the two must agree.
pub fn is_k_stable(graph: &GameGraph, k: usize) -> Result<bool> {
    let solution = solve(graph);
    let direct = solution.values.iter().all(|v| match v {
        SGValue::Finite(_) => true,
        SGValue::InfiniteRank(a) => (0..=k as u32).all(|i| a.contains(&i)),
    });
    let report = reduce_k(graph, k)?;
    let chained = report.draw_free_at_each_level.iter().all(|&d| d);
    if direct != chained {
        return Err(Error::StabilityMismatch { k });
    }
    Ok(direct)
}

/// A labelling with `f(x) = mex{f(y) : y ∈ Γ(x)}` at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MexLabelling {
    pub label: Vec<u32>,
}

pub fn is_mex_labelling(graph: &GameGraph, label: &[u32]) -> bool {
    label.len() == graph.len()
        && (0..graph.len()).all(|x| label[x] == mex(graph.options(x).iter().map(|&y| label[y])))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabellingEnumeration {
    /// In lexicographic order of the label vectors.
    pub labellings: Vec<MexLabelling>,
    /// More labellings exist beyond the cap.
    pub truncated: bool,
}

/// All mex labellings of a small graph, up to `cap` of them.
pub fn enumerate_mex_labellings(graph: &GameGraph, cap: usize) -> Result<LabellingEnumeration> {
    enumerate_mex_labellings_bounded(graph, cap, DEFAULT_LABELLING_BOUND)
}

pub fn enumerate_mex_labellings_bounded(
    graph: &GameGraph,
    cap: usize,
    bound: usize,
) -> Result<LabellingEnumeration> {
    if graph.len() > bound {
        return Err(Error::EnumerationBound { size: graph.len(), bound });
    }
    let mut search = LabelSearch {
        graph,
        pred: graph.predecessors(),
        label: vec![None; graph.len()],
        found: Vec::new(),
        cap,
        truncated: false,
    };
    search.descend(0);
    let mut labellings = search.found;
    labellings.sort();
    Ok(LabellingEnumeration { labellings, truncated: search.truncated })
}

struct LabelSearch<'a> {
    graph: &'a GameGraph,
    pred: Vec<Vec<usize>>,
    label: Vec<Option<u32>>,
    found: Vec<MexLabelling>,
    cap: usize,
    truncated: bool,
}

impl LabelSearch<'_> {
    /// Whether the constraint at `x` can still be met given current labels.
    fn consistent_at(&self, x: usize) -> bool {
        let Some(lx) = self.label[x] else { return true };
        let mut unassigned = 0usize;
        let mut present = vec![false; lx as usize];
        for &y in self.graph.options(x) {
            match self.label[y] {
                None => unassigned += 1,
                Some(ly) if ly == lx => return false,
                Some(ly) if ly < lx => present[ly as usize] = true,
                Some(_) => {}
            }
        }
        let missing = present.iter().filter(|&&p| !p).count();
        missing <= unassigned
    }

    fn descend(&mut self, depth: usize) {
        if self.truncated {
            return;
        }
        if depth == self.label.len() {
            if self.found.len() == self.cap {
                self.truncated = true;
                return;
            }
            let label: Vec<u32> = self.label.iter().map(|l| l.expect("complete")).collect();
            debug_assert!(is_mex_labelling(self.graph, &label));
            self.found.push(MexLabelling { label });
            return;
        }
        // Most constrained vertex first: once all its options are labelled
        // only the mex fits, so loop-free parts never branch.
        let x = (0..self.label.len())
            .filter(|&x| self.label[x].is_none())
            .min_by_key(|&x| self.graph.options(x).iter().filter(|&&y| self.label[y].is_none()).count())
            .expect("an unlabelled vertex remains");
        for v in 0..=self.graph.out_degree(x) as u32 {
            self.label[x] = Some(v);
            let ok = self.consistent_at(x) && self.pred[x].iter().all(|&p| self.consistent_at(p));
            if ok {
                self.descend(depth + 1);
            }
            if self.truncated {
                break;
            }
        }
        self.label[x] = None;
    }
}

/// The unique mex labelling of the truncation `V_n` (vertices of height at
/// most `n`, those at height `n` made terminal). Vertices below height `n`
/// get `None`.
pub fn truncation_labelling(tree: &RootedTree, n: usize) -> Vec<Option<u32>> {
    let g = tree.graph();
    let mut by_height: Vec<usize> = (0..g.len()).filter(|&x| tree.height(x) <= n).collect();
    by_height.sort_by_key(|&x| std::cmp::Reverse(tree.height(x)));
    let mut label: Vec<Option<u32>> = vec![None; g.len()];
    for x in by_height {
        let l = if tree.height(x) == n {
            0
        } else {
            mex(g.options(x).iter().map(|&y| label[y].expect("children labelled first")))
        };
        label[x] = Some(l);
    }
    label
}
