#![allow(dead_code)]

use std::collections::BTreeSet;

use grundy_forge::{GameGraph, Outcome, SGValue};
use proptest::prelude::*;
use rand::Rng;

/// Random digraph on `n` positions with arc probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, self_loops: bool) -> GameGraph {
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| (self_loops || x != y) && rng.random_bool(p)).collect())
        .collect();
    GameGraph::from_adjacency(&adjacency)
}

/// Random graph whose arcs all point to lower indices.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, p: f64) -> GameGraph {
    let adjacency: Vec<Vec<usize>> = (0..n).map(|x| (0..x).filter(|_| rng.random_bool(p)).collect()).collect();
    GameGraph::from_adjacency(&adjacency)
}

pub fn arb_graph(max_n: usize, max_deg: usize) -> impl Strategy<Value = GameGraph> {
    (1..=max_n)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(0..n, 0..=max_deg), n))
        .prop_map(|adj| GameGraph::from_adjacency(&adj))
}

pub fn arb_dag(max_n: usize, max_deg: usize) -> impl Strategy<Value = GameGraph> {
    (1..=max_n)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(any::<usize>(), 0..=max_deg), n))
        .prop_map(|adj| {
            let adj: Vec<Vec<usize>> = adj
                .iter()
                .enumerate()
                .map(|(x, ts)| if x == 0 { vec![] } else { ts.iter().map(|t| t % x).collect() })
                .collect();
            GameGraph::from_adjacency(&adj)
        })
}

/// The `G_n` recursion transcribed literally, iterated until the whole
/// vector repeats. Returns values and ranks (`None` for infinite rank).
pub fn naive_values(g: &GameGraph) -> (Vec<SGValue>, Vec<Option<u32>>) {
    let n = g.len();
    let mut cur: Vec<Option<u32>> = (0..n).map(|x| g.is_terminal(x).then_some(0)).collect();
    let mut rank: Vec<Option<u32>> = cur.iter().map(|v| v.map(|_| 0)).collect();
    let mut step = 0;
    loop {
        step += 1;
        let next: Vec<Option<u32>> = (0..n)
            .map(|x| {
                let seen: BTreeSet<u32> = g.options(x).iter().filter_map(|&y| cur[y]).collect();
                let m = (0..).find(|i| !seen.contains(i)).unwrap();
                let ok = g.options(x).iter().all(|&y| {
                    matches!(cur[y], Some(v) if v <= m) || g.options(y).iter().any(|&z| cur[z] == Some(m))
                });
                ok.then_some(m)
            })
            .collect();
        if next == cur {
            break;
        }
        for x in 0..n {
            if rank[x].is_none() && next[x].is_some() {
                rank[x] = Some(step);
            }
        }
        cur = next;
    }
    let values = (0..n)
        .map(|x| match cur[x] {
            Some(m) => SGValue::Finite(m),
            None => SGValue::InfiniteRank(g.options(x).iter().filter_map(|&y| cur[y]).collect()),
        })
        .collect();
    (values, rank)
}

/// Win/loss/draw by retrograde analysis, independent of any Grundy values.
pub fn retrograde_outcomes(g: &GameGraph) -> Vec<Outcome> {
    let n = g.len();
    let mut out: Vec<Option<Outcome>> = vec![None; n];
    loop {
        let mut changed = false;
        for x in 0..n {
            if out[x].is_some() {
                continue;
            }
            let opts = g.options(x);
            if opts.iter().any(|&y| out[y] == Some(Outcome::P)) {
                out[x] = Some(Outcome::N);
                changed = true;
            } else if opts.iter().all(|&y| out[y] == Some(Outcome::N)) {
                out[x] = Some(Outcome::P);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    out.into_iter().map(|o| o.unwrap_or(Outcome::D)).collect()
}

/// Classical bottom-up mex on a loop-free graph.
pub fn dag_mex(g: &GameGraph) -> Vec<u32> {
    fn go(g: &GameGraph, x: usize, memo: &mut Vec<Option<u32>>) -> u32 {
        if let Some(v) = memo[x] {
            return v;
        }
        let seen: BTreeSet<u32> = g.options(x).iter().map(|&y| go(g, y, memo)).collect();
        let v = (0..).find(|i| !seen.contains(i)).unwrap();
        memo[x] = Some(v);
        v
    }
    let mut memo = vec![None; g.len()];
    (0..g.len()).map(|x| go(g, x, &mut memo)).collect()
}

/// Local mex constraint, checked without the library's helper.
pub fn satisfies_mex(g: &GameGraph, label: &[u32]) -> bool {
    (0..g.len()).all(|x| {
        let seen: BTreeSet<u32> = g.options(x).iter().map(|&y| label[y]).collect();
        (0..).find(|i| !seen.contains(i)) == Some(label[x])
    })
}
