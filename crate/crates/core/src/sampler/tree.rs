//! Breadth-first materialized samples of Galton-Watson trees.

use std::fmt;

use serde::Serialize;

use super::offspring::{child_key, root_key, OffspringSampler};
use crate::engine::{iterate, solve, Rank};
use crate::error::{Error, Result};
use crate::graph::GameGraph;
use crate::value::{mex, SGValue};

const NONE: u32 = u32::MAX;

/// A depth- and size-capped realization. Vertex `0` is the root and
/// vertices are stored in breadth-first order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledTree {
    parent: Vec<u32>,
    depth: Vec<u32>,
    offspring: Vec<u32>,
    first_child: Vec<u32>,
    depth_cap: u32,
    seed: u64,
    tree_index: u64,
    size_cap_hit: bool,
}

/// Samples tree `tree_index` of the stream `seed`. Vertices at depth
/// `depth_cap`, and every vertex left over once `size_cap` vertices exist,
/// keep their sampled offspring count but get no materialized children.
pub fn sample_tree(
    sampler: &OffspringSampler,
    depth_cap: u32,
    size_cap: usize,
    seed: u64,
    tree_index: u64,
) -> SampledTree {
    let key0 = root_key(seed, tree_index);
    let mut keys = vec![key0];
    let mut t = SampledTree {
        parent: vec![NONE],
        depth: vec![0],
        offspring: vec![sampler.count(key0)],
        first_child: vec![NONE],
        depth_cap,
        seed,
        tree_index,
        size_cap_hit: false,
    };
    let mut v = 0;
    while v < t.len() {
        let c = t.offspring[v];
        if c > 0 && t.depth[v] < depth_cap {
            if t.size_cap_hit || t.len() + c as usize > size_cap.max(1) {
                t.size_cap_hit = true;
            } else {
                t.first_child[v] = t.len() as u32;
                for i in 0..c {
                    let key = child_key(keys[v], i);
                    keys.push(key);
                    t.parent.push(v as u32);
                    t.depth.push(t.depth[v] + 1);
                    t.offspring.push(sampler.count(key));
                    t.first_child.push(NONE);
                }
            }
        }
        v += 1;
    }
    t
}

impl SampledTree {
    /// Builds a fully materialized tree from breadth-first offspring counts.
    pub fn from_offspring(offspring: &[u32]) -> Result<Self> {
        let mut t = SampledTree {
            parent: vec![NONE],
            depth: vec![0],
            offspring: Vec::new(),
            first_child: Vec::new(),
            depth_cap: u32::MAX,
            seed: 0,
            tree_index: 0,
            size_cap_hit: false,
        };
        let mut next = 1usize;
        for (v, &c) in offspring.iter().enumerate() {
            if v >= t.parent.len() {
                return Err(Error::NotATree(format!("vertex {v} is not reachable from the root")));
            }
            t.offspring.push(c);
            t.first_child.push(if c > 0 { next as u32 } else { NONE });
            for _ in 0..c {
                t.parent.push(v as u32);
                t.depth.push(t.depth[v] + 1);
            }
            next += c as usize;
        }
        if t.parent.len() != offspring.len() {
            return Err(Error::NotATree(format!(
                "counts describe {} vertices but {} are given",
                t.parent.len(),
                offspring.len()
            )));
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.offspring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offspring.is_empty()
    }

    pub fn depth_cap(&self) -> u32 {
        self.depth_cap
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn tree_index(&self) -> u64 {
        self.tree_index
    }

    pub fn size_cap_hit(&self) -> bool {
        self.size_cap_hit
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (self.parent[v] != NONE).then(|| self.parent[v] as usize)
    }

    pub fn depth(&self, v: usize) -> u32 {
        self.depth[v]
    }

    pub fn offspring_count(&self, v: usize) -> u32 {
        self.offspring[v]
    }

    /// Materialized children; empty for terminal and boundary vertices.
    pub fn children(&self, v: usize) -> std::ops::Range<usize> {
        match self.first_child[v] {
            NONE => 0..0,
            f => f as usize..f as usize + self.offspring[v] as usize,
        }
    }

    /// Vertices with a positive offspring count but no materialized children.
    pub fn is_boundary(&self, v: usize) -> bool {
        self.offspring[v] > 0 && self.first_child[v] == NONE
    }

    pub fn boundary(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.is_boundary(v))
    }

    /// Depth of the shallowest boundary vertex.
    pub fn min_boundary_depth(&self) -> Option<u32> {
        self.boundary().map(|v| self.depth[v]).min()
    }

    /// The materialized part as a game graph with ids `v0, v1, ...`.
    /// Boundary vertices appear as terminal positions.
    pub fn to_graph(&self) -> GameGraph {
        let adjacency: Vec<Vec<usize>> = (0..self.len()).map(|v| self.children(v).collect()).collect();
        GameGraph::from_adjacency(&adjacency)
    }

    /// Labels of the depth-`n` truncation, in which vertices at depth `n`
    /// become terminal: the unique mex labelling of that finite tree.
    /// Vertices deeper than `n` get `None`.
    pub fn truncation_labelling(&self, n: u32) -> Result<Vec<Option<u32>>> {
        if self.boundary().any(|v| self.depth[v] < n) {
            return Err(Error::DepthUnavailable(n as usize));
        }
        let mut label = vec![None; self.len()];
        for v in (0..self.len()).rev() {
            let d = self.depth[v];
            if d > n {
                continue;
            }
            label[v] = Some(if d == n {
                0
            } else {
                mex(self.children(v).map(|c| label[c].expect("children are labelled first")))
            });
        }
        Ok(label)
    }
}

/// Root value of a sampled tree as far as the truncation can certify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifiedValue {
    /// The root has this value and rank.
    Exact { value: SGValue, rank: Rank },
    /// The root's rank exceeds `n`.
    RankExceeds(u32),
}

impl CertifiedValue {
    /// Finite values on a tree of maximum out-degree `d` never exceed `d`.
    pub fn feasible(&self, d: Option<u32>) -> bool {
        match self {
            CertifiedValue::Exact { value: SGValue::Finite(m), .. } => d.is_none_or(|d| *m <= d),
            CertifiedValue::Exact { value: SGValue::InfiniteRank(a), .. } => value_feasible(a, d, 0),
            CertifiedValue::RankExceeds(_) => true,
        }
    }

    /// Stable label used as a key in frequency tables.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifiedValue::Exact { value, .. } => write!(f, "{value}"),
            CertifiedValue::RankExceeds(n) => write!(f, "rank>{n}"),
        }
    }
}

impl Serialize for CertifiedValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Whether `∞(A)` can occur at the root of a tree with maximum out-degree
/// `d` (`None` for unbounded) that is certified `(k-1)`-stable:
/// `{0, ..., k-1} ⊆ A ⊆ {0, ..., d}` and `|A| ≤ d - 1`.
pub fn value_feasible(a: &std::collections::BTreeSet<u32>, d: Option<u32>, k: u32) -> bool {
    if !(0..k).all(|i| a.contains(&i)) {
        return false;
    }
    match d {
        None => true,
        Some(d) => a.iter().all(|&x| x <= d) && (a.len() as i64) < i64::from(d),
    }
}

/// Runs the value iteration on the materialized tree with every boundary
/// vertex pinned to `∞`.
///
/// `G_n` at a vertex only reads vertices within distance `2n`, so the root
/// iterate is exact for `n ≤ D/2`, where `D` is the depth of the shallowest
/// boundary vertex. A tree without boundary is solved outright.
pub fn certified_root_value(tree: &SampledTree) -> CertifiedValue {
    let graph = tree.to_graph();
    let Some(d_eff) = tree.min_boundary_depth() else {
        let s = solve(&graph);
        return CertifiedValue::Exact { value: s.values[0].clone(), rank: s.ranks[0] };
    };
    let radius = d_eff / 2;
    let pinned: Vec<bool> = (0..tree.len()).map(|v| tree.is_boundary(v)).collect();
    let it = iterate(&graph, Some(&pinned), Some(radius));
    match (it.finite[0], it.rank[0]) {
        (Some(m), Some(r)) => CertifiedValue::Exact { value: SGValue::Finite(m), rank: Rank::Finite(r) },
        _ => CertifiedValue::RankExceeds(radius),
    }
}
