//! Trees expanded on demand, for depths where materializing is hopeless.
//!
//! Root certification uses the characterization of `G_n(x) = m` with `m`
//! finite: for every `i < m` some child `y` has `G_{n-1}(y) = i`, and every
//! child `y` either has `G_{n-1}(y) < m` or has a child `z` with
//! `G_{n-1}(z) = m`. Evaluated as a short-circuiting search with memoized
//! bounds, it only touches the part of the tree a proof needs.

use super::offspring::{child_key, root_key, OffspringSampler};
use super::tree::CertifiedValue;
use crate::engine::Rank;
use crate::value::SGValue;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    key: u64,
    depth: u32,
    count: u32,
    first_child: u32,
    memo_at: u32,
}

/// Known bounds on `n` for one `(vertex, m)`: the claim `G_n = m` holds for
/// every `n ≥ true_at` and fails for every `n ≤ false_at`.
#[derive(Debug, Clone, Copy)]
struct Bounds {
    true_at: i32,
    false_at: i32,
}

const UNKNOWN: Bounds = Bounds { true_at: i32::MAX, false_at: -1 };

#[derive(Debug)]
struct OutOfBudget;

/// A Galton-Watson tree generated vertex by vertex from its key stream.
#[derive(Debug)]
pub struct LazyTree<'a> {
    sampler: &'a OffspringSampler,
    nodes: Vec<Node>,
    memo: Vec<Bounds>,
    budget: u64,
    spent: u64,
}

/// Search statistics of the last query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LazyStats {
    pub vertices: usize,
    pub steps: u64,
    pub budget_exhausted: bool,
    /// The budget ran out while testing for the value 0 itself.
    pub zero_pass_exhausted: bool,
}

impl<'a> LazyTree<'a> {
    /// Tree `tree_index` of the stream `seed`; the same tree that
    /// [`super::sample_tree`] materializes. `budget` bounds the number of
    /// search steps per query.
    pub fn new(sampler: &'a OffspringSampler, seed: u64, tree_index: u64, budget: u64) -> Self {
        Self::from_key(sampler, root_key(seed, tree_index), budget)
    }

    /// The subtree hanging from the vertex with key `key`.
    pub fn from_key(sampler: &'a OffspringSampler, key: u64, budget: u64) -> Self {
        let mut t = LazyTree {
            sampler,
            nodes: Vec::new(),
            memo: Vec::new(),
            budget,
            spent: 0,
        };
        t.push(key, 0);
        t
    }

    fn push(&mut self, key: u64, depth: u32) {
        let count = self.sampler.count(key);
        self.push_counted(key, depth, count);
    }

    fn push_counted(&mut self, key: u64, depth: u32, count: u32) {
        let memo_at = self.memo.len() as u32;
        self.memo.extend(std::iter::repeat_n(UNKNOWN, count as usize + 1));
        self.nodes.push(Node { key, depth, count, first_child: NONE, memo_at });
    }

    fn children(&mut self, x: usize) -> std::ops::Range<usize> {
        let node = self.nodes[x];
        if node.first_child == NONE && node.count > 0 {
            // Children are stored by increasing offspring count. Small
            // subtrees settle fastest, which serves both the "every child"
            // and the "some grandchild" loops of the search.
            let first = self.nodes.len() as u32;
            let mut kids: Vec<(u32, u64)> = (0..node.count)
                .map(|i| {
                    let key = child_key(node.key, i);
                    (self.sampler.count(key), key)
                })
                .collect();
            kids.sort_by_key(|&(c, _)| c);
            for (count, key) in kids {
                self.push_counted(key, node.depth + 1, count);
            }
            self.nodes[x].first_child = first;
        }
        let f = self.nodes[x].first_child as usize;
        f..f + node.count as usize
    }

    /// Vertices generated so far.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Offspring count of the root.
    pub fn root_count(&self) -> u32 {
        self.nodes[0].count
    }

    fn spend(&mut self) -> Result<(), OutOfBudget> {
        self.spent += 1;
        if self.spent > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    /// Whether `G_n(x) = m`.
    fn cert(&mut self, x: usize, n: u32, m: u32) -> Result<bool, OutOfBudget> {
        let node = self.nodes[x];
        if node.count == 0 {
            return Ok(m == 0);
        }
        if n == 0 || m > node.count {
            return Ok(false);
        }
        let slot = (node.memo_at + m) as usize;
        let ni = n as i32;
        if ni >= self.memo[slot].true_at {
            return Ok(true);
        }
        if ni <= self.memo[slot].false_at {
            return Ok(false);
        }
        self.spend()?;
        let ok = self.cert_uncached(x, n, m)?;
        let b = &mut self.memo[slot];
        if ok {
            b.true_at = b.true_at.min(ni);
        } else {
            b.false_at = b.false_at.max(ni);
        }
        Ok(ok)
    }

    fn cert_uncached(&mut self, x: usize, n: u32, m: u32) -> Result<bool, OutOfBudget> {
        let mut covered = vec![false; m as usize];
        for y in self.children(x) {
            let cap = m.min(self.nodes[y].count + 1);
            let mut below = None;
            for i in 0..cap {
                if self.cert(y, n - 1, i)? {
                    below = Some(i);
                    break;
                }
            }
            match below {
                Some(i) => covered[i as usize] = true,
                None => {
                    let mut reverts = false;
                    for z in self.children(y) {
                        if self.cert(z, n - 1, m)? {
                            reverts = true;
                            break;
                        }
                    }
                    if !reverts {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(covered.iter().all(|&c| c))
    }

    /// Root value if its rank is at most `max_rank`, found by iterative
    /// deepening. Membership in `P_n`, the claim `G_n = 0`, is settled first
    /// and within its own budget, so the frequency of certified zeros never
    /// depends on how costly the nonzero values are. Running out of budget
    /// while checking rank `n` reports `RankExceeds(n - 1)`.
    pub fn certified_root_value(&mut self, max_rank: u32) -> (CertifiedValue, LazyStats) {
        let mut steps = 0;
        let mut exhausted = false;
        let mut zero_pass_exhausted = false;
        let mut result = None;
        let mut level_reached = max_rank;
        for pass in [0..1, 1..self.nodes[0].count + 1] {
            if pass.is_empty() {
                continue;
            }
            self.spent = 0;
            'levels: for n in 0..=max_rank {
                for m in pass.clone() {
                    match self.cert(0, n, m) {
                        Ok(true) => {
                            result = Some(CertifiedValue::Exact { value: SGValue::Finite(m), rank: Rank::Finite(n) });
                            break 'levels;
                        }
                        Ok(false) => {}
                        Err(OutOfBudget) => {
                            exhausted = true;
                            zero_pass_exhausted |= pass.start == 0;
                            level_reached = level_reached.min(n.saturating_sub(1));
                            break 'levels;
                        }
                    }
                }
            }
            steps += self.spent.min(self.budget);
            if result.is_some() {
                break;
            }
        }
        let result = result.unwrap_or(CertifiedValue::RankExceeds(level_reached));
        let stats = LazyStats { vertices: self.nodes.len(), steps, budget_exhausted: exhausted, zero_pass_exhausted };
        (result, stats)
    }
}

/// Whether the root of tree `tree_index` of the stream `seed` is a
/// P-position of the depth-`n` truncation, in which vertices at depth `n`
/// become terminal; equivalently, whether the unique mex labelling of the
/// truncation gives the root label 0. `None` once `budget` vertices have
/// been expanded.
///
/// Every vertex of a tree is reached along one path, so the search needs no
/// memo and keeps only the current path in memory.
pub fn truncated_root_is_p(sampler: &OffspringSampler, seed: u64, tree_index: u64, n: u32, budget: u64) -> Option<bool> {
    truncated_is_p(sampler, root_key(seed, tree_index), n, budget)
}

/// [`truncated_root_is_p`] for the subtree below the vertex with key `key`.
pub fn truncated_is_p(sampler: &OffspringSampler, key: u64, n: u32, budget: u64) -> Option<bool> {
    let mut spent = 0;
    is_p(sampler, key, sampler.count(key), n, budget, &mut spent).ok()
}

fn sorted_children(sampler: &OffspringSampler, key: u64, count: u32) -> Vec<(u32, u64)> {
    let mut kids: Vec<(u32, u64)> = (0..count)
        .map(|i| {
            let k = child_key(key, i);
            (sampler.count(k), k)
        })
        .collect();
    kids.sort_by_key(|&(c, _)| c);
    kids
}

/// `r` is the height left above the truncation level.
fn is_p(sampler: &OffspringSampler, key: u64, count: u32, r: u32, budget: u64, spent: &mut u64) -> Result<bool, OutOfBudget> {
    if r == 0 || count == 0 {
        return Ok(true);
    }
    *spent += 1;
    if *spent > budget {
        return Err(OutOfBudget);
    }
    for (c, k) in sorted_children(sampler, key, count) {
        // The child must be an N-position: some grandchild is P.
        if r == 1 || c == 0 {
            return Ok(false);
        }
        let mut has_p = false;
        for (gc, gk) in sorted_children(sampler, k, c) {
            if is_p(sampler, gk, gc, r - 2, budget, spent)? {
                has_p = true;
                break;
            }
        }
        if !has_p {
            return Ok(false);
        }
    }
    Ok(true)
}
