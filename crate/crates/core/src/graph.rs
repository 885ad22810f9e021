//! Finite directed game graphs.
//!
//! A [`GameGraph`] stores positions in declaration order together with an
//! ordered option list per position. Game logic treats option lists as
//! sets; the order only makes output deterministic.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the number of positions in a materialised product graph.
pub const DEFAULT_PRODUCT_CAP: usize = 1_000_000;

/// Identifier of a position, unique within its graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionId(String);

impl PositionId {
    pub fn new(id: impl Into<String>) -> Self {
        PositionId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True if the id can be written in the text format (`[A-Za-z0-9_]+`).
    pub fn is_token(&self) -> bool {
        is_token(&self.0)
    }
}

impl fmt::Display for PositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GameGraph {
    ids: Vec<PositionId>,
    index: HashMap<PositionId, usize>,
    options: Vec<Vec<usize>>,
    root: Option<usize>,
}

impl GameGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a new position with no options. The first declared position
    /// becomes the root unless [`GameGraph::set_root`] is called.
    pub fn add_position(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = PositionId::new(id);
        if self.index.contains_key(&id) {
            return Err(Error::DuplicatePosition { line: 0, id: id.0 });
        }
        let ix = self.ids.len();
        self.index.insert(id.clone(), ix);
        self.ids.push(id);
        self.options.push(Vec::new());
        if self.root.is_none() {
            self.root = Some(ix);
        }
        Ok(ix)
    }

    /// Adds the arc `from -> to`. Parallel arcs are rejected; self-loops are fine.
    pub fn add_arc(&mut self, from: usize, to: usize) -> Result<()> {
        assert!(from < self.len() && to < self.len(), "arc endpoint out of range");
        if self.options[from].contains(&to) {
            return Err(Error::DuplicateArc {
                line: 0,
                from: self.ids[from].0.clone(),
                to: self.ids[to].0.clone(),
            });
        }
        self.options[from].push(to);
        Ok(())
    }

    /// Builds a graph from explicit adjacency lists over positions `0..n`,
    /// with ids `v0, v1, ...`. Duplicate arcs are dropped.
    pub fn from_adjacency(adjacency: &[Vec<usize>]) -> Self {
        let mut g = GameGraph::new();
        for i in 0..adjacency.len() {
            g.add_position(format!("v{i}")).expect("fresh ids");
        }
        for (from, opts) in adjacency.iter().enumerate() {
            for &to in opts {
                let _ = g.add_arc(from, to);
            }
        }
        g
    }

    pub fn set_root(&mut self, root: usize) {
        assert!(root < self.len());
        self.root = Some(root);
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, ix: usize) -> &PositionId {
        &self.ids[ix]
    }

    pub fn ids(&self) -> &[PositionId] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(&PositionId::new(id)).copied()
    }

    pub fn options(&self, ix: usize) -> &[usize] {
        &self.options[ix]
    }

    pub fn out_degree(&self, ix: usize) -> usize {
        self.options[ix].len()
    }

    pub fn is_terminal(&self, ix: usize) -> bool {
        self.options[ix].is_empty()
    }

    pub fn arc_count(&self) -> usize {
        self.options.iter().map(Vec::len).sum()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.len()];
        for opts in &self.options {
            for &y in opts {
                deg[y] += 1;
            }
        }
        deg
    }

    /// Predecessor lists, in position order.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (x, opts) in self.options.iter().enumerate() {
            for &y in opts {
                pred[y].push(x);
            }
        }
        pred
    }

    /// True if the graph has no directed cycle (self-loops count as cycles).
    pub fn is_loop_free(&self) -> bool {
        // Kahn's algorithm on reversed arcs: peel terminal positions.
        let mut remaining: Vec<usize> = self.options.iter().map(Vec::len).collect();
        let pred = self.predecessors();
        let mut queue: VecDeque<usize> = (0..self.len()).filter(|&x| remaining[x] == 0).collect();
        let mut seen = 0;
        while let Some(y) = queue.pop_front() {
            seen += 1;
            for &x in &pred[y] {
                remaining[x] -= 1;
                if remaining[x] == 0 {
                    queue.push_back(x);
                }
            }
        }
        seen == self.len()
    }

    /// Induced subgraph on the positions with `keep[x]`, preserving
    /// declaration order and option order. The root survives if kept.
    pub fn induced_subgraph(&self, keep: &[bool]) -> GameGraph {
        assert_eq!(keep.len(), self.len());
        let mut remap = vec![usize::MAX; self.len()];
        let mut g = GameGraph::new();
        g.root = None;
        for x in 0..self.len() {
            if keep[x] {
                remap[x] = g.ids.len();
                g.index.insert(self.ids[x].clone(), g.ids.len());
                g.ids.push(self.ids[x].clone());
                g.options.push(Vec::new());
            }
        }
        for x in 0..self.len() {
            if keep[x] {
                g.options[remap[x]] = self.options[x]
                    .iter()
                    .filter(|&&y| keep[y])
                    .map(|&y| remap[y])
                    .collect();
            }
        }
        g.root = match self.root {
            Some(r) if keep[r] => Some(remap[r]),
            _ if !g.is_empty() => Some(0),
            _ => None,
        };
        g
    }

    /// Writes the graph in the line-oriented text format.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if let Some(r) = self.root {
            if r != 0 {
                out.push_str(&format!("!root {}\n", self.ids[r]));
            }
        }
        for (x, id) in self.ids.iter().enumerate() {
            out.push_str(id.as_str());
            out.push(':');
            for &y in &self.options[x] {
                out.push(' ');
                out.push_str(self.ids[y].as_str());
            }
            out.push('\n');
        }
        out
    }
}

/// Parses the text format: `<id>: <id> <id> ...` per line, `#` comments and
/// an optional `!root <id>` directive. Forward references are allowed.
pub fn load_graph(text: &str) -> Result<GameGraph> {
    struct Decl<'a> {
        line: usize,
        id: &'a str,
        targets: Vec<&'a str>,
    }

    let mut decls: Vec<Decl> = Vec::new();
    let mut root_directive: Option<(usize, &str)> = None;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('!') {
            let mut words = rest.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some("root"), Some(id), None) if is_token(id) => {
                    if root_directive.is_some() {
                        return Err(Error::Parse { line, message: "second !root directive".into() });
                    }
                    root_directive = Some((line, id));
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown directive `{content}`"),
                    })
                }
            }
            continue;
        }
        let Some((head, tail)) = content.split_once(':') else {
            return Err(Error::Parse { line, message: "expected `<id>: <options>`".into() });
        };
        let id = head.trim();
        if !is_token(id) {
            return Err(Error::Parse { line, message: format!("invalid position id `{id}`") });
        }
        let mut targets = Vec::new();
        for t in tail.split_whitespace() {
            if !is_token(t) {
                return Err(Error::Parse { line, message: format!("invalid option id `{t}`") });
            }
            targets.push(t);
        }
        decls.push(Decl { line, id, targets });
    }

    if decls.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let mut g = GameGraph::new();
    for d in &decls {
        g.add_position(d.id).map_err(|_| Error::DuplicatePosition {
            line: d.line,
            id: d.id.to_string(),
        })?;
    }
    for (x, d) in decls.iter().enumerate() {
        let mut seen = HashSet::new();
        for t in &d.targets {
            let y = g.index_of(t).ok_or_else(|| Error::UndeclaredTarget {
                line: d.line,
                target: t.to_string(),
            })?;
            if !seen.insert(y) {
                return Err(Error::DuplicateArc {
                    line: d.line,
                    from: d.id.to_string(),
                    to: t.to_string(),
                });
            }
            g.options[x].push(y);
        }
    }
    if let Some((line, id)) = root_directive {
        let r = g.index_of(id).ok_or_else(|| Error::UndeclaredTarget { line, target: id.to_string() })?;
        g.set_root(r);
    }
    Ok(g)
}

/// The nim heap `*m`: positions `0..=m`, where `k` has options `0..k`.
pub fn nim_heap(m: usize) -> GameGraph {
    let mut g = GameGraph::new();
    for k in 0..=m {
        g.add_position(k.to_string()).expect("fresh ids");
    }
    for k in 0..=m {
        g.options[k] = (0..k).collect();
    }
    g.set_root(m);
    g
}

/// Disjunctive-sum graph `V x W`, with the default size cap.
pub fn product_graph(v: &GameGraph, w: &GameGraph) -> Result<GameGraph> {
    product_graph_capped(v, w, DEFAULT_PRODUCT_CAP)
}

/// Position `(u, x)` of the product has index `u * |W| + x`. Its options are
/// the moves in `V` followed by the moves in `W`; when both components have
/// a self-loop the two identical arcs collapse into one.
pub fn product_graph_capped(v: &GameGraph, w: &GameGraph, cap: usize) -> Result<GameGraph> {
    let size = v.len().saturating_mul(w.len());
    if size > cap {
        return Err(Error::ProductTooLarge { size, cap });
    }
    let nw = w.len();
    let mut ids: Vec<PositionId> = Vec::with_capacity(size);
    for u in 0..v.len() {
        for x in 0..nw {
            ids.push(PositionId::new(format!("{}_{}", v.ids[u], w.ids[x])));
        }
    }
    let unique: HashSet<&PositionId> = ids.iter().collect();
    if unique.len() != ids.len() {
        ids = (0..size).map(|i| PositionId::new(format!("p{}x{}", i / nw, i % nw))).collect();
    }

    let mut g = GameGraph::new();
    g.index.reserve(size);
    for id in ids {
        g.index.insert(id.clone(), g.ids.len());
        g.ids.push(id);
    }
    g.options.reserve(size);
    for u in 0..v.len() {
        for x in 0..nw {
            let here = u * nw + x;
            let mut opts: Vec<usize> = Vec::with_capacity(v.out_degree(u) + w.out_degree(x));
            opts.extend(v.options(u).iter().map(|&u2| u2 * nw + x));
            for &x2 in w.options(x) {
                let t = u * nw + x2;
                if !(t == here && opts.contains(&t)) {
                    opts.push(t);
                }
            }
            g.options.push(opts);
        }
    }
    g.root = match (v.root, w.root) {
        (Some(a), Some(b)) => Some(a * nw + b),
        _ if size > 0 => Some(0),
        _ => None,
    };
    Ok(g)
}

/// A game graph that is a tree hanging from its root.
#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree {
    graph: GameGraph,
    root: usize,
    height: Vec<usize>,
    parent: Vec<Option<usize>>,
}

impl RootedTree {
    pub fn from_graph(graph: GameGraph) -> Result<Self> {
        let root = graph.root().ok_or(Error::EmptyGraph)?;
        let indeg = graph.in_degrees();
        if indeg[root] != 0 {
            return Err(Error::NotATree(format!("root `{}` has in-degree {}", graph.id(root), indeg[root])));
        }
        if let Some(x) = (0..graph.len()).find(|&x| x != root && indeg[x] != 1) {
            return Err(Error::NotATree(format!("`{}` has in-degree {}", graph.id(x), indeg[x])));
        }
        let mut height = vec![usize::MAX; graph.len()];
        let mut parent = vec![None; graph.len()];
        height[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in graph.options(x) {
                height[y] = height[x] + 1;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
        if let Some(x) = height.iter().position(|&h| h == usize::MAX) {
            return Err(Error::NotATree(format!("`{}` is unreachable from the root", graph.id(x))));
        }
        Ok(RootedTree { graph, root, height, parent })
    }

    /// Builds a tree from per-vertex child counts in breadth-first order.
    pub fn from_offspring(offspring: &[usize]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); offspring.len()];
        let mut next = 1;
        for (x, &k) in offspring.iter().enumerate() {
            if next + k > offspring.len() {
                return Err(Error::NotATree("offspring counts exceed vertex count".into()));
            }
            adjacency[x] = (next..next + k).collect();
            next += k;
        }
        if next != offspring.len() {
            return Err(Error::NotATree("offspring counts do not cover every vertex".into()));
        }
        RootedTree::from_graph(GameGraph::from_adjacency(&adjacency))
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn height(&self, x: usize) -> usize {
        self.height[x]
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn max_height(&self) -> usize {
        self.height.iter().copied().max().unwrap_or(0)
    }
}
