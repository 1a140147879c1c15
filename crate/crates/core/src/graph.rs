//! Simple graphs on the variable set: bipartiteness, girth, distances,
//! leaves, minimal vertex covers, and recognition of cycles and whiskered
//! graphs.
//!
//! Vertices are 0-based variable indices. Isolated vertices (variables that
//! never occur) are ignored by cycle and whisker recognition.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::decomposition::PrimeSupport;
use crate::error::{domain, Error, Result};

pub const DEFAULT_COVER_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges).expect("valid cycle")
    }

    /// `W_H`: core vertex `i` keeps its label, its whisker leaf is `m + i`.
    pub fn whiskered(h: &SimpleGraph) -> Self {
        let m = h.n;
        let mut edges = h.edges();
        edges.extend((0..m).map(|i| (i, m + i)));
        SimpleGraph::from_edges(2 * m, &edges).expect("valid whiskered graph")
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.n || b >= self.n {
            return Err(Error::VariableOutOfRange {
                index: a.max(b),
                nvars: self.n,
            });
        }
        if a == b {
            return Err(domain("simple graphs have no loops"));
        }
        if let Err(pos) = self.adj[a].binary_search(&b) {
            self.adj[a].insert(pos, b);
        }
        if let Err(pos) = self.adj[b].binary_search(&a) {
            self.adj[b].insert(pos, a);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, ns) in self.adj.iter().enumerate() {
            for &b in ns {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    /// Vertices of positive degree.
    pub fn active_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) > 0).collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs(u)[v]
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("colored");
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn is_triangle_free(&self) -> bool {
        self.girth() != Some(3)
    }

    /// All inclusion-minimal vertex covers, as complements of maximal
    /// independent sets. A graph without edges yields no covers (its only
    /// cover is empty).
    pub fn minimal_vertex_covers(&self) -> Result<Vec<PrimeSupport>> {
        self.minimal_vertex_covers_bounded(DEFAULT_COVER_BOUND)
    }

    pub fn minimal_vertex_covers_bounded(&self, bound: usize) -> Result<Vec<PrimeSupport>> {
        if self.n > bound || self.n > 64 {
            return Err(Error::CoverBound {
                n: self.n,
                bound: bound.min(64),
            });
        }
        if self.edge_count() == 0 {
            return Ok(Vec::new());
        }
        let all: u64 = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let non_adj: Vec<u64> = (0..self.n)
            .map(|v| {
                let mut mask = all & !(1u64 << v);
                for &w in &self.adj[v] {
                    mask &= !(1u64 << w);
                }
                mask
            })
            .collect();
        let mut independents = Vec::new();
        maximal_independent(0, all, 0, &non_adj, &mut independents);
        let mut covers: Vec<PrimeSupport> = independents
            .into_iter()
            .map(|r| {
                let cover = all & !r;
                PrimeSupport::new((0..self.n).filter(|&v| cover & (1u64 << v) != 0))
                    .expect("graph with an edge has nonempty covers")
            })
            .collect();
        covers.sort();
        Ok(covers)
    }

    /// True iff no minimal vertex cover contains both endpoints of `{i, j}`.
    pub fn cover_separates_edge(&self, i: usize, j: usize) -> Result<bool> {
        if !self.has_edge(i, j) {
            return Err(Error::Domain(format!("{{x{}, x{}}} is not an edge", i + 1, j + 1)));
        }
        Ok(self
            .minimal_vertex_covers()?
            .iter()
            .all(|c| !(c.contains(i) && c.contains(j))))
    }

    /// Vertices of the graph in cyclic order when the active part is a single
    /// cycle: connected, 2-regular, at least 3 vertices. Starts at the least
    /// vertex and proceeds towards its smaller neighbor.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        let active = self.active_vertices();
        if active.len() < 3 || active.iter().any(|&v| self.degree(v) != 2) {
            return None;
        }
        let start = active[0];
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = self.adj[start][0];
        while cur != start {
            order.push(cur);
            let next = if self.adj[cur][0] == prev { self.adj[cur][1] } else { self.adj[cur][0] };
            prev = cur;
            cur = next;
            if order.len() > active.len() {
                return None;
            }
        }
        (order.len() == active.len()).then_some(order)
    }

    pub fn recognize_cycle(&self) -> Option<usize> {
        self.cycle_order().map(|o| o.len())
    }

    /// Number of vertices when the non-isolated vertices form one path.
    pub fn recognize_path(&self) -> Option<usize> {
        let active = self.active_vertices();
        let leaves = self.leaves();
        if active.is_empty() || leaves.len() != 2 || self.edge_count() + 1 != active.len() {
            return None;
        }
        let reach = self.bfs(leaves[0]);
        active.iter().all(|&v| reach[v].is_some()).then_some(active.len())
    }

    /// Recognizes `W_H`. Isolated `K2` components are ambiguous; their
    /// lower-indexed endpoint is taken as the core vertex.
    pub fn recognize_whisker(&self) -> Option<WhiskerStructure> {
        let active = self.active_vertices();
        if active.is_empty() {
            return None;
        }
        let mut leaf_of: Vec<Option<usize>> = vec![None; self.n];
        let mut is_leaf = vec![false; self.n];
        let mut ambiguous = false;
        for &v in &active {
            if self.degree(v) == 1 {
                let u = self.adj[v][0];
                if self.degree(u) == 1 {
                    // K2 component
                    ambiguous = true;
                    if v < u {
                        leaf_of[v] = Some(u);
                        is_leaf[u] = true;
                    }
                } else {
                    is_leaf[v] = true;
                }
            }
        }
        for &v in &active {
            if is_leaf[v] && self.degree(self.adj[v][0]) > 1 {
                let core = self.adj[v][0];
                if leaf_of[core].is_some() {
                    return None;
                }
                leaf_of[core] = Some(v);
            }
        }
        let mut core = Vec::new();
        let mut leaves = Vec::new();
        for &v in &active {
            if is_leaf[v] {
                continue;
            }
            let leaf = leaf_of[v]?;
            core.push(v);
            leaves.push(leaf);
        }
        if core.len() * 2 != active.len() {
            return None;
        }
        Some(WhiskerStructure {
            m: core.len(),
            core,
            leaves,
            ambiguous_k2: ambiguous,
        })
    }
}

fn maximal_independent(r: u64, mut p: u64, mut x: u64, non_adj: &[u64], out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = {
        let mut best = 0usize;
        let mut best_count = -1i64;
        let mut px = p | x;
        while px != 0 {
            let u = px.trailing_zeros() as usize;
            px &= px - 1;
            let c = (p & non_adj[u]).count_ones() as i64;
            if c > best_count {
                best_count = c;
                best = u;
            }
        }
        best
    };
    let mut cand = p & !non_adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let bit = 1u64 << v;
        maximal_independent(r | bit, p & non_adj[v], x & non_adj[v], non_adj, out);
        p &= !bit;
        x |= bit;
    }
}

/// A whiskered-graph structure: core vertices (sorted) and the whisker leaf
/// of each. After relabeling, core `t` becomes `t` and its leaf `m + t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhiskerStructure {
    pub m: usize,
    pub core: Vec<usize>,
    pub leaves: Vec<usize>,
    /// Some component was an isolated edge and the core endpoint was chosen
    /// by least index.
    pub ambiguous_k2: bool,
}

impl WhiskerStructure {
    /// Position of `v` in the relabeled vertex set `0..2m`.
    pub fn relabel(&self, v: usize) -> Option<usize> {
        if let Some(t) = self.core.iter().position(|&c| c == v) {
            return Some(t);
        }
        self.leaves.iter().position(|&l| l == v).map(|t| self.m + t)
    }

    /// Original vertex for relabeled index `k`.
    pub fn original(&self, k: usize) -> usize {
        if k < self.m {
            self.core[k]
        } else {
            self.leaves[k - self.m]
        }
    }

    pub fn leaf_of(&self, core_vertex: usize) -> Option<usize> {
        self.core
            .iter()
            .position(|&c| c == core_vertex)
            .map(|t| self.leaves[t])
    }

    /// Edges of `H` in original labels.
    pub fn core_edges(&self, g: &SimpleGraph) -> Vec<(usize, usize)> {
        g.edges()
            .into_iter()
            .filter(|&(a, b)| self.core.contains(&a) && self.core.contains(&b))
            .collect()
    }
}
