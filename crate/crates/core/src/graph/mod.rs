//! Oriented graphs with opaque string vertex names.
//!
//! Vertices are addressed by dense indices `0..n`. Index order follows a
//! natural sort of the names (numeric names compare by value), so every
//! iteration in the crate is deterministic.

mod blocks;
mod cycles;
mod subdivision;

pub use blocks::{biconnected_components, xy_cut_vertices, Block, BlockDecomposition, BcNode, ThinnedBcTree};
pub use cycles::{
    classify_cycle_orientation, directed_cycles, find_directed_cycle, find_unbalanced_small_cycles,
    orientation_orbit_count, undirected_cycles, CycleClass,
};
pub use subdivision::{has_k33_subdivision, K33Witness, K33_VERTEX_CAP};

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Ordering used for vertex names: all-digit names first, by numeric value,
/// then everything else lexicographically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let num = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    match (num(a), num(b)) {
        (true, true) => {
            let (ta, tb) = (a.trim_start_matches('0'), b.trim_start_matches('0'));
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then_with(|| a.cmp(b))
        }
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.cmp(b),
    }
}

/// A simple oriented graph: no loops, no parallel and no anti-parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    // dir[u * n + v] is 1 if u -> v, -1 if v -> u, 0 otherwise.
    dir: Vec<i8>,
}

impl std::fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v)| format!("{}->{}", self.names[u], self.names[v]))
            .collect();
        f.debug_struct("OrientedGraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

/// Incremental construction of an [`OrientedGraph`] from named vertices.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: BTreeSet<String>,
    edges: Vec<(String, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> &mut Self {
        self.vertices.insert(name.into());
        self
    }

    pub fn edge(&mut self, from: impl Into<String>, to: impl Into<String>) -> &mut Self {
        let (from, to) = (from.into(), to.into());
        self.vertices.insert(from.clone());
        self.vertices.insert(to.clone());
        self.edges.push((from, to));
        self
    }

    /// Fails on loops, repeated edges and anti-parallel pairs.
    pub fn build(&self) -> Result<OrientedGraph> {
        let mut names: Vec<String> = self.vertices.iter().cloned().collect();
        names.sort_by(|a, b| natural_cmp(a, b));
        let index: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let edges: Vec<(usize, usize)> =
            self.edges.iter().map(|(a, b)| (index[a], index[b])).collect();
        OrientedGraph::assemble(names, index, &edges)
    }
}

impl OrientedGraph {
    /// Graph on vertices named `"0".."n-1"` with index-based edges.
    pub fn from_indexed(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for {n} vertices")));
        }
        Self::assemble(names, index, edges)
    }

    /// Graph from names and name-based edges; names need not be sorted.
    pub fn from_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.vertex(v.as_ref());
        }
        for (u, v) in edges {
            b.edge(u.as_ref(), v.as_ref());
        }
        b.build()
    }

    fn assemble(names: Vec<String>, index: BTreeMap<String, usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut dir = vec![0i8; n * n];
        let mut children = vec![Vec::new(); n];
        let mut parents = vec![Vec::new(); n];
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at `{}`", names[u])));
            }
            match dir[u * n + v] {
                1 => return Err(Error::InvalidGraph(format!("repeated edge {} -> {}", names[u], names[v]))),
                -1 => {
                    return Err(Error::InvalidGraph(format!(
                        "anti-parallel edges between `{}` and `{}`",
                        names[u], names[v]
                    )))
                }
                _ => {}
            }
            dir[u * n + v] = 1;
            dir[v * n + u] = -1;
            children[u].push(v);
            parents[v].push(u);
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in children.iter_mut().chain(parents.iter_mut()).chain(neighbors.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Self { names, index, children, parents, neighbors, dir })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vertex_or_err(&self, name: &str) -> Result<usize> {
        self.vertex(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Out-neighbours of `v`, sorted.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// In-neighbours of `v`, sorted.
    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    /// Neighbours in the underlying undirected graph, sorted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// `1` if `u -> v`, `-1` if `v -> u`, `0` if not adjacent.
    pub fn orientation(&self, u: usize, v: usize) -> i8 {
        self.dir[u * self.n() + v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.orientation(u, v) == 1
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.orientation(u, v) != 0
    }

    /// Directed edges in lexicographic order of (tail, head).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.children.iter().enumerate().flat_map(|(u, cs)| cs.iter().map(move |&v| (u, v)))
    }

    /// Closed unit ball: `v` followed by its neighbours, sorted overall.
    pub fn ball(&self, v: usize) -> Vec<usize> {
        let mut b = Vec::with_capacity(self.degree(v) + 1);
        b.push(v);
        b.extend_from_slice(&self.neighbors[v]);
        b.sort_unstable();
        b
    }

    /// Undirected BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        self.bfs(src, |_| true)
    }

    /// Undirected BFS distances in the subgraph induced by `keep`.
    pub fn distances_within(&self, src: usize, keep: impl Fn(usize) -> bool) -> Vec<Option<usize>> {
        self.bfs(src, keep)
    }

    fn bfs(&self, src: usize, keep: impl Fn(usize) -> bool) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        if !keep(src) {
            return dist;
        }
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.neighbors[u] {
                if dist[w].is_none() && keep(w) {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distances_from(u)[v]
    }

    /// All-pairs undirected distances, `usize::MAX` when disconnected.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|u| self.distances_from(u).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    fn directed_reach(&self, src: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        seen[src] = true;
        let mut stack = vec![src];
        while let Some(u) = stack.pop() {
            let next = if forward { &self.children[u] } else { &self.parents[u] };
            for &w in next {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n() == 0
            || (self.directed_reach(0, true).iter().all(|&b| b) && self.directed_reach(0, false).iter().all(|&b| b))
    }

    /// Length of a shortest undirected cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut from = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.neighbors[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        from[w] = u;
                        queue.push_back(w);
                    } else if from[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Girth with forests mapped to `usize::MAX`, for threshold tests.
    pub fn girth_or_inf(&self) -> usize {
        self.girth().unwrap_or(usize::MAX)
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.is_connected() && self.edge_count() == self.n() - 1
    }

    /// Every undirected shortest path from `x` to `y`, each listed from `x`.
    pub fn shortest_paths(&self, x: usize, y: usize) -> Vec<Vec<usize>> {
        let dy = self.distances_from(y);
        let Some(d) = dy[x] else { return Vec::new() };
        let mut out = Vec::new();
        let mut path = vec![x];
        self.extend_shortest(&dy, d, &mut path, &mut out);
        out
    }

    fn extend_shortest(&self, dy: &[Option<usize>], remaining: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(path.clone());
            return;
        }
        let u = *path.last().unwrap();
        for &w in &self.neighbors[u] {
            if dy[w] == Some(remaining - 1) {
                path.push(w);
                self.extend_shortest(dy, remaining - 1, path, out);
                path.pop();
            }
        }
    }

    /// Vertices with no parent.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.parents[v].is_empty()).collect()
    }

    /// The same graph with every edge reversed.
    pub fn reversed(&self) -> Self {
        let edges: Vec<(usize, usize)> = self.edges().map(|(u, v)| (v, u)).collect();
        Self::assemble(self.names.clone(), self.index.clone(), &edges).expect("reversal preserves validity")
    }

    /// Induced subgraph on `keep` (sorted), with names preserved.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut b = GraphBuilder::new();
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        for &v in &set {
            b.vertex(self.names[v].clone());
        }
        for (u, v) in self.edges() {
            if set.contains(&u) && set.contains(&v) {
                b.edge(self.names[u].clone(), self.names[v].clone());
            }
        }
        b.build().expect("induced subgraph of a valid graph")
    }

    /// Graph with vertex `v` of `self` renamed to index `perm[v]` (names `"0".."n-1"`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let edges: Vec<(usize, usize)> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::from_indexed(self.n(), &edges).expect("permutation preserves validity")
    }

    /// Compact fingerprint: base-3 orientation code over unordered pairs.
    pub fn pair_code(&self) -> Vec<i8> {
        let n = self.n();
        let mut code = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for u in 0..n {
            for v in u + 1..n {
                code.push(self.orientation(u, v));
            }
        }
        code
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(k: usize) -> OrientedGraph {
        let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        OrientedGraph::from_indexed(k, &edges).unwrap()
    }

    #[test]
    fn natural_order_puts_numbers_first_by_value() {
        let mut v = vec!["10", "b", "2", "a", "1", "02"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, ["1", "02", "2", "10", "a", "b"]);
    }

    #[test]
    fn rejects_loops_duplicates_and_antiparallel_edges() {
        assert!(OrientedGraph::from_indexed(2, &[(0, 0)]).is_err());
        assert!(OrientedGraph::from_indexed(2, &[(0, 1), (0, 1)]).is_err());
        assert!(OrientedGraph::from_indexed(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn girth_of_cycles_and_trees() {
        for k in 3..9 {
            assert_eq!(cycle(k).girth(), Some(k));
        }
        let path = OrientedGraph::from_indexed(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
        assert!(path.is_tree());
    }

    #[test]
    fn ball_is_closed_neighbourhood() {
        let g = cycle(5);
        assert_eq!(g.ball(0), vec![0, 1, 4]);
    }

    #[test]
    fn strong_connectivity() {
        assert!(cycle(4).is_strongly_connected());
        let path = OrientedGraph::from_indexed(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_strongly_connected());
    }

    #[test]
    fn shortest_paths_in_even_cycle() {
        let g = cycle(6);
        let paths = g.shortest_paths(0, 3);
        assert_eq!(paths, vec![vec![0, 1, 2, 3], vec![0, 5, 4, 3]]);
    }

    #[test]
    fn names_are_sorted_naturally() {
        let g = OrientedGraph::from_edges(&["b", "10", "9"], &[("10", "b"), ("9", "10")]).unwrap();
        assert_eq!(g.names(), ["9", "10", "b"]);
        assert!(g.has_edge(1, 2));
    }
}
