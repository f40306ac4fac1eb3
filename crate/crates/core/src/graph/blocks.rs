//! Biconnected components, cut vertices and the thinned block-cut tree.

use std::collections::BTreeSet;

use super::OrientedGraph;

/// A biconnected component. Blocks with two vertices are bridges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    /// Directed edges of the block, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    /// Nontrivial means more than one edge, i.e. not a bridge.
    pub fn is_nontrivial(&self) -> bool {
        self.vertices.len() > 2
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted by smallest vertex.
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
}

impl BlockDecomposition {
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.is_nontrivial())
    }
}

/// Hopcroft-Tarjan with an explicit edge stack.
pub fn biconnected_components(g: &OrientedGraph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    let mut is_cut = vec![false; n];

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0usize;
        // Frames hold (vertex, parent, next neighbour position).
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent, ref mut pos)) = frames.last_mut() {
            if *pos < g.neighbors(u).len() {
                let w = g.neighbors(u)[*pos];
                *pos += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if u == root {
                        root_children += 1;
                    }
                    frames.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                frames.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[u]);
                if low[u] >= disc[parent] {
                    if parent != root {
                        is_cut[parent] = true;
                    }
                    let mut verts = BTreeSet::new();
                    let mut edges = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        verts.insert(a);
                        verts.insert(b);
                        edges.push(if g.has_edge(a, b) { (a, b) } else { (b, a) });
                        if (a, b) == (parent, u) {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    blocks.push(Block { vertices: verts.into_iter().collect(), edges });
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    blocks.sort_by_key(|b| b.vertices.clone());
    BlockDecomposition { blocks, cut_vertices: (0..n).filter(|&v| is_cut[v]).collect() }
}

/// Cut vertices whose removal separates `x` from `y`, ordered by distance from `x`.
pub fn xy_cut_vertices(g: &OrientedGraph, x: usize, y: usize) -> Vec<usize> {
    if x == y {
        return Vec::new();
    }
    let dec = biconnected_components(g);
    let dx = g.distances_from(x);
    let mut cuts: Vec<usize> = dec
        .cut_vertices
        .iter()
        .copied()
        .filter(|&c| c != x && c != y)
        .filter(|&c| g.distances_within(x, |v| v != c)[y].is_none())
        .collect();
    cuts.sort_by_key(|&c| (dx[c], c));
    cuts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BcNode {
    /// A cut vertex, or the free end of a pendant bridge.
    Vertex(usize),
    /// Index into [`ThinnedBcTree::blocks`]; always a nontrivial block.
    Block(usize),
}

/// Block-cut tree in which bridges are contracted: a bridge between two
/// cut vertices becomes a direct vertex-vertex edge, and a pendant bridge
/// becomes a vertex node for its non-cut end.
#[derive(Debug, Clone)]
pub struct ThinnedBcTree {
    pub nodes: Vec<BcNode>,
    pub adjacency: Vec<Vec<usize>>,
    pub blocks: Vec<Block>,
    host: Vec<usize>,
}

struct TreeBuild {
    nodes: Vec<BcNode>,
    adjacency: Vec<BTreeSet<usize>>,
    vertex_node: Vec<usize>,
}

impl TreeBuild {
    fn add(&mut self, node: BcNode) -> usize {
        self.nodes.push(node);
        self.adjacency.push(BTreeSet::new());
        self.nodes.len() - 1
    }

    fn vertex(&mut self, v: usize) -> usize {
        if self.vertex_node[v] == usize::MAX {
            self.vertex_node[v] = self.add(BcNode::Vertex(v));
        }
        self.vertex_node[v]
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adjacency[a].insert(b);
        self.adjacency[b].insert(a);
    }
}

impl ThinnedBcTree {
    pub fn new(g: &OrientedGraph) -> Self {
        let dec = biconnected_components(g);
        let n = g.n();
        let mut b = TreeBuild { nodes: Vec::new(), adjacency: Vec::new(), vertex_node: vec![usize::MAX; n] };
        let mut blocks = Vec::new();
        let mut host = vec![usize::MAX; n];
        if n == 1 {
            b.vertex(0);
        }
        for block in &dec.blocks {
            if block.is_nontrivial() {
                blocks.push(block.clone());
                let id = b.add(BcNode::Block(blocks.len() - 1));
                for &v in &block.vertices {
                    if dec.is_cut_vertex(v) {
                        let c = b.vertex(v);
                        b.link(id, c);
                    } else {
                        host[v] = id;
                    }
                }
            } else {
                let na = b.vertex(block.vertices[0]);
                let nb = b.vertex(block.vertices[1]);
                b.link(na, nb);
            }
        }
        for v in 0..n {
            if b.vertex_node[v] != usize::MAX {
                host[v] = b.vertex_node[v];
            }
        }
        let TreeBuild { nodes, adjacency, .. } = b;
        Self {
            nodes,
            adjacency: adjacency.into_iter().map(|s| s.into_iter().collect()).collect(),
            blocks,
            host,
        }
    }

    /// Node representing `v`: its vertex node, or its (unique) nontrivial block.
    pub fn host(&self, v: usize) -> usize {
        self.host[v]
    }

    pub fn nontrivial_block_count(&self) -> usize {
        self.blocks.len()
    }

    /// BFS parent of every node when rooted at `root` (`usize::MAX` at the root).
    pub fn rooted_parents(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(a) = stack.pop() {
            for &b in &self.adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = a;
                    stack.push(b);
                }
            }
        }
        parent
    }

    /// Vertex-vertex tree edges `(tail, head)` that point towards `root`.
    pub fn upward_edges(&self, g: &OrientedGraph, root: usize) -> Vec<(usize, usize)> {
        let parent = self.rooted_parents(root);
        let mut out = Vec::new();
        for (child, &p) in parent.iter().enumerate() {
            if p == usize::MAX {
                continue;
            }
            if let (BcNode::Vertex(c), BcNode::Vertex(pv)) = (self.nodes[child], self.nodes[p]) {
                if g.has_edge(c, pv) {
                    out.push((c, pv));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Root the tree at cut vertex `m` and inspect the branch holding `x`.
    ///
    /// Returns the vertex `l` heading that branch when the branch contains no
    /// block node and every edge in it, including `m -> l`, points away from `m`.
    pub fn out_branch(&self, g: &OrientedGraph, m: usize, x: usize) -> Option<usize> {
        let root = self.host(m);
        if self.nodes[root] != BcNode::Vertex(m) {
            return None;
        }
        let parent = self.rooted_parents(root);
        let mut node = self.host(x);
        if node == root {
            return None;
        }
        while parent[node] != root {
            node = parent[node];
        }
        let head = node;
        let BcNode::Vertex(l) = self.nodes[head] else { return None };
        if !g.has_edge(m, l) {
            return None;
        }
        let mut stack = vec![head];
        while let Some(a) = stack.pop() {
            let BcNode::Vertex(av) = self.nodes[a] else { return None };
            for &b in &self.adjacency[a] {
                if b == parent[a] {
                    continue;
                }
                let BcNode::Vertex(bv) = self.nodes[b] else { return None };
                if !g.has_edge(av, bv) {
                    return None;
                }
                stack.push(b);
            }
        }
        Some(l)
    }
}
