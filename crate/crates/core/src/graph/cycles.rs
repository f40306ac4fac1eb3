//! Undirected and directed cycles, and orientation classes of cycles.

use std::collections::{BTreeSet, VecDeque};

use super::OrientedGraph;

/// Orientation class of an undirected cycle: the cyclic sequence of maximal
/// runs of consistently directed edges, taken up to rotation and reflection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleClass {
    pub length: usize,
    /// Canonical run lengths; `[length]` for a directed cycle.
    pub runs: Vec<usize>,
}

impl CycleClass {
    pub fn is_directed(&self) -> bool {
        self.runs.len() == 1
    }

    /// Exactly one source and one sink on a 4- or 5-cycle.
    pub fn is_unbalanced(&self) -> bool {
        self.runs.len() == 2 && (self.length == 4 || self.length == 5)
    }

    /// Short label such as `C5(3,2)`.
    pub fn label(&self) -> String {
        let runs: Vec<String> = self.runs.iter().map(usize::to_string).collect();
        format!("C{}({})", self.length, runs.join(","))
    }
}

/// Classify the cycle `cycle` (consecutive vertices, closing edge implied).
///
/// Panics if consecutive vertices are not adjacent.
pub fn classify_cycle_orientation(g: &OrientedGraph, cycle: &[usize]) -> CycleClass {
    let k = cycle.len();
    let dirs: Vec<i8> = (0..k)
        .map(|i| {
            let o = g.orientation(cycle[i], cycle[(i + 1) % k]);
            assert!(o != 0, "cycle vertices {} and {} are not adjacent", g.name(cycle[i]), g.name(cycle[(i + 1) % k]));
            o
        })
        .collect();
    CycleClass { length: k, runs: canonical_runs(&dirs) }
}

fn canonical_runs(dirs: &[i8]) -> Vec<usize> {
    let k = dirs.len();
    let Some(start) = (0..k).find(|&i| dirs[i] != dirs[(i + k - 1) % k]) else {
        return vec![k];
    };
    let mut runs = Vec::new();
    let mut len = 0;
    for j in 0..k {
        let i = (start + j) % k;
        if j > 0 && dirs[i] != dirs[(i + k - 1) % k] {
            runs.push(len);
            len = 0;
        }
        len += 1;
    }
    runs.push(len);
    let mut best = runs.clone();
    let r = runs.len();
    for rev in [false, true] {
        let seq: Vec<usize> = if rev { runs.iter().rev().copied().collect() } else { runs.clone() };
        for s in 0..r {
            let cand: Vec<usize> = (0..r).map(|j| seq[(s + j) % r]).collect();
            if cand > best {
                best = cand;
            }
        }
    }
    best
}

/// All simple undirected cycles of exactly `len` vertices, each listed from
/// its smallest vertex with the second vertex smaller than the last.
pub fn undirected_cycles(g: &OrientedGraph, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len < 3 {
        return out;
    }
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        let mut path = vec![s];
        on_path[s] = true;
        extend_undirected(g, s, len, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

fn extend_undirected(
    g: &OrientedGraph,
    s: usize,
    len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let u = *path.last().unwrap();
    if path.len() == len {
        if g.adjacent(u, s) && path[1] < path[len - 1] {
            out.push(path.clone());
        }
        return;
    }
    for &w in g.neighbors(u) {
        if w > s && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend_undirected(g, s, len, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Unbalanced undirected 4- and 5-cycles with their classes.
pub fn find_unbalanced_small_cycles(g: &OrientedGraph) -> Vec<(Vec<usize>, CycleClass)> {
    let mut out = Vec::new();
    for len in [4, 5] {
        for c in undirected_cycles(g, len) {
            let class = classify_cycle_orientation(g, &c);
            if class.is_unbalanced() {
                out.push((c, class));
            }
        }
    }
    out
}

/// Number of orientations of the `k`-cycle up to the dihedral group, by
/// direct enumeration of canonical forms.
pub fn orientation_orbit_count(k: usize) -> usize {
    assert!((3..=20).contains(&k), "cycle length {k} outside supported range 3..=20");
    let full = (1u32 << k) - 1;
    let rotate = |m: u32, r: usize| ((m << r) | (m >> (k - r))) & full;
    // Edge i = (i, i+1) maps to edge (k - 1 - i) with its direction flipped.
    let reflect = |m: u32| {
        let mut out = 0u32;
        for i in 0..k {
            if m >> i & 1 == 0 {
                out |= 1 << (k - 1 - i);
            }
        }
        out
    };
    let mut seen = BTreeSet::new();
    for m in 0..=full {
        let canon = (0..k)
            .flat_map(|r| [rotate(m, r), reflect(rotate(m, r))])
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.len()
}

/// Simple directed cycles with at most `max_len` vertices, each listed from
/// its smallest vertex, in lexicographic order.
pub fn directed_cycles(g: &OrientedGraph, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        let mut path = vec![s];
        on_path[s] = true;
        extend_directed(g, s, max_len, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out.sort();
    out
}

fn extend_directed(
    g: &OrientedGraph,
    s: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let u = *path.last().unwrap();
    for &w in g.children(u) {
        if w == s && path.len() >= 3 {
            out.push(path.clone());
        } else if w > s && !on_path[w] && path.len() < max_len {
            on_path[w] = true;
            path.push(w);
            extend_directed(g, s, max_len, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// A shortest directed cycle, listed from its smallest vertex; ties go to
/// the lexicographically smallest listing.
pub fn find_directed_cycle(g: &OrientedGraph) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for s in 0..g.n() {
        // BFS over children restricted to vertices > s, closing back at s.
        let mut from = vec![usize::MAX; g.n()];
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut found = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &w in g.children(u) {
                if w == s {
                    found = Some(u);
                    break 'bfs;
                }
                if w > s && !seen[w] {
                    seen[w] = true;
                    from[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if let Some(mut u) = found {
            let mut cyc = vec![u];
            while u != s {
                u = from[u];
                cyc.push(u);
            }
            cyc.reverse();
            let better = match &best {
                None => true,
                Some(b) => (cyc.len(), &cyc) < (b.len(), b),
            };
            if better {
                best = Some(cyc);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> OrientedGraph {
        OrientedGraph::from_indexed(n, e).unwrap()
    }

    #[test]
    fn classes_of_small_cycles() {
        let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let class = classify_cycle_orientation(&c5, &[0, 1, 2, 3, 4]);
        assert!(class.is_directed() && !class.is_unbalanced());
        let c532 = g(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)]);
        let class = classify_cycle_orientation(&c532, &[0, 1, 2, 3, 4]);
        assert_eq!(class.runs, vec![3, 2]);
        assert!(class.is_unbalanced());
        let alt = g(4, &[(0, 1), (2, 1), (2, 3), (0, 3)]);
        let class = classify_cycle_orientation(&alt, &[0, 1, 2, 3]);
        assert_eq!(class.runs, vec![1, 1, 1, 1]);
        assert!(!class.is_unbalanced());
    }

    #[test]
    fn cycle_enumeration_counts() {
        // K4 has 3 four-cycles and 4 triangles.
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(undirected_cycles(&k4, 4).len(), 3);
        assert_eq!(undirected_cycles(&k4, 3).len(), 4);
        assert!(directed_cycles(&k4, 4).is_empty());
        assert_eq!(find_directed_cycle(&k4), None);
    }

    #[test]
    fn shortest_directed_cycle() {
        let h = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 0)]);
        assert_eq!(find_directed_cycle(&h), Some(vec![0, 1, 2]));
        assert_eq!(directed_cycles(&h, 5), vec![vec![0, 1, 2], vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn orbit_counts_for_small_cycles() {
        assert_eq!(orientation_orbit_count(3), 2);
        assert_eq!(orientation_orbit_count(4), 4);
        assert_eq!(orientation_orbit_count(5), 4);
    }
}
