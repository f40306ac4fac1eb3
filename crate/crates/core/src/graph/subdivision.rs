//! Search for a subdivision of K3,3 in the underlying undirected graph.

use super::OrientedGraph;
use crate::error::{Error, Result};

/// Largest graph accepted by [`has_k33_subdivision`].
pub const K33_VERTEX_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K33Witness {
    pub left: [usize; 3],
    pub right: [usize; 3],
    /// `paths[3 * i + j]` joins `left[i]` to `right[j]`, endpoints included.
    pub paths: Vec<Vec<usize>>,
}

/// Backtracking search over branch-vertex choices and internally disjoint
/// routings. Exponential; refuses graphs above [`K33_VERTEX_CAP`] vertices.
pub fn has_k33_subdivision(g: &OrientedGraph) -> Result<Option<K33Witness>> {
    let n = g.n();
    if n > K33_VERTEX_CAP {
        return Err(Error::SizeCap { op: "has_k33_subdivision", size: n, cap: K33_VERTEX_CAP });
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    if candidates.len() < 6 || g.edge_count() < 9 {
        return Ok(None);
    }
    let mut search = Search { g, used: vec![false; n], paths: Vec::new() };
    for six in combinations(&candidates, 6) {
        // Split into two triples; fixing six[0] on the left removes the swap symmetry.
        for rest in combinations(&six[1..], 2) {
            let left = [six[0], rest[0], rest[1]];
            let right: Vec<usize> = six.iter().copied().filter(|v| !left.contains(v)).collect();
            let right = [right[0], right[1], right[2]];
            if let Some(paths) = search.route(&left, &right) {
                return Ok(Some(K33Witness { left, right, paths }));
            }
        }
    }
    Ok(None)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

struct Search<'a> {
    g: &'a OrientedGraph,
    used: Vec<bool>,
    paths: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn route(&mut self, left: &[usize; 3], right: &[usize; 3]) -> Option<Vec<Vec<usize>>> {
        self.used.iter_mut().for_each(|u| *u = false);
        for &v in left.iter().chain(right) {
            self.used[v] = true;
        }
        self.paths.clear();
        let pairs: Vec<(usize, usize)> = left.iter().flat_map(|&a| right.iter().map(move |&b| (a, b))).collect();
        if self.assign(&pairs, 0) {
            Some(self.paths.clone())
        } else {
            None
        }
    }

    fn assign(&mut self, pairs: &[(usize, usize)], k: usize) -> bool {
        if k == pairs.len() {
            return true;
        }
        if !pairs[k..].iter().all(|&(a, b)| self.reachable(a, b)) {
            return false;
        }
        let (a, b) = pairs[k];
        let mut path = vec![a];
        self.extend(pairs, k, b, &mut path)
    }

    fn extend(&mut self, pairs: &[(usize, usize)], k: usize, target: usize, path: &mut Vec<usize>) -> bool {
        let u = *path.last().unwrap();
        for &w in self.g.neighbors(u) {
            if w == target {
                path.push(w);
                self.paths.push(path.clone());
                if self.assign(pairs, k + 1) {
                    return true;
                }
                self.paths.pop();
                path.pop();
            } else if !self.used[w] {
                self.used[w] = true;
                path.push(w);
                let ok = self.extend(pairs, k, target, path);
                path.pop();
                self.used[w] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }

    /// Whether `b` can still be reached from `a` through unused vertices.
    fn reachable(&self, a: usize, b: usize) -> bool {
        if self.g.adjacent(a, b) {
            return true;
        }
        let mut seen = vec![false; self.g.n()];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(u) = stack.pop() {
            for &w in self.g.neighbors(u) {
                if w == b {
                    return true;
                }
                if !seen[w] && !self.used[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k33_itself_and_a_subdivision() {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        let k33 = OrientedGraph::from_indexed(6, &e).unwrap();
        let w = has_k33_subdivision(&k33).unwrap().unwrap();
        assert_eq!(w.paths.len(), 9);
        // Subdivide edge 0-3 through vertex 6.
        let mut e2: Vec<(usize, usize)> = e.iter().copied().filter(|&p| p != (0, 3)).collect();
        e2.extend([(0, 6), (6, 3)]);
        let sub = OrientedGraph::from_indexed(7, &e2).unwrap();
        assert!(has_k33_subdivision(&sub).unwrap().is_some());
    }

    #[test]
    fn planar_graphs_have_none() {
        // Cube graph: planar, 3-regular on 8 vertices.
        let e = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)];
        let cube = OrientedGraph::from_indexed(8, &e).unwrap();
        assert!(has_k33_subdivision(&cube).unwrap().is_none());
    }
}
