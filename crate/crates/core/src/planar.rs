//! Outerplanarity, faces of rotation systems and well-directed faces.
//!
//! Outerplanarity is decided twice: by excluded minors (`K4`, `K2,3`) and by
//! building the embedding directly, one Hamiltonian boundary cycle with
//! non-crossing chords per block. [`is_outerplanar`] refuses to answer if
//! the two disagree.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::equilibria::{chase_play, find_static, walking_together_play, CycleWitness, EquilibriumReport, Method};
use crate::error::{Error, Result};
use crate::game::GameConfig;
use crate::graph::{biconnected_components, find_directed_cycle, OrientedGraph};
use crate::profile::{check_profile_equilibrium, OnPathPlay};
use crate::solver::{all_edges_decisive, value_iteration, ValueTable, DEFAULT_EPSILON};

pub const OUTERPLANAR_VERTEX_CAP: usize = 32;

fn undirected(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Outer boundary and chords of one nontrivial block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OuterBlock {
    /// Hamiltonian cycle of the block, starting at its smallest vertex.
    pub cycle: Vec<usize>,
    /// Block edges off the cycle, as sorted pairs.
    pub chords: Vec<(usize, usize)>,
}

impl OuterBlock {
    /// Rotation system placing the cycle on a circle.
    pub fn rotation(&self, n: usize) -> RotationSystem {
        let k = self.cycle.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.cycle.iter().enumerate() {
            pos[v] = i;
        }
        let mut rot = vec![Vec::new(); n];
        let mut link = |a: usize, b: usize| {
            rot[a].push(b);
            rot[b].push(a);
        };
        for i in 0..k {
            link(self.cycle[i], self.cycle[(i + 1) % k]);
        }
        for &(a, b) in &self.chords {
            link(a, b);
        }
        for &v in &self.cycle {
            rot[v].sort_by_key(|&w| (pos[w] + k - pos[v]) % k);
        }
        RotationSystem { rot }
    }

    /// A dart on the boundary of the unbounded face of [`Self::rotation`].
    pub fn outer_dart(&self) -> (usize, usize) {
        (self.cycle[0], self.cycle[1])
    }

    /// Bounded faces, each as a vertex sequence.
    pub fn bounded_faces(&self, n: usize) -> Vec<Vec<usize>> {
        let rot = self.rotation(n);
        let faces = rot.faces();
        let outer = self.outer_dart();
        faces
            .into_iter()
            .filter(|f| !f.iter().zip(f.iter().cycle().skip(1)).any(|(&a, &b)| (a, b) == outer))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OuterplanarEmbedding {
    /// One entry per block with at least three vertices.
    pub blocks: Vec<OuterBlock>,
}

impl OuterplanarEmbedding {
    pub fn block_containing(&self, vertices: &[usize]) -> Option<&OuterBlock> {
        self.blocks.iter().find(|b| vertices.iter().all(|v| b.cycle.contains(v)))
    }

    /// Bounded faces of the whole graph.
    pub fn faces(&self, n: usize) -> Vec<Vec<usize>> {
        self.blocks.iter().flat_map(|b| b.bounded_faces(n)).collect()
    }
}

/// Certificate that a graph is not outerplanar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    /// Vertices left after series-parallel reduction, all of degree >= 3.
    K4Minor { core: Vec<usize> },
    /// Two poles joined by three internally disjoint paths of length >= 2.
    K23Subdivision { poles: (usize, usize), paths: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Outerplanarity {
    Outerplanar(OuterplanarEmbedding),
    NotOuterplanar(Obstruction),
}

impl Outerplanarity {
    pub fn is_outerplanar(&self) -> bool {
        matches!(self, Outerplanarity::Outerplanar(_))
    }

    pub fn embedding(&self) -> Option<&OuterplanarEmbedding> {
        match self {
            Outerplanarity::Outerplanar(e) => Some(e),
            Outerplanarity::NotOuterplanar(_) => None,
        }
    }
}

/// Decide outerplanarity by both routes.
pub fn is_outerplanar(g: &OrientedGraph) -> Result<Outerplanarity> {
    if g.n() > OUTERPLANAR_VERTEX_CAP {
        return Err(Error::SizeCap { op: "is_outerplanar", size: g.n(), cap: OUTERPLANAR_VERTEX_CAP });
    }
    match (find_outerplanar_obstruction(g), outerplanar_embedding(g)) {
        (None, Some(emb)) => Ok(Outerplanarity::Outerplanar(emb)),
        (Some(obs), None) => Ok(Outerplanarity::NotOuterplanar(obs)),
        (minor, emb) => Err(Error::InvalidGraph(format!(
            "outerplanarity routes disagree: minor route {}, embedding route {}",
            if minor.is_none() { "accepts" } else { "rejects" },
            if emb.is_some() { "accepts" } else { "rejects" },
        ))),
    }
}

/// Minor route: `K4` via series-parallel reduction, then `K2,3` via three
/// disjoint paths between two poles.
pub fn find_outerplanar_obstruction(g: &OrientedGraph) -> Option<Obstruction> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    while let Some(v) = alive.iter().copied().find(|&v| adj[v].len() <= 2) {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &w in &nb {
            adj[w].remove(&v);
        }
        if let [p, q] = nb[..] {
            adj[p].insert(q);
            adj[q].insert(p);
        }
        adj[v].clear();
        alive.remove(&v);
    }
    if !alive.is_empty() {
        return Some(Obstruction::K4Minor { core: alive.into_iter().collect() });
    }
    for a in 0..n {
        for b in a + 1..n {
            let paths = disjoint_paths(g, a, b, 3);
            if paths.len() == 3 {
                return Some(Obstruction::K23Subdivision { poles: (a, b), paths });
            }
        }
    }
    None
}

/// Up to `want` internally vertex-disjoint `a`-`b` paths avoiding the edge
/// `ab`, by augmenting paths on the vertex-split network.
fn disjoint_paths(g: &OrientedGraph, a: usize, b: usize, want: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    // Node 2v is v_in, 2v+1 is v_out; residual capacities keyed by arc.
    let mut cap: HashMap<(usize, usize), i32> = HashMap::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut arc = |u: usize, v: usize, c: i32, cap: &mut HashMap<(usize, usize), i32>| {
        if !cap.contains_key(&(u, v)) {
            out[u].push(v);
            out[v].push(u);
            cap.insert((v, u), *cap.get(&(v, u)).unwrap_or(&0));
        }
        *cap.entry((u, v)).or_insert(0) += c;
    };
    for v in 0..n {
        let c = if v == a || v == b { want as i32 } else { 1 };
        arc(2 * v, 2 * v + 1, c, &mut cap);
    }
    for (u, v) in g.edges() {
        if undirected(u, v) == undirected(a, b) {
            continue;
        }
        arc(2 * u + 1, 2 * v, 1, &mut cap);
        arc(2 * v + 1, 2 * u, 1, &mut cap);
    }
    let (s, t) = (2 * a + 1, 2 * b);
    let mut flow = 0;
    while flow < want {
        let mut prev = vec![usize::MAX; 2 * n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &out[u] {
                if prev[w] == usize::MAX && cap[&(u, w)] > 0 {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if prev[t] == usize::MAX {
            break;
        }
        let mut w = t;
        while w != s {
            let u = prev[w];
            *cap.get_mut(&(u, w)).unwrap() -= 1;
            *cap.get_mut(&(w, u)).unwrap() += 1;
            w = u;
        }
        flow += 1;
    }
    // Saturated vertex-to-vertex arcs carry the paths; opposite flows cancel.
    let sat = |u: usize, v: usize, cap: &HashMap<(usize, usize), i32>| cap.get(&(2 * u + 1, 2 * v)) == Some(&0);
    let used = |u: usize, v: usize, cap: &HashMap<(usize, usize), i32>| sat(u, v, cap) && !sat(v, u, cap);
    let mut paths = Vec::new();
    for &first in g.neighbors(a) {
        if first == b || !used(a, first, &cap) {
            continue;
        }
        let mut path = vec![a, first];
        let mut cur = first;
        while cur != b {
            let next = g.neighbors(cur).iter().copied().find(|&w| w != a && used(cur, w, &cap) && !path.contains(&w));
            match next {
                Some(w) => {
                    path.push(w);
                    cur = w;
                }
                None => break,
            }
        }
        if cur == b {
            paths.push(path);
        }
    }
    paths.truncate(flow);
    paths
}

/// Embedding route: a Hamiltonian cycle with non-crossing chords in every
/// nontrivial block.
pub fn outerplanar_embedding(g: &OrientedGraph) -> Option<OuterplanarEmbedding> {
    let dec = biconnected_components(g);
    let mut blocks = Vec::new();
    for block in dec.nontrivial() {
        let k = block.vertices.len();
        if block.edges.len() > 2 * k - 3 {
            return None;
        }
        blocks.push(outer_block(g, &block.vertices, &block.edges)?);
    }
    Some(OuterplanarEmbedding { blocks })
}

fn outer_block(g: &OrientedGraph, vertices: &[usize], edges: &[(usize, usize)]) -> Option<OuterBlock> {
    let in_block: HashSet<usize> = vertices.iter().copied().collect();
    let edge_set: HashSet<(usize, usize)> = edges.iter().map(|&(u, v)| undirected(u, v)).collect();
    let nb = |v: usize| -> Vec<usize> {
        g.neighbors(v).iter().copied().filter(|w| in_block.contains(w) && edge_set.contains(&undirected(v, *w))).collect()
    };
    let adj: HashMap<usize, Vec<usize>> = vertices.iter().map(|&v| (v, nb(v))).collect();
    let start = vertices[0];
    let mut path = vec![start];
    let mut on: HashSet<usize> = HashSet::from([start]);
    hamiltonian_search(&adj, &edge_set, vertices.len(), &mut path, &mut on)
}

fn hamiltonian_search(
    adj: &HashMap<usize, Vec<usize>>,
    edges: &HashSet<(usize, usize)>,
    k: usize,
    path: &mut Vec<usize>,
    on: &mut HashSet<usize>,
) -> Option<OuterBlock> {
    let last = *path.last().unwrap();
    if path.len() == k {
        // Each cycle is enumerated in one direction only.
        if path[1] > last || !adj[&last].contains(&path[0]) {
            return None;
        }
        return non_crossing_chords(path, edges).map(|chords| OuterBlock { cycle: path.clone(), chords });
    }
    for &w in &adj[&last] {
        if on.contains(&w) {
            continue;
        }
        path.push(w);
        on.insert(w);
        let found = hamiltonian_search(adj, edges, k, path, on);
        path.pop();
        on.remove(&w);
        if found.is_some() {
            return found;
        }
    }
    None
}

fn non_crossing_chords(cycle: &[usize], edges: &HashSet<(usize, usize)>) -> Option<Vec<(usize, usize)>> {
    let k = cycle.len();
    let pos: HashMap<usize, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let boundary: HashSet<(usize, usize)> = (0..k).map(|i| undirected(cycle[i], cycle[(i + 1) % k])).collect();
    let mut chords: Vec<(usize, usize)> = edges.iter().copied().filter(|e| !boundary.contains(e)).collect();
    chords.sort_unstable();
    let span = |&(u, v): &(usize, usize)| {
        let (p, q) = (pos[&u], pos[&v]);
        (p.min(q), p.max(q))
    };
    for (i, c) in chords.iter().enumerate() {
        let (a, b) = span(c);
        for d in &chords[i + 1..] {
            let (p, q) = span(d);
            if (a < p && p < b && b < q) || (p < a && a < q && q < b) {
                return None;
            }
        }
    }
    Some(chords)
}

/// Cyclic neighbour order at every vertex of a planar map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RotationSystem {
    pub rot: Vec<Vec<usize>>,
}

impl RotationSystem {
    fn successor(&self, v: usize, u: usize) -> usize {
        let r = &self.rot[v];
        let i = r.iter().position(|&w| w == u).expect("dart in rotation");
        r[(i + 1) % r.len()]
    }

    /// Faces as vertex sequences; dart `(u, v)` is followed by
    /// `(v, successor of u around v)`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.rot.len() {
            for &v in &self.rot[u] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while seen.insert((a, b)) {
                    face.push(a);
                    let c = self.successor(b, a);
                    (a, b) = (b, c);
                }
                faces.push(face);
            }
        }
        faces
    }

    fn edge_count(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Whether the rotation lists exactly the neighbours of `g` and the map
    /// satisfies Euler's formula.
    pub fn is_planar_map_of(&self, g: &OrientedGraph) -> bool {
        if self.rot.len() != g.n() || !g.is_connected() {
            return false;
        }
        let consistent = (0..g.n()).all(|v| {
            let mut r = self.rot[v].clone();
            r.sort_unstable();
            r.len() == g.degree(v) && r.iter().zip(g.neighbors(v)).all(|(a, b)| a == b)
        });
        consistent && g.n() + self.faces().len() == self.edge_count() + 2
    }
}

/// Face cycle found by the descent, with the number of shrink steps taken.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceDescent {
    /// Directed cycle `c_0 -> c_1 -> ...` bounding a face.
    pub face: Vec<usize>,
    pub steps: usize,
}

/// Well-directed face of a strongly connected outerplanar graph.
pub fn well_directed_face(g: &OrientedGraph, emb: &OuterplanarEmbedding) -> Result<FaceDescent> {
    if !g.is_strongly_connected() {
        return Err(Error::precondition("well_directed_face", "graph is not strongly connected"));
    }
    let start = find_directed_cycle(g).ok_or_else(|| Error::precondition("well_directed_face", "no directed cycle"))?;
    let block = emb
        .block_containing(&start)
        .ok_or_else(|| Error::precondition("well_directed_face", "embedding does not cover the graph"))?;
    descend_to_face(g, &block.rotation(g.n()), block.outer_dart(), &start)
}

/// Well-directed face of a strongly connected planar graph under a caller
/// supplied planar map whose unbounded face contains `outer_dart`.
pub fn well_directed_face_with_rotation(
    g: &OrientedGraph,
    rot: &RotationSystem,
    outer_dart: (usize, usize),
) -> Result<FaceDescent> {
    if !g.is_strongly_connected() {
        return Err(Error::precondition("well_directed_face", "graph is not strongly connected"));
    }
    if !rot.is_planar_map_of(g) {
        return Err(Error::precondition("well_directed_face", "rotation system is not a planar map of the graph"));
    }
    let start = find_directed_cycle(g).ok_or_else(|| Error::precondition("well_directed_face", "no directed cycle"))?;
    descend_to_face(g, rot, outer_dart, &start)
}

/// Shrink a directed cycle until it bounds a single face. At each step an
/// edge `u -> v` inside the cycle with an end on it is closed into a new
/// directed cycle by a shortest directed path `v ~> u` inside the cycle.
pub fn descend_to_face(
    g: &OrientedGraph,
    rot: &RotationSystem,
    outer_dart: (usize, usize),
    start: &[usize],
) -> Result<FaceDescent> {
    let faces = rot.faces();
    let mut dart_face: HashMap<(usize, usize), usize> = HashMap::new();
    for (f, face) in faces.iter().enumerate() {
        for i in 0..face.len() {
            dart_face.insert((face[i], face[(i + 1) % face.len()]), f);
        }
    }
    let outer = *dart_face
        .get(&outer_dart)
        .ok_or_else(|| Error::precondition("well_directed_face", "outer dart is not in the map"))?;
    let mut cycle = start.to_vec();
    let limit = rot.edge_count();
    for steps in 0..=limit {
        let k = cycle.len();
        if !(0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k])) {
            return Err(Error::precondition("well_directed_face", "cycle is not directed"));
        }
        let on_cycle: HashSet<(usize, usize)> = (0..k).map(|i| undirected(cycle[i], cycle[(i + 1) % k])).collect();
        // Faces reachable from the unbounded one without crossing the cycle.
        let mut outside = vec![false; faces.len()];
        outside[outer] = true;
        let mut queue = VecDeque::from([outer]);
        while let Some(f) = queue.pop_front() {
            let face = &faces[f];
            for i in 0..face.len() {
                let (a, b) = (face[i], face[(i + 1) % face.len()]);
                if on_cycle.contains(&undirected(a, b)) {
                    continue;
                }
                let h = dart_face[&(b, a)];
                if !outside[h] {
                    outside[h] = true;
                    queue.push_back(h);
                }
            }
        }
        let inside: Vec<usize> = (0..faces.len()).filter(|&f| !outside[f]).collect();
        if inside.len() == 1 {
            return Ok(FaceDescent { face: cycle, steps });
        }
        if inside.is_empty() {
            return Err(Error::precondition("well_directed_face", "outer dart lies on both sides of the cycle"));
        }
        let mut interior: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &f in &inside {
            let face = &faces[f];
            for i in 0..face.len() {
                interior.insert(undirected(face[i], face[(i + 1) % face.len()]));
            }
        }
        let touches: HashSet<usize> = cycle.iter().copied().collect();
        let &(p, q) = interior
            .iter()
            .find(|&&(p, q)| !on_cycle.contains(&(p, q)) && (touches.contains(&p) || touches.contains(&q)))
            .expect("an interior edge meets the cycle");
        let (u, v) = if g.has_edge(p, q) { (p, q) } else { (q, p) };
        let path = directed_path_within(g, v, u, &interior)
            .ok_or_else(|| Error::precondition("well_directed_face", "interior is not strongly connected"))?;
        // path runs v ~> u; the new cycle is u -> v ~> u.
        cycle = std::iter::once(u).chain(path[..path.len() - 1].iter().copied()).collect();
    }
    Err(Error::precondition("well_directed_face", "descent did not terminate"))
}

fn directed_path_within(g: &OrientedGraph, from: usize, to: usize, edges: &BTreeSet<(usize, usize)>) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut w = to;
            while w != from {
                w = prev[w];
                path.push(w);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.children(u) {
            if prev[w] == usize::MAX && edges.contains(&undirected(u, w)) {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Walking-together and 2-chase plays on a well-directed face, each checked
/// against the solver.
pub fn outerplanar_equilibria(cfg: &GameConfig) -> Result<EquilibriumReport> {
    let g = cfg.graph();
    if !g.is_strongly_connected() {
        return Err(Error::precondition("outerplanar_equilibria", "graph is not strongly connected"));
    }
    if g.girth_or_inf() < 4 {
        return Err(Error::precondition("outerplanar_equilibria", "girth is below 4"));
    }
    let emb = match is_outerplanar(g)? {
        Outerplanarity::Outerplanar(emb) => emb,
        Outerplanarity::NotOuterplanar(obs) => {
            return Err(Error::precondition("outerplanar_equilibria", format!("graph is not outerplanar: {obs:?}")))
        }
    };
    let face = well_directed_face(g, &emb)?.face;
    let vt = value_iteration(cfg, DEFAULT_EPSILON)?;
    let validate = |play: OnPathPlay| -> Option<CycleWitness> {
        let check = check_profile_equilibrium(cfg, &vt, &play);
        let walk = play.states().iter().map(|s| s.x).collect();
        check.is_equilibrium.then(|| CycleWitness { walk, play, worst_gain: check.worst_gain() })
    };
    let walking_together = [true, false].into_iter().find_map(|d| validate(walking_together_play(cfg, &face, d)));
    let chase = [true, false].into_iter().find_map(|d| validate(chase_play(cfg, &face, 2, d)));
    Ok(report(cfg, &vt, walking_together, chase))
}

fn report(
    cfg: &GameConfig,
    vt: &ValueTable,
    walking_together: Option<CycleWitness>,
    chase: Option<CycleWitness>,
) -> EquilibriumReport {
    let (static_witness, static_worst_gain) = match find_static(cfg, vt) {
        Some((s, gain)) => (Some(s), Some(gain)),
        None => (None, None),
    };
    EquilibriumReport {
        method: Method::Structural,
        edge_decisive: all_edges_decisive(cfg, vt),
        static_witness,
        static_worst_gain,
        walking_together,
        chase_k: 2,
        chase,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> OrientedGraph {
        OrientedGraph::from_indexed(n, e).unwrap()
    }

    fn cycle_edges(k: usize) -> Vec<(usize, usize)> {
        (0..k).map(|i| (i, (i + 1) % k)).collect()
    }

    #[test]
    fn cycles_are_outerplanar_and_k4_is_not() {
        let c4 = g(4, &cycle_edges(4));
        let r = is_outerplanar(&c4).unwrap();
        assert_eq!(r.embedding().unwrap().blocks, vec![OuterBlock { cycle: vec![0, 1, 2, 3], chords: vec![] }]);
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(matches!(is_outerplanar(&k4).unwrap(), Outerplanarity::NotOuterplanar(Obstruction::K4Minor { .. })));
    }

    #[test]
    fn k23_is_caught_with_three_paths() {
        let k23 = g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        match find_outerplanar_obstruction(&k23) {
            Some(Obstruction::K23Subdivision { poles, paths }) => {
                assert_eq!(poles, (0, 1));
                assert_eq!(paths.len(), 3);
                assert!(paths.iter().all(|p| p.len() == 3));
            }
            other => panic!("{other:?}"),
        }
        assert!(outerplanar_embedding(&k23).is_none());
    }

    #[test]
    fn fan_faces_are_triangles() {
        // Fan 0-1-2-3-4 with chords from 0: three triangular faces.
        let f = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3)]);
        let emb = outerplanar_embedding(&f).unwrap();
        let faces = emb.faces(5);
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn routes_agree_on_all_graphs_up_to_six_vertices() {
        let pairs: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
        for n in 1..=6 {
            let pairs: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(_, b)| b < n).collect();
            for mask in 0u32..1 << pairs.len() {
                let e: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                let h = g(n, &e);
                if !h.is_connected() {
                    continue;
                }
                assert_eq!(find_outerplanar_obstruction(&h).is_none(), outerplanar_embedding(&h).is_some(), "{e:?}");
            }
        }
    }

    #[test]
    fn descent_shrinks_the_outer_boundary() {
        // Directed 6-cycle with chord 0 -> 3: faces 0,1,2,3 and 3,4,5,0.
        let h = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        let emb = outerplanar_embedding(&h).unwrap();
        let block = &emb.blocks[0];
        let d = descend_to_face(&h, &block.rotation(6), block.outer_dart(), &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(d.steps, 1);
        assert_eq!(d.face, vec![0, 3, 4, 5]);
    }

    #[test]
    fn shared_edge_squares_give_an_inner_face() {
        let h = g(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 0)]);
        let emb = outerplanar_embedding(&h).unwrap();
        let face = well_directed_face(&h, &emb).unwrap().face;
        let mut sorted = face.clone();
        sorted.sort_unstable();
        assert!(sorted == vec![0, 1, 2, 3] || sorted == vec![0, 1, 4, 5]);
    }

    #[test]
    fn composite_supports_both_cycle_equilibria() {
        let h = g(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (5, 6), (6, 0)]);
        for delta in [0.3, 0.5] {
            let cfg = GameConfig::new(h.clone(), delta).unwrap();
            let r = outerplanar_equilibria(&cfg).unwrap();
            assert!(r.walking_together.is_some() && r.chase.is_some(), "delta {delta}");
        }
    }
}
