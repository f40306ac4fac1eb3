//! Cross-checks of the structural predicates against the solver over
//! enumerated and randomly sampled graphs.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characterize::{char4_winner, char4_winner_by_arrival, char6_classify, check_girth4_hypotheses, static_equilibrium_exists, tree_winner, WinnerVerdict};
use crate::equilibria::find_static;
use crate::game::{GameConfig, GameState};
use crate::graph::OrientedGraph;
use crate::solver::{value_iteration, ValueTable, DEFAULT_EPSILON};

/// Structural predicates the sweep can cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Predicate {
    Tree,
    Char6,
    Char4,
    /// [`char4_winner_by_arrival`].
    Char4Arrival,
    Static,
}

impl Predicate {
    pub const ALL: [Predicate; 5] =
        [Predicate::Tree, Predicate::Char6, Predicate::Char4, Predicate::Char4Arrival, Predicate::Static];

    pub fn applies(self, g: &OrientedGraph) -> bool {
        match self {
            Predicate::Tree => g.is_tree(),
            Predicate::Char6 => g.is_strongly_connected() && g.girth_or_inf() >= 6,
            Predicate::Char4 | Predicate::Char4Arrival | Predicate::Static => check_girth4_hypotheses(g, "verify").is_ok(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub x: String,
    pub y: String,
    pub structural: String,
    pub solver: String,
    pub payoff: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationRecord {
    pub graph: String,
    pub vertices: usize,
    pub delta: f64,
    pub predicate: Predicate,
    pub matched: bool,
    pub pairs_checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Smallest nonzero `|W|` among pairs the solver calls decided.
    pub min_decided_margin: Option<f64>,
    /// Largest `|W|` among pairs the solver calls drawn.
    pub max_draw_magnitude: Option<f64>,
    pub wall_ms: f64,
}

/// Edge-list label such as `0>1 1>2`.
pub fn graph_label(g: &OrientedGraph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{}>{}", g.name(u), g.name(v))).collect();
    if edges.is_empty() {
        g.names().join(",")
    } else {
        edges.join(" ")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Lexicographically smallest pair code over all relabellings.
pub fn canonical_code(g: &OrientedGraph, perms: &[Vec<usize>]) -> Vec<i8> {
    let n = g.n();
    let mut best: Option<Vec<i8>> = None;
    let mut code = Vec::with_capacity(n * n);
    for p in perms {
        // inv[i] is the vertex placed at position i.
        let mut inv = vec![0; n];
        for (v, &i) in p.iter().enumerate() {
            inv[i] = v;
        }
        code.clear();
        for i in 0..n {
            for j in i + 1..n {
                code.push(g.orientation(inv[i], inv[j]));
            }
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code.clone());
        }
    }
    best.unwrap_or_default()
}

/// Every connected oriented graph on `n` vertices, one per isomorphism class.
pub fn enumerate_connected_oriented_graphs(n: usize) -> Vec<OrientedGraph> {
    assert!((1..=6).contains(&n), "exhaustive enumeration supports 1..=6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let total = 3usize.pow(pairs.len() as u32);
    let codes: BTreeSet<Vec<i8>> = (0..total)
        .into_par_iter()
        .filter_map(|mut c| {
            let mut edges = Vec::new();
            for &(i, j) in &pairs {
                match c % 3 {
                    1 => edges.push((i, j)),
                    2 => edges.push((j, i)),
                    _ => {}
                }
                c /= 3;
            }
            let g = OrientedGraph::from_indexed(n, &edges).expect("valid by construction");
            g.is_connected().then(|| canonical_code(&g, &perms))
        })
        .collect();
    codes.into_iter().map(|code| graph_from_code(n, &code)).collect()
}

fn graph_from_code(n: usize, code: &[i8]) -> OrientedGraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            match code[k] {
                1 => edges.push((i, j)),
                -1 => edges.push((j, i)),
                _ => {}
            }
            k += 1;
        }
    }
    OrientedGraph::from_indexed(n, &edges).expect("valid code")
}

/// Random connected oriented graph on `n` vertices: a random spanning tree
/// plus `extra` attempted chords, rejecting any chord that would close a
/// cycle shorter than `min_girth`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, extra: usize, min_girth: usize) -> OrientedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push(orient(rng, order[i], order[j]));
    }
    let mut g = OrientedGraph::from_indexed(n, &edges).expect("tree");
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || g.adjacent(u, v) {
            continue;
        }
        if g.distance(u, v).unwrap_or(usize::MAX) + 1 < min_girth {
            continue;
        }
        edges.push(orient(rng, u, v));
        g = OrientedGraph::from_indexed(n, &edges).expect("fresh pair");
    }
    g
}

fn orient<R: Rng>(rng: &mut R, a: usize, b: usize) -> (usize, usize) {
    if rng.gen_bool(0.5) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Graphs on `lo..=hi` vertices satisfying some predicate's hypotheses:
/// trees, girth-4 graphs without unbalanced small cycles, and strongly
/// connected girth-6 graphs, in rotation.
pub fn sample_graphs(seed: u64, count: usize, lo: usize, hi: usize) -> Vec<OrientedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 1_000_000, "sampler failed to find qualifying graphs");
        let n = rng.gen_range(lo..=hi);
        let family = out.len() % 3;
        let g = match family {
            0 => random_graph(&mut rng, n, 0, 3),
            1 => {
                let extra = rng.gen_range(1..=n);
                random_graph(&mut rng, n, extra, 4)
            }
            _ => strongly_connected_girth6(&mut rng, n),
        };
        let ok = match family {
            0 => g.is_tree(),
            1 => Predicate::Char4.applies(&g),
            _ => Predicate::Char6.applies(&g),
        };
        if ok {
            out.push(g);
        }
    }
    out
}

/// A directed Hamiltonian cycle or, on exactly 8 vertices, sometimes a
/// strongly connected theta graph of girth 6.
fn strongly_connected_girth6<R: Rng>(rng: &mut R, n: usize) -> OrientedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    if n == 8 && rng.gen_bool(0.5) {
        // Theta graph: two hubs joined by three internally disjoint paths of
        // two inner vertices each, two of them oriented opposite ways.
        let (a, b) = (order[0], order[1]);
        let inner = &order[2..8];
        let mut edges = vec![(a, inner[0]), (inner[0], inner[1]), (inner[1], b)];
        edges.extend([(b, inner[2]), (inner[2], inner[3]), (inner[3], a)]);
        if rng.gen_bool(0.5) {
            edges.extend([(a, inner[4]), (inner[4], inner[5]), (inner[5], b)]);
        } else {
            edges.extend([(b, inner[4]), (inner[4], inner[5]), (inner[5], a)]);
        }
        return OrientedGraph::from_indexed(n, &edges).expect("theta");
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    OrientedGraph::from_indexed(n, &edges).expect("cycle")
}

/// Compare one predicate with the solver on one graph at one discount.
pub fn verify_graph(g: &OrientedGraph, vt: &ValueTable, cfg: &GameConfig, predicate: Predicate) -> VerificationRecord {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    let mut min_decided: Option<f64> = None;
    let mut max_draw: Option<f64> = None;
    let name = |v: usize| g.name(v).to_string();
    if predicate == Predicate::Static {
        let st = static_equilibrium_exists(g).expect("hypotheses checked");
        let solver = find_static(cfg, vt);
        pairs = 1;
        if st.exists != solver.is_some() {
            let at = solver.map(|(s, _)| s).or(st.witness).unwrap_or(GameState::new(0, 0));
            mismatches.push(Mismatch {
                x: name(at.x),
                y: name(at.y),
                structural: format!("static exists: {}", st.exists),
                solver: format!("static exists: {}", solver.is_some()),
                payoff: vt.payoff(at),
            });
        }
    } else {
        for s in cfg.states() {
            let w = vt.payoff(s);
            let solver = WinnerVerdict::from_payoff(w);
            let structural = match predicate {
                Predicate::Tree => tree_winner(g, s.x, s.y),
                Predicate::Char6 => char6_classify(cfg, s.x, s.y).map(|c| c.verdict),
                Predicate::Char4 => char4_winner(g, s.x, s.y),
                Predicate::Char4Arrival => char4_winner_by_arrival(g, s.x, s.y),
                Predicate::Static => unreachable!(),
            }
            .expect("hypotheses checked");
            pairs += 1;
            if solver == WinnerVerdict::Draw {
                max_draw = Some(max_draw.map_or(w.abs(), |m: f64| m.max(w.abs())));
            } else {
                min_decided = Some(min_decided.map_or(w.abs(), |m: f64| m.min(w.abs())));
            }
            if structural != solver {
                mismatches.push(Mismatch {
                    x: name(s.x),
                    y: name(s.y),
                    structural: format!("{structural:?}"),
                    solver: format!("{solver:?}"),
                    payoff: w,
                });
            }
        }
    }
    VerificationRecord {
        graph: graph_label(g),
        vertices: g.n(),
        delta: cfg.delta(),
        predicate,
        matched: mismatches.is_empty(),
        pairs_checked: pairs,
        mismatches,
        min_decided_margin: min_decided,
        max_draw_magnitude: max_draw,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Solve every graph at every discount and check all applicable predicates.
pub fn run_sweep(graphs: &[OrientedGraph], deltas: &[f64]) -> Vec<VerificationRecord> {
    let jobs: Vec<(usize, f64)> = (0..graphs.len()).flat_map(|i| deltas.iter().map(move |&d| (i, d))).collect();
    let mut records: Vec<(usize, usize, VerificationRecord)> = jobs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(job, &(i, d))| {
            let g = &graphs[i];
            let applicable: Vec<Predicate> = Predicate::ALL.into_iter().filter(|p| p.applies(g)).collect();
            let mut out = Vec::new();
            if !applicable.is_empty() {
                let cfg = GameConfig::new(g.clone(), d).expect("connected graph, valid discount");
                let vt = value_iteration(&cfg, DEFAULT_EPSILON).expect("valid accuracy");
                for (k, p) in applicable.into_iter().enumerate() {
                    out.push((job, k, verify_graph(g, &vt, &cfg, p)));
                }
            }
            out
        })
        .collect();
    records.sort_by_key(|&(job, k, _)| (job, k));
    records.into_iter().map(|(_, _, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_connected_oriented_graphs() {
        // Connected oriented graphs up to isomorphism, n = 1..5.
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_connected_oriented_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 5, 34, 535]);
    }

    #[test]
    fn sampled_graphs_meet_their_hypotheses() {
        let gs = sample_graphs(11, 9, 6, 8);
        assert_eq!(gs.len(), 9);
        assert!(gs.iter().all(|g| g.is_connected() && (6..=8).contains(&g.n())));
    }
}
