//! Solver-backed search for static, walking-together and chase equilibria.
//!
//! Candidate on-path plays are assembled from single steps that survive the
//! one-shot deviation test with zero continuation. A walking-together play
//! keeps both players on the same vertex and moves them together; a
//! `k`-chase has the chaser occupy, `k` rounds later, every vertex the
//! leader occupies. Steps are searched over all neighbours, so both
//! orientations of every cycle and all closed walks are covered. Every
//! reported witness is re-checked with [`check_profile_equilibrium`].

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::game::{GameConfig, GameState};
use crate::profile::{check_profile_equilibrium, OnPathPlay};
use crate::solver::{all_edges_decisive, ValueTable, DEVIATION_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Read off graph structure alone.
    Structural,
    /// Found by search and confirmed against the value table.
    SolverVerified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleWitness {
    /// Closed walk followed by the players, one vertex per round.
    pub walk: Vec<usize>,
    /// States of the on-path play; the play loops back to the first.
    #[serde(skip)]
    pub play: OnPathPlay,
    pub worst_gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub method: Method,
    pub edge_decisive: bool,
    pub static_witness: Option<GameState>,
    pub static_worst_gain: Option<f64>,
    pub walking_together: Option<CycleWitness>,
    pub chase_k: usize,
    pub chase: Option<CycleWitness>,
}

#[derive(Debug, Clone, Copy)]
pub struct DetectOptions {
    /// Lag of the chase; 2 by default.
    pub chase_k: usize,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self { chase_k: 2 }
    }
}

/// Search all three equilibrium types with default options.
pub fn detect_equilibria(cfg: &GameConfig, vt: &ValueTable) -> EquilibriumReport {
    detect_equilibria_with(cfg, vt, DetectOptions::default())
}

pub fn detect_equilibria_with(cfg: &GameConfig, vt: &ValueTable, opts: DetectOptions) -> EquilibriumReport {
    let (static_witness, static_worst_gain) = match find_static(cfg, vt) {
        Some((s, gain)) => (Some(s), Some(gain)),
        None => (None, None),
    };
    EquilibriumReport {
        method: Method::SolverVerified,
        edge_decisive: all_edges_decisive(cfg, vt),
        static_witness,
        static_worst_gain,
        walking_together: find_walking_together(cfg, vt),
        chase_k: opts.chase_k,
        chase: find_chase(cfg, vt, opts.chase_k),
    }
}

/// First state, in index order, where staying put forever is an equilibrium.
pub fn find_static(cfg: &GameConfig, vt: &ValueTable) -> Option<(GameState, f64)> {
    cfg.states().find_map(|s| {
        let play = OnPathPlay::stationary(cfg, s).expect("staying is always legal");
        let check = check_profile_equilibrium(cfg, vt, &play);
        check.is_equilibrium.then(|| (s, check.worst_gain()))
    })
}

/// All states supporting a static equilibrium.
pub fn static_states(cfg: &GameConfig, vt: &ValueTable) -> Vec<GameState> {
    cfg.states()
        .filter(|&s| {
            let play = OnPathPlay::stationary(cfg, s).expect("staying is always legal");
            check_profile_equilibrium(cfg, vt, &play).is_equilibrium
        })
        .collect()
}

/// Largest one-shot gain against the joint move `from -> to` when the
/// on-path continuation after the move is zero.
fn step_gain(cfg: &GameConfig, vt: &ValueTable, from: GameState, to: GameState) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    for &d in cfg.ball(from.x) {
        if d != to.x {
            worst = worst.max(vt.payoff(GameState::new(d, to.y)));
        }
    }
    for &d in cfg.ball(from.y) {
        if d != to.y {
            worst = worst.max(-vt.payoff(GameState::new(to.x, d)));
        }
    }
    worst
}

fn witness(cfg: &GameConfig, vt: &ValueTable, walk: Vec<usize>, states: Vec<GameState>) -> Option<CycleWitness> {
    let play = OnPathPlay::cycle(cfg, states).ok()?;
    let check = check_profile_equilibrium(cfg, vt, &play);
    check.is_equilibrium.then(|| CycleWitness { walk, play, worst_gain: check.worst_gain() })
}

/// Shortest walking-together cycle whose every step is sustainable.
pub fn find_walking_together(cfg: &GameConfig, vt: &ValueTable) -> Option<CycleWitness> {
    let g = cfg.graph();
    let n = g.n();
    let steps: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&p| step_gain(cfg, vt, GameState::new(u, u), GameState::new(p, p)) <= DEVIATION_TOL)
                .collect()
        })
        .collect();
    let walk = shortest_cycle(n, &steps)?;
    let states = walk.iter().map(|&v| GameState::new(v, v)).collect();
    witness(cfg, vt, walk, states)
}

/// Shortest cycle in a digraph given by successor lists, from its smallest node.
fn shortest_cycle(n: usize, succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        let mut from = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        let mut closing = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &w in &succ[u] {
                if w == s {
                    closing = Some(u);
                    break 'bfs;
                }
                if w > s && !seen[w] {
                    seen[w] = true;
                    from[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if let Some(mut u) = closing {
            let mut cyc = vec![u];
            while u != s {
                u = from[u];
                cyc.push(u);
            }
            cyc.reverse();
            if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                best = Some(cyc);
            }
        }
    }
    best
}

/// A `k`-chase along a closed walk of sustainable steps whose states are
/// pairwise distinct, so the play is induced by memoryless strategies.
pub fn find_chase(cfg: &GameConfig, vt: &ValueTable, k: usize) -> Option<CycleWitness> {
    assert!(k >= 1, "chase lag must be positive");
    let g = cfg.graph();
    // Windows are walks w_0 .. w_k without immediate returns to the same vertex;
    // the chaser stands at w_0 and the leader at w_k.
    let mut windows: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    for _ in 0..k {
        windows = windows
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                g.neighbors(last).iter().map(move |&u| {
                    let mut w2 = w.clone();
                    w2.push(u);
                    w2
                })
            })
            .collect();
    }
    windows.retain(|w| w[0] != w[k]);
    let id: BTreeMap<Vec<usize>, usize> = windows.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let state = |w: &[usize]| GameState::new(w[0], w[k]);
    let succ: Vec<Vec<usize>> = windows
        .iter()
        .map(|w| {
            let last = *w.last().unwrap();
            g.neighbors(last)
                .iter()
                .filter_map(|&u| {
                    let mut nw = w[1..].to_vec();
                    nw.push(u);
                    let &j = id.get(&nw)?;
                    let (from, to) = (state(w), state(&nw));
                    let ok = cfg.round_payoff(to) == 0.0 && step_gain(cfg, vt, from, to) <= DEVIATION_TOL;
                    ok.then_some(j)
                })
                .collect()
        })
        .collect();
    let cycle = memoryless_cycle(&windows, &succ, &state)?;
    let walk: Vec<usize> = cycle.iter().map(|&i| windows[i][0]).collect();
    let states = cycle.iter().map(|&i| state(&windows[i])).collect();
    witness(cfg, vt, walk, states)
}

/// Depth-first search for a cycle of window nodes with distinct states.
fn memoryless_cycle(
    windows: &[Vec<usize>],
    succ: &[Vec<usize>],
    state: &dyn Fn(&[usize]) -> GameState,
) -> Option<Vec<usize>> {
    let live = nodes_on_cycles(succ);
    let mut best: Option<Vec<usize>> = None;
    for start in 0..windows.len() {
        if !live[start] {
            continue;
        }
        let mut path = vec![start];
        let mut used: BTreeSet<GameState> = BTreeSet::from([state(&windows[start])]);
        dfs_cycle(start, &mut path, &mut used, windows, succ, &live, state, &mut best);
        if best.is_some() {
            break;
        }
    }
    best
}

#[allow(clippy::too_many_arguments)]
fn dfs_cycle(
    start: usize,
    path: &mut Vec<usize>,
    used: &mut BTreeSet<GameState>,
    windows: &[Vec<usize>],
    succ: &[Vec<usize>],
    live: &[bool],
    state: &dyn Fn(&[usize]) -> GameState,
    best: &mut Option<Vec<usize>>,
) {
    if best.is_some() {
        return;
    }
    let u = *path.last().unwrap();
    for &w in &succ[u] {
        if w == start {
            *best = Some(path.clone());
            return;
        }
        // Only extend through larger node ids so each cycle is found from its minimum.
        if w < start || !live[w] {
            continue;
        }
        let s = state(&windows[w]);
        if used.contains(&s) {
            continue;
        }
        used.insert(s);
        path.push(w);
        dfs_cycle(start, path, used, windows, succ, live, state, best);
        path.pop();
        used.remove(&s);
        if best.is_some() {
            return;
        }
    }
}

/// Nodes lying in a strongly connected component with at least one edge inside.
fn nodes_on_cycles(succ: &[Vec<usize>]) -> Vec<bool> {
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    for (u, list) in succ.iter().enumerate() {
        for &w in list {
            pred[w].push(u);
        }
    }
    // Kosaraju: finishing order on the graph, then components on the reverse.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((u, i)) = stack.pop() {
            if i < succ[u].len() {
                stack.push((u, i + 1));
                let w = succ[u][i];
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(u);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &pred[u] {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (0..n).map(|u| succ[u].iter().any(|&w| comp[w] == comp[u])).collect()
}

/// Walking-together play on a directed cycle `c_0 -> c_1 -> ...`, moving
/// against the edges (to parents) or along them.
pub fn walking_together_play(cfg: &GameConfig, cycle: &[usize], to_parents: bool) -> OnPathPlay {
    let mut walk = cycle.to_vec();
    if to_parents {
        walk[1..].reverse();
    }
    OnPathPlay::cycle(cfg, walk.into_iter().map(|v| GameState::new(v, v)).collect()).expect("cycle moves are legal")
}

/// `k`-chase on a directed cycle with `x` chasing `y`, moving along the edges
/// (to children) or against them.
pub fn chase_play(cfg: &GameConfig, cycle: &[usize], k: usize, to_children: bool) -> OnPathPlay {
    let mut walk = cycle.to_vec();
    if !to_children {
        walk[1..].reverse();
    }
    let l = walk.len();
    assert!(l >= k + 2, "a {k}-chase needs a cycle of length at least {}", k + 2);
    let states = (0..l).map(|i| GameState::new(walk[i], walk[(i + k) % l])).collect();
    OnPathPlay::cycle(cfg, states).expect("cycle moves are legal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OrientedGraph;
    use crate::solver::{value_iteration, DEFAULT_EPSILON};

    fn cycle(k: usize, delta: f64) -> GameConfig {
        let e: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        GameConfig::new(OrientedGraph::from_indexed(k, &e).unwrap(), delta).unwrap()
    }

    #[test]
    fn four_cycle_has_cycle_based_but_no_static_equilibria() {
        let cfg = cycle(4, 0.5);
        let vt = value_iteration(&cfg, DEFAULT_EPSILON).unwrap();
        let r = detect_equilibria(&cfg, &vt);
        assert!(r.static_witness.is_none());
        assert!(r.walking_together.is_some());
        assert!(r.chase.is_some());
    }

    #[test]
    fn explicit_cycle_plays_validate_on_the_five_cycle() {
        let cfg = cycle(5, 0.3);
        let vt = value_iteration(&cfg, DEFAULT_EPSILON).unwrap();
        let c: Vec<usize> = (0..5).collect();
        assert!(check_profile_equilibrium(&cfg, &vt, &walking_together_play(&cfg, &c, true)).is_equilibrium);
        assert!(check_profile_equilibrium(&cfg, &vt, &chase_play(&cfg, &c, 2, true)).is_equilibrium);
    }
}
