//! Pure-strategy structure of the game.
//!
//! `F` is grown from the states where `y` sits at a parent of `x`: a state
//! joins `F` once every move of `x` can be answered by `y` with a move into
//! `F`. Each state carries the label set of `x`'s moves not yet refuted.
//! The fixed point together with its mirror image is `f_inf`.

use serde::Serialize;

use crate::game::GameState;
use crate::graph::OrientedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PureEqStructure {
    n: usize,
    /// States where `x` can be forced onto a child of `y`.
    losing: Vec<bool>,
    f_inf: Vec<bool>,
    /// Unrefuted moves of `x`; empty on every state of `f_inf` that is losing for `x`.
    labels: Vec<Vec<usize>>,
    sweeps: usize,
}

impl PureEqStructure {
    fn idx(&self, s: GameState) -> usize {
        s.x * self.n + s.y
    }

    pub fn in_f_inf(&self, s: GameState) -> bool {
        self.f_inf[self.idx(s)]
    }

    /// Whether `y` can force `x` onto a child of `y`.
    pub fn is_losing_for_x(&self, s: GameState) -> bool {
        self.losing[self.idx(s)]
    }

    pub fn label(&self, s: GameState) -> &[usize] {
        &self.labels[self.idx(s)]
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// States of `f_inf` in index order.
    pub fn f_inf_states(&self) -> Vec<GameState> {
        (0..self.n * self.n)
            .filter(|&i| self.f_inf[i])
            .map(|i| GameState::new(i / self.n, i % self.n))
            .collect()
    }
}

pub fn compute_pure_structure(g: &OrientedGraph) -> PureEqStructure {
    let n = g.n();
    let idx = |u: usize, v: usize| u * n + v;
    let balls: Vec<Vec<usize>> = (0..n).map(|v| g.ball(v)).collect();
    let mut labels: Vec<Vec<usize>> = (0..n * n).map(|i| balls[i / n].clone()).collect();
    let mut in_f: Vec<bool> = (0..n * n).map(|i| g.has_edge(i % n, i / n)).collect();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let prev = in_f.clone();
        for u in 0..n {
            for v in 0..n {
                let i = idx(u, v);
                if prev[i] {
                    continue;
                }
                labels[i].retain(|&u2| !balls[v].iter().any(|&v2| prev[idx(u2, v2)]));
                if labels[i].is_empty() {
                    in_f[i] = true;
                }
            }
        }
        if in_f == prev {
            break;
        }
    }
    for (i, label) in labels.iter_mut().enumerate() {
        if in_f[i] {
            label.clear();
        }
    }
    let f_inf = (0..n * n).map(|i| in_f[i] || in_f[idx(i % n, i / n)]).collect();
    PureEqStructure { n, losing: in_f, f_inf, labels, sweeps }
}

/// Joint moves out of `s` that keep both players on unrefuted moves and
/// stay outside `f_inf`. Empty when `s` itself is in `f_inf`.
pub fn pure_equilibrium_moves(structure: &PureEqStructure, s: GameState) -> Vec<GameState> {
    if structure.in_f_inf(s) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &a in structure.label(s) {
        for &b in structure.label(s.swapped()) {
            let t = GameState::new(a, b);
            if !structure.in_f_inf(t) {
                out.push(t);
            }
        }
    }
    out
}

/// Whether `path` follows pure equilibrium moves throughout with zero round
/// payoff at every state.
pub fn verify_pure_payoff_zero(g: &OrientedGraph, structure: &PureEqStructure, path: &[GameState]) -> bool {
    path.iter().all(|s| g.orientation(s.x, s.y) == 0 && !structure.in_f_inf(*s))
        && path.windows(2).all(|w| pure_equilibrium_moves(structure, w[0]).contains(&w[1]))
}

/// Follow the smallest pure equilibrium move from `s` for up to `steps` moves.
pub fn extract_pure_path(structure: &PureEqStructure, s: GameState, steps: usize) -> Vec<GameState> {
    let mut path = vec![s];
    let mut cur = s;
    for _ in 0..steps {
        match pure_equilibrium_moves(structure, cur).first() {
            Some(&t) => {
                path.push(t);
                cur = t;
            }
            None => break,
        }
    }
    path
}
