//! Shapley value iteration for the discounted pursuit game and the
//! quantities derived from the value table.
//!
//! [`ValueTable::get`] is the Bellman value `V(s)`: the discounted payoff of
//! the rounds after the first move out of `s`. [`ValueTable::payoff`] is the
//! full payoff `W(s) = (1 - delta) r(s) + delta V(s)`, which also counts the
//! round spent at `s` and is the value of the game started at `s`.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{GameConfig, GameState, MarkovStrategy, MixedMove, Player};
use crate::matrix::solve_matrix_game;

/// Default stopping accuracy of value iteration.
pub const DEFAULT_EPSILON: f64 = 1e-9;
/// A payoff above this is treated as strictly positive.
pub const DECISIVE_TOL: f64 = 1e-6;
/// Largest deviation gain still accepted as "no profitable deviation".
pub const DEVIATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct ValueTable {
    n: usize,
    delta: f64,
    epsilon: f64,
    values: Vec<f64>,
    rewards: Vec<f64>,
    residuals: Vec<f64>,
}

impl ValueTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Bellman value of `s` to player `x`.
    pub fn get(&self, s: GameState) -> f64 {
        self.values[s.x * self.n + s.y]
    }

    /// Full game value of `s` to player `x`, including the current round.
    pub fn payoff(&self, s: GameState) -> f64 {
        let i = s.x * self.n + s.y;
        (1.0 - self.delta) * self.rewards[i] + self.delta * self.values[i]
    }

    /// Bellman values in state-index order `x * n + y`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sup-norm change of each sweep, in order.
    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn sweeps(&self) -> usize {
        self.residuals.len()
    }

    /// Largest `|V(u,v) + V(v,u)|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for u in 0..self.n {
            for v in 0..self.n {
                worst = worst.max((self.values[u * self.n + v] + self.values[v * self.n + u]).abs());
            }
        }
        worst
    }

    /// Largest `|V(u,u)|`.
    pub fn diagonal_defect(&self) -> f64 {
        (0..self.n).map(|u| self.values[u * self.n + u].abs()).fold(0.0, f64::max)
    }
}

/// Stage game at `s`: rows are `x`'s moves, columns `y`'s, entries the full
/// payoff `W` of the resulting state.
pub fn stage_game(cfg: &GameConfig, vt: &ValueTable, s: GameState) -> DMatrix<f64> {
    let (bx, by) = (cfg.ball(s.x), cfg.ball(s.y));
    DMatrix::from_fn(bx.len(), by.len(), |i, j| vt.payoff(GameState::new(bx[i], by[j])))
}

fn stage_value(cfg: &GameConfig, values: &[f64], rewards: &[f64], s: GameState) -> f64 {
    let (bx, by) = (cfg.ball(s.x), cfg.ball(s.y));
    let d = cfg.delta();
    let n = cfg.n();
    let a = DMatrix::from_fn(bx.len(), by.len(), |i, j| {
        let k = bx[i] * n + by[j];
        (1.0 - d) * rewards[k] + d * values[k]
    });
    solve_matrix_game(&a).value
}

/// Jacobi value iteration from `V = 0`, stopping once a sweep changes no
/// entry by more than `epsilon (1 - delta) / delta`, which bounds the
/// distance to the fixed point by `epsilon`.
pub fn value_iteration(cfg: &GameConfig, epsilon: f64) -> Result<ValueTable> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("accuracy {epsilon} must be positive")));
    }
    let delta = cfg.delta();
    let m = cfg.state_count();
    let rewards: Vec<f64> = cfg.states().map(|s| cfg.round_payoff(s)).collect();
    let mut values = vec![0.0; m];
    let mut residuals = Vec::new();
    let threshold = epsilon * (1.0 - delta) / delta;
    // Contraction reaches the threshold well within this many sweeps.
    let max_sweeps = 100 + ((threshold / 2.0).ln() / delta.ln()).ceil().max(0.0) as usize;
    loop {
        let next: Vec<f64> = (0..m)
            .into_par_iter()
            .map(|i| stage_value(cfg, &values, &rewards, cfg.state(i)))
            .collect();
        let change = next.iter().zip(&values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        values = next;
        residuals.push(change);
        if change <= threshold || residuals.len() >= max_sweeps {
            break;
        }
    }
    Ok(ValueTable { n: cfg.n(), delta, epsilon, values, rewards, residuals })
}

/// Optimal stationary strategies of both players, read off the stage games.
pub fn optimal_stage_strategies(cfg: &GameConfig, vt: &ValueTable) -> Result<(MarkovStrategy, MarkovStrategy)> {
    check_table(cfg, vt)?;
    let solved: Vec<(MixedMove, MixedMove)> = cfg
        .states()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| {
            let sol = solve_matrix_game(&stage_game(cfg, vt, s));
            let mx = cfg.ball(s.x).iter().copied().zip(sol.row_strategy).collect();
            let my = cfg.ball(s.y).iter().copied().zip(sol.col_strategy).collect();
            (MixedMove::new(mx).expect("normalised"), MixedMove::new(my).expect("normalised"))
        })
        .collect();
    let (mx, my): (Vec<_>, Vec<_>) = solved.into_iter().unzip();
    Ok((MarkovStrategy::new(cfg, Player::X, mx)?, MarkovStrategy::new(cfg, Player::Y, my)?))
}

fn check_table(cfg: &GameConfig, vt: &ValueTable) -> Result<()> {
    if vt.n != cfg.n() || (vt.delta - cfg.delta()).abs() > 0.0 {
        return Err(Error::InvalidParameter("value table does not belong to this game".into()));
    }
    Ok(())
}

/// Moves of `player` onto vertices that are not children of any vertex in
/// the opponent's closed ball. Needs strong connectivity, girth at least 6,
/// and a non-adjacent state.
pub fn safe_move_set(cfg: &GameConfig, s: GameState, player: Player) -> Result<Vec<usize>> {
    let g = cfg.graph();
    if !g.is_strongly_connected() {
        return Err(Error::precondition("safe_move_set", "graph is not strongly connected"));
    }
    if g.girth_or_inf() < 6 {
        return Err(Error::precondition("safe_move_set", "girth is below 6"));
    }
    if g.adjacent(s.x, s.y) {
        return Err(Error::precondition("safe_move_set", "players are adjacent"));
    }
    let (own, opp) = (s.position(player), s.position(player.other()));
    let reach = cfg.ball(opp);
    Ok(cfg
        .ball(own)
        .iter()
        .copied()
        .filter(|&d| !g.parents(d).iter().any(|p| reach.binary_search(p).is_ok()))
        .collect())
}

/// An edge `u -> v` is decisive when `u` strictly wins the game started at `(u, v)`.
pub fn is_decisive_edge(cfg: &GameConfig, vt: &ValueTable, u: usize, v: usize) -> Result<bool> {
    check_table(cfg, vt)?;
    if !cfg.graph().has_edge(u, v) {
        return Err(Error::InvalidParameter(format!(
            "{} -> {} is not an edge",
            cfg.graph().name(u),
            cfg.graph().name(v)
        )));
    }
    Ok(vt.payoff(GameState::new(u, v)) > DECISIVE_TOL)
}

/// Whether every edge is decisive.
pub fn all_edges_decisive(cfg: &GameConfig, vt: &ValueTable) -> bool {
    cfg.graph().edges().all(|(u, v)| vt.payoff(GameState::new(u, v)) > DECISIVE_TOL)
}

/// Unique root in (0, 1) of `g^(a-2) + g - 1`, for `a >= 3`.
pub fn gamma(a: u32) -> Result<f64> {
    if a < 3 {
        return Err(Error::InvalidParameter(format!("gamma needs a >= 3, got {a}")));
    }
    let f = |g: f64| g.powi(a as i32 - 2) + g - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

/// Optimal values of the single-agent problem faced by `responder` when the
/// opponent plays a fixed stationary strategy. Values are full payoffs to
/// the responder.
#[derive(Debug, Clone)]
pub struct ResponseTable {
    pub responder: Player,
    n: usize,
    values: Vec<f64>,
}

impl ResponseTable {
    pub fn get(&self, s: GameState) -> f64 {
        self.values[s.x * self.n + s.y]
    }
}

pub fn best_response_value(cfg: &GameConfig, opponent: &MarkovStrategy, epsilon: f64) -> Result<ResponseTable> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("accuracy {epsilon} must be positive")));
    }
    let responder = opponent.player().other();
    let d = cfg.delta();
    let sign = if responder == Player::X { 1.0 } else { -1.0 };
    let m = cfg.state_count();
    let rewards: Vec<f64> = cfg.states().map(|s| sign * cfg.round_payoff(s)).collect();
    // cont[i] is the responder's Bellman value; the full payoff adds the current round.
    let mut cont = vec![0.0; m];
    let threshold = epsilon * (1.0 - d) / d;
    loop {
        let next: Vec<f64> = (0..m)
            .into_par_iter()
            .map(|i| {
                let s = cfg.state(i);
                let opp = opponent.at(cfg, s);
                cfg.ball(s.position(responder))
                    .iter()
                    .map(|&a| {
                        opp.support()
                            .iter()
                            .map(|&(b, p)| {
                                let t = match responder {
                                    Player::X => GameState::new(a, b),
                                    Player::Y => GameState::new(b, a),
                                };
                                let k = cfg.index(t);
                                p * ((1.0 - d) * rewards[k] + d * cont[k])
                            })
                            .sum::<f64>()
                    })
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        let change = next.iter().zip(&cont).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        cont = next;
        if change <= threshold {
            break;
        }
    }
    let values = (0..m).map(|k| (1.0 - d) * rewards[k] + d * cont[k]).collect();
    Ok(ResponseTable { responder, n: cfg.n(), values })
}
