//! Pure on-path plays and the one-shot deviation test against the value table.
//!
//! A play is a lasso: a prefix followed by a cycle of states, each state
//! reached from the previous one by a joint move. Off the path both players
//! fall back to optimal play, so a deviation from state `s` to `t` is worth
//! `W(t)` to the deviator. The profile is an equilibrium iff no single
//! deviation gains more than [`DEVIATION_TOL`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{GameConfig, GameState, Player};
use crate::solver::{ValueTable, DEVIATION_TOL};

/// A lasso of states: after the last state, play returns to `states[cycle_start]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnPathPlay {
    states: Vec<GameState>,
    cycle_start: usize,
}

impl OnPathPlay {
    /// From `(state, joint move)` steps: each move must equal the next step's
    /// state, and the last move must return to some earlier step.
    pub fn from_steps(cfg: &GameConfig, steps: &[(GameState, GameState)]) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::MalformedPath("no steps".into()));
        }
        for w in steps.windows(2) {
            if w[0].1 != w[1].0 {
                return Err(Error::MalformedPath("a move does not lead to the next state".into()));
            }
        }
        let last = steps.last().unwrap().1;
        let Some(cycle_start) = steps.iter().position(|&(s, _)| s == last) else {
            return Err(Error::MalformedPath("play does not close into a cycle".into()));
        };
        let states: Vec<GameState> = steps.iter().map(|&(s, _)| s).collect();
        Self::new(cfg, states, cycle_start)
    }

    /// Validates that consecutive states are joint moves within unit balls.
    pub fn new(cfg: &GameConfig, states: Vec<GameState>, cycle_start: usize) -> Result<Self> {
        if states.is_empty() || cycle_start >= states.len() {
            return Err(Error::MalformedPath("empty play or cycle start out of range".into()));
        }
        let n = cfg.n();
        if states.iter().any(|s| s.x >= n || s.y >= n) {
            return Err(Error::MalformedPath("state outside the graph".into()));
        }
        let play = Self { states, cycle_start };
        for i in 0..play.states.len() {
            let (a, b) = (play.states[i], play.next(i));
            if cfg.ball(a.x).binary_search(&b.x).is_err() || cfg.ball(a.y).binary_search(&b.y).is_err() {
                return Err(Error::MalformedPath(format!("step {i} leaves a closed unit ball")));
            }
        }
        Ok(play)
    }

    /// Both players stay at `s` forever.
    pub fn stationary(cfg: &GameConfig, s: GameState) -> Result<Self> {
        Self::new(cfg, vec![s], 0)
    }

    /// Pure cycle through `states`, returning to the first.
    pub fn cycle(cfg: &GameConfig, states: Vec<GameState>) -> Result<Self> {
        Self::new(cfg, states, 0)
    }

    pub fn states(&self) -> &[GameState] {
        &self.states
    }

    pub fn cycle_start(&self) -> usize {
        self.cycle_start
    }

    /// State reached by the joint move out of step `i`.
    pub fn next(&self, i: usize) -> GameState {
        if i + 1 < self.states.len() {
            self.states[i + 1]
        } else {
            self.states[self.cycle_start]
        }
    }

    /// Continuation value `C_i` of step `i`: the discounted payoff, to `x`,
    /// of the rounds after the move out of step `i`.
    pub fn continuation_values(&self, cfg: &GameConfig) -> Vec<f64> {
        let d = cfg.delta();
        let len = self.states.len();
        let r = |i: usize| cfg.round_payoff(self.next(i));
        // On the cycle, C_i = (1-d) r_i + d C_{i+1}; unroll once around it.
        let mut c = vec![0.0; len];
        let mut acc = 0.0;
        let mut weight = 1.0;
        for i in self.cycle_start..len {
            acc += weight * (1.0 - d) * r(i);
            weight *= d;
        }
        c[self.cycle_start] = acc / (1.0 - weight);
        let succ = |i: usize| if i + 1 < len { i + 1 } else { self.cycle_start };
        for i in (0..len).rev().filter(|&i| i != self.cycle_start) {
            c[i] = (1.0 - d) * r(i) + d * c[succ(i)];
        }
        c
    }

    /// Full payoff to `x` of following the play from its first state.
    pub fn payoff(&self, cfg: &GameConfig) -> f64 {
        let c = self.continuation_values(cfg);
        let d = cfg.delta();
        (1.0 - d) * cfg.round_payoff(self.states[0]) + d * c[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Deviation {
    pub step: usize,
    pub player: Player,
    /// Vertex the deviator moves to instead.
    pub to: usize,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileCheck {
    pub is_equilibrium: bool,
    /// Largest deviation gain, or `None` if no player has an alternative move.
    pub worst: Option<Deviation>,
}

impl ProfileCheck {
    pub fn worst_gain(&self) -> f64 {
        self.worst.map_or(f64::NEG_INFINITY, |d| d.gain)
    }
}

/// One-shot deviation test of a pure on-path play backed by optimal
/// off-path punishment.
pub fn check_profile_equilibrium(cfg: &GameConfig, vt: &ValueTable, play: &OnPathPlay) -> ProfileCheck {
    let cont = play.continuation_values(cfg);
    let mut worst: Option<Deviation> = None;
    let mut consider = |dev: Deviation| {
        if worst.is_none_or(|w| dev.gain > w.gain) {
            worst = Some(dev);
        }
    };
    for (i, &s) in play.states.iter().enumerate() {
        let mv = play.next(i);
        let on_path = cont[i];
        for &d in cfg.ball(s.x) {
            if d != mv.x {
                let gain = vt.payoff(GameState::new(d, mv.y)) - on_path;
                consider(Deviation { step: i, player: Player::X, to: d, gain });
            }
        }
        for &d in cfg.ball(s.y) {
            if d != mv.y {
                let gain = on_path - vt.payoff(GameState::new(mv.x, d));
                consider(Deviation { step: i, player: Player::Y, to: d, gain });
            }
        }
    }
    ProfileCheck { is_equilibrium: worst.is_none_or(|w| w.gain <= DEVIATION_TOL), worst }
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
    fn continuation_of_a_lasso_matches_unrolled_sum() {
        let g = OrientedGraph::from_indexed(3, &[(0, 1), (1, 2)]).unwrap();
        let cfg = GameConfig::new(g, 0.6).unwrap();
        let states = vec![
            GameState::new(0, 2),
            GameState::new(0, 1),
            GameState::new(1, 1),
            GameState::new(1, 0),
        ];
        let play = OnPathPlay::new(&cfg, states, 1).unwrap();
        let c = play.continuation_values(&cfg);
        // Brute force: sum 2000 rounds.
        for (i, &ci) in c.iter().enumerate() {
            let mut idx = i;
            let mut acc = 0.0;
            let mut w = 1.0 - cfg.delta();
            for _ in 0..2000 {
                let nxt = play.next(idx);
                acc += w * cfg.round_payoff(nxt);
                w *= cfg.delta();
                idx = if idx + 1 < play.states().len() { idx + 1 } else { play.cycle_start() };
            }
            assert!((acc - ci).abs() < 1e-12, "step {i}: {acc} vs {ci}");
        }
    }

    #[test]
    fn malformed_steps_are_rejected() {
        let cfg = cycle(4, 0.5);
        let s = |x, y| GameState::new(x, y);
        assert!(OnPathPlay::from_steps(&cfg, &[(s(0, 0), s(1, 1)), (s(2, 2), s(0, 0))]).is_err());
        assert!(OnPathPlay::from_steps(&cfg, &[(s(0, 0), s(1, 1))]).is_err());
        assert!(OnPathPlay::from_steps(&cfg, &[(s(0, 0), s(2, 2)), (s(2, 2), s(0, 0))]).is_err());
        let ok = OnPathPlay::from_steps(&cfg, &[(s(0, 0), s(3, 3)), (s(3, 3), s(2, 2)), (s(2, 2), s(3, 3))]).unwrap();
        assert_eq!(ok.cycle_start(), 1);
    }

    #[test]
    fn walking_together_on_the_four_cycle() {
        let cfg = cycle(4, 0.5);
        let vt = value_iteration(&cfg, DEFAULT_EPSILON).unwrap();
        let parents: Vec<GameState> = [0, 3, 2, 1].iter().map(|&v| GameState::new(v, v)).collect();
        let check = check_profile_equilibrium(&cfg, &vt, &OnPathPlay::cycle(&cfg, parents).unwrap());
        assert!(check.is_equilibrium, "{check:?}");
        let stay = OnPathPlay::stationary(&cfg, GameState::new(0, 0)).unwrap();
        assert!(!check_profile_equilibrium(&cfg, &vt, &stay).is_equilibrium);
    }
}
