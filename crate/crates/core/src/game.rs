//! Game configuration, states, Markov strategies and profile evaluation.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::OrientedGraph;

/// Tolerance on probability vectors.
pub const PROB_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Player {
    X,
    Y,
}

impl Player {
    pub fn other(self) -> Self {
        match self {
            Player::X => Player::Y,
            Player::Y => Player::X,
        }
    }
}

/// Positions of both players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GameState {
    pub x: usize,
    pub y: usize,
}

impl GameState {
    pub fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }

    pub fn swapped(self) -> Self {
        Self { x: self.y, y: self.x }
    }

    pub fn position(self, p: Player) -> usize {
        match p {
            Player::X => self.x,
            Player::Y => self.y,
        }
    }
}

/// A connected oriented graph with a discount factor in (0, 1).
#[derive(Debug, Clone)]
pub struct GameConfig {
    graph: OrientedGraph,
    delta: f64,
    balls: Vec<Vec<usize>>,
}

impl GameConfig {
    pub fn new(graph: OrientedGraph, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("discount factor {delta} is not in (0, 1)")));
        }
        if graph.n() == 0 {
            return Err(Error::InvalidGraph("empty graph".into()));
        }
        if !graph.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        let balls = (0..graph.n()).map(|v| graph.ball(v)).collect();
        Ok(Self { graph, delta, balls })
    }

    /// Same graph, different discount factor.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Self::new(self.graph.clone(), delta)
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn state_count(&self) -> usize {
        self.n() * self.n()
    }

    pub fn index(&self, s: GameState) -> usize {
        s.x * self.n() + s.y
    }

    pub fn state(&self, i: usize) -> GameState {
        GameState::new(i / self.n(), i % self.n())
    }

    pub fn states(&self) -> impl Iterator<Item = GameState> + '_ {
        (0..self.state_count()).map(|i| self.state(i))
    }

    /// Closed unit ball of `v`, sorted.
    pub fn ball(&self, v: usize) -> &[usize] {
        &self.balls[v]
    }

    pub fn round_payoff(&self, s: GameState) -> f64 {
        round_payoff(&self.graph, s)
    }

    /// Parse `x` and `y` vertex names into a state.
    pub fn state_by_name(&self, x: &str, y: &str) -> Result<GameState> {
        Ok(GameState::new(self.graph.vertex_or_err(x)?, self.graph.vertex_or_err(y)?))
    }
}

/// Payoff to `x` of one round spent in `s`: `+1` if `x -> y`, `-1` if `y -> x`.
pub fn round_payoff(g: &OrientedGraph, s: GameState) -> f64 {
    f64::from(g.orientation(s.x, s.y))
}

/// A probability distribution over destination vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedMove {
    support: Vec<(usize, f64)>,
}

impl MixedMove {
    /// Drops zero entries, merges duplicates; fails on negative mass or a bad total.
    pub fn new(mut entries: Vec<(usize, f64)>) -> Result<Self> {
        if entries.iter().any(|&(_, p)| !(p >= -PROB_TOL) || !p.is_finite()) {
            return Err(Error::InvalidParameter("negative or non-finite probability".into()));
        }
        let total: f64 = entries.iter().map(|&(_, p)| p).sum();
        if (total - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidParameter(format!("probabilities sum to {total}, not 1")));
        }
        entries.sort_by_key(|&(v, _)| v);
        let mut support: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for (v, p) in entries {
            match support.last_mut() {
                Some(last) if last.0 == v => last.1 += p,
                _ => support.push((v, p)),
            }
        }
        support.retain(|&(_, p)| p > 0.0);
        Ok(Self { support })
    }

    pub fn pure(v: usize) -> Self {
        Self { support: vec![(v, 1.0)] }
    }

    /// Entries with positive probability, sorted by vertex.
    pub fn support(&self) -> &[(usize, f64)] {
        &self.support
    }

    pub fn prob(&self, v: usize) -> f64 {
        self.support.iter().find(|&&(w, _)| w == v).map_or(0.0, |&(_, p)| p)
    }

    pub fn is_pure(&self) -> bool {
        self.support.len() == 1
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let mut t: f64 = rng.gen();
        for &(v, p) in &self.support {
            if t < p {
                return v;
            }
            t -= p;
        }
        self.support.last().expect("nonempty support").0
    }
}

/// A stationary strategy: one mixed move per state.
#[derive(Debug, Clone)]
pub struct MarkovStrategy {
    player: Player,
    moves: Vec<MixedMove>,
}

impl MarkovStrategy {
    /// Checks every move stays inside the player's closed unit ball.
    pub fn new(cfg: &GameConfig, player: Player, moves: Vec<MixedMove>) -> Result<Self> {
        if moves.len() != cfg.state_count() {
            return Err(Error::InvalidParameter(format!(
                "strategy has {} entries for {} states",
                moves.len(),
                cfg.state_count()
            )));
        }
        for (i, m) in moves.iter().enumerate() {
            let s = cfg.state(i);
            let at = s.position(player);
            if let Some(&(v, _)) = m.support().iter().find(|&&(v, _)| cfg.ball(at).binary_search(&v).is_err()) {
                return Err(Error::InvalidParameter(format!(
                    "move from {} to non-neighbour {}",
                    cfg.graph().name(at),
                    cfg.graph().name(v)
                )));
            }
        }
        Ok(Self { player, moves })
    }

    /// Deterministic strategy given by a move function.
    pub fn pure(cfg: &GameConfig, player: Player, choose: impl Fn(GameState) -> usize) -> Result<Self> {
        let moves = cfg.states().map(|s| MixedMove::pure(choose(s))).collect();
        Self::new(cfg, player, moves)
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn at(&self, cfg: &GameConfig, s: GameState) -> &MixedMove {
        &self.moves[cfg.index(s)]
    }

    pub fn moves(&self) -> &[MixedMove] {
        &self.moves
    }

    /// Replace the move at one state.
    pub fn set(&mut self, cfg: &GameConfig, s: GameState, m: MixedMove) -> Result<()> {
        let at = s.position(self.player);
        if m.support().iter().any(|&(v, _)| cfg.ball(at).binary_search(&v).is_err()) {
            return Err(Error::InvalidParameter("move leaves the closed unit ball".into()));
        }
        let i = cfg.index(s);
        self.moves[i] = m;
        Ok(())
    }
}

fn check_players(phi_x: &MarkovStrategy, phi_y: &MarkovStrategy) -> Result<()> {
    if phi_x.player != Player::X || phi_y.player != Player::Y {
        return Err(Error::InvalidParameter("strategies passed for the wrong players".into()));
    }
    Ok(())
}

/// Expected discounted payoff to `x` of the profile from `s0`, counting the
/// round spent at `s0`. Solves the linear system of the induced Markov chain.
pub fn evaluate_profile(cfg: &GameConfig, phi_x: &MarkovStrategy, phi_y: &MarkovStrategy, s0: GameState) -> Result<f64> {
    check_players(phi_x, phi_y)?;
    let m = cfg.state_count();
    let delta = cfg.delta();
    let mut p = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        let s = cfg.state(i);
        for &(a, pa) in phi_x.moves[i].support() {
            for &(b, pb) in phi_y.moves[i].support() {
                p[(i, cfg.index(GameState::new(a, b)))] += pa * pb;
            }
        }
        debug_assert!(!cfg.ball(s.x).is_empty());
    }
    let r = DVector::from_iterator(m, cfg.states().map(|s| cfg.round_payoff(s)));
    // Continuation c satisfies c = P((1 - delta) r + delta c).
    let lhs = DMatrix::<f64>::identity(m, m) - &p * delta;
    let rhs = (&p * &r) * (1.0 - delta);
    let c = lhs
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::InvalidParameter("singular profile system".into()))?;
    let i0 = cfg.index(s0);
    Ok((1.0 - delta) * r[i0] + delta * c[i0])
}

/// One sampled play: before each move the game stops with probability
/// `1 - delta`, and the payoff is the round payoff of the final state.
pub fn simulate_playout<R: Rng + ?Sized>(
    cfg: &GameConfig,
    phi_x: &MarkovStrategy,
    phi_y: &MarkovStrategy,
    s0: GameState,
    rng: &mut R,
) -> f64 {
    let mut s = s0;
    loop {
        if rng.gen::<f64>() >= cfg.delta() {
            return cfg.round_payoff(s);
        }
        let i = cfg.index(s);
        s = GameState::new(phi_x.moves[i].sample(rng), phi_y.moves[i].sample(rng));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path3() -> GameConfig {
        let g = OrientedGraph::from_indexed(3, &[(0, 1), (1, 2)]).unwrap();
        GameConfig::new(g, 0.5).unwrap()
    }

    #[test]
    fn round_payoff_signs() {
        let cfg = path3();
        assert_eq!(cfg.round_payoff(GameState::new(0, 1)), 1.0);
        assert_eq!(cfg.round_payoff(GameState::new(1, 0)), -1.0);
        assert_eq!(cfg.round_payoff(GameState::new(0, 2)), 0.0);
        assert_eq!(cfg.round_payoff(GameState::new(1, 1)), 0.0);
    }

    #[test]
    fn rejects_bad_configs() {
        let g = OrientedGraph::from_indexed(3, &[(0, 1)]).unwrap();
        assert!(GameConfig::new(g, 0.5).is_err());
        let g = OrientedGraph::from_indexed(2, &[(0, 1)]).unwrap();
        assert!(GameConfig::new(g.clone(), 1.0).is_err());
        assert!(GameConfig::new(g, 0.0).is_err());
    }

    #[test]
    fn staying_put_forever_pays_the_round_payoff() {
        let cfg = path3();
        let stay_x = MarkovStrategy::pure(&cfg, Player::X, |s| s.x).unwrap();
        let stay_y = MarkovStrategy::pure(&cfg, Player::Y, |s| s.y).unwrap();
        for s in cfg.states() {
            let v = evaluate_profile(&cfg, &stay_x, &stay_y, s).unwrap();
            assert!((v - cfg.round_payoff(s)).abs() < 1e-12);
        }
    }

    #[test]
    fn geometric_oracle_for_a_single_transition() {
        // x moves 0 -> 1 once and stays, y stays at 2: payoff (1-d)*0 + d*1.
        let cfg = path3();
        let phi_x = MarkovStrategy::pure(&cfg, Player::X, |s| if s.x == 0 { 1 } else { s.x }).unwrap();
        let phi_y = MarkovStrategy::pure(&cfg, Player::Y, |s| s.y).unwrap();
        let v = evaluate_profile(&cfg, &phi_x, &phi_y, GameState::new(0, 2)).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_moves_outside_the_ball() {
        let cfg = path3();
        assert!(MarkovStrategy::pure(&cfg, Player::X, |_| 2).is_err());
    }

    #[test]
    fn playouts_match_the_exact_value() {
        let cfg = path3();
        let uniform = |p: Player| {
            let moves = cfg
                .states()
                .map(|s| {
                    let b = cfg.ball(s.position(p));
                    MixedMove::new(b.iter().map(|&v| (v, 1.0 / b.len() as f64)).collect()).unwrap()
                })
                .collect();
            MarkovStrategy::new(&cfg, p, moves).unwrap()
        };
        let (px, py) = (uniform(Player::X), uniform(Player::Y));
        let s0 = GameState::new(0, 2);
        let exact = evaluate_profile(&cfg, &px, &py, s0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 20_000;
        let samples: Vec<f64> = (0..n).map(|_| simulate_playout(&cfg, &px, &py, s0, &mut rng)).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        assert!((mean - exact).abs() <= 3.0 * (var / n as f64).sqrt());
    }
}
