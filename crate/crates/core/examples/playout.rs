//! Monte Carlo playouts of the optimal profile against its exact payoff.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oriented_pursuit::fixtures::fixture;
use oriented_pursuit::game::{evaluate_profile, simulate_playout};
use oriented_pursuit::solver::{optimal_stage_strategies, value_iteration, DEFAULT_EPSILON};
use oriented_pursuit::{GameConfig, GameState};

fn main() -> oriented_pursuit::Result<()> {
    let cfg = GameConfig::new(fixture("path3")?.graph, 0.5)?;
    let vt = value_iteration(&cfg, DEFAULT_EPSILON)?;
    let (sx, sy) = optimal_stage_strategies(&cfg, &vt)?;
    let s0: GameState = cfg.state_by_name("t", "b")?;
    let exact = evaluate_profile(&cfg, &sx, &sy, s0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let runs = 100_000;
    let mean = (0..runs).map(|_| simulate_playout(&cfg, &sx, &sy, s0, &mut rng)).sum::<f64>() / runs as f64;
    println!("exact {exact:.5}, playout mean {mean:.5} over {runs} runs");
    Ok(())
}
