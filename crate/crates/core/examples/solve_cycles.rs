//! Values and optimal stage strategies on short directed cycles.

use oriented_pursuit::fixtures::fixture;
use oriented_pursuit::solver::{optimal_stage_strategies, value_iteration, DEFAULT_EPSILON};
use oriented_pursuit::{GameConfig, GameState};

fn main() -> oriented_pursuit::Result<()> {
    for name in ["c3", "c4", "c5"] {
        let cfg = GameConfig::new(fixture(name)?.graph, 0.5)?;
        let vt = value_iteration(&cfg, DEFAULT_EPSILON)?;
        let (sx, _) = optimal_stage_strategies(&cfg, &vt)?;
        println!("{name}: {} sweeps", vt.sweeps());
        for y in 0..cfg.n() {
            let s = GameState::new(0, y);
            let mix: Vec<String> = sx.at(&cfg, s).support().iter().map(|(v, p)| format!("{v}:{p:.3}")).collect();
            println!("  x=0 y={y}  W {:+.6}  V {:+.6}  x plays {}", vt.payoff(s), vt.get(s), mix.join(" "));
        }
    }
    Ok(())
}
