//! Discount thresholds below which girth-a graphs are edge-decisive.

use oriented_pursuit::fixtures::fixture;
use oriented_pursuit::solver::{all_edges_decisive, gamma, value_iteration, DEFAULT_EPSILON};
use oriented_pursuit::GameConfig;

fn main() -> oriented_pursuit::Result<()> {
    for a in 3..=10 {
        println!("gamma_{a} = {:.9}", gamma(a)?);
    }
    let g = fixture("c5")?.graph;
    let g5 = gamma(5)?;
    for delta in [0.5 * g5, 0.99 * g5] {
        let cfg = GameConfig::new(g.clone(), delta)?;
        let vt = value_iteration(&cfg, DEFAULT_EPSILON)?;
        println!("c5 at delta {delta:.4}: every edge decisive = {}", all_edges_decisive(&cfg, &vt));
    }
    Ok(())
}
