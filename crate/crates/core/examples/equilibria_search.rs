//! Static, walking-together and 2-chase equilibria on directed cycles.

use oriented_pursuit::equilibria::{detect_equilibria, CycleWitness};
use oriented_pursuit::fixtures::fixture;
use oriented_pursuit::solver::{value_iteration, DEFAULT_EPSILON};
use oriented_pursuit::GameConfig;

fn main() -> oriented_pursuit::Result<()> {
    for name in ["c4", "c5", "c6", "no_2chase"] {
        let g = fixture(name)?.graph;
        let cfg = GameConfig::new(g.clone(), 0.3)?;
        let vt = value_iteration(&cfg, DEFAULT_EPSILON)?;
        let r = detect_equilibria(&cfg, &vt);
        let walk = |w: &Option<CycleWitness>| {
            w.as_ref().map_or("none".to_string(), |w| {
                let names: Vec<&str> = w.walk.iter().map(|&v| g.name(v)).collect();
                format!("{} (gain {:.1e})", names.join(" "), w.worst_gain)
            })
        };
        println!("{name}: static {:?}", r.static_witness.map(|s| (g.name(s.x), g.name(s.y))));
        println!("  walking together {}", walk(&r.walking_together));
        println!("  2-chase {}", walk(&r.chase));
    }
    Ok(())
}
