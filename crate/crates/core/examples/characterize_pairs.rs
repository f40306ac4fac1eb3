//! Structural winner verdicts next to the solver, including a graph where
//! the shortest-path midpoint rule and the arrival rule disagree.

use oriented_pursuit::characterize::{char4_winner, char4_winner_by_arrival, char6_classify, tree_winner, WinnerVerdict};
use oriented_pursuit::fixtures::fixture;
use oriented_pursuit::io::parse_graph;
use oriented_pursuit::solver::{value_iteration, DEFAULT_EPSILON};
use oriented_pursuit::{GameConfig, GameState};

fn main() -> oriented_pursuit::Result<()> {
    let doc = fixture("tree_odd")?;
    let g = &doc.graph;
    let (x, y) = (g.vertex_or_err("x")?, g.vertex_or_err("y")?);
    let vt = value_iteration(&GameConfig::new(g.clone(), 0.5)?, DEFAULT_EPSILON)?;
    println!("tree: {:?}, solver {:?}", tree_winner(g, x, y)?, WinnerVerdict::from_payoff(vt.payoff(GameState::new(x, y))));

    let cfg = GameConfig::new(fixture("c7")?.graph, 0.3)?;
    let c = char6_classify(&cfg, 1, 0)?;
    println!("c7 child of y: {:?}, payoff in [{:.4}, {:.4}]", c.verdict, c.payoff_bracket.0, c.payoff_bracket.1);

    let g = parse_graph("0 -> 2\n0 -> 4\n1 -> 4\n1 -> 5\n2 -> 3\n6 -> 0\n6 -> 5\n")?;
    let (x, y) = (g.vertex_or_err("1")?, g.vertex_or_err("3")?);
    for delta in [0.3, 0.5] {
        let vt = value_iteration(&GameConfig::new(g.clone(), delta)?, DEFAULT_EPSILON)?;
        let w = vt.payoff(GameState::new(x, y));
        println!(
            "delta {delta}: midpoint rule {:?}, arrival rule {:?}, solver W {w:+.5}",
            char4_winner(&g, x, y)?,
            char4_winner_by_arrival(&g, x, y)?
        );
    }
    Ok(())
}
