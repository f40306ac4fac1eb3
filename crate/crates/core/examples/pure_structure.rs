//! Losing states, move labels and a zero-payoff pure play.

use oriented_pursuit::fixtures::fixture;
use oriented_pursuit::pure::{compute_pure_structure, extract_pure_path, verify_pure_payoff_zero};
use oriented_pursuit::GameState;

fn main() -> oriented_pursuit::Result<()> {
    let g = fixture("c5")?.graph;
    let st = compute_pure_structure(&g);
    println!("fixed point after {} sweeps; {} states in f_inf", st.sweeps(), st.f_inf_states().len());
    let s = GameState::new(0, 2);
    println!("labels at (0,2): x {:?}, y {:?}", st.label(s), st.label(s.swapped()));
    let path = extract_pure_path(&st, s, 10);
    let walk: Vec<String> = path.iter().map(|t| format!("({},{})", t.x, t.y)).collect();
    println!("pure play {}", walk.join(" "));
    println!("zero payoff throughout: {}", verify_pure_payoff_zero(&g, &st, &path));
    Ok(())
}
