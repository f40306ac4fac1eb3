//! Outerplanarity, embedding faces and the equilibria read off a
//! well-directed face.

use oriented_pursuit::fixtures::fixture;
use oriented_pursuit::planar::{is_outerplanar, outerplanar_equilibria, well_directed_face, Obstruction, Outerplanarity};
use oriented_pursuit::GameConfig;

fn main() -> oriented_pursuit::Result<()> {
    for name in ["outerplanar_composite", "no_2chase"] {
        let g = fixture(name)?.graph;
        let names = |vs: &[usize]| vs.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" ");
        match is_outerplanar(&g)? {
            Outerplanarity::NotOuterplanar(Obstruction::K4Minor { core }) => {
                println!("{name}: not outerplanar, K4 minor on {}", names(&core))
            }
            Outerplanarity::NotOuterplanar(Obstruction::K23Subdivision { poles, .. }) => {
                println!("{name}: not outerplanar, K2,3 with poles {}", names(&[poles.0, poles.1]))
            }
            Outerplanarity::Outerplanar(emb) => {
                let faces: Vec<String> = emb.faces(g.n()).iter().map(|f| names(f)).collect();
                println!("{name}: bounded faces [{}]", faces.join("] ["));
                let d = well_directed_face(&g, &emb)?;
                println!("  well-directed face {} after {} descents", names(&d.face), d.steps);
                let r = outerplanar_equilibria(&GameConfig::new(g.clone(), 0.5)?)?;
                println!("  walking together {}", r.walking_together.map_or("none".into(), |w| names(&w.walk)));
                println!("  2-chase {}", r.chase.map_or("none".into(), |w| names(&w.walk)));
            }
        }
    }
    Ok(())
}
