pub mod characterize;
pub mod equilibria;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod planar;
pub mod profile;
pub mod pure;
pub mod report;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use game::{GameConfig, GameState, Player};
pub use graph::{GraphBuilder, OrientedGraph};
