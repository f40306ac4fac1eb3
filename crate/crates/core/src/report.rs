//! JSON-ready reports with vertex names in place of indices.
//!
//! Every top-level report carries `schema_version`. Floating-point values
//! are rounded to 9 decimals.

use serde::{Serialize, Serializer};

use crate::characterize::{
    char4_winner, char4_winner_by_arrival, char6_classify, girth5_classification, static_equilibrium_exists,
    tree_winner, Girth5Class, WinnerVerdict,
};
use crate::equilibria::{CycleWitness, EquilibriumReport};
use crate::game::{GameConfig, GameState};
use crate::graph::{biconnected_components, find_unbalanced_small_cycles, has_k33_subdivision, BcNode, OrientedGraph, ThinnedBcTree, K33_VERTEX_CAP};
use crate::planar::{is_outerplanar, Obstruction, Outerplanarity, OUTERPLANAR_VERTEX_CAP};
use crate::pure::PureEqStructure;
use crate::solver::ValueTable;

pub const SCHEMA_VERSION: u32 = 1;

pub fn round9(v: f64) -> f64 {
    (v * 1e9).round() / 1e9
}

fn ser9<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round9(*v))
}

fn ser9_opt<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&round9(*v)),
        None => s.serialize_none(),
    }
}

fn names(g: &OrientedGraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.name(v).to_string()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedState {
    pub x: String,
    pub y: String,
}

impl NamedState {
    pub fn new(g: &OrientedGraph, s: GameState) -> Self {
        Self { x: g.name(s.x).to_string(), y: g.name(s.y).to_string() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UnbalancedCycle {
    pub class: String,
    pub cycle: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BcTreeReport {
    /// A vertex name, or the sorted vertex names of a nontrivial block.
    pub nodes: Vec<BcNodeReport>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BcNodeReport {
    Vertex { name: String },
    Block { vertices: Vec<String> },
}

#[derive(Debug, Clone, Serialize)]
pub struct OuterplanarityReport {
    pub outerplanar: bool,
    /// Boundary cycle of every nontrivial block.
    pub boundaries: Vec<Vec<String>>,
    pub obstruction: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphAnalysis {
    pub schema_version: u32,
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    /// `None` for a forest.
    pub girth: Option<usize>,
    pub strongly_connected: bool,
    pub tree: bool,
    pub cut_vertices: Vec<String>,
    pub thinned_bc_tree: BcTreeReport,
    pub unbalanced_cycles: Vec<UnbalancedCycle>,
    /// `None` above the size cap.
    pub outerplanarity: Option<OuterplanarityReport>,
    /// `None` above the size cap.
    pub k33_subdivision: Option<bool>,
}

pub fn analyze(name: &str, g: &OrientedGraph) -> GraphAnalysis {
    let dec = biconnected_components(g);
    let tree = ThinnedBcTree::new(g);
    let mut bc_edges = Vec::new();
    for (a, adj) in tree.adjacency.iter().enumerate() {
        bc_edges.extend(adj.iter().filter(|&&b| a < b).map(|&b| (a, b)));
    }
    let nodes = tree
        .nodes
        .iter()
        .map(|node| match *node {
            BcNode::Vertex(v) => BcNodeReport::Vertex { name: g.name(v).to_string() },
            BcNode::Block(b) => BcNodeReport::Block { vertices: names(g, &tree.blocks[b].vertices) },
        })
        .collect();
    let outerplanarity = (g.n() <= OUTERPLANAR_VERTEX_CAP).then(|| match is_outerplanar(g) {
        Ok(Outerplanarity::Outerplanar(emb)) => OuterplanarityReport {
            outerplanar: true,
            boundaries: emb.blocks.iter().map(|b| names(g, &b.cycle)).collect(),
            obstruction: None,
        },
        Ok(Outerplanarity::NotOuterplanar(obs)) => {
            OuterplanarityReport { outerplanar: false, boundaries: Vec::new(), obstruction: Some(describe(g, &obs)) }
        }
        Err(e) => OuterplanarityReport { outerplanar: false, boundaries: Vec::new(), obstruction: Some(e.to_string()) },
    });
    GraphAnalysis {
        schema_version: SCHEMA_VERSION,
        name: name.to_string(),
        vertices: g.names().to_vec(),
        edges: g.edges().map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string())).collect(),
        girth: g.girth(),
        strongly_connected: g.is_strongly_connected(),
        tree: g.is_tree(),
        cut_vertices: names(g, &dec.cut_vertices),
        thinned_bc_tree: BcTreeReport { nodes, edges: bc_edges },
        unbalanced_cycles: find_unbalanced_small_cycles(g)
            .into_iter()
            .map(|(c, class)| UnbalancedCycle { class: class.label(), cycle: names(g, &c) })
            .collect(),
        outerplanarity,
        k33_subdivision: (g.n() <= K33_VERTEX_CAP).then(|| matches!(has_k33_subdivision(g), Ok(Some(_)))),
    }
}

fn describe(g: &OrientedGraph, obs: &Obstruction) -> String {
    match obs {
        Obstruction::K4Minor { core } => format!("K4 minor on {}", names(g, core).join(" ")),
        Obstruction::K23Subdivision { poles, paths } => format!(
            "K2,3 subdivision between {} and {} via {}",
            g.name(poles.0),
            g.name(poles.1),
            paths.iter().map(|p| names(g, p).join("-")).collect::<Vec<_>>().join(", ")
        ),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueEntry {
    pub x: String,
    pub y: String,
    /// Expected payoff to `x`, counting the current round.
    #[serde(serialize_with = "ser9")]
    pub value: f64,
    /// Discounted continuation value.
    #[serde(serialize_with = "ser9")]
    pub continuation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueReport {
    pub schema_version: u32,
    #[serde(serialize_with = "ser9")]
    pub delta: f64,
    pub epsilon: f64,
    pub sweeps: usize,
    pub entries: Vec<ValueEntry>,
}

pub fn value_report(cfg: &GameConfig, vt: &ValueTable) -> ValueReport {
    let g = cfg.graph();
    ValueReport {
        schema_version: SCHEMA_VERSION,
        delta: cfg.delta(),
        epsilon: vt.epsilon(),
        sweeps: vt.sweeps(),
        entries: cfg
            .states()
            .map(|s| ValueEntry {
                x: g.name(s.x).to_string(),
                y: g.name(s.y).to_string(),
                value: vt.payoff(s),
                continuation: vt.get(s),
            })
            .collect(),
    }
}

pub fn value_csv(report: &ValueReport) -> String {
    let mut out = String::from("x,y,value,continuation\n");
    for e in &report.entries {
        out.push_str(&format!("{},{},{:.9},{:.9}\n", e.x, e.y, e.value, e.continuation));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub applies: bool,
    pub verdict: Option<String>,
    /// Why the hypotheses fail, when they do.
    pub reason: Option<String>,
}

impl TheoremVerdict {
    fn new(theorem: &str, outcome: crate::Result<String>) -> Self {
        let theorem = theorem.to_string();
        match outcome {
            Ok(v) => Self { theorem, applies: true, verdict: Some(v), reason: None },
            Err(e) => Self { theorem, applies: false, verdict: None, reason: Some(e.to_string()) },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterizeReport {
    pub schema_version: u32,
    pub x: String,
    pub y: String,
    #[serde(serialize_with = "ser9")]
    pub delta: f64,
    #[serde(serialize_with = "ser9")]
    pub solver_value: f64,
    pub solver_verdict: WinnerVerdict,
    pub theorems: Vec<TheoremVerdict>,
}

pub fn characterize_report(cfg: &GameConfig, vt: &ValueTable, s: GameState) -> CharacterizeReport {
    let g = cfg.graph();
    let verdict = |r: crate::Result<WinnerVerdict>| r.map(|v| format!("{v:?}"));
    let theorems = vec![
        TheoremVerdict::new("tree", verdict(tree_winner(g, s.x, s.y))),
        TheoremVerdict::new(
            "girth6_strongly_connected",
            char6_classify(cfg, s.x, s.y).map(|c| {
                format!("{:?}, value in [{:.9}, {:.9}]", c.verdict, c.payoff_bracket.0, c.payoff_bracket.1)
            }),
        ),
        TheoremVerdict::new("girth4_midpoint", verdict(char4_winner(g, s.x, s.y))),
        TheoremVerdict::new("girth4_midpoint_by_arrival", verdict(char4_winner_by_arrival(g, s.x, s.y))),
        TheoremVerdict::new(
            "static_equilibrium",
            static_equilibrium_exists(g).map(|st| match st.failed_condition {
                Some(k) => format!("exists (condition {k} fails)"),
                None => "none".into(),
            }),
        ),
        TheoremVerdict::new(
            "girth5_class",
            girth5_classification(g).map(|class| match class {
                Girth5Class::HasStatic { witness } => {
                    format!("has static equilibrium at x={} y={}", g.name(witness.x), g.name(witness.y))
                }
                Girth5Class::FiveCycleCore { cycle } => format!("five-cycle core on {}", names(g, &cycle).join(" ")),
            }),
        ),
    ];
    let w = vt.payoff(s);
    CharacterizeReport {
        schema_version: SCHEMA_VERSION,
        x: g.name(s.x).to_string(),
        y: g.name(s.y).to_string(),
        delta: cfg.delta(),
        solver_value: w,
        solver_verdict: WinnerVerdict::from_payoff(w),
        theorems,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PureStateReport {
    pub x: String,
    pub y: String,
    pub in_f_inf: bool,
    pub losing_for_x: bool,
    pub label: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PureReport {
    pub schema_version: u32,
    pub sweeps: usize,
    pub states: Vec<PureStateReport>,
}

pub fn pure_report(g: &OrientedGraph, p: &PureEqStructure) -> PureReport {
    let n = g.n();
    let states = (0..n * n)
        .map(|i| GameState::new(i / n, i % n))
        .map(|s| PureStateReport {
            x: g.name(s.x).to_string(),
            y: g.name(s.y).to_string(),
            in_f_inf: p.in_f_inf(s),
            losing_for_x: p.is_losing_for_x(s),
            label: names(g, p.label(s)),
        })
        .collect();
    PureReport { schema_version: SCHEMA_VERSION, sweeps: p.sweeps(), states }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    /// Positions of `x` over one period.
    pub walk: Vec<String>,
    pub states: Vec<NamedState>,
    #[serde(serialize_with = "ser9")]
    pub worst_gain: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquilibriaReport {
    pub schema_version: u32,
    #[serde(serialize_with = "ser9")]
    pub delta: f64,
    pub method: String,
    pub edge_decisive: bool,
    pub static_equilibrium: Option<NamedState>,
    #[serde(serialize_with = "ser9_opt")]
    pub static_worst_gain: Option<f64>,
    pub walking_together: Option<WitnessReport>,
    pub chase_k: usize,
    pub chase: Option<WitnessReport>,
}

pub fn equilibria_report(cfg: &GameConfig, r: &EquilibriumReport) -> EquilibriaReport {
    let g = cfg.graph();
    let witness = |w: &CycleWitness| WitnessReport {
        walk: names(g, &w.walk),
        states: w.play.states().iter().map(|&s| NamedState::new(g, s)).collect(),
        worst_gain: w.worst_gain,
    };
    EquilibriaReport {
        schema_version: SCHEMA_VERSION,
        delta: cfg.delta(),
        method: format!("{:?}", r.method),
        edge_decisive: r.edge_decisive,
        static_equilibrium: r.static_witness.map(|s| NamedState::new(g, s)),
        static_worst_gain: r.static_worst_gain,
        walking_together: r.walking_together.as_ref().map(witness),
        chase_k: r.chase_k,
        chase: r.chase.as_ref().map(witness),
    }
}
