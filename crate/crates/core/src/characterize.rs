//! Structural winner predicates and equilibrium existence tests.
//!
//! Every function here reads only the graph; the solver-backed counterparts
//! live in [`crate::equilibria`] and are used to cross-check these.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{GameConfig, GameState};
use crate::graph::{find_directed_cycle, find_unbalanced_small_cycles, xy_cut_vertices, OrientedGraph, ThinnedBcTree};
use crate::solver::DECISIVE_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WinnerVerdict {
    XWins,
    YWins,
    Draw,
}

impl WinnerVerdict {
    /// Sign of a game value, with `|w| <= tol` read as a draw.
    pub fn from_value(w: f64, tol: f64) -> Self {
        if w > tol {
            WinnerVerdict::XWins
        } else if w < -tol {
            WinnerVerdict::YWins
        } else {
            WinnerVerdict::Draw
        }
    }

    /// Verdict of the solver at the default tolerance.
    pub fn from_payoff(w: f64) -> Self {
        Self::from_value(w, DECISIVE_TOL)
    }

    pub fn swapped(self) -> Self {
        match self {
            WinnerVerdict::XWins => WinnerVerdict::YWins,
            WinnerVerdict::YWins => WinnerVerdict::XWins,
            WinnerVerdict::Draw => WinnerVerdict::Draw,
        }
    }
}

/// Hypothesis shared by the girth-4 results.
pub fn check_girth4_hypotheses(g: &OrientedGraph, op: &'static str) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::precondition(op, "graph is not connected"));
    }
    if g.girth_or_inf() < 4 {
        return Err(Error::precondition(op, "girth is below 4"));
    }
    if let Some((cycle, class)) = find_unbalanced_small_cycles(g).into_iter().next() {
        let names: Vec<&str> = cycle.iter().map(|&v| g.name(v)).collect();
        return Err(Error::precondition(op, format!("unbalanced cycle {} on {}", class.label(), names.join(" "))));
    }
    Ok(())
}

fn check_pair(g: &OrientedGraph, x0: usize, y0: usize) -> Result<()> {
    if x0 >= g.n() || y0 >= g.n() {
        return Err(Error::InvalidParameter("vertex index out of range".into()));
    }
    Ok(())
}

/// Winner on a tree: the player who can reach the midpoint of the unique
/// path through a parent of it, while the other side of that midpoint is an
/// outward tree, wins; otherwise the game is a draw.
pub fn tree_winner(g: &OrientedGraph, x0: usize, y0: usize) -> Result<WinnerVerdict> {
    if !g.is_tree() {
        return Err(Error::precondition("tree_winner", "graph is not a tree"));
    }
    check_pair(g, x0, y0)?;
    Ok(combine(tree_second_wins(g, x0, y0), tree_second_wins(g, y0, x0)))
}

fn combine(y_wins: bool, x_wins: bool) -> WinnerVerdict {
    debug_assert!(!(x_wins && y_wins));
    if y_wins {
        WinnerVerdict::YWins
    } else if x_wins {
        WinnerVerdict::XWins
    } else {
        WinnerVerdict::Draw
    }
}

/// Whether the player starting at `b` beats the one at `a` on a tree.
fn tree_second_wins(g: &OrientedGraph, a: usize, b: usize) -> bool {
    let path = g.shortest_paths(a, b).swap_remove(0);
    let d = path.len() - 1;
    match d {
        0 => false,
        1 => g.has_edge(b, a),
        _ => {
            // Even: l <- m <- r around the midpoint; odd: l <- m1 <- m2.
            let (l, m, r) = if d.is_multiple_of(2) {
                (path[d / 2 - 1], path[d / 2], path[d / 2 + 1])
            } else {
                (path[(d - 1) / 2 - 1], path[(d - 1) / 2], path[d.div_ceil(2)])
            };
            g.has_edge(r, m) && g.has_edge(m, l) && is_out_tree_from(g, l, m)
        }
    }
}

/// Whether the component of `g - blocked` containing `root` is a tree with
/// every edge pointing away from `root`.
fn is_out_tree_from(g: &OrientedGraph, root: usize, blocked: usize) -> bool {
    let mut stack = vec![(root, blocked)];
    while let Some((u, from)) = stack.pop() {
        for &w in g.neighbors(u) {
            if w == from {
                continue;
            }
            if w == blocked || !g.has_edge(u, w) {
                return false;
            }
            stack.push((w, u));
        }
    }
    true
}

/// Outcome of the strongly connected, girth-6 classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Char6Verdict {
    pub verdict: WinnerVerdict,
    /// Interval containing the game value to `x`.
    pub payoff_bracket: (f64, f64),
}

/// Strongly connected graphs of girth at least 6: adjacent players are won
/// by the parent with the value to `x` inside `payoff_bracket`; every other
/// pair is a draw with value 0.
pub fn char6_classify(cfg: &GameConfig, x0: usize, y0: usize) -> Result<Char6Verdict> {
    let g = cfg.graph();
    if !g.is_strongly_connected() {
        return Err(Error::precondition("char6_classify", "graph is not strongly connected"));
    }
    if g.girth_or_inf() < 6 {
        return Err(Error::precondition("char6_classify", "girth is below 6"));
    }
    check_pair(g, x0, y0)?;
    let d = cfg.delta();
    let (lo, hi) = (1.0 - d, 4.0 * (1.0 - d) / (4.0 - d));
    Ok(match g.orientation(x0, y0) {
        1 => Char6Verdict { verdict: WinnerVerdict::XWins, payoff_bracket: (lo, hi) },
        -1 => Char6Verdict { verdict: WinnerVerdict::YWins, payoff_bracket: (-hi, -lo) },
        _ => Char6Verdict { verdict: WinnerVerdict::Draw, payoff_bracket: (0.0, 0.0) },
    })
}

/// Girth at least 4 without unbalanced 4- or 5-cycles: the tree criterion
/// applied to the midpoint cut vertex of the block-cut structure.
pub fn char4_winner(g: &OrientedGraph, x0: usize, y0: usize) -> Result<WinnerVerdict> {
    check_girth4_hypotheses(g, "char4_winner")?;
    check_pair(g, x0, y0)?;
    let tree = ThinnedBcTree::new(g);
    Ok(combine(char4_second_wins(g, &tree, x0, y0), char4_second_wins(g, &tree, y0, x0)))
}

/// Variant of [`char4_winner`] where the winner may reach any parent of the
/// midpoint no later than the loser reaches the midpoint, not only a parent
/// on a shortest path. Differs from [`char4_winner`] only on even distances
/// where such a parent sits at the same distance as the midpoint.
pub fn char4_winner_by_arrival(g: &OrientedGraph, x0: usize, y0: usize) -> Result<WinnerVerdict> {
    check_girth4_hypotheses(g, "char4_winner_by_arrival")?;
    check_pair(g, x0, y0)?;
    let tree = ThinnedBcTree::new(g);
    Ok(combine(
        char4_second_wins_with(g, &tree, x0, y0, Arrival::Any),
        char4_second_wins_with(g, &tree, y0, x0, Arrival::Any),
    ))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Arrival {
    /// The parent of the midpoint lies on a shortest path.
    Shortest,
    /// Any parent reached no later than the loser reaches the midpoint.
    Any,
}

fn char4_second_wins(g: &OrientedGraph, tree: &ThinnedBcTree, a: usize, b: usize) -> bool {
    char4_second_wins_with(g, tree, a, b, Arrival::Shortest)
}

fn char4_second_wins_with(g: &OrientedGraph, tree: &ThinnedBcTree, a: usize, b: usize, arrival: Arrival) -> bool {
    let da = g.distances_from(a);
    let db = g.distances_from(b);
    let d = da[b].expect("connected");
    match d {
        0 => return false,
        1 => return g.has_edge(b, a),
        _ => {}
    }
    let cuts = xy_cut_vertices(g, a, b);
    // Midpoint vertex and its required distance to `b`.
    let (ha, hb) = if d.is_multiple_of(2) { (d / 2, d / 2) } else { ((d - 1) / 2, d.div_ceil(2)) };
    cuts.iter().any(|&m| {
        da[m] == Some(ha)
            && db[m] == Some(hb)
            && tree.out_branch(g, m, a).is_some()
            && g.parents(m).iter().any(|&r| match arrival {
                Arrival::Shortest => db[r] == Some(hb - 1),
                Arrival::Any => db[r].is_some_and(|dr| dr <= ha),
            })
    })
}

/// Result of the static-equilibrium test, with the first violated condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StaticAnalysis {
    pub exists: bool,
    /// 1-based index of the first condition that fails, if any.
    pub failed_condition: Option<usize>,
    pub witness: Option<GameState>,
}

/// Static equilibria exist unless: exactly one nontrivial block `B`; the
/// thinned block-cut tree points away from `B`; `B` has diameter 2; every
/// distance-2 pair of `B` has a common neighbour that is a parent of one of
/// them; every vertex of `B` has a parent.
pub fn static_equilibrium_exists(g: &OrientedGraph) -> Result<StaticAnalysis> {
    check_girth4_hypotheses(g, "static_equilibrium_exists")?;
    let found = |k: usize, s: GameState| StaticAnalysis { exists: true, failed_condition: Some(k), witness: Some(s) };
    let tree = ThinnedBcTree::new(g);
    let dist = g.distance_matrix();
    let blocks = &tree.blocks;
    if blocks.is_empty() {
        let top = g.sources()[0];
        return Ok(found(1, GameState::new(top, top)));
    }
    if blocks.len() > 1 {
        let mut best: Option<(usize, GameState)> = None;
        for (i, bi) in blocks.iter().enumerate() {
            for bj in &blocks[i + 1..] {
                for &u in &bi.vertices {
                    for &v in &bj.vertices {
                        if best.is_none_or(|(d, _)| dist[u][v] > d) {
                            best = Some((dist[u][v], GameState::new(u, v)));
                        }
                    }
                }
            }
        }
        return Ok(found(1, best.unwrap().1));
    }
    let b = &blocks[0];
    let root = tree
        .nodes
        .iter()
        .position(|&node| node == crate::graph::BcNode::Block(0))
        .expect("block node");
    if let Some(&(tail, _)) = tree.upward_edges(g, root).first() {
        let far = far_vertex(&b.vertices, &dist[tail]);
        return Ok(found(2, GameState::new(tail, far)));
    }
    let mut far_pair: Option<(usize, GameState)> = None;
    for (i, &u) in b.vertices.iter().enumerate() {
        for &v in &b.vertices[i + 1..] {
            if far_pair.is_none_or(|(d, _)| dist[u][v] > d) {
                far_pair = Some((dist[u][v], GameState::new(u, v)));
            }
        }
    }
    let (diam, pair) = far_pair.expect("nontrivial block");
    if diam != 2 {
        return Ok(found(3, pair));
    }
    for (i, &u) in b.vertices.iter().enumerate() {
        for &v in &b.vertices[i + 1..] {
            if dist[u][v] == 2 {
                let covered = g
                    .neighbors(u)
                    .iter()
                    .any(|&w| g.adjacent(w, v) && (g.has_edge(w, u) || g.has_edge(w, v)));
                if !covered {
                    return Ok(found(4, GameState::new(u, v)));
                }
            }
        }
    }
    if let Some(&top) = b.vertices.iter().find(|&&v| g.parents(v).is_empty()) {
        return Ok(found(5, GameState::new(top, top)));
    }
    Ok(StaticAnalysis { exists: false, failed_condition: None, witness: None })
}

fn far_vertex(candidates: &[usize], dist: &[usize]) -> usize {
    let mut best = candidates[0];
    for &v in candidates {
        if dist[v] > dist[best] {
            best = v;
        }
    }
    best
}

/// Cycle-based equilibria exist exactly when there is a directed cycle; the
/// witness is a shortest one.
pub fn cycle_equilibria_exist(g: &OrientedGraph) -> Result<Option<Vec<usize>>> {
    check_girth4_hypotheses(g, "cycle_equilibria_exist")?;
    Ok(find_directed_cycle(g))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Girth5Class {
    HasStatic { witness: GameState },
    /// A directed 5-cycle with outward trees hanging off it.
    FiveCycleCore { cycle: Vec<usize> },
}

/// Girth at least 5 without unbalanced small cycles.
pub fn girth5_classification(g: &OrientedGraph) -> Result<Girth5Class> {
    if g.girth_or_inf() < 5 {
        return Err(Error::precondition("girth5_classification", "girth is below 5"));
    }
    let st = static_equilibrium_exists(g)?;
    if let Some(witness) = st.witness {
        return Ok(Girth5Class::HasStatic { witness });
    }
    let cycle = find_directed_cycle(g).expect("a graph without static equilibria has a directed cycle");
    Ok(Girth5Class::FiveCycleCore { cycle })
}
