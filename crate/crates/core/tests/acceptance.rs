//! Acceptance gate: one PASS / FAIL / SKIP line per criterion.
//!
//! Exits non-zero on any FAIL only when `ACCEPTANCE_STRICT=1`; otherwise the
//! summary line carries the verdict and the process succeeds.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use oriented_pursuit::characterize::{girth5_classification, Girth5Class};
use oriented_pursuit::equilibria::{detect_equilibria, find_chase, find_static, CycleWitness};
use oriented_pursuit::fixtures::{all_fixtures, fixture, unverified_fixtures};
use oriented_pursuit::graph::{find_unbalanced_small_cycles, has_k33_subdivision, orientation_orbit_count};
use oriented_pursuit::planar::{is_outerplanar, outerplanar_equilibria};
use oriented_pursuit::pure::{compute_pure_structure, extract_pure_path, verify_pure_payoff_zero};
use oriented_pursuit::solver::{gamma, optimal_stage_strategies, value_iteration, ValueTable, DEFAULT_EPSILON};
use oriented_pursuit::verify::{enumerate_connected_oriented_graphs, graph_label, run_sweep, sample_graphs, Predicate};
use oriented_pursuit::{GameConfig, GameState, OrientedGraph};

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Outcome::{Fail, Pass, Skip};

fn outcome(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn solve(g: &OrientedGraph, delta: f64) -> (GameConfig, ValueTable) {
    let cfg = GameConfig::new(g.clone(), delta).expect("valid discount");
    let vt = value_iteration(&cfg, DEFAULT_EPSILON).expect("solver runs");
    (cfg, vt)
}

fn graph(name: &str) -> OrientedGraph {
    fixture(name).expect("bundled fixture").graph
}

fn gamma_thresholds() -> Outcome {
    let g5 = gamma(5).expect("a = 5 is valid");
    let mut worst = 0.0f64;
    for a in 4..=10 {
        let g = gamma(a).expect("a >= 3 is valid");
        worst = worst.max((g.powi(a as i32 - 2) + g - 1.0).abs());
    }
    let err = (g5 - 0.68233).abs();
    outcome(err <= 1e-5 && worst < 1e-12, format!("gamma_5 = {g5:.9} (|err| {err:.1e}), max residual a=4..10 {worst:.1e}"))
}

fn worked_examples() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let (cfg, vt) = solve(&graph("c3"), 0.5);
    let (sx, sy) = optimal_stage_strategies(&cfg, &vt).expect("strategies");
    let max_v = cfg.states().map(|s| vt.get(s).abs()).fold(0.0, f64::max);
    let mut max_dev = 0.0f64;
    for s in cfg.states() {
        for (strategy, at) in [(&sx, s.x), (&sy, s.y)] {
            let m = strategy.at(&cfg, s);
            for &v in cfg.ball(at) {
                max_dev = max_dev.max((m.prob(v) - 1.0 / 3.0).abs());
            }
        }
    }
    ok &= max_v <= 1e-6 && max_dev <= 1e-6;
    notes.push(format!("c3 max|V| {max_v:.1e} max|p-1/3| {max_dev:.1e}"));

    let g = graph("c4");
    let (cfg, vt) = solve(&g, 0.5);
    let (sx, sy) = optimal_stage_strategies(&cfg, &vt).expect("strategies");
    let mut max_v = 0.0f64;
    let mut max_parent = 0.0f64;
    for u in 0..4 {
        let opp = (u + 2) % 4;
        for s in [GameState::new(u, u), GameState::new(u, opp)] {
            max_v = max_v.max(vt.get(s).abs());
        }
        let s = GameState::new(u, opp);
        max_parent = max_parent.max(sx.at(&cfg, s).prob(g.parents(u)[0]));
        max_parent = max_parent.max(sy.at(&cfg, s).prob(g.parents(opp)[0]));
    }
    ok &= max_v <= 1e-6 && max_parent <= 0.5 + 1e-6;
    notes.push(format!("c4 same/opposite max|V| {max_v:.1e} max parent prob {max_parent:.6}"));

    let g = graph("path3");
    let (cfg, vt) = solve(&g, 0.5);
    let s = cfg.state_by_name("t", "b").expect("path3 names");
    let (v, w) = (vt.get(s), vt.payoff(s));
    ok &= v >= 1e-3 && w >= 1e-3;
    notes.push(format!("path3 V(t over b) {v:.6} W {w:.6}"));

    outcome(ok, notes.join("; "))
}

fn char6_bracket() -> Outcome {
    let mut ok = true;
    let mut worst_out = 0.0f64;
    let mut worst_far = 0.0f64;
    for name in ["c6", "c7", "c8"] {
        let g = graph(name);
        for delta in [0.3, 0.5] {
            let (cfg, vt) = solve(&g, delta);
            let (lo, hi) = (-4.0 * (1.0 - delta) / (4.0 - delta), -(1.0 - delta));
            for s in cfg.states() {
                let w = vt.payoff(s);
                if g.has_edge(s.y, s.x) {
                    let out = (lo - w).max(w - hi).max(0.0);
                    worst_out = worst_out.max(out);
                } else if !g.adjacent(s.x, s.y) {
                    worst_far = worst_far.max(w.abs());
                }
            }
        }
    }
    ok &= worst_out <= 1e-6 && worst_far <= 1e-6;
    outcome(ok, format!("C6-C8 at 0.3/0.5: child pair outside bracket by {worst_out:.1e}, max non-adjacent |W| {worst_far:.1e}"))
}

fn oracle_equivalence() -> Outcome {
    let mut graphs: Vec<OrientedGraph> = (1..=5).flat_map(enumerate_connected_oriented_graphs).collect();
    let exhaustive = graphs.len();
    graphs.extend(sample_graphs(1, 200, 6, 8));
    let records = run_sweep(&graphs, &[0.3, 0.5]);
    let mut ok = true;
    let mut parts = vec![format!("{exhaustive} graphs n<=5 + 200 sampled (seed 1, 6-8 vertices), delta 0.3/0.5")];
    let mut notes = Vec::new();
    for p in Predicate::ALL {
        let rs: Vec<_> = records.iter().filter(|r| r.predicate == p).collect();
        let bad: Vec<_> = rs.iter().filter(|r| !r.matched).collect();
        let graphs_bad: BTreeSet<&str> = bad.iter().map(|r| r.graph.as_str()).collect();
        let line = format!("{p:?}: {} records, {} mismatched", rs.len(), bad.len());
        match p {
            Predicate::Tree | Predicate::Char6 | Predicate::Char4 => {
                ok &= bad.is_empty();
                parts.push(line);
                for gname in graphs_bad {
                    notes.push(format!("{p:?} mismatch on [{gname}]"));
                }
            }
            // Not a criterion; reported for comparison.
            Predicate::Char4Arrival | Predicate::Static => notes.push(format!("info {line}")),
        }
    }
    for n in notes {
        println!("      {n}");
    }
    outcome(ok, parts.join("; "))
}

/// Whether `y` can force a state with `y -> x` within `depth` rounds.
fn forces(g: &OrientedGraph, s: GameState, depth: usize, memo: &mut HashMap<(GameState, usize), bool>) -> bool {
    if g.has_edge(s.y, s.x) {
        return true;
    }
    if depth == 0 {
        return false;
    }
    if let Some(&r) = memo.get(&(s, depth)) {
        return r;
    }
    let r = g.ball(s.x).into_iter().all(|a| g.ball(s.y).into_iter().any(|b| forces(g, GameState::new(a, b), depth - 1, memo)));
    memo.insert((s, depth), r);
    r
}

fn pure_structure() -> Outcome {
    let mut graphs = 0;
    let mut disagreements = Vec::new();
    let mut paths = 0;
    let mut bad_paths = 0;
    for n in 1..=4 {
        for g in enumerate_connected_oriented_graphs(n) {
            graphs += 1;
            let st = compute_pure_structure(&g);
            let mut memo = HashMap::new();
            let horizon = n * n + 1;
            let losing: Vec<Vec<bool>> =
                (0..n).map(|x| (0..n).map(|y| forces(&g, GameState::new(x, y), horizon, &mut memo)).collect()).collect();
            for x in 0..n {
                for y in 0..n {
                    let s = GameState::new(x, y);
                    let label: Vec<usize> = if losing[x][y] {
                        Vec::new()
                    } else {
                        g.ball(x).into_iter().filter(|&a| g.ball(y).into_iter().all(|b| !losing[a][b])).collect()
                    };
                    let mut got = st.label(s).to_vec();
                    got.sort_unstable();
                    if st.is_losing_for_x(s) != losing[x][y] || st.in_f_inf(s) != (losing[x][y] || losing[y][x]) || got != label {
                        disagreements.push(format!("[{}] at ({x},{y})", graph_label(&g)));
                    }
                    if !st.in_f_inf(s) {
                        paths += 1;
                        let path = extract_pure_path(&st, s, 2 * n * n);
                        if !verify_pure_payoff_zero(&g, &st, &path) {
                            bad_paths += 1;
                        }
                    }
                }
            }
        }
    }
    for d in disagreements.iter().take(5) {
        println!("      oracle disagreement {d}");
    }
    outcome(
        disagreements.is_empty() && bad_paths == 0,
        format!("{graphs} graphs n<=4: {} oracle disagreements; {paths} pure paths, {bad_paths} with nonzero payoff", disagreements.len()),
    )
}

fn witness_ok(w: &Option<CycleWitness>) -> Option<f64> {
    w.as_ref().filter(|w| w.worst_gain <= 1e-6).map(|w| w.worst_gain)
}

fn existence_fixtures() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for delta in [0.3, 0.5] {
        let (cfg, vt) = solve(&graph("c4"), delta);
        let r = detect_equilibria(&cfg, &vt);
        let c4 = witness_ok(&r.walking_together).is_some() && witness_ok(&r.chase).is_some() && r.static_witness.is_none();
        ok &= c4;

        let g5 = graph("c5");
        let (cfg, vt) = solve(&g5, delta);
        let core = matches!(girth5_classification(&g5), Ok(Girth5Class::FiveCycleCore { .. }));
        let r = detect_equilibria(&cfg, &vt);
        let c5 = core && witness_ok(&r.walking_together).is_some() && witness_ok(&r.chase).is_some();
        ok &= c5;

        let (cfg, vt) = solve(&graph("c6"), delta);
        let r = detect_equilibria(&cfg, &vt);
        let c6 = witness_ok(&r.walking_together).is_some()
            && witness_ok(&r.chase).is_some()
            && r.static_worst_gain.is_some_and(|gain| gain <= 1e-6);
        ok &= c6;
        notes.push(format!("delta {delta}: c4 {c4} c5 {c5} c6 {c6}"));
    }
    outcome(ok, notes.join("; "))
}

fn outerplanar_theorem() -> Outcome {
    let mut ok = true;
    let mut names = Vec::new();
    for doc in all_fixtures() {
        let g = &doc.graph;
        let eligible = g.is_strongly_connected()
            && g.girth_or_inf() >= 4
            && is_outerplanar(g).map(|o| o.is_outerplanar()).unwrap_or(false);
        if !eligible {
            continue;
        }
        for delta in [0.3, 0.5] {
            let cfg = GameConfig::new(g.clone(), delta).expect("valid discount");
            let passed = match outerplanar_equilibria(&cfg) {
                Ok(r) => witness_ok(&r.walking_together).is_some() && witness_ok(&r.chase).is_some(),
                Err(e) => {
                    println!("      {} at {delta}: {e}", doc.name);
                    false
                }
            };
            if !passed {
                println!("      {} at {delta}: missing or invalid witness", doc.name);
            }
            ok &= passed;
        }
        names.push(doc.name);
    }
    ok &= names.iter().any(|n| n == "outerplanar_composite");
    outcome(ok, format!("{} fixtures at 0.3/0.5: {}", names.len(), names.join(" ")))
}

/// Orbits of the 2^k orientations of a k-cycle under the dihedral group,
/// by canonical forms. Bit `i` set means edge `i -> i+1`.
fn brute_orbits(k: usize) -> usize {
    let mask = (1u32 << k) - 1;
    let rotate = |b: u32, r: usize| ((b << r) | (b >> (k - r))) & mask;
    let reflect = |b: u32| {
        // Vertex v -> -v sends edge i to edge k-1-i, reversed.
        let mut out = 0;
        for i in 0..k {
            if b >> i & 1 == 0 {
                out |= 1 << (k - 1 - i);
            }
        }
        out
    };
    let canon = |b: u32| (0..k).flat_map(|r| [rotate(b, r), reflect(rotate(b, r))]).min().expect("k > 0");
    (0..=mask).map(canon).collect::<BTreeSet<_>>().len()
}

fn orbit_counts() -> Outcome {
    // Burnside: identity fixes 2^k, the k-1 rotations and the reflections
    // through vertices fix only the two directed cycles (k = 5) or the
    // 2-periodic ones (k = 4).
    let burnside5 = (32 + 4 * 2) / 10;
    let burnside4 = (16 + 4 * 2 + 2 * 4) / 8;
    let (o4, o5) = (orientation_orbit_count(4), orientation_orbit_count(5));
    let (b4, b5) = (brute_orbits(4), brute_orbits(5));
    outcome(
        o4 == 4 && o5 == 4 && b4 == burnside4 && b5 == burnside5 && o4 == b4 && o5 == b5,
        format!("k=4: {o4} (brute force {b4}, formula {burnside4}); k=5: {o5} (brute force {b5}, formula {burnside5})"),
    )
}

fn unbalanced_labels(g: &OrientedGraph) -> BTreeSet<String> {
    find_unbalanced_small_cycles(g).into_iter().map(|(_, c)| c.label()).collect()
}

fn constructions() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();

    let a = graph("no_static");
    let gates_a = a.girth_or_inf() >= 5 && unbalanced_labels(&a) == BTreeSet::from(["C5(3,2)".to_string()]);
    if gates_a {
        let none = [0.1, 0.5, 0.9].into_iter().all(|d| {
            let (cfg, vt) = solve(&a, d);
            find_static(&cfg, &vt).is_none()
        });
        ok &= none;
        notes.push(format!("no_static: gates pass, static absent at 0.1/0.5/0.9: {none}"));
    } else {
        notes.push("no_static: reconstruction fails its gates, skipped".into());
    }

    let b_gated = unverified_fixtures().iter().any(|d| d.name == "no_walking_together");
    notes.push(if b_gated {
        "no_walking_together: SKIP, no reconstruction passes its gates (ships as unverified)".into()
    } else {
        "no_walking_together: missing".into()
    });

    let c = graph("no_2chase");
    let k33 = matches!(has_k33_subdivision(&c), Ok(Some(_)));
    let gates_c = c.is_strongly_connected()
        && c.girth_or_inf() >= 5
        && unbalanced_labels(&c) == BTreeSet::from(["C5(4,1)".to_string()])
        && k33;
    if gates_c {
        let none = [0.3, 0.6].into_iter().all(|d| {
            let (cfg, vt) = solve(&c, d);
            find_chase(&cfg, &vt, 2).is_none()
        });
        ok &= none;
        notes.push(format!("no_2chase: gates pass (K3,3 found), 2-chase absent at 0.3/0.6: {none}"));
    } else {
        notes.push("no_2chase: reconstruction fails its gates, skipped".into());
    }

    let detail = notes.join("; ");
    if !ok {
        Fail(detail)
    } else if !gates_a && !gates_c {
        Skip(detail)
    } else {
        Pass(detail)
    }
}

fn solver_hygiene() -> Outcome {
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_sym = 0.0f64;
    let mut runs = 0;
    let mut ok = true;
    for doc in all_fixtures().into_iter().chain(unverified_fixtures()) {
        for delta in [0.3, 0.5, 0.9] {
            let (_, vt) = solve(&doc.graph, delta);
            runs += 1;
            for w in vt.residuals().windows(2) {
                let excess = w[1] - (delta + 1e-9) * w[0];
                worst_excess = worst_excess.max(excess);
                if excess > 0.0 {
                    ok = false;
                    println!("      {} at {delta}: residual {:.3e} after {:.3e}", doc.name, w[1], w[0]);
                }
            }
            worst_sym = worst_sym.max(vt.antisymmetry_defect()).max(vt.diagonal_defect());
        }
    }
    ok &= worst_sym <= 2e-9;
    outcome(
        ok,
        format!("{runs} solves at 0.3/0.5/0.9: max r_(k+1) - (delta+1e-9) r_k = {worst_excess:.1e}, max antisymmetry/diagonal {worst_sym:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("gamma thresholds", gamma_thresholds),
        ("worked examples", worked_examples),
        ("girth-6 bracket", char6_bracket),
        ("oracle equivalence", oracle_equivalence),
        ("pure equilibria", pure_structure),
        ("equilibrium existence", existence_fixtures),
        ("outerplanar theorem", outerplanar_theorem),
        ("orbit counts", orbit_counts),
        ("constructions", constructions),
        ("solver hygiene", solver_hygiene),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match result {
            Pass(d) => ("PASS", d),
            Skip(d) => ("SKIP", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
    }
    println!("acceptance: {} criteria, {failed} failed", criteria.len());
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
