use std::collections::BTreeSet;

use oriented_pursuit::characterize::{girth5_classification, tree_winner, Girth5Class, WinnerVerdict};
use oriented_pursuit::fixtures::{all_fixtures, any_fixture, fixture, fixture_names, unverified_fixtures};
use oriented_pursuit::io::{parse_document, parse_graph, serialize_document, serialize_graph};
use oriented_pursuit::report::analyze;
use oriented_pursuit::Error;

#[test]
fn every_fixture_round_trips() {
    for doc in all_fixtures().into_iter().chain(unverified_fixtures()) {
        let text = serialize_document(&doc);
        let back = parse_document(&doc.name, &text).unwrap();
        assert_eq!(back, doc, "{}", doc.name);
        assert_eq!(serialize_document(&back), text, "{} is not byte-stable", doc.name);
    }
}

#[test]
fn metadata_matches_analysis() {
    for doc in all_fixtures().into_iter().chain(unverified_fixtures()) {
        let a = analyze(&doc.name, &doc.graph);
        let name = &doc.name;
        if let Some(girth) = doc.meta("girth") {
            let got = a.girth.map_or("inf".to_string(), |g| g.to_string());
            assert_eq!(got, girth, "{name} girth");
        }
        if let Some(sc) = doc.meta("strongly_connected") {
            assert_eq!(a.strongly_connected.to_string(), sc, "{name} strong connectivity");
        }
        if let Some(tree) = doc.meta("tree") {
            assert_eq!(a.tree.to_string(), tree, "{name} tree");
        }
        if let Some(op) = doc.meta("outerplanar") {
            let got = a.outerplanarity.as_ref().expect("within the size cap").outerplanar;
            assert_eq!(got.to_string(), op, "{name} outerplanarity");
        }
        if let Some(ub) = doc.meta("unbalanced") {
            let classes: BTreeSet<&str> = a.unbalanced_cycles.iter().map(|c| c.class.as_str()).collect();
            let got = if classes.is_empty() { "none".to_string() } else { classes.into_iter().collect::<Vec<_>>().join(",") };
            assert_eq!(got, ub, "{name} unbalanced cycles");
        }
        if doc.meta("k33_left").is_some() {
            assert_eq!(a.k33_subdivision, Some(true), "{name} K3,3");
        }
        if let Some(class) = doc.meta("girth5_class") {
            let got = match girth5_classification(&doc.graph).unwrap() {
                Girth5Class::HasStatic { .. } => "HasStatic",
                Girth5Class::FiveCycleCore { .. } => "FiveCycleCore",
            };
            assert_eq!(got, class, "{name} girth-5 class");
        }
        if let (Some(x), Some(y), Some(w)) = (doc.meta("x"), doc.meta("y"), doc.meta("winner")) {
            let g = &doc.graph;
            let verdict = tree_winner(g, g.vertex_or_err(x).unwrap(), g.vertex_or_err(y).unwrap()).unwrap();
            assert_eq!(format!("{verdict:?}"), w, "{name} tree winner");
        }
    }
}

#[test]
fn catalog_lookup() {
    assert_eq!(fixture_names().count(), all_fixtures().len());
    assert!(fixture("c5").is_ok());
    assert!(fixture("no_walking_together").is_err());
    assert_eq!(any_fixture("no_walking_together").unwrap().meta("status"), Some("unverified"));
    assert!(matches!(fixture("nope"), Err(Error::InvalidParameter(_))));
}

#[test]
fn tree_fixtures_are_won_by_y() {
    for name in ["tree_even", "tree_odd"] {
        let doc = fixture(name).unwrap();
        let g = &doc.graph;
        let (x, y) = (g.vertex("x").unwrap(), g.vertex("y").unwrap());
        assert_eq!(tree_winner(g, x, y).unwrap(), WinnerVerdict::YWins);
    }
}

fn error_lines(text: &str) -> Vec<(usize, String)> {
    match parse_graph(text) {
        Err(Error::Parse(errs)) => errs.into_iter().map(|e| (e.line, e.message)).collect(),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn parse_errors_name_the_line() {
    let errs = error_lines("a -> b\nb -> c\na -> b\n");
    assert_eq!(errs.len(), 1);
    assert_eq!(errs[0].0, 3);
    assert!(errs[0].1.contains("line 1"), "{}", errs[0].1);

    let errs = error_lines("a -> b\nc -> b\nb -> c\n");
    assert_eq!(errs[0].0, 3);
    assert!(errs[0].1.contains("anti-parallel"));

    let errs = error_lines("a -> a\nb -> c d\n#@ = 3\n");
    assert_eq!(errs.iter().map(|e| e.0).collect::<Vec<_>>(), vec![1, 2, 3]);
}

#[test]
fn structural_rejections() {
    assert!(matches!(parse_graph(""), Err(Error::InvalidGraph(_))));
    assert!(matches!(parse_graph("# only a comment\n"), Err(Error::InvalidGraph(_))));
    assert!(matches!(parse_graph("a -> b\nc -> d\n"), Err(Error::InvalidGraph(_))));
}

#[test]
fn serialization_is_canonical() {
    let g = parse_graph("# comment\n  b->c  \na -> b # trailing\n").unwrap();
    let text = serialize_graph(&g);
    assert_eq!(parse_graph(&text).unwrap(), g);
    assert_eq!(text.lines().count(), 2);
}
