//! Bundled graph documents.
//!
//! `unverified` fixtures failed a gate they were built to pass and are kept
//! apart from the catalog proper.

use crate::error::{Error, Result};
use crate::io::{parse_document, GraphDocument};

const CATALOG: &[(&str, &str)] = &[
    ("balanced_c4_alternating", include_str!("../fixtures/balanced_c4_alternating.graph")),
    ("balanced_c5_mixed", include_str!("../fixtures/balanced_c5_mixed.graph")),
    ("c3", include_str!("../fixtures/c3.graph")),
    ("c4", include_str!("../fixtures/c4.graph")),
    ("c5", include_str!("../fixtures/c5.graph")),
    ("c6", include_str!("../fixtures/c6.graph")),
    ("c7", include_str!("../fixtures/c7.graph")),
    ("c8", include_str!("../fixtures/c8.graph")),
    ("no_static", include_str!("../fixtures/no_static.graph")),
    ("no_2chase", include_str!("../fixtures/no_2chase.graph")),
    ("outerplanar_composite", include_str!("../fixtures/outerplanar_composite.graph")),
    ("outerplanar_squares", include_str!("../fixtures/outerplanar_squares.graph")),
    ("path3", include_str!("../fixtures/path3.graph")),
    ("tree_even", include_str!("../fixtures/tree_even.graph")),
    ("tree_odd", include_str!("../fixtures/tree_odd.graph")),
    ("unbalanced_c4_22", include_str!("../fixtures/unbalanced_c4_22.graph")),
    ("unbalanced_c4_31", include_str!("../fixtures/unbalanced_c4_31.graph")),
    ("unbalanced_c5_32", include_str!("../fixtures/unbalanced_c5_32.graph")),
    ("unbalanced_c5_41", include_str!("../fixtures/unbalanced_c5_41.graph")),
    ("wt2c", include_str!("../fixtures/wt2c.graph")),
];

const UNVERIFIED: &[(&str, &str)] = &[("no_walking_together", include_str!("../fixtures/unverified/no_walking_together.graph"))];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(n, _)| *n)
}

/// A catalog fixture by name.
pub fn fixture(name: &str) -> Result<GraphDocument> {
    let (n, text) = CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::InvalidParameter(format!("no fixture named `{name}`")))?;
    parse_document(n, text)
}

pub fn all_fixtures() -> Vec<GraphDocument> {
    CATALOG.iter().map(|(n, text)| parse_document(n, text).expect("bundled fixtures parse")).collect()
}

pub fn unverified_fixtures() -> Vec<GraphDocument> {
    UNVERIFIED.iter().map(|(n, text)| parse_document(n, text).expect("bundled fixtures parse")).collect()
}

/// Fixture by name, falling back to the unverified set.
pub fn any_fixture(name: &str) -> Result<GraphDocument> {
    fixture(name).or_else(|e| {
        UNVERIFIED.iter().find(|(n, _)| *n == name).map(|(n, text)| parse_document(n, text)).unwrap_or(Err(e))
    })
}
