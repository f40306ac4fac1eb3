//! Parse a graph document and print its structural summary as JSON.
//! Pass a path to analyze a file instead of the built-in text.

use oriented_pursuit::io::{parse_document, read_graph_file};
use oriented_pursuit::report::analyze;

const TEXT: &str = "# two squares sharing an edge\n#@ origin = example\na -> b\nb -> c\nc -> d\nd -> a\nb -> e\ne -> f\nf -> a\n";

fn main() -> oriented_pursuit::Result<()> {
    let doc = match std::env::args().nth(1) {
        Some(path) => read_graph_file(path.as_ref())?,
        None => parse_document("squares", TEXT)?,
    };
    println!("{}", serde_json::to_string_pretty(&analyze(&doc.name, &doc.graph)).expect("serializable"));
    Ok(())
}
