//! Cross-check the structural predicates against the solver on every
//! connected oriented graph with up to four vertices and a few samples.

use std::collections::BTreeMap;

use oriented_pursuit::verify::{enumerate_connected_oriented_graphs, run_sweep, sample_graphs};

fn main() {
    let mut graphs: Vec<_> = (1..=4).flat_map(enumerate_connected_oriented_graphs).collect();
    graphs.extend(sample_graphs(1, 20, 6, 7));
    let records = run_sweep(&graphs, &[0.3, 0.5]);
    let mut tally: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for r in &records {
        let e = tally.entry(format!("{:?}", r.predicate)).or_default();
        e.0 += 1;
        e.1 += usize::from(!r.matched);
    }
    println!("{} graphs", graphs.len());
    for (p, (n, bad)) in tally {
        println!("{p:>14}: {n} records, {bad} mismatched");
    }
}
