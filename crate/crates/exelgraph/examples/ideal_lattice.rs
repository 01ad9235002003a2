//! The lattice of saturated hereditary vertex sets, which parametrizes the
//! gauge-invariant ideals, plus the closure operator that generates it. Run
//! with:
//!
//! ```text
//! cargo run --example ideal_lattice
//! ```

use exelgraph::graph::VertexSet;
use exelgraph::ideals;
use exelgraph::Graph;

fn main() {
    // v keeps a private loop, w absorbs everything below it.
    let g = Graph::parse(
        "vertex v\nvertex w\nedge e r=v s=v\nedge h r=v s=w\nedge k r=w s=w",
    )
    .unwrap();

    let bound = ideals::default_subset_bound();
    let sets = ideals::enumerate_sat_hered(&g, bound).expect("two vertices fit any bound");
    let covers = ideals::cover_relations(&sets);

    println!("saturated hereditary sets, smallest first:");
    for (i, h) in sets.iter().enumerate() {
        let above: Vec<String> = covers
            .iter()
            .filter(|&&(low, _)| low == i)
            .map(|&(_, high)| sets[high].label(&g))
            .collect();
        if above.is_empty() {
            println!("  {}", h.label(&g));
        } else {
            println!("  {}  covered by {}", h.label(&g), above.join(", "));
        }
    }

    // {v} is hereditary only through its loop; the bridge h leaks into w, so
    // the closure has to pull w in.
    let just_v = VertexSet::by_names(&g, &["v"]).unwrap();
    println!();
    println!("is {{v}} hereditary: {}", ideals::is_hereditary(&g, just_v));
    println!(
        "closure of {{v}}: {}",
        ideals::sat_hered_closure(&g, just_v).label(&g)
    );

    // The empty set and the full vertex set are always in the lattice; the
    // graph is cofinal exactly when nothing else is.
    println!();
    println!(
        "cofinal: {} ({} sets in the lattice)",
        g.cofinal(),
        sets.len()
    );
}
