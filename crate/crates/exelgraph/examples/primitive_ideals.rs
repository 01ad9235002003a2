//! The primitive ideal catalogue: maximal heads, the split into honest
//! gauge-invariant primitives and circle families, and the matching discrete
//! cycles on the dynamical side. Run with:
//!
//! ```text
//! cargo run --example primitive_ideals
//! ```

use exelgraph::dynamics;
use exelgraph::ideals;
use exelgraph::Graph;

fn show(name: &str, dsl: &str) {
    let g = Graph::parse(dsl).unwrap();
    let bound = ideals::default_subset_bound();

    println!("{name}:");
    for head in ideals::maximal_heads(&g, bound).unwrap() {
        match &head.witness_cycle {
            Some(c) => println!(
                "  head {} carries the entryless cycle {}",
                head.vertices.label(&g),
                c.label(&g)
            ),
            None => println!("  head {} has entries everywhere", head.vertices.label(&g)),
        }
    }

    let catalog = ideals::primitive_catalog(&g, bound).unwrap();
    println!(
        "  {} gauge-invariant primitive(s), {} circle familie(s)",
        catalog.gauge_invariant.len(),
        catalog.circle_families.len()
    );

    // Each circle family is mirrored by a discrete cycle: a periodic orbit
    // isolated among the paths tail-equivalent to it.
    for dc in dynamics::discrete_cycles(&g) {
        println!(
            "  discrete cycle {} sits under the head {}",
            dc.label(&g),
            dynamics::maximal_head_of_cycle(&g, &dc.orbit).label(&g)
        );
    }
    println!(
        "  heads correspondence: {}",
        dynamics::heads_correspondence(&g, bound).unwrap()
    );
    println!();
}

fn main() {
    show("double loop", "vertex v\nedge e r=v s=v\nedge f r=v s=v");
    show("single loop", "vertex v\nedge e r=v s=v");
    show(
        "loop-bridge-loop",
        "vertex v\nvertex w\nedge e r=v s=v\nedge h r=v s=w\nedge k r=w s=w",
    );
}
