//! The simplicity dichotomy on four small graphs: the algebra is simple
//! exactly when every cycle has an entry (condition (L)) and every vertex is
//! reachable from every infinite walk (cofinality). Run with:
//!
//! ```text
//! cargo run --example simplicity
//! ```

use exelgraph::ideals;
use exelgraph::Graph;

fn show(name: &str, dsl: &str) {
    let g = Graph::parse(dsl).expect("fixture parses");
    let s = ideals::simplicity(&g);
    println!("{name}:");
    println!("  condition (L): {}", s.topologically_free);
    if let Some(c) = &s.entryless_cycle {
        println!("    entryless cycle: {}", c.label(&g));
    }
    println!("  cofinal: {}", s.irreducible);
    if let Some((v, c)) = &s.cofinality_failure {
        println!(
            "    vertex {} is not reachable from the cycle {}",
            g.vertex_name(*v),
            c.label(&g)
        );
    }
    println!("  simple: {}", s.simple);
    println!();
}

fn main() {
    // A single loop is cofinal but the loop has no entry: not simple.
    show("single loop", "vertex v\nedge e r=v s=v");

    // Two loops at one vertex: each loop's entry is the other loop. Simple.
    show(
        "double loop",
        "vertex v\nedge e r=v s=v\nedge f r=v s=v",
    );

    // A two-cycle has no entry either; the algebra keeps a circle of
    // characters.
    show(
        "two-cycle",
        "vertex u\nvertex v\nedge a r=u s=v\nedge b r=v s=u",
    );

    // A loop feeding another loop fails both halves: the downstream loop has
    // no entry, and walks absorbed there never see the upstream vertex.
    show(
        "loop-bridge-loop",
        "vertex v\nvertex w\nedge e r=v s=v\nedge h r=v s=w\nedge k r=w s=w",
    );
}
