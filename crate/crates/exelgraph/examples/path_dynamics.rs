//! Eventually periodic paths and the shift: presentations, preimages,
//! cylinder containment in the almost-periodic sets, topological freeness,
//! and cluster points. Run with:
//!
//! ```text
//! cargo run --example path_dynamics
//! ```

use exelgraph::dynamics::{self, EvPath};
use exelgraph::{Graph, Path};

fn main() {
    let g = Graph::parse(
        "vertex v\nvertex w\nedge e r=v s=v\nedge h r=v s=w\nedge k r=w s=w",
    )
    .unwrap();

    // A path is written head|cycle; presentations normalize, so absorbing
    // the head into the cycle or unrolling the cycle changes nothing.
    let xi = EvPath::parse(&g, "e,h|k").unwrap();
    println!("xi = {}", xi.label(&g));
    println!("sigma(xi) = {}", xi.shift(&g, 1).label(&g));
    println!("sigma^2(xi) = {}", xi.shift(&g, 2).label(&g));
    for p in xi.preimages(&g) {
        println!("preimage: {}", p.label(&g));
    }
    println!(
        "same point written differently: {}",
        EvPath::parse(&g, "e,h,k|k,k").unwrap() == xi
    );

    // Z(mu) lies in {sigma^m = sigma^n} when every extension of mu is forced
    // around a cycle. Z(h) forces k forever, so sigma and sigma^2 agree on
    // it, while paths starting with e can still branch at the bridge.
    let z_h = Path::parse(&g, "h").unwrap();
    let z_e = Path::parse(&g, "e").unwrap();
    println!();
    println!(
        "Z(h) inside {{sigma^1 = sigma^2}}: {}",
        dynamics::cylinder_in_hmn(&g, &z_h, 1, 2)
    );
    println!(
        "Z(e) inside {{sigma^0 = sigma^1}}: {}",
        dynamics::cylinder_in_hmn(&g, &z_e, 0, 1)
    );

    // Topological freeness computed two independent ways: condition (L) on
    // cycles, and a direct search for a cylinder trapped in an equalizer.
    println!();
    match dynamics::periodic_cylinder_witness(&g) {
        Some((mu, p)) => println!(
            "not topologically free: Z({}) is fixed by sigma^{p}",
            mu.label(&g)
        ),
        None => println!("topologically free"),
    }
    println!(
        "dual computation agrees: {:?}",
        dynamics::topologically_free(&g)
    );

    // Neither loop here can be approached by other tail-equivalent paths:
    // each loop vertex has a single return path, so its periodic point
    // stands isolated. With two loops at one vertex the picture flips.
    println!();
    let two = Graph::parse("vertex v\nedge e r=v s=v\nedge f r=v s=v").unwrap();
    for (graph, text) in [(&g, "|e"), (&g, "|k"), (&g, "h|k"), (&two, "|e")] {
        let point = EvPath::parse(graph, text).unwrap();
        let rep = dynamics::is_cluster_point(
            graph,
            &point,
            2,
            dynamics::default_orbit_bound(graph, 2),
        )
        .unwrap();
        match &rep.witness {
            Some(w) => println!(
                "{} is a cluster point, witnessed by {}",
                point.label(graph),
                w.label(graph)
            ),
            None => println!("{} is isolated in its orbit closure", point.label(graph)),
        }
    }
}
