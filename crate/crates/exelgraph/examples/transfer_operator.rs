//! Cylinder functions, the shift endomorphism alpha, and the averaging
//! transfer operator L, all in exact Gaussian-rational arithmetic. Run with:
//!
//! ```text
//! cargo run --example transfer_operator
//! ```

use exelgraph::cylinder::{alpha, inner, right_act, transfer, CylFun};
use exelgraph::scalar::Scalar;
use exelgraph::{Graph, Path};

fn table(g: &Graph, name: &str, f: &CylFun) {
    let parts: Vec<String> = f
        .entries()
        .iter()
        .map(|(p, v)| format!("{}: {}", p.label(g), v))
        .collect();
    println!("{name} = {{{}}} at depth {}", parts.join(", "), f.depth());
}

fn main() {
    let g = Graph::parse(
        "vertex v\nvertex w\nedge e r=v s=v\nedge h r=v s=w\nedge k r=w s=w",
    )
    .unwrap();
    let chi = |text: &str| CylFun::chi(&Path::parse(&g, text).unwrap());

    // alpha composes with the shift, so it pushes an indicator one edge
    // deeper; L averages over preimages with the local weight 1/c(s(.)).
    let f = chi("h");
    table(&g, "chi(h)", &f);
    table(&g, "alpha(chi(h))", &alpha(&g, &f));
    table(&g, "L(chi(h))", &transfer(&g, &f));
    table(&g, "L(chi(h,k))", &transfer(&g, &chi("h,k")));

    // The transfer law L(alpha(f) h) = f L(h), the identity behind the
    // whole bimodule structure, on one concrete pair.
    let h = chi("e,h");
    let lhs = transfer(&g, &alpha(&g, &f).mul(&h));
    let rhs = f.mul(&transfer(&g, &h));
    println!();
    table(&g, "L(alpha(chi(h)) chi(e,h))", &lhs);
    table(&g, "chi(h) L(chi(e,h))", &rhs);
    println!("transfer law holds: {}", lhs.same_function(&g, &rhs));

    // Inner products land in the functions of one depth less; edges are
    // orthogonal with <chi(Z(e)), chi(Z(e))> = c(s(e))^-1 chi(Z(s(e))).
    println!();
    table(&g, "<chi(h), chi(h)>", &inner(&g, &chi("h"), &chi("h")));
    table(&g, "<chi(h), chi(e)>", &inner(&g, &chi("h"), &chi("e")));
    table(
        &g,
        "<chi(h), i chi(h)>",
        &inner(&g, &chi("h"), &chi("h").scale(&Scalar::i())),
    );

    // The right action multiplies by alpha of a vertex function.
    println!();
    let w_only = CylFun::vertex_chi(g.vertex_by_name("w").unwrap());
    table(&g, "chi(h) . chi(w)", &right_act(&g, &chi("h"), &w_only));
    table(&g, "chi(e) . chi(w)", &right_act(&g, &chi("e"), &w_only));
}
