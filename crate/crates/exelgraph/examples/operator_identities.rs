//! Finite-rank operators on the cylinder-function module: multiplication
//! operators decompose into rank-one building blocks, with exact matrices as
//! witnesses, and the nine-identity suite checks it all wholesale. Run with:
//!
//! ```text
//! cargo run --example operator_identities
//! ```

use exelgraph::cylinder::{self, CylFun, CylOperator};
use exelgraph::scalar::Scalar;
use exelgraph::{Graph, Path};

fn main() {
    let g = Graph::parse("vertex v\nedge e r=v s=v\nedge f r=v s=v").unwrap();
    let chi = |text: &str| CylFun::chi(&Path::parse(&g, text).unwrap());

    // Multiplication by chi(Z(e)) equals c(s(e)) Theta_{chi(e), chi(e)}:
    // the operator that projects onto paths through e. Compare matrices on
    // the depth-1 basis.
    let mult = CylOperator::mult(chi("e"));
    let theta = CylOperator::theta(chi("e"), chi("e")).scaled(&Scalar::integer(2));
    println!("mult(chi(e)) on the depth-1 basis:");
    print!("{}", mult.matrix(&g, 1).unwrap().render(&g));
    println!("2 Theta(chi(e), chi(e)) on the same basis:");
    print!("{}", theta.matrix(&g, 1).unwrap().render(&g));
    println!("agree: {}", mult.agrees_with(&g, &theta, 1).unwrap());

    // The Cuntz-Krieger sum at the vertex: rank-one terms over incoming
    // edges resolve the vertex projection.
    let ck = CylOperator::theta(chi("e"), chi("e"))
        .scaled(&Scalar::integer(2))
        .plus(CylOperator::theta(chi("f"), chi("f")).scaled(&Scalar::integer(2)));
    let unit = CylOperator::mult(CylFun::unit(&g));
    println!();
    println!(
        "sum over r(x) = v of c(s(x)) Theta(chi(x), chi(x)) equals mult(chi(v)): {}",
        ck.agrees_with(&g, &unit, 1).unwrap()
    );

    // Applying an operator below its natural depth is refused, not fudged.
    let err = theta.apply(&g, &CylFun::unit(&g), 0).unwrap_err();
    println!();
    println!("applying at depth 0: {err}");

    // The whole suite, exhaustively over the depth <= 3 basis.
    let report = cylinder::verify_identities(&g, 3, 7);
    println!();
    println!("identity suite at depth 3:");
    for check in &report.checks {
        println!(
            "  {}: {} ({} instances)",
            check.name,
            if check.pass { "pass" } else { "FAIL" },
            check.instances
        );
    }
}
