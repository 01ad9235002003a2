//! Full structure catalogue of one graph, as text and as JSON. Run with:
//!
//! ```text
//! cargo run --example analyze [-- path/to/file.graph]
//! ```

use exelgraph::report::{self, AnalyzeOptions};
use exelgraph::Graph;

fn main() {
    let default = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/graphs/loop_bridge_loop.graph"
    );
    let path = std::env::args().nth(1).unwrap_or_else(|| default.to_string());
    let text = std::fs::read_to_string(&path).expect("graph file is readable");
    let g = Graph::parse(&text).expect("graph file parses");

    let rep = report::analyze(&g, &AnalyzeOptions::default()).expect("graph is analyzable");
    print!("{}", rep.render_text());
    println!();
    println!("the same report as JSON:");
    println!("{}", serde_json::to_string_pretty(&rep.to_json()).unwrap());
}
