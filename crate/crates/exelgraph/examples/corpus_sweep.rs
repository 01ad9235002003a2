//! Sweeps every small graph plus a random batch and cross-checks the
//! structure equivalences on each one. Run with:
//!
//! ```text
//! cargo run --release --example corpus_sweep
//! ```

use exelgraph::corpus::{self, CorpusOptions};

fn main() {
    let opts = CorpusOptions::default();
    println!(
        "sweeping graphs with <= {} vertices and <= {} edges, plus {} random graphs (seed {})",
        opts.max_vertices, opts.max_edges, opts.random, opts.seed
    );
    let start = std::time::Instant::now();
    let report = corpus::run(&opts).expect("sweep stays within resource bounds");
    let elapsed = start.elapsed();
    print!("{}", report.render_text());
    println!("  elapsed: {:.2?}", elapsed);
    std::process::exit(if report.passed() { 0 } else { 2 });
}
