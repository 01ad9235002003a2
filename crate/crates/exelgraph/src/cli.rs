//! Command-line driver.
//!
//! Four subcommands: `analyze` prints the full structure catalogue of one
//! graph, `verify` runs the cross-check suites on one graph, `corpus` sweeps
//! generated graphs, and `validate` reports the input checks only. Exit
//! codes: 0 success, 1 invalid input, 2 property violation, 3 resource
//! bound exceeded.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::corpus::{self, CorpusOptions};
use crate::cylinder;
use crate::error::Error;
use crate::graph::Graph;
use crate::report::{self, AnalyzeOptions};

#[derive(Parser)]
#[command(
    name = "exelgraph",
    version,
    about = "Structure catalogue and dynamics cross-checks for finite directed graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the full structure catalogue of a graph
    Analyze {
        /// Graph description file
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Depth of the embedded identity suite
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Seed for the randomized faithfulness check
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Run every cross-check suite on a graph
    Verify {
        /// Graph description file
        file: PathBuf,
        /// Depth of the identity suite
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Step budget for the cluster-point searches
        #[arg(long)]
        orbit_bound: Option<usize>,
        /// Seed for the randomized faithfulness check
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Sweep generated graphs and assert the structure equivalences
    Corpus {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        /// Number of random graphs appended to the exhaustive sweep
        #[arg(long, default_value_t = 200)]
        random: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Parse a graph file and report the input checks
    Validate {
        /// Graph description file
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Parses the command line and runs it, returning the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::Io(_) | Error::NotAnalyzable(_) | Error::DepthTooSmall { .. } => 1,
        Error::PropertyViolation(_) => 2,
        Error::BoundExceeded { .. } => 3,
    }
}

fn read_graph(file: &PathBuf) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", file.display())))?;
    Ok(Graph::parse(&text)?)
}

/// Writes to stdout, treating a closed pipe as a normal early exit.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout();
    let outcome = out.write_all(s.as_bytes()).and_then(|_| out.flush());
    if let Err(e) = outcome {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(1);
    }
}

fn print_json(value: &serde_json::Value) {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    emit(&format!("{text}\n"));
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::Analyze {
            file,
            format,
            depth,
            seed,
        } => {
            let g = read_graph(&file)?;
            let opts = AnalyzeOptions {
                verify_depth: depth,
                seed,
                ..AnalyzeOptions::default()
            };
            let rep = report::analyze(&g, &opts)?;
            match format {
                Format::Text => emit(&rep.render_text()),
                Format::Json => print_json(&rep.to_json()),
            }
            Ok(0)
        }
        Cmd::Verify {
            file,
            depth,
            orbit_bound,
            seed,
        } => {
            let g = read_graph(&file)?;
            let validity = g.validate();
            if !validity.analyzable() {
                return Err(Error::NotAnalyzable(describe_invalid(&g)));
            }
            cmd_verify(&g, depth, orbit_bound, seed)
        }
        Cmd::Corpus {
            max_vertices,
            max_edges,
            random,
            seed,
            format,
        } => {
            let opts = CorpusOptions {
                max_vertices,
                max_edges,
                random,
                seed,
                ..CorpusOptions::default()
            };
            let rep = corpus::run(&opts)?;
            match format {
                Format::Text => emit(&rep.render_text()),
                Format::Json => print_json(&rep.to_json()),
            }
            Ok(if rep.passed() { 0 } else { 2 })
        }
        Cmd::Validate { file, format } => {
            let g = read_graph(&file)?;
            let validity = g.validate();
            match format {
                Format::Text => {
                    let yn = |b: bool| if b { "yes" } else { "no" };
                    let mut out = String::new();
                    out.push_str(&format!(
                        "vertices: {}, edges: {}\n",
                        g.vertex_count(),
                        g.edge_count()
                    ));
                    out.push_str(&format!("no sources: {}\n", yn(validity.no_sources)));
                    out.push_str(&format!("shift-total: {}\n", yn(validity.shift_total)));
                    out.push_str(&format!("row-finite: {}\n", yn(validity.row_finite)));
                    out.push_str(&format!("column-finite: {}\n", yn(validity.column_finite)));
                    if !validity.sources.is_empty() {
                        let names: Vec<&str> =
                            validity.sources.iter().map(|&v| g.vertex_name(v)).collect();
                        out.push_str(&format!("vertices receiving no edge: {}\n", names.join(", ")));
                    }
                    if !validity.sinks.is_empty() {
                        let names: Vec<&str> =
                            validity.sinks.iter().map(|&v| g.vertex_name(v)).collect();
                        out.push_str(&format!("vertices emitting no edge: {}\n", names.join(", ")));
                    }
                    out.push_str(&format!("analyzable: {}\n", yn(validity.analyzable())));
                    emit(&out);
                }
                Format::Json => print_json(&report::validity_json(&g, &validity)),
            }
            Ok(if validity.analyzable() { 0 } else { 1 })
        }
    }
}

fn describe_invalid(g: &Graph) -> String {
    let v = g.validate();
    let mut reasons = Vec::new();
    if !v.no_sources {
        let names: Vec<&str> = v.sources.iter().map(|&x| g.vertex_name(x)).collect();
        reasons.push(format!("vertices receiving no edge: {}", names.join(", ")));
    }
    if !v.shift_total {
        let names: Vec<&str> = v.sinks.iter().map(|&x| g.vertex_name(x)).collect();
        reasons.push(format!("vertices emitting no edge: {}", names.join(", ")));
    }
    if reasons.is_empty() {
        "graph fails validation".to_string()
    } else {
        reasons.join("; ")
    }
}

/// Runs the identity suite plus the structural cross-checks on one graph,
/// printing one line per suite and every counterexample in full.
fn cmd_verify(g: &Graph, depth: usize, orbit_bound: Option<usize>, seed: u64) -> Result<i32, Error> {
    let mut failed = false;
    let mut out = String::new();

    let identities = cylinder::verify_identities(g, depth, seed);
    out.push_str(&format!("identity suite (depth {depth}):\n"));
    for check in &identities.checks {
        out.push_str(&format!(
            "  {}: {} ({} instances)\n",
            check.name,
            if check.pass { "pass" } else { "FAIL" },
            check.instances
        ));
        if let Some(ce) = &check.counterexample {
            out.push_str(&format!("    counterexample: {ce}\n"));
            failed = true;
        }
    }

    let opts = CorpusOptions {
        identity_depth: None,
        orbit_bound,
        seed,
        ..CorpusOptions::default()
    };
    let violations = corpus::check_graph(g, &opts)?;
    for name in [
        "topfree-dual",
        "cofinal-ideals",
        "condition-k-clusters",
        "cluster-search-confirmed",
        "heads-correspondence",
        "invariant-roundtrip",
    ] {
        let offending: Vec<_> = violations.iter().filter(|v| v.check == name).collect();
        if offending.is_empty() {
            out.push_str(&format!("{name}: pass\n"));
        } else {
            failed = true;
            out.push_str(&format!("{name}: FAIL\n"));
            for v in offending {
                out.push_str(&format!("  {}\n", v.detail));
            }
        }
    }

    out.push_str(if failed {
        "result: FAIL\n"
    } else {
        "result: all suites passed\n"
    });
    emit(&out);
    Ok(if failed { 2 } else { 0 })
}
