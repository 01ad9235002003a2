//! Structure catalogue for finite directed graphs.
//!
//! A finite directed graph with no sources and a total shift carries a
//! one-sided path space whose dynamics decide the structure of the
//! associated operator algebra. This crate computes that catalogue exactly:
//! simplicity, the lattice of gauge-invariant ideals, the primitive ideal
//! space with its circle families, and the transfer-operator identities that
//! tie the algebra to the dynamics, all in Gaussian-rational arithmetic with
//! no tolerances.
//!
//! Every structural verdict is cross-checked against an independent
//! computation: condition (L) against a direct search for periodic
//! cylinders, cofinality against the ideal count, condition (K) against
//! cluster points of orbits, maximal heads against discrete cycles. The
//! [`corpus`] module sweeps these equivalences over every small graph.
//!
//! Modules, bottom up:
//!
//! * [`graph`]: graphs, paths, cycles, reachability, the input DSL.
//! * [`ideals`]: saturated hereditary sets, maximal heads, the primitive
//!   ideal catalogue, simplicity.
//! * [`dynamics`]: eventually periodic paths, the shift, topological
//!   freeness, cluster points, invariant sets.
//! * [`scalar`] and [`cylinder`]: exact scalars, cylinder functions, the
//!   transfer operator, finite-rank operators, the identity suite.
//! * [`report`], [`corpus`], [`cli`]: the assembled catalogue, the sweep
//!   harness, and the command-line frontend.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --example analyze            # full catalogue of one graph
//! cargo run --example simplicity         # the simplicity dichotomy
//! cargo run --example ideal_lattice      # gauge-invariant ideals and covers
//! cargo run --example primitive_ideals   # heads, circle families, discrete cycles
//! cargo run --example path_dynamics      # shifts, preimages, cluster points
//! cargo run --example transfer_operator  # alpha, L, inner products
//! cargo run --example operator_identities # rank-one calculus and matrices
//! cargo run --release --example corpus_sweep # the exhaustive cross-check
//! ```

pub mod cli;
pub mod corpus;
pub mod cylinder;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod ideals;
pub mod report;
pub mod scalar;

pub use error::Error;
pub use graph::{Graph, ParseError, Path, ValidityReport, VertexSet};
