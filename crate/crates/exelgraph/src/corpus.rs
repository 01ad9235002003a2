//! Exhaustive and randomized cross-check sweeps over small graphs.
//!
//! The sweep generates every analyzable graph up to a size budget (one
//! representative per relabelling class), adds a batch of seeded random
//! graphs just past that budget, and asserts on each one that the
//! independently computed sides of the structure equivalences agree:
//! Condition (L) against the periodic-cylinder search, cofinality against
//! the ideal count, Condition (K) against cluster points, the discrete
//! cycle/maximal head bijection, the invariant-set roundtrip, and the
//! transfer-operator identity suite.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cylinder;
use crate::dynamics::{self, EvPath};
use crate::error::Error;
use crate::graph::Graph;
use crate::ideals;

/// Sizes and seeds for one sweep.
#[derive(Clone, Debug)]
pub struct CorpusOptions {
    /// Largest vertex count for the exhaustive part.
    pub max_vertices: usize,
    /// Largest edge count for the exhaustive part.
    pub max_edges: usize,
    /// Number of random graphs appended after the exhaustive part.
    pub random: usize,
    /// Seed for the random graphs and for the identity suite's random
    /// function batches.
    pub seed: u64,
    /// Depth for the identity suite, or `None` to skip it.
    pub identity_depth: Option<usize>,
    /// Vertex cap for subset enumeration.
    pub bound: usize,
    /// Step budget for the cluster-point searches, or `None` for the
    /// per-graph default.
    pub orbit_bound: Option<usize>,
}

impl Default for CorpusOptions {
    fn default() -> CorpusOptions {
        CorpusOptions {
            max_vertices: 4,
            max_edges: 6,
            random: 200,
            seed: 7,
            identity_depth: Some(3),
            bound: ideals::default_subset_bound(),
            orbit_bound: None,
        }
    }
}

/// Random graphs are drawn just above the default exhaustive budget.
const RANDOM_VERTICES: std::ops::RangeInclusive<usize> = 5..=6;
const RANDOM_MAX_EDGES: usize = 10;

/// One failed assertion: the offending graph in DSL form, the check that
/// tripped, and what disagreed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub graph: String,
    pub check: String,
    pub detail: String,
}

/// Outcome of a sweep.
#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub graphs_checked: usize,
    pub exhaustive: usize,
    pub random: usize,
    pub checks: Vec<String>,
    pub violations: Vec<Violation>,
}

fn vertex_names(n: usize) -> Vec<String> {
    const LETTERS: [&str; 6] = ["u", "v", "w", "x", "y", "z"];
    if n <= LETTERS.len() {
        LETTERS[..n].iter().map(|s| s.to_string()).collect()
    } else {
        let width = n.to_string().len();
        (0..n).map(|i| format!("v{i:0width$}")).collect()
    }
}

fn edge_names(m: usize) -> Vec<String> {
    const LETTERS: [&str; 10] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
    if m <= LETTERS.len() {
        LETTERS[..m].iter().map(|s| s.to_string()).collect()
    } else {
        let width = m.to_string().len();
        (0..m).map(|i| format!("e{i:0width$}")).collect()
    }
}

/// Every vertex must receive and emit an edge; anything else fails
/// validation, so the enumeration drops it before building a graph.
fn covers(pairs: &[(u8, u8)], n: usize) -> bool {
    let mut received = vec![false; n];
    let mut emitted = vec![false; n];
    for &(r, s) in pairs {
        received[r as usize] = true;
        emitted[s as usize] = true;
    }
    received.into_iter().all(|b| b) && emitted.into_iter().all(|b| b)
}

fn for_each_permutation<F: FnMut(&[usize])>(n: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(perm: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, f: &mut F) {
        if perm.len() == n {
            f(perm);
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                perm.push(i);
                rec(perm, used, n, f);
                perm.pop();
                used[i] = false;
            }
        }
    }
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], n, f);
}

/// Whether `pairs` (sorted) is the lexicographically least member of its
/// vertex-relabelling class. Keeping only these representatives removes the
/// relabelled duplicates the pair enumeration would otherwise emit; every
/// check in the sweep is invariant under relabelling.
fn is_canonical(pairs: &[(u8, u8)], n: usize) -> bool {
    let mut canonical = true;
    for_each_permutation(n, &mut |perm| {
        if !canonical {
            return;
        }
        let mut mapped: Vec<(u8, u8)> = pairs
            .iter()
            .map(|&(r, s)| (perm[r as usize] as u8, perm[s as usize] as u8))
            .collect();
        mapped.sort_unstable();
        if mapped.as_slice() < pairs {
            canonical = false;
        }
    });
    canonical
}

fn build(n: usize, pairs: &[(u8, u8)]) -> Graph {
    let vn = vertex_names(n);
    let en = edge_names(pairs.len());
    let edges: Vec<(String, String, String)> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(r, s))| (en[i].clone(), vn[r as usize].clone(), vn[s as usize].clone()))
        .collect();
    Graph::new(&vn, &edges).expect("generated names are distinct and declared")
}

fn each_multiset<F: FnMut(&[usize])>(len: usize, alphabet: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(buf: &mut Vec<usize>, min: usize, left: usize, alphabet: usize, f: &mut F) {
        if left == 0 {
            f(buf);
            return;
        }
        for c in min..alphabet {
            buf.push(c);
            rec(buf, c, left - 1, alphabet, f);
            buf.pop();
        }
    }
    rec(&mut Vec::with_capacity(len), 0, len, alphabet, f);
}

/// All analyzable graphs with at most `max_vertices` vertices and
/// `max_edges` edges, one per relabelling class, in a deterministic order.
///
/// Edges are multisets of (range, source) pairs; a graph needs at least as
/// many edges as vertices, so sizes below that are skipped.
pub fn exhaustive_graphs(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for m in n..=max_edges {
            each_multiset(m, n * n, &mut |codes| {
                let pairs: Vec<(u8, u8)> =
                    codes.iter().map(|&c| ((c / n) as u8, (c % n) as u8)).collect();
                if covers(&pairs, n) && is_canonical(&pairs, n) {
                    out.push(build(n, &pairs));
                }
            });
        }
    }
    out
}

/// `count` analyzable graphs with 5 or 6 vertices and up to 10 edges,
/// reproducible from the seed. Each draw fixes the sizes and then rejects
/// edge multisets until every vertex receives and emits an edge.
pub fn random_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(RANDOM_VERTICES);
        let m = rng.gen_range(n..=RANDOM_MAX_EDGES);
        loop {
            let pairs: Vec<(u8, u8)> = (0..m)
                .map(|_| (rng.gen_range(0..n) as u8, rng.gen_range(0..n) as u8))
                .collect();
            if covers(&pairs, n) {
                out.push(build(n, &pairs));
                break;
            }
        }
    }
    out
}

fn violation(dsl: &str, check: &str, detail: String) -> Violation {
    Violation {
        graph: dsl.to_string(),
        check: check.to_string(),
        detail,
    }
}

/// Runs every cross-check on one graph. Property disagreements come back as
/// violations; resource-bound failures abort the sweep instead.
pub fn check_graph(g: &Graph, opts: &CorpusOptions) -> Result<Vec<Violation>, Error> {
    let bound = opts.bound;
    let dsl = g.to_dsl();
    let mut out = Vec::new();

    match dynamics::topologically_free(g) {
        Ok(_) => {}
        Err(Error::PropertyViolation(msg)) => out.push(violation(&dsl, "topfree-dual", msg)),
        Err(other) => return Err(other),
    }

    let sets = ideals::enumerate_sat_hered(g, bound)?;
    let cofinal = g.cofinal();
    if cofinal != (sets.len() == 2) {
        out.push(violation(
            &dsl,
            "cofinal-ideals",
            format!(
                "cofinal is {cofinal} but there are {} saturated hereditary sets",
                sets.len()
            ),
        ));
    }

    // Every vertex on a closed walk lies on a simple cycle, so basing a
    // periodic point at each rotation of each simple cycle exercises every
    // eventual-cycle base the cluster criterion can see.
    let k = g.condition_k();
    let mut all_cluster = true;
    let orbit_bound = opts
        .orbit_bound
        .unwrap_or_else(|| dynamics::default_orbit_bound(g, 0));
    for cyc in g.simple_cycles() {
        let edges = cyc.path().edges().to_vec();
        for rot in 0..edges.len() {
            let mut rotated = edges.clone();
            rotated.rotate_left(rot);
            let xi = EvPath::new(g, &[], &rotated).expect("cycle rotations stay composable");
            match dynamics::is_cluster_point(g, &xi, 0, orbit_bound) {
                Ok(rep) => {
                    if !rep.confirmed {
                        out.push(violation(
                            &dsl,
                            "cluster-search-confirmed",
                            format!("orbit search inconclusive at {}", xi.label(g)),
                        ));
                    }
                    all_cluster &= rep.cluster;
                }
                Err(Error::PropertyViolation(msg)) => {
                    out.push(violation(&dsl, "condition-k-clusters", msg))
                }
                Err(other) => return Err(other),
            }
        }
    }
    if k != all_cluster {
        out.push(violation(
            &dsl,
            "condition-k-clusters",
            format!("condition (K) is {k} but all periodic orbits clustering is {all_cluster}"),
        ));
    }

    match dynamics::heads_correspondence(g, bound) {
        Ok(true) => {}
        Ok(false) => out.push(violation(
            &dsl,
            "heads-correspondence",
            "discrete cycles do not match flagged maximal heads".to_string(),
        )),
        Err(other) => return Err(other),
    }

    for &h in &sets {
        if !dynamics::invariant_roundtrip(g, h) {
            out.push(violation(
                &dsl,
                "invariant-roundtrip",
                format!("roundtrip moved {}", h.label(g)),
            ));
        }
    }

    if let Some(depth) = opts.identity_depth {
        let rep = cylinder::verify_identities(g, depth, opts.seed);
        if let Some(fail) = rep.first_failure() {
            out.push(violation(
                &dsl,
                "identity-suite",
                format!(
                    "{} failed: {}",
                    fail.name,
                    fail.counterexample.as_deref().unwrap_or("no counterexample recorded")
                ),
            ));
        }
    }

    Ok(out)
}

fn check_names(opts: &CorpusOptions) -> Vec<String> {
    let mut names = vec![
        "topfree-dual".to_string(),
        "cofinal-ideals".to_string(),
        "condition-k-clusters".to_string(),
        "cluster-search-confirmed".to_string(),
        "heads-correspondence".to_string(),
        "invariant-roundtrip".to_string(),
    ];
    if let Some(depth) = opts.identity_depth {
        names.push(format!("identity-suite (depth {depth})"));
    }
    names
}

/// Generates the corpus and runs every check on every graph, in parallel.
/// Violations come back sorted, so the report is deterministic.
pub fn run(opts: &CorpusOptions) -> Result<CorpusReport, Error> {
    let exhaustive = exhaustive_graphs(opts.max_vertices, opts.max_edges);
    let random = random_graphs(opts.random, opts.seed);
    let ex_count = exhaustive.len();
    let rnd_count = random.len();
    let all: Vec<Graph> = exhaustive.into_iter().chain(random).collect();
    let per_graph: Vec<Result<Vec<Violation>, Error>> =
        all.par_iter().map(|g| check_graph(g, opts)).collect();
    let mut violations = Vec::new();
    for r in per_graph {
        violations.extend(r?);
    }
    violations.sort();
    violations.dedup();
    Ok(CorpusReport {
        graphs_checked: all.len(),
        exhaustive: ex_count,
        random: rnd_count,
        checks: check_names(opts),
        violations,
    })
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut s = format!(
            "{} graphs checked, {} violations\n",
            self.graphs_checked,
            self.violations.len()
        );
        s.push_str(&format!(
            "  exhaustive: {}, random: {}\n  checks: {}\n",
            self.exhaustive,
            self.random,
            self.checks.join(", ")
        ));
        for v in &self.violations {
            s.push_str(&format!("\nviolation [{}]: {}\n", v.check, v.detail));
            for line in v.graph.lines() {
                s.push_str(&format!("  {line}\n"));
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "graphs_checked": self.graphs_checked,
            "exhaustive": self.exhaustive,
            "random": self.random,
            "checks": self.checks,
            "violations": self.violations.iter().map(|v| json!({
                "graph": v.graph,
                "check": v.check,
                "detail": v.detail,
            })).collect::<Vec<_>>(),
        })
    }
}
