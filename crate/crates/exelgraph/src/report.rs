//! The assembled structure catalogue for one graph, with JSON and text
//! renderings.
//!
//! JSON output is deterministic: object keys serialize sorted and every
//! scalar uses the canonical reduced-fraction form, so identical input and
//! flags give byte-identical reports.

use crate::cylinder::{verify_identities, VerifyReport};
use crate::dynamics::{self, DiscreteCycle};
use crate::error::Error;
use crate::graph::{Cycle, Graph, ValidityReport, VertexId, VertexSet};
use crate::ideals::{self, MaximalHead, PrimIdealCatalog};
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Vertex-count cap for subset enumerations.
    pub bound: usize,
    /// Depth for the identity verification suite.
    pub verify_depth: usize,
    /// Seed for the randomized faithfulness check.
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> AnalyzeOptions {
        AnalyzeOptions {
            bound: ideals::default_subset_bound(),
            verify_depth: 3,
            seed: 7,
        }
    }
}

/// Everything the analyzer can say about one graph.
#[derive(Clone, Debug)]
pub struct StructureReport {
    graph: Graph,
    pub validity: ValidityReport,
    pub condition_l: bool,
    pub condition_k: bool,
    pub cofinal: bool,
    pub topologically_free: bool,
    pub irreducible: bool,
    pub simple: bool,
    pub all_ideals_gauge_invariant: bool,
    pub entryless_cycle: Option<Cycle>,
    pub cofinality_failure: Option<(VertexId, Cycle)>,
    /// Saturated hereditary vertex sets, smallest first.
    pub ideals: Vec<VertexSet>,
    /// Cover relations as index pairs into `ideals`.
    pub covers: Vec<(usize, usize)>,
    pub heads: Vec<MaximalHead>,
    pub catalog: PrimIdealCatalog,
    pub discrete_cycles: Vec<DiscreteCycle>,
    pub verification: VerifyReport,
}

/// Runs the whole catalogue. Fails on unanalyzable input, on enumeration
/// bounds, and on any disagreement between dual computations.
pub fn analyze(g: &Graph, opts: &AnalyzeOptions) -> Result<StructureReport, Error> {
    let validity = g.validate();
    if !validity.analyzable() {
        let mut problems = Vec::new();
        if !validity.no_sources {
            let names: Vec<String> = validity
                .sources
                .iter()
                .map(|&v| g.vertex_name(v).to_string())
                .collect();
            problems.push(format!("vertices receiving no edge: {}", names.join(", ")));
        }
        if !validity.shift_total {
            let names: Vec<String> = validity
                .sinks
                .iter()
                .map(|&v| g.vertex_name(v).to_string())
                .collect();
            problems.push(format!("vertices emitting no edge: {}", names.join(", ")));
        }
        return Err(Error::NotAnalyzable(problems.join("; ")));
    }

    let simplicity = ideals::simplicity(g);
    let topologically_free = dynamics::topologically_free(g)?;
    let ideal_sets = ideals::enumerate_sat_hered(g, opts.bound)?;
    let covers = ideals::cover_relations(&ideal_sets);
    let heads = ideals::maximal_heads(g, opts.bound)?;
    let catalog = ideals::primitive_catalog(g, opts.bound)?;
    let cycles = dynamics::discrete_cycles(g);
    let verification = verify_identities(g, opts.verify_depth, opts.seed);

    let report = StructureReport {
        graph: g.clone(),
        validity,
        condition_l: g.condition_l(),
        condition_k: g.condition_k(),
        cofinal: simplicity.irreducible,
        topologically_free,
        irreducible: simplicity.irreducible,
        simple: simplicity.simple,
        all_ideals_gauge_invariant: ideals::all_ideals_gauge_invariant(g),
        entryless_cycle: simplicity.entryless_cycle,
        cofinality_failure: simplicity.cofinality_failure,
        ideals: ideal_sets,
        covers,
        heads,
        catalog,
        discrete_cycles: cycles,
        verification,
    };
    assert_eq!(report.simple, report.condition_l && report.cofinal);
    assert_eq!(report.all_ideals_gauge_invariant, report.condition_k);
    assert_eq!(
        report.heads.len(),
        report.catalog.gauge_invariant.len() + report.catalog.circle_families.len()
    );
    Ok(report)
}

impl StructureReport {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn to_json(&self) -> Value {
        let g = &self.graph;
        let set_names = |s: &VertexSet| -> Value { json!(s.names(g)) };
        let head_json = |h: &MaximalHead| -> Value {
            json!({
                "vertices": h.vertices.names(g),
                "entryless_in_head": h.entryless_in_head,
                "witness_cycle": h.witness_cycle.as_ref().map(|c| c.label(g)),
            })
        };
        json!({
            "graph": {
                "vertex_count": g.vertex_count(),
                "edge_count": g.edge_count(),
                "vertices": g.vertex_ids().map(|v| g.vertex_name(v)).collect::<Vec<_>>(),
                "edges": g.edge_ids().map(|e| json!({
                    "id": g.edge_name(e),
                    "r": g.vertex_name(g.range(e)),
                    "s": g.vertex_name(g.source(e)),
                })).collect::<Vec<_>>(),
                "c_vector": g.vertex_ids().map(|v| json!({
                    "vertex": g.vertex_name(v),
                    "preimages": g.edges_out_of(v).len(),
                })).collect::<Vec<_>>(),
            },
            "validity": validity_json(g, &self.validity),
            "predicates": {
                "condition_L": self.condition_l,
                "condition_K": self.condition_k,
                "cofinal": self.cofinal,
                "topologically_free": self.topologically_free,
                "irreducible": self.irreducible,
                "simple": self.simple,
                "all_ideals_gauge_invariant": self.all_ideals_gauge_invariant,
                "entryless_cycle": self.entryless_cycle.as_ref().map(|c| c.label(g)),
                "cofinality_failure": self.cofinality_failure.as_ref().map(|(v, c)| json!({
                    "vertex": g.vertex_name(*v),
                    "cycle": c.label(g),
                })),
            },
            "ideals": {
                "count": self.ideals.len(),
                "sets": self.ideals.iter().map(set_names).collect::<Vec<_>>(),
                "covers": self.covers.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            },
            "primitive_ideals": {
                "maximal_heads": self.heads.iter().map(head_json).collect::<Vec<_>>(),
                "gauge_invariant": self.catalog.gauge_invariant.iter().map(|h| json!({
                    "head": h.vertices.names(g),
                })).collect::<Vec<_>>(),
                "circle_families": self.catalog.circle_families.iter().map(|h| json!({
                    "head": h.vertices.names(g),
                    "parameter": "T",
                })).collect::<Vec<_>>(),
                "discrete_cycles": self.discrete_cycles.iter().map(|c| c.label(g)).collect::<Vec<_>>(),
            },
            "verification": {
                "depth": self.verification.depth,
                "all_pass": self.verification.all_pass(),
                "checks": self.verification.checks.iter().map(|c| json!({
                    "name": c.name,
                    "instances": c.instances,
                    "pass": c.pass,
                    "counterexample": c.counterexample,
                })).collect::<Vec<_>>(),
            },
        })
    }

    pub fn render_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        let c: Vec<String> = g
            .vertex_ids()
            .map(|v| format!("c({}) = {}", g.vertex_name(v), g.edges_out_of(v).len()))
            .collect();
        line(format!(
            "graph: {} vertices, {} edges; {}",
            g.vertex_count(),
            g.edge_count(),
            c.join(", ")
        ));
        line(format!(
            "validity: analyzable = {} (no sources = {}, shift-total = {})",
            self.validity.analyzable(),
            self.validity.no_sources,
            self.validity.shift_total
        ));
        let yn = |b: bool| if b { "yes" } else { "no" };
        line(format!(
            "condition (L): {}{}",
            yn(self.condition_l),
            self.entryless_cycle
                .as_ref()
                .map(|cyc| format!("  [entryless cycle {}]", cyc.label(g)))
                .unwrap_or_default()
        ));
        line(format!("condition (K): {}", yn(self.condition_k)));
        line(format!(
            "cofinal: {}{}",
            yn(self.cofinal),
            self.cofinality_failure
                .as_ref()
                .map(|(v, cyc)| format!(
                    "  [vertex {} unreachable from cycle {}]",
                    g.vertex_name(*v),
                    cyc.label(g)
                ))
                .unwrap_or_default()
        ));
        line(format!("topologically free: {}", yn(self.topologically_free)));
        line(format!("irreducible: {}", yn(self.irreducible)));
        line(format!(
            "all ideals gauge-invariant: {}",
            yn(self.all_ideals_gauge_invariant)
        ));
        line(format!("simple: {}", yn(self.simple)));
        line(format!("gauge-invariant ideals: {}", self.ideals.len()));
        for (i, s) in self.ideals.iter().enumerate() {
            let below: Vec<String> = self
                .covers
                .iter()
                .filter(|&&(_, b)| b == i)
                .map(|&(a, _)| self.ideals[a].label(g))
                .collect();
            let suffix = if below.is_empty() {
                String::new()
            } else {
                format!("  covers {}", below.join(", "))
            };
            line(format!("  {}{}", s.label(g), suffix));
        }
        line(format!("maximal heads: {}", self.heads.len()));
        for h in &self.heads {
            let suffix = match &h.witness_cycle {
                Some(cyc) => format!("  entryless cycle in head: {}", cyc.label(g)),
                None => String::new(),
            };
            line(format!("  {}{}", h.vertices.label(g), suffix));
        }
        line(format!(
            "primitive ideals: {} gauge-invariant, {} circle families",
            self.catalog.gauge_invariant.len(),
            self.catalog.circle_families.len()
        ));
        for h in &self.catalog.gauge_invariant {
            line(format!("  point: head {}", h.vertices.label(g)));
        }
        for h in &self.catalog.circle_families {
            line(format!(
                "  circle family: head {}, parameter T",
                h.vertices.label(g)
            ));
        }
        let cycles: Vec<String> = self.discrete_cycles.iter().map(|c| c.label(g)).collect();
        line(format!(
            "discrete cycles: {}",
            if cycles.is_empty() {
                "none".to_string()
            } else {
                cycles.join(", ")
            }
        ));
        line(format!(
            "identity suite (depth {}): {}",
            self.verification.depth,
            if self.verification.all_pass() {
                "all checks pass".to_string()
            } else {
                format!(
                    "FAILED at {}",
                    self.verification.first_failure().map(|c| c.name).unwrap_or("?")
                )
            }
        ));
        for check in &self.verification.checks {
            line(format!(
                "  {}: {} instances, {}",
                check.name,
                check.instances,
                if check.pass { "pass" } else { "FAIL" }
            ));
            if let Some(ce) = &check.counterexample {
                line(format!("    counterexample: {ce}"));
            }
        }
        out
    }
}

/// Validity flags and offending vertices in the shared JSON shape.
pub fn validity_json(g: &Graph, v: &ValidityReport) -> Value {
    json!({
        "analyzable": v.analyzable(),
        "no_sources": v.no_sources,
        "shift_total": v.shift_total,
        "row_finite": v.row_finite,
        "column_finite": v.column_finite,
        "sources": v.sources.iter().map(|&x| g.vertex_name(x)).collect::<Vec<_>>(),
        "sinks": v.sinks.iter().map(|&x| g.vertex_name(x)).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyze_text(dsl: &str) -> StructureReport {
        let g = Graph::parse(dsl).unwrap();
        analyze(&g, &AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn double_loop_is_simple() {
        let r = analyze_text("vertex v\nedge e r=v s=v\nedge f r=v s=v\n");
        assert!(r.simple && r.condition_l && r.condition_k && r.cofinal);
        assert_eq!(r.ideals.len(), 2);
        assert_eq!(r.catalog.gauge_invariant.len(), 1);
        assert_eq!(r.catalog.circle_families.len(), 0);
        assert!(r.discrete_cycles.is_empty());
        assert!(r.verification.all_pass());
    }

    #[test]
    fn single_loop_catalogue() {
        let r = analyze_text("vertex v\nedge e r=v s=v\n");
        assert!(!r.simple && r.irreducible && !r.topologically_free);
        assert_eq!(r.ideals.len(), 2);
        assert_eq!(r.catalog.circle_families.len(), 1);
        assert_eq!(r.entryless_cycle.as_ref().unwrap().label(r.graph()), "e");
    }

    #[test]
    fn loop_to_loop_catalogue() {
        let r = analyze_text(
            "vertex v\nvertex w\nedge e r=v s=v\nedge h r=v s=w\nedge k r=w s=w\n",
        );
        assert!(!r.simple && !r.cofinal && !r.condition_l);
        assert_eq!(r.ideals.len(), 3);
        assert_eq!(r.covers, vec![(0, 1), (1, 2)]);
        assert_eq!(r.catalog.gauge_invariant.len(), 0);
        assert_eq!(r.catalog.circle_families.len(), 2);
        assert_eq!(r.discrete_cycles.len(), 2);
        let (v, cyc) = r.cofinality_failure.as_ref().unwrap();
        assert_eq!(r.graph().vertex_name(*v), "v");
        assert_eq!(cyc.label(r.graph()), "k");
    }

    #[test]
    fn unanalyzable_input_is_rejected() {
        let g = Graph::parse("vertex v\nvertex w\nedge e r=v s=w\nedge f r=w s=w\n").unwrap();
        match analyze(&g, &AnalyzeOptions::default()) {
            Err(Error::NotAnalyzable(msg)) => {
                assert!(msg.contains("emitting") || msg.contains("receiving"))
            }
            other => panic!("expected analyzability error, got {other:?}"),
        }
    }

    #[test]
    fn json_shape_and_determinism() {
        let r = analyze_text("vertex v\nvertex w\nedge e r=v s=v\nedge h r=v s=w\nedge k r=w s=w\n");
        let a = serde_json::to_string_pretty(&r.to_json()).unwrap();
        let b = serde_json::to_string_pretty(&r.to_json()).unwrap();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        let top: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            top,
            ["graph", "ideals", "predicates", "primitive_ideals", "validity", "verification"]
        );
        assert_eq!(
            v["primitive_ideals"]["circle_families"][0]["parameter"],
            "T"
        );
        assert_eq!(v["ideals"]["count"], 3);
        assert_eq!(v["predicates"]["simple"], false);
    }

    #[test]
    fn text_rendering_mentions_the_verdicts() {
        let r = analyze_text("vertex v\nedge e r=v s=v\nedge f r=v s=v\n");
        let text = r.render_text();
        assert!(text.contains("simple: yes"));
        assert!(text.contains("gauge-invariant ideals: 2"));
        assert!(text.contains("all checks pass"));
    }
}
