//! The gauge-invariant ideal lattice and the primitive ideal catalogue.
//!
//! Saturated hereditary vertex sets index the gauge-invariant ideals; maximal
//! heads index the primitive ones. A maximal head containing a cycle with no
//! entry inside the head does not itself give a primitive ideal but a circle
//! of them, indexed by a unit scalar that stays symbolic here.

use crate::error::Error;
use crate::graph::{Cycle, Graph, ReturnPathCount, VertexId, VertexSet};

/// Default cap on the vertex count for subset enumeration, overridable
/// through the `EXELGRAPH_MAX_SUBSETS` environment variable.
pub fn default_subset_bound() -> usize {
    std::env::var("EXELGRAPH_MAX_SUBSETS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20)
}

fn check_bound(g: &Graph, bound: usize) -> Result<(), Error> {
    let vertices = g.vertex_count();
    if vertices > bound.min(64) {
        Err(Error::BoundExceeded {
            vertices,
            bound: bound.min(64),
        })
    } else {
        Ok(())
    }
}

/// Hereditary: r(e) in H forces s(e) in H. Walks starting in H stay in H,
/// which is exactly what lets the projections over H absorb the edge partial
/// isometries leaving them.
pub fn is_hereditary(g: &Graph, h: VertexSet) -> bool {
    g.edge_ids()
        .all(|e| !h.contains(g.range(e)) || h.contains(g.source(e)))
}

/// Saturated: a vertex all of whose received edges come from H lies in H.
/// Its vertex projection is a sum of ranges of edges already absorbed, so the
/// ideal generated by H would contain it anyway. Vertices receiving no edges
/// are exempt.
pub fn is_saturated(g: &Graph, h: VertexSet) -> bool {
    g.vertex_ids().all(|v| {
        let into = g.edges_into(v);
        into.is_empty()
            || h.contains(v)
            || !into.iter().all(|&e| h.contains(g.source(e)))
    })
}

/// Smallest saturated hereditary superset, by alternating the two closures to
/// a fixed point.
pub fn sat_hered_closure(g: &Graph, h: VertexSet) -> VertexSet {
    let mut cur = h;
    loop {
        let mut next = cur;
        for e in g.edge_ids() {
            if next.contains(g.range(e)) {
                next.insert(g.source(e));
            }
        }
        for v in g.vertex_ids() {
            let into = g.edges_into(v);
            if !into.is_empty() && into.iter().all(|&e| next.contains(g.source(e))) {
                next.insert(v);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// All saturated hereditary vertex sets, sorted by size then by vertex names.
/// Enumerates every subset, so the vertex count must not exceed `bound`.
pub fn enumerate_sat_hered(g: &Graph, bound: usize) -> Result<Vec<VertexSet>, Error> {
    check_bound(g, bound)?;
    let n = g.vertex_count();
    let mut out: Vec<VertexSet> = (0u64..(1u64 << n))
        .map(VertexSet::from_bits)
        .filter(|&h| is_hereditary(g, h) && is_saturated(g, h))
        .collect();
    sort_sets(g, &mut out);
    Ok(out)
}

fn sort_sets(g: &Graph, sets: &mut [VertexSet]) {
    sets.sort_by_key(|s| (s.len(), s.names(g)));
}

/// Cover relations of the inclusion order on `sets`: pairs (i, j) with
/// sets[i] strictly below sets[j] and nothing strictly between.
pub fn cover_relations(sets: &[VertexSet]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate() {
            if a == b || !a.is_subset(b) {
                continue;
            }
            let between = sets
                .iter()
                .any(|&c| c != a && c != b && a.is_subset(c) && c.is_subset(b));
            if !between {
                covers.push((i, j));
            }
        }
    }
    covers
}

/// A maximal head M: downward closed under reachability, every vertex of M
/// receives an edge from M, and any two vertices of M have a common vertex of
/// M above them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalHead {
    pub vertices: VertexSet,
    /// Whether some cycle inside M has no entry whose source lies in M. Such
    /// heads contribute a circle of primitive ideals instead of a single one.
    pub entryless_in_head: bool,
    pub witness_cycle: Option<Cycle>,
}

/// Enumerates the maximal heads, sorted by size then by vertex names.
pub fn maximal_heads(g: &Graph, bound: usize) -> Result<Vec<MaximalHead>, Error> {
    check_bound(g, bound)?;
    let n = g.vertex_count();
    // up[v] = { y : v <= y }, down[w] = { v : v <= w }.
    let up: Vec<VertexSet> = g.vertex_ids().map(|v| g.reach_set(v)).collect();
    let mut down = vec![VertexSet::empty(); n];
    for v in g.vertex_ids() {
        for w in up[v.0].iter() {
            down[w.0].insert(v);
        }
    }
    let cycles = g.simple_cycles();
    let mut heads = Vec::new();
    for bits in 1u64..(1u64 << n) {
        let m = VertexSet::from_bits(bits);
        let mh1 = m.iter().all(|w| down[w.0].is_subset(m));
        if !mh1 {
            continue;
        }
        let mh2 = m.iter().all(|v| {
            g.edges_into(v)
                .iter()
                .any(|&e| m.contains(g.source(e)))
        });
        if !mh2 {
            continue;
        }
        let mh3 = m.iter().all(|v| {
            m.iter()
                .all(|w| !up[v.0].intersect(up[w.0]).intersect(m).is_empty())
        });
        if !mh3 {
            continue;
        }
        let witness = cycles.iter().find(|c| {
            c.vertices(g).iter().all(|&u| m.contains(u))
                && g.cycle_entries(c, Some(&m)).is_empty()
        });
        heads.push(MaximalHead {
            vertices: m,
            entryless_in_head: witness.is_some(),
            witness_cycle: witness.cloned(),
        });
    }
    heads.sort_by_key(|h| (h.vertices.len(), h.vertices.names(g)));
    Ok(heads)
}

/// The primitive ideal catalogue: each maximal head yields either one
/// gauge-invariant primitive ideal or a circle family of primitive ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimIdealCatalog {
    pub gauge_invariant: Vec<MaximalHead>,
    pub circle_families: Vec<MaximalHead>,
}

impl PrimIdealCatalog {
    pub fn total_heads(&self) -> usize {
        self.gauge_invariant.len() + self.circle_families.len()
    }
}

pub fn primitive_catalog(g: &Graph, bound: usize) -> Result<PrimIdealCatalog, Error> {
    let heads = maximal_heads(g, bound)?;
    let (circle, gauge): (Vec<_>, Vec<_>) =
        heads.into_iter().partition(|h| h.entryless_in_head);
    Ok(PrimIdealCatalog {
        gauge_invariant: gauge,
        circle_families: circle,
    })
}

/// Simplicity verdict with its two constituents and their witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    /// Equivalent to condition (L).
    pub topologically_free: bool,
    /// Equivalent to cofinality.
    pub irreducible: bool,
    pub entryless_cycle: Option<Cycle>,
    pub cofinality_failure: Option<(VertexId, Cycle)>,
}

pub fn simplicity(g: &Graph) -> SimplicityReport {
    let entryless = g.entryless_cycle();
    let cof = g.cofinality_failure();
    SimplicityReport {
        simple: entryless.is_none() && cof.is_none(),
        topologically_free: entryless.is_none(),
        irreducible: cof.is_none(),
        entryless_cycle: entryless,
        cofinality_failure: cof,
    }
}

/// Every ideal is gauge-invariant exactly when no vertex has a unique return
/// path, that is condition (K).
pub fn all_ideals_gauge_invariant(g: &Graph) -> bool {
    g.vertex_ids()
        .all(|v| g.count_return_paths(v) != ReturnPathCount::One)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_loop() -> Graph {
        Graph::parse("vertex v\nedge e r=v s=v\n").unwrap()
    }

    fn double_loop() -> Graph {
        Graph::parse("vertex v\nedge e r=v s=v\nedge f r=v s=v\n").unwrap()
    }

    fn two_cycle() -> Graph {
        Graph::parse("vertex u\nvertex v\nedge a r=u s=v\nedge b r=v s=u\n").unwrap()
    }

    fn loop_to_loop() -> Graph {
        Graph::parse(
            "vertex v\nvertex w\nedge e r=v s=v\nedge h r=v s=w\nedge k r=w s=w\n",
        )
        .unwrap()
    }

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        VertexSet::by_names(g, names).unwrap()
    }

    #[test]
    fn hereditary_examples() {
        let g4 = loop_to_loop();
        assert!(is_hereditary(&g4, set(&g4, &["w"])));
        assert!(!is_hereditary(&g4, set(&g4, &["v"])), "h leads from v out to w");
        let g3 = two_cycle();
        assert!(!is_hereditary(&g3, set(&g3, &["u"])));
        assert!(is_hereditary(&g3, VertexSet::empty()));
        assert!(is_hereditary(&g3, VertexSet::full(&g3)));
    }

    #[test]
    fn saturated_examples() {
        let g4 = loop_to_loop();
        assert!(is_saturated(&g4, set(&g4, &["w"])));
        let g3 = two_cycle();
        assert!(!is_saturated(&g3, set(&g3, &["u"])), "r^-1(v) = {{b}} and s(b) = u");
        let g1 = single_loop();
        assert!(is_saturated(&g1, VertexSet::empty()));
    }

    #[test]
    fn closure_examples() {
        let g4 = loop_to_loop();
        assert_eq!(sat_hered_closure(&g4, set(&g4, &["v"])), set(&g4, &["v", "w"]));
        let g3 = two_cycle();
        assert_eq!(sat_hered_closure(&g3, set(&g3, &["u"])), set(&g3, &["u", "v"]));
        let g1 = single_loop();
        assert_eq!(sat_hered_closure(&g1, VertexSet::empty()), VertexSet::empty());
    }

    #[test]
    fn closure_is_a_closure_operator() {
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            let n = g.vertex_count();
            for bits in 0u64..(1 << n) {
                let h = VertexSet::from_bits(bits);
                let c = sat_hered_closure(&g, h);
                assert!(h.is_subset(c));
                assert_eq!(sat_hered_closure(&g, c), c, "idempotent");
                assert!(is_hereditary(&g, c) && is_saturated(&g, c));
                for bits2 in 0u64..(1 << n) {
                    let h2 = VertexSet::from_bits(bits2);
                    if h.is_subset(h2) {
                        assert!(c.is_subset(sat_hered_closure(&g, h2)), "monotone");
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_hand_lists() {
        let g1 = single_loop();
        let sets = enumerate_sat_hered(&g1, 20).unwrap();
        assert_eq!(sets.len(), 2);
        let g4 = loop_to_loop();
        let sets = enumerate_sat_hered(&g4, 20).unwrap();
        let labels: Vec<String> = sets.iter().map(|s| s.label(&g4)).collect();
        assert_eq!(labels, ["{}", "{w}", "{v,w}"]);
        let g2 = double_loop();
        assert_eq!(enumerate_sat_hered(&g2, 20).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_respects_bound() {
        let g = two_cycle();
        match enumerate_sat_hered(&g, 1) {
            Err(Error::BoundExceeded { vertices: 2, bound: 1 }) => {}
            other => panic!("expected bound error, got {other:?}"),
        }
    }

    #[test]
    fn lattice_structure() {
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            let sets = enumerate_sat_hered(&g, 20).unwrap();
            assert!(sets.contains(&VertexSet::empty()));
            assert!(sets.contains(&VertexSet::full(&g)));
            for &a in &sets {
                for &b in &sets {
                    assert!(sets.contains(&a.intersect(b)), "meet is intersection");
                    assert!(
                        sets.contains(&sat_hered_closure(&g, a.union(b))),
                        "join is closure of union"
                    );
                }
            }
        }
    }

    #[test]
    fn cover_relation_shape() {
        let g4 = loop_to_loop();
        let sets = enumerate_sat_hered(&g4, 20).unwrap();
        assert_eq!(cover_relations(&sets), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn maximal_head_examples() {
        let g1 = single_loop();
        let heads = maximal_heads(&g1, 20).unwrap();
        assert_eq!(heads.len(), 1);
        assert!(heads[0].entryless_in_head);
        assert_eq!(heads[0].witness_cycle.as_ref().unwrap().label(&g1), "e");

        let g4 = loop_to_loop();
        let heads = maximal_heads(&g4, 20).unwrap();
        let labels: Vec<(String, bool)> = heads
            .iter()
            .map(|h| (h.vertices.label(&g4), h.entryless_in_head))
            .collect();
        assert_eq!(
            labels,
            [("{v}".to_string(), true), ("{v,w}".to_string(), true)]
        );

        let g2 = double_loop();
        let heads = maximal_heads(&g2, 20).unwrap();
        assert_eq!(heads.len(), 1);
        assert!(!heads[0].entryless_in_head);
    }

    #[test]
    fn head_complements_are_saturated_hereditary() {
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            for head in maximal_heads(&g, 20).unwrap() {
                let comp = head.vertices.complement(&g);
                assert!(is_hereditary(&g, comp));
                assert!(is_saturated(&g, comp));
            }
        }
    }

    #[test]
    fn catalogue_examples() {
        let g1 = single_loop();
        let cat = primitive_catalog(&g1, 20).unwrap();
        assert_eq!((cat.gauge_invariant.len(), cat.circle_families.len()), (0, 1));
        let g2 = double_loop();
        let cat = primitive_catalog(&g2, 20).unwrap();
        assert_eq!((cat.gauge_invariant.len(), cat.circle_families.len()), (1, 0));
        let g4 = loop_to_loop();
        let cat = primitive_catalog(&g4, 20).unwrap();
        assert_eq!((cat.gauge_invariant.len(), cat.circle_families.len()), (0, 2));
    }

    #[test]
    fn simplicity_verdicts() {
        let rep = simplicity(&double_loop());
        assert!(rep.simple && rep.topologically_free && rep.irreducible);
        let rep = simplicity(&single_loop());
        assert!(!rep.simple && rep.irreducible && !rep.topologically_free);
        let rep = simplicity(&loop_to_loop());
        assert!(!rep.simple && !rep.topologically_free && !rep.irreducible);
    }

    #[test]
    fn simplicity_agrees_with_ideal_count() {
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            let rep = simplicity(&g);
            let ideal_count = enumerate_sat_hered(&g, 20).unwrap().len();
            assert_eq!(rep.irreducible, ideal_count == 2);
            assert_eq!(rep.simple, rep.topologically_free && ideal_count == 2);
        }
    }

    #[test]
    fn gauge_invariance_is_condition_k() {
        assert!(all_ideals_gauge_invariant(&double_loop()));
        assert!(!all_ideals_gauge_invariant(&single_loop()));
        assert!(!all_ideals_gauge_invariant(&two_cycle()));
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            assert_eq!(all_ideals_gauge_invariant(&g), g.condition_k());
        }
    }
}
