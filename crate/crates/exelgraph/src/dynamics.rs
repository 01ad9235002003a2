//! The shift dynamics on infinite path space.
//!
//! Infinite paths on a finite graph that matter computationally are the
//! eventually periodic ones: every forced walk closes a cycle, periodic-set
//! questions about cylinders reduce to finitely many of them, and isolated
//! points of the shift are periodic. This module represents such paths
//! exactly and answers the dynamical questions the structure catalogue
//! needs: topological freeness, cluster points, discrete orbits, and the
//! correspondence between vertex sets and shift-invariant path sets.

use crate::error::Error;
use crate::graph::{Cycle, EdgeId, Graph, Path, ReturnPathCount, VertexId, VertexSet};
use crate::ideals;

/// An eventually periodic infinite path, stored as a finite head followed by
/// a repeating cycle.
///
/// The representation is canonical, so derived equality is equality of
/// points: the cycle is primitive (not a proper power of a shorter cycle)
/// and the head is as short as possible (empty, or ending in an edge
/// different from the cycle's last edge). Two presentations of the same
/// point always canonicalize identically because the eventual period of the
/// edge sequence determines the primitive cycle up to rotation and head
/// minimality fixes the rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvPath {
    head: Vec<EdgeId>,
    cycle: Vec<EdgeId>,
}

impl EvPath {
    /// Builds the path head . cycle . cycle . ... and canonicalizes. Returns
    /// `None` when the edges do not compose or the cycle does not close.
    pub fn new(g: &Graph, head: &[EdgeId], cycle: &[EdgeId]) -> Option<EvPath> {
        if cycle.is_empty() {
            return None;
        }
        let composable = |a: EdgeId, b: EdgeId| g.source(a) == g.range(b);
        for w in head.windows(2) {
            if !composable(w[0], w[1]) {
                return None;
            }
        }
        if let Some(&last) = head.last() {
            if !composable(last, cycle[0]) {
                return None;
            }
        }
        for w in cycle.windows(2) {
            if !composable(w[0], w[1]) {
                return None;
            }
        }
        if !composable(*cycle.last().unwrap(), cycle[0]) {
            return None;
        }
        let mut cycle = primitive_root(cycle);
        let mut head = head.to_vec();
        while let Some(&last) = head.last() {
            if last != *cycle.last().unwrap() {
                break;
            }
            head.pop();
            let tail = cycle.pop().unwrap();
            cycle.insert(0, tail);
        }
        Some(EvPath { head, cycle })
    }

    /// Parses `head|cycle`, both sides comma-separated edge identifiers and
    /// the head side possibly empty.
    pub fn parse(g: &Graph, text: &str) -> Option<EvPath> {
        let (h, c) = text.split_once('|')?;
        let lookup = |side: &str| -> Option<Vec<EdgeId>> {
            if side.trim().is_empty() {
                return Some(Vec::new());
            }
            side.split(',').map(|t| g.edge_by_name(t.trim())).collect()
        };
        EvPath::new(g, &lookup(h)?, &lookup(c)?)
    }

    pub fn head(&self) -> &[EdgeId] {
        &self.head
    }

    pub fn cycle(&self) -> &[EdgeId] {
        &self.cycle
    }

    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    /// The length of the primitive repeating cycle.
    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.head.is_empty()
    }

    /// The i-th edge of the infinite edge sequence, counting from zero.
    pub fn edge_at(&self, i: usize) -> EdgeId {
        if i < self.head.len() {
            self.head[i]
        } else {
            self.cycle[(i - self.head.len()) % self.cycle.len()]
        }
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        g.range(self.edge_at(0))
    }

    /// The vertex after the first `i` edges, so the range of the i-fold
    /// shift.
    pub fn vertex_after(&self, g: &Graph, i: usize) -> VertexId {
        if i == 0 {
            self.range(g)
        } else {
            g.source(self.edge_at(i - 1))
        }
    }

    /// The first `k` edges as a finite path.
    pub fn prefix(&self, g: &Graph, k: usize) -> Path {
        if k == 0 {
            return Path::trivial(self.range(g));
        }
        let edges: Vec<EdgeId> = (0..k).map(|i| self.edge_at(i)).collect();
        Path::from_edges(g, edges).expect("prefix of an infinite path composes")
    }

    /// Drops the first `k` edges.
    pub fn shift(&self, g: &Graph, k: usize) -> EvPath {
        if k <= self.head.len() {
            EvPath::new(g, &self.head[k..], &self.cycle)
        } else {
            let j = (k - self.head.len()) % self.cycle.len();
            let mut rotated = self.cycle[j..].to_vec();
            rotated.extend_from_slice(&self.cycle[..j]);
            EvPath::new(g, &[], &rotated)
        }
        .expect("a shift of an infinite path composes")
    }

    /// All one-edge extensions, one per edge sourced at the range.
    pub fn preimages(&self, g: &Graph) -> Vec<EvPath> {
        g.edges_out_of(self.range(g))
            .iter()
            .map(|&e| {
                let mut head = Vec::with_capacity(self.head.len() + 1);
                head.push(e);
                head.extend_from_slice(&self.head);
                EvPath::new(g, &head, &self.cycle).expect("extension composes")
            })
            .collect()
    }

    /// The repeating cycle as a based rotation-canonical cycle, for orbit
    /// comparisons.
    pub fn eventual_cycle(&self, g: &Graph) -> Cycle {
        Cycle::canonical(g, self.cycle.clone())
    }

    pub fn label(&self, g: &Graph) -> String {
        let side = |edges: &[EdgeId]| {
            edges
                .iter()
                .map(|&e| g.edge_name(e))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}|{}", side(&self.head), side(&self.cycle))
    }
}

fn primitive_root(edges: &[EdgeId]) -> Vec<EdgeId> {
    let n = edges.len();
    for p in 1..=n {
        if n % p == 0 && (0..n).all(|i| edges[i] == edges[i % p]) {
            return edges[..p].to_vec();
        }
    }
    unreachable!("every sequence is a power of itself")
}

/// The orbit of an isolated periodic point of the shift, named by the
/// rotation-canonical form of its cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteCycle {
    pub orbit: Cycle,
}

impl DiscreteCycle {
    pub fn period(&self) -> usize {
        self.orbit.len()
    }

    /// The periodic point at the orbit representative's base.
    pub fn point(&self, g: &Graph) -> EvPath {
        EvPath::new(g, &[], self.orbit.path().edges()).expect("cycle repeats into a path")
    }

    pub fn label(&self, g: &Graph) -> String {
        self.orbit.label(g)
    }
}

/// Orbits of isolated periodic points: one per cycle that is the unique
/// return path of its vertices.
pub fn discrete_cycles(g: &Graph) -> Vec<DiscreteCycle> {
    g.assert_analyzable();
    let mut orbits: Vec<Cycle> = Vec::new();
    for v in g.vertex_ids() {
        if let Some(rp) = g.unique_return_path(v) {
            let c = Cycle::from_path(g, rp.path()).expect("return path closes");
            if !orbits.contains(&c) {
                orbits.push(c);
            }
        }
    }
    orbits.sort_by(|a, b| a.path().cmp_basis(b.path()));
    orbits.into_iter().map(|orbit| DiscreteCycle { orbit }).collect()
}

/// Decides Z(mu) inside H_{m,n} = { xi : the m-fold and n-fold shifts of xi
/// agree }, exactly.
///
/// A point of H_{m,n} is determined by its first max(m, n) edges, since the
/// segment between positions m and n repeats forever. So the cylinder is
/// contained in H_{m,n} exactly when each refinement of mu to that length
/// admits only one infinite extension and that extension matches its own
/// shifts.
pub fn cylinder_in_hmn(g: &Graph, mu: &Path, m: usize, n: usize) -> bool {
    g.assert_analyzable();
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if m == n {
        return true;
    }
    let depth = n.max(mu.len());
    g.refinements(mu, depth).iter().all(|nu| match forced_extension(g, nu) {
        // A branch below nu splits Z(nu) into at least two points, and
        // H_{m,n} admits at most one point per depth-n prefix.
        None => false,
        Some(xi) => xi.shift(g, m) == xi.shift(g, n),
    })
}

/// The unique infinite extension of nu when the walk onward from s(nu) never
/// meets a choice, `None` as soon as it does.
fn forced_extension(g: &Graph, nu: &Path) -> Option<EvPath> {
    let mut pos: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut edges: Vec<EdgeId> = Vec::new();
    let mut at = nu.source(g);
    loop {
        if let Some(j) = pos[at.0] {
            let mut head = nu.edges().to_vec();
            head.extend_from_slice(&edges[..j]);
            return Some(EvPath::new(g, &head, &edges[j..]).expect("forced walk composes"));
        }
        pos[at.0] = Some(edges.len());
        let into = g.edges_into(at);
        if into.len() != 1 {
            return None;
        }
        edges.push(into[0]);
        at = g.source(into[0]);
    }
}

/// A basic cylinder consisting of p-periodic points, when one exists with
/// p at most the vertex count.
pub fn periodic_cylinder_witness(g: &Graph) -> Option<(Path, usize)> {
    g.assert_analyzable();
    for p in 1..=g.vertex_count() {
        for len in 0..=p {
            for mu in g.enumerate_paths(len, None) {
                if cylinder_in_hmn(g, &mu, 0, p) {
                    return Some((mu, p));
                }
            }
        }
    }
    None
}

/// Topological freeness of the shift: no nonempty open set of periodic
/// points.
///
/// Decided twice, independently: through cycle entries (condition (L)) and
/// through an exhaustive search for a basic cylinder of periodic points. A
/// disagreement is an error, never a silent preference.
pub fn topologically_free(g: &Graph) -> Result<bool, Error> {
    let by_cycles = g.condition_l();
    let witness = periodic_cylinder_witness(g);
    let by_cylinders = witness.is_none();
    if by_cycles != by_cylinders {
        return Err(Error::PropertyViolation(format!(
            "condition (L) says {by_cycles} but periodic cylinder witness is {:?}",
            witness.map(|(mu, p)| (mu.label(g), p))
        )));
    }
    Ok(by_cycles)
}

/// Verdict on whether a point is a cluster point of its tail-equivalence
/// class, with the outcome of the bounded orbit search that cross-checks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterReport {
    pub cluster: bool,
    /// True when the search reproduced the verdict: it found an approximant
    /// for a cluster point or exhausted its bound for an isolated one. A
    /// cluster verdict with a search miss is possible when the bound is
    /// small; it is reported here rather than hidden.
    pub confirmed: bool,
    /// A tail-equivalent point sharing a deep prefix with the input.
    pub witness: Option<EvPath>,
}

/// Default edge budget for the orbit search in [`is_cluster_point`].
pub fn default_orbit_bound(g: &Graph, depth: usize) -> usize {
    g.vertex_count() * g.edge_count() + depth
}

/// Whether `xi` is a cluster point of the set of paths tail-equivalent to
/// it.
///
/// The verdict comes from the return-path count at the base of the eventual
/// cycle: a unique return path traps every tail-equivalent neighbour into
/// equality, while a second one splices into arbitrarily deep prefixes. The
/// bounded search then looks for such a splice directly: a detour from the
/// depth-`depth` prefix back to the range that yields a different point. A
/// detour found despite a unique return path would refute the verdict and
/// is an error.
pub fn is_cluster_point(
    g: &Graph,
    xi: &EvPath,
    depth: usize,
    orbit_bound: usize,
) -> Result<ClusterReport, Error> {
    g.assert_analyzable();
    let base = xi.vertex_after(g, xi.head_len());
    let count = g.count_return_paths(base);
    if count == ReturnPathCount::Zero {
        return Err(Error::PropertyViolation(format!(
            "eventual cycle base {} reports no return path",
            g.vertex_name(base)
        )));
    }
    let cluster = count == ReturnPathCount::Many;
    let depth = depth.max(xi.head_len());
    let bound = orbit_bound.max(depth);
    let from = xi.vertex_after(g, depth);
    let target = xi.range(g);
    let shifted = xi.shift(g, depth);
    // exact_reach[l] holds the vertices from which some length-l walk ends at
    // the target, so the search never descends into a dead branch.
    let mut exact_reach: Vec<VertexSet> = Vec::with_capacity(bound - depth + 1);
    exact_reach.push(VertexSet::singleton(target));
    for l in 0..(bound - depth) {
        let mut next = VertexSet::empty();
        for v in g.vertex_ids() {
            if g.edges_into(v).iter().any(|&e| exact_reach[l].contains(g.source(e))) {
                next.insert(v);
            }
        }
        exact_reach.push(next);
    }
    let mut witness = None;
    'search: for l in 0..=(bound - depth) {
        // At most one detour of each length recovers the shifted path itself,
        // so two found candidates always include a genuine witness.
        let mut candidates = Vec::new();
        let mut partial = Vec::new();
        collect_exact_walks(g, from, l, &exact_reach, &mut partial, &mut candidates);
        for cand in &candidates {
            let mut head = cand.clone();
            head.extend_from_slice(xi.head());
            let spliced = EvPath::new(g, &head, xi.cycle()).expect("detour composes");
            if spliced != shifted {
                let mut full = xi.prefix(g, depth).edges().to_vec();
                full.extend_from_slice(cand);
                full.extend_from_slice(xi.head());
                witness = Some(EvPath::new(g, &full, xi.cycle()).expect("witness composes"));
                break 'search;
            }
        }
    }
    match (cluster, witness) {
        (false, Some(w)) => Err(Error::PropertyViolation(format!(
            "unique return path at {} yet the orbit search found {}",
            g.vertex_name(base),
            w.label(g)
        ))),
        (true, Some(w)) => Ok(ClusterReport {
            cluster: true,
            confirmed: true,
            witness: Some(w),
        }),
        (true, None) => Ok(ClusterReport {
            cluster: true,
            confirmed: false,
            witness: None,
        }),
        (false, None) => Ok(ClusterReport {
            cluster: false,
            confirmed: true,
            witness: None,
        }),
    }
}

/// Collects up to two walks of length exactly `remaining` from `at` to the
/// target baked into `exact_reach`.
fn collect_exact_walks(
    g: &Graph,
    at: VertexId,
    remaining: usize,
    exact_reach: &[VertexSet],
    partial: &mut Vec<EdgeId>,
    out: &mut Vec<Vec<EdgeId>>,
) {
    if out.len() >= 2 || !exact_reach[remaining].contains(at) {
        return;
    }
    if remaining == 0 {
        out.push(partial.clone());
        return;
    }
    for &e in g.edges_into(at) {
        partial.push(e);
        collect_exact_walks(g, g.source(e), remaining - 1, exact_reach, partial, out);
        partial.pop();
    }
}

/// The vertices below the cycle's base in the reachability order. This set
/// is always a maximal head, and when the cycle is a unique return path it
/// carries the cycle entrylessly.
pub fn maximal_head_of_cycle(g: &Graph, beta: &Cycle) -> VertexSet {
    let mut m = VertexSet::empty();
    for v in g.vertex_ids() {
        if g.reaches(v, beta.base()) {
            m.insert(v);
        }
    }
    m
}

/// Checks the bijection between discrete cycles and maximal heads carrying
/// an entryless cycle: same count, and the head of each discrete cycle lands
/// on a distinct flagged head.
pub fn heads_correspondence(g: &Graph, bound: usize) -> Result<bool, Error> {
    let mut flagged: Vec<VertexSet> = ideals::maximal_heads(g, bound)?
        .into_iter()
        .filter(|h| h.entryless_in_head)
        .map(|h| h.vertices)
        .collect();
    flagged.sort();
    let cycles = discrete_cycles(g);
    let mut images: Vec<VertexSet> = cycles
        .iter()
        .map(|c| maximal_head_of_cycle(g, &c.orbit))
        .collect();
    images.sort();
    images.dedup();
    Ok(images.len() == cycles.len() && images == flagged)
}

/// Vertices admitting an infinite walk that avoids `h` at every step: the
/// ranges of the paths all of whose shifts range outside `h`.
pub fn avoiding_vertices(g: &Graph, h: VertexSet) -> VertexSet {
    let mut w = h.complement(g);
    loop {
        let mut next = VertexSet::empty();
        for v in w.iter() {
            if g.edges_into(v).iter().any(|&e| w.contains(g.source(e))) {
                next.insert(v);
            }
        }
        if next == w {
            return w;
        }
        w = next;
    }
}

/// Sends `h` to the shift-invariant path set avoiding it and back to the
/// complement of the surviving ranges; reports whether the roundtrip
/// restores `h`. It always does when `h` is saturated and hereditary, since
/// saturation extends every avoiding walk forever and heredity traps it.
pub fn invariant_roundtrip(g: &Graph, h: VertexSet) -> bool {
    g.assert_analyzable();
    avoiding_vertices(g, h).complement(g) == h
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

    fn ev(g: &Graph, text: &str) -> EvPath {
        EvPath::parse(g, text).unwrap()
    }

    fn path(g: &Graph, text: &str) -> Path {
        Path::parse(g, text).unwrap()
    }

    #[test]
    fn canonical_form() {
        let g2 = double_loop();
        assert_eq!(ev(&g2, "|e,e").label(&g2), "|e", "powers reduce");
        assert_eq!(ev(&g2, "e,f|f").label(&g2), "e|f", "head absorbs into the cycle");
        assert_eq!(ev(&g2, "e|f,f,f").label(&g2), "e|f");
        let g4 = loop_to_loop();
        assert_eq!(ev(&g4, "h|k").label(&g4), "h|k", "already canonical");
        assert_eq!(ev(&g4, "e,e,h|k,k").label(&g4), "e,e,h|k");
        let g3 = two_cycle();
        assert_eq!(ev(&g3, "a|b,a").label(&g3), "|a,b", "absorption rotates the phase");
    }

    #[test]
    fn presentations_of_one_point_are_equal() {
        let g2 = double_loop();
        assert_eq!(ev(&g2, "e|f,f"), ev(&g2, "e,f,f|f"));
        let g3 = two_cycle();
        assert_eq!(ev(&g3, "|a,b"), ev(&g3, "a,b|a,b"));
        assert_ne!(ev(&g3, "|a,b"), ev(&g3, "|b,a"), "phases differ");
    }

    #[test]
    fn rejects_broken_presentations() {
        let g4 = loop_to_loop();
        assert!(EvPath::parse(&g4, "|h").is_none(), "h does not close");
        assert!(EvPath::parse(&g4, "k|e").is_none(), "s(k) = w but r(e) = v");
        assert!(EvPath::parse(&g4, "|").is_none(), "cycle required");
    }

    #[test]
    fn shifting() {
        let g4 = loop_to_loop();
        let xi = ev(&g4, "e,h|k");
        assert_eq!(xi.shift(&g4, 1).label(&g4), "h|k");
        assert_eq!(xi.shift(&g4, 2).label(&g4), "|k");
        assert_eq!(xi.shift(&g4, 9).label(&g4), "|k");
        let g3 = two_cycle();
        assert_eq!(ev(&g3, "|a,b").shift(&g3, 1).label(&g3), "|b,a");
        assert_eq!(ev(&g3, "|a,b").shift(&g3, 2), ev(&g3, "|a,b"));
    }

    #[test]
    fn prefixes_and_vertices() {
        let g4 = loop_to_loop();
        let xi = ev(&g4, "h|k");
        assert_eq!(xi.range(&g4), g4.vertex_by_name("v").unwrap());
        assert_eq!(xi.prefix(&g4, 3).label(&g4), "h,k,k");
        assert_eq!(xi.vertex_after(&g4, 5), g4.vertex_by_name("w").unwrap());
        assert_eq!(xi.period(), 1);
        assert!(!xi.is_periodic());
    }

    #[test]
    fn preimages_invert_the_shift() {
        let g4 = loop_to_loop();
        let xi = ev(&g4, "|k");
        let pre = xi.preimages(&g4);
        let labels: Vec<String> = pre.iter().map(|p| p.label(&g4)).collect();
        assert_eq!(labels, ["h|k", "|k"]);
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            for c in g.simple_cycles() {
                let xi = EvPath::new(&g, &[], c.path().edges()).unwrap();
                let pre = xi.preimages(&g);
                assert_eq!(pre.len(), g.edges_out_of(xi.range(&g)).len());
                for eta in pre {
                    assert_eq!(eta.shift(&g, 1), xi);
                }
            }
        }
    }

    #[test]
    fn cylinder_membership() {
        let g1 = single_loop();
        assert!(cylinder_in_hmn(&g1, &path(&g1, "v"), 0, 1));
        let g2 = double_loop();
        assert!(!cylinder_in_hmn(&g2, &path(&g2, "e"), 0, 1));
        assert!(!cylinder_in_hmn(&g2, &path(&g2, "v"), 0, 2));
        let g4 = loop_to_loop();
        assert!(!cylinder_in_hmn(&g4, &path(&g4, "h"), 0, 1), "hk... is not fixed");
        assert!(cylinder_in_hmn(&g4, &path(&g4, "h"), 1, 2), "its shift is");
        assert!(cylinder_in_hmn(&g4, &path(&g4, "h"), 2, 1), "argument order is free");
        assert!(!cylinder_in_hmn(&g4, &path(&g4, "v"), 0, 1), "Z(v) also meets hk...");
        let g3 = two_cycle();
        assert!(cylinder_in_hmn(&g3, &path(&g3, "a"), 0, 2));
        assert!(!cylinder_in_hmn(&g3, &path(&g3, "a"), 0, 1));
        assert!(cylinder_in_hmn(&g3, &path(&g3, "a"), 3, 3), "equal shifts always agree");
    }

    #[test]
    fn cylinder_membership_passes_to_refinements() {
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            for mu in g.enumerate_paths(1, None) {
                for (m, n) in [(0, 1), (0, 2), (1, 2), (1, 3)] {
                    if cylinder_in_hmn(&g, &mu, m, n) {
                        for nu in g.refinements(&mu, mu.len() + 2) {
                            assert!(cylinder_in_hmn(&g, &nu, m, n));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn topological_freeness_two_ways() {
        assert!(topologically_free(&double_loop()).unwrap());
        assert!(!topologically_free(&single_loop()).unwrap());
        assert!(!topologically_free(&two_cycle()).unwrap());
        assert!(!topologically_free(&loop_to_loop()).unwrap());
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            assert_eq!(topologically_free(&g).unwrap(), g.condition_l());
        }
    }

    #[test]
    fn periodic_cylinder_witnesses() {
        let g1 = single_loop();
        let (mu, p) = periodic_cylinder_witness(&g1).unwrap();
        assert!(cylinder_in_hmn(&g1, &mu, 0, p));
        assert!(periodic_cylinder_witness(&double_loop()).is_none());
        let g4 = loop_to_loop();
        let (mu, p) = periodic_cylinder_witness(&g4).unwrap();
        assert!(cylinder_in_hmn(&g4, &mu, 0, p));
    }

    #[test]
    fn cluster_points() {
        let g2 = double_loop();
        let rep = is_cluster_point(&g2, &ev(&g2, "|e"), 8, default_orbit_bound(&g2, 8)).unwrap();
        assert!(rep.cluster && rep.confirmed);
        let w = rep.witness.unwrap();
        assert_eq!(w.prefix(&g2, 8), ev(&g2, "|e").prefix(&g2, 8), "witness shares the prefix");
        assert_ne!(w, ev(&g2, "|e"));

        let g1 = single_loop();
        let rep = is_cluster_point(&g1, &ev(&g1, "|e"), 8, default_orbit_bound(&g1, 8)).unwrap();
        assert!(!rep.cluster && rep.confirmed && rep.witness.is_none());

        let g4 = loop_to_loop();
        for text in ["|e", "|k", "h|k", "e,h|k"] {
            let rep =
                is_cluster_point(&g4, &ev(&g4, text), 8, default_orbit_bound(&g4, 8)).unwrap();
            assert!(!rep.cluster && rep.confirmed, "{text} is isolated");
        }

        let g3 = two_cycle();
        let rep = is_cluster_point(&g3, &ev(&g3, "|a,b"), 8, default_orbit_bound(&g3, 8)).unwrap();
        assert!(!rep.cluster && rep.confirmed);
    }

    #[test]
    fn cluster_verdict_is_depth_insensitive() {
        let g2 = double_loop();
        let g4 = loop_to_loop();
        for depth in 1..=10 {
            let rep =
                is_cluster_point(&g2, &ev(&g2, "|e"), depth, default_orbit_bound(&g2, depth))
                    .unwrap();
            assert!(rep.cluster && rep.confirmed);
            let rep =
                is_cluster_point(&g4, &ev(&g4, "h|k"), depth, default_orbit_bound(&g4, depth))
                    .unwrap();
            assert!(!rep.cluster);
        }
    }

    #[test]
    fn discrete_cycle_lists() {
        let g1 = single_loop();
        let labels: Vec<String> = discrete_cycles(&g1).iter().map(|c| c.label(&g1)).collect();
        assert_eq!(labels, ["e"]);
        assert!(discrete_cycles(&double_loop()).is_empty());
        let g3 = two_cycle();
        let labels: Vec<String> = discrete_cycles(&g3).iter().map(|c| c.label(&g3)).collect();
        assert_eq!(labels, ["a,b"], "one orbit despite two base vertices");
        let g4 = loop_to_loop();
        let labels: Vec<String> = discrete_cycles(&g4).iter().map(|c| c.label(&g4)).collect();
        assert_eq!(labels, ["e", "k"]);
    }

    #[test]
    fn discrete_cycle_points_are_isolated() {
        for g in [single_loop(), two_cycle(), loop_to_loop()] {
            for dc in discrete_cycles(&g) {
                let xi = dc.point(&g);
                let rep = is_cluster_point(&g, &xi, 8, default_orbit_bound(&g, 8)).unwrap();
                assert!(!rep.cluster);
                assert_eq!(xi.period(), dc.period());
            }
        }
    }

    #[test]
    fn heads_of_cycles() {
        let g4 = loop_to_loop();
        let cycles = g4.simple_cycles();
        let heads: Vec<String> = cycles
            .iter()
            .map(|c| maximal_head_of_cycle(&g4, c).label(&g4))
            .collect();
        assert_eq!(heads, ["{v}", "{v,w}"]);
        let g1 = single_loop();
        assert_eq!(
            maximal_head_of_cycle(&g1, &g1.simple_cycles()[0]).label(&g1),
            "{v}"
        );
    }

    #[test]
    fn heads_correspondence_on_fixtures() {
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            assert!(heads_correspondence(&g, 20).unwrap());
        }
    }

    #[test]
    fn invariant_roundtrips() {
        let g4 = loop_to_loop();
        assert!(invariant_roundtrip(&g4, VertexSet::by_names(&g4, &["w"]).unwrap()));
        let g1 = single_loop();
        assert!(invariant_roundtrip(&g1, VertexSet::empty()));
        let g3 = two_cycle();
        assert!(invariant_roundtrip(&g3, VertexSet::full(&g3)));
        assert!(
            !invariant_roundtrip(&g3, VertexSet::by_names(&g3, &["u"]).unwrap()),
            "unsaturated sets lose vertices"
        );
    }

    #[test]
    fn roundtrip_holds_on_every_saturated_hereditary_set() {
        for g in [single_loop(), double_loop(), two_cycle(), loop_to_loop()] {
            for h in ideals::enumerate_sat_hered(&g, 20).unwrap() {
                assert!(invariant_roundtrip(&g, h), "failed on {}", h.label(&g));
            }
        }
    }

    #[test]
    fn avoiding_vertices_examples() {
        let g4 = loop_to_loop();
        let w = VertexSet::by_names(&g4, &["w"]).unwrap();
        assert_eq!(avoiding_vertices(&g4, w).label(&g4), "{v}");
        assert_eq!(avoiding_vertices(&g4, VertexSet::empty()).label(&g4), "{v,w}");
        let g3 = two_cycle();
        let u = VertexSet::by_names(&g3, &["u"]).unwrap();
        assert!(avoiding_vertices(&g3, u).is_empty(), "v cannot continue without u");
    }
}
