//! Finite directed graphs E = (E^0, E^1, r, s) and their path combinatorics.
//!
//! Convention: a path mu = mu_1 ... mu_n is composable when s(mu_i) = r(mu_{i+1}),
//! so r(mu) = r(mu_1) and s(mu) = s(mu_n). Walking a path means standing at a
//! vertex u and taking any edge e with r(e) = u, which moves you to s(e).
//! Vertices and edges are stored sorted by identifier; every enumeration below
//! is deterministic in that order.

use std::collections::HashMap;
use std::fmt;

/// Index into [`Graph::vertices`], ordered lexicographically by identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

/// Index into [`Graph::edges`], ordered lexicographically by identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

/// An edge with its range and source vertices.
#[derive(Clone, Debug)]
pub struct Edge {
    pub id: String,
    pub range: VertexId,
    pub source: VertexId,
}

/// A finite directed graph with named vertices and edges.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    // r^{-1}(v) and s^{-1}(v), each ascending by edge index.
    by_range: Vec<Vec<EdgeId>>,
    by_source: Vec<Vec<EdgeId>>,
}

/// Parse failure, reported with the 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn valid_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Graph {
    /// Builds a graph from vertex names and (edge name, range name, source name)
    /// triples. Fails on duplicate identifiers or references to unknown vertices.
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        edges: &[(S, S, S)],
    ) -> Result<Graph, String> {
        let mut vnames: Vec<String> =
            vertices.iter().map(|s| s.as_ref().to_string()).collect();
        vnames.sort();
        for w in vnames.windows(2) {
            if w[0] == w[1] {
                return Err(format!("duplicate identifier `{}`", w[0]));
            }
        }
        let vindex: HashMap<&str, usize> = vnames
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut named: Vec<(String, String, String)> = edges
            .iter()
            .map(|(e, r, s)| {
                (
                    e.as_ref().to_string(),
                    r.as_ref().to_string(),
                    s.as_ref().to_string(),
                )
            })
            .collect();
        named.sort_by(|a, b| a.0.cmp(&b.0));
        let mut built = Vec::with_capacity(named.len());
        for (id, r, s) in named {
            if vindex.contains_key(id.as_str()) {
                return Err(format!("duplicate identifier `{id}`"));
            }
            if built
                .iter()
                .any(|e: &Edge| e.id == id)
            {
                return Err(format!("duplicate identifier `{id}`"));
            }
            let range = *vindex
                .get(r.as_str())
                .ok_or_else(|| format!("undeclared vertex `{r}`"))?;
            let source = *vindex
                .get(s.as_str())
                .ok_or_else(|| format!("undeclared vertex `{s}`"))?;
            built.push(Edge {
                id,
                range: VertexId(range),
                source: VertexId(source),
            });
        }
        let mut by_range = vec![Vec::new(); vnames.len()];
        let mut by_source = vec![Vec::new(); vnames.len()];
        for (i, e) in built.iter().enumerate() {
            by_range[e.range.0].push(EdgeId(i));
            by_source[e.source.0].push(EdgeId(i));
        }
        Ok(Graph {
            vertices: vnames,
            edges: built,
            by_range,
            by_source,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].id
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges
            .binary_search_by(|e| e.id.as_str().cmp(name))
            .ok()
            .map(EdgeId)
    }

    /// Edges e with r(e) = v, ascending.
    pub fn edges_into(&self, v: VertexId) -> &[EdgeId] {
        &self.by_range[v.0]
    }

    /// Edges e with s(e) = v, ascending.
    pub fn edges_out_of(&self, v: VertexId) -> &[EdgeId] {
        &self.by_source[v.0]
    }

    /// c(v) = |s^{-1}(v)|, the number of preimages the shift has over Z(v).
    pub fn c(&self, v: VertexId) -> usize {
        self.by_source[v.0].len()
    }

    /// Parses the line-oriented declaration format:
    /// `vertex <id>` and `edge <id> r=<vertexid> s=<vertexid>`, with `#`
    /// comment lines. Vertices must be declared before edges use them.
    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        let err = |line: usize, msg: String| ParseError { line, msg };
        let mut vertices: Vec<String> = Vec::new();
        let mut edges: Vec<(String, String, String)> = Vec::new();
        let mut seen: HashMap<String, ()> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            match toks[0] {
                "vertex" => {
                    if toks.len() != 2 {
                        return Err(err(line, "expected `vertex <id>`".into()));
                    }
                    let id = toks[1];
                    if !valid_ident(id) {
                        return Err(err(line, format!("invalid identifier `{id}`")));
                    }
                    if seen.insert(id.to_string(), ()).is_some() {
                        return Err(err(line, format!("duplicate identifier `{id}`")));
                    }
                    vertices.push(id.to_string());
                }
                "edge" => {
                    if toks.len() != 4 {
                        return Err(err(
                            line,
                            "expected `edge <id> r=<vertexid> s=<vertexid>`".into(),
                        ));
                    }
                    let id = toks[1];
                    if !valid_ident(id) {
                        return Err(err(line, format!("invalid identifier `{id}`")));
                    }
                    let r = toks[2]
                        .strip_prefix("r=")
                        .ok_or_else(|| err(line, format!("expected `r=<vertexid>`, got `{}`", toks[2])))?;
                    let s = toks[3]
                        .strip_prefix("s=")
                        .ok_or_else(|| err(line, format!("expected `s=<vertexid>`, got `{}`", toks[3])))?;
                    for v in [r, s] {
                        if !vertices.iter().any(|x| x == v) {
                            return Err(err(line, format!("undeclared vertex `{v}`")));
                        }
                    }
                    if seen.insert(id.to_string(), ()).is_some() {
                        return Err(err(line, format!("duplicate identifier `{id}`")));
                    }
                    edges.push((id.to_string(), r.to_string(), s.to_string()));
                }
                other => {
                    return Err(err(line, format!("unknown declaration `{other}`")));
                }
            }
        }
        let eref: Vec<(&str, &str, &str)> = edges
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        let vref: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
        Graph::new(&vref, &eref).map_err(|msg| ParseError { line: 0, msg })
    }

    /// Renders the graph back to the declaration format.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} r={} s={}\n",
                e.id,
                self.vertices[e.range.0],
                self.vertices[e.source.0]
            ));
        }
        out
    }

    /// Structural health report; parsing never enforces these.
    pub fn validate(&self) -> ValidityReport {
        let sources: Vec<VertexId> = self
            .vertex_ids()
            .filter(|v| self.by_range[v.0].is_empty())
            .collect();
        let sinks: Vec<VertexId> = self
            .vertex_ids()
            .filter(|v| self.by_source[v.0].is_empty())
            .collect();
        ValidityReport {
            no_sources: sources.is_empty(),
            shift_total: sinks.is_empty(),
            // Finite graphs are trivially row- and column-finite; kept so the
            // report shape survives any future move to infinite presentations.
            row_finite: true,
            column_finite: true,
            sources,
            sinks,
        }
    }

    pub fn assert_analyzable(&self) {
        let v = self.validate();
        assert!(
            v.analyzable(),
            "analysis requires r^-1(v) and s^-1(v) nonempty for every vertex"
        );
    }

    /// All composable paths of length `n` (the trivial paths when n = 0),
    /// optionally restricted to r(mu) = start, ordered lexicographically by
    /// edge identifier sequence (by vertex for n = 0).
    pub fn enumerate_paths(&self, n: usize, start: Option<VertexId>) -> Vec<Path> {
        let mut out = Vec::new();
        let starts: Vec<VertexId> = match start {
            Some(v) => vec![v],
            None => self.vertex_ids().collect(),
        };
        for v in starts {
            let mut edges = Vec::with_capacity(n);
            self.extend_paths(v, v, n, &mut edges, &mut out);
        }
        out
    }

    fn extend_paths(
        &self,
        range: VertexId,
        at: VertexId,
        remaining: usize,
        edges: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
    ) {
        if remaining == 0 {
            out.push(Path {
                range,
                edges: edges.clone(),
            });
            return;
        }
        for &e in self.edges_into(at) {
            edges.push(e);
            self.extend_paths(range, self.source(e), remaining - 1, edges, out);
            edges.pop();
        }
    }

    /// Vertex-simple cycles, one canonical representative per rotation class,
    /// sorted lexicographically by edge identifier sequence.
    pub fn simple_cycles(&self) -> Vec<Cycle> {
        let n = self.vertex_count();
        let mut found: Vec<Vec<EdgeId>> = Vec::new();
        let mut visited = vec![false; n];
        let mut stack = Vec::new();
        // Rooting each cycle at its minimal vertex finds it exactly once.
        for base in 0..n {
            self.cycle_dfs(base, base, &mut visited, &mut stack, &mut found);
        }
        let mut cycles: Vec<Cycle> = found
            .into_iter()
            .map(|edges| Cycle::canonical(self, edges))
            .collect();
        cycles.sort_by(|a, b| a.0.edges.cmp(&b.0.edges));
        cycles
    }

    fn cycle_dfs(
        &self,
        base: usize,
        at: usize,
        visited: &mut Vec<bool>,
        stack: &mut Vec<EdgeId>,
        found: &mut Vec<Vec<EdgeId>>,
    ) {
        for &e in self.edges_into(VertexId(at)) {
            let t = self.source(e).0;
            if t == base {
                stack.push(e);
                found.push(stack.clone());
                stack.pop();
            } else if t > base && !visited[t] {
                visited[t] = true;
                stack.push(e);
                self.cycle_dfs(base, t, visited, stack, found);
                stack.pop();
                visited[t] = false;
            }
        }
    }

    /// Edges entering the cycle: e not on `cycle` with r(e) on the cycle,
    /// restricted (when `within` is given) to s(e) inside that vertex set.
    pub fn cycle_entries(&self, cycle: &Cycle, within: Option<&VertexSet>) -> Vec<EdgeId> {
        let on_cycle: Vec<EdgeId> = cycle.0.edges.clone();
        let mut out = Vec::new();
        for &ce in &on_cycle {
            let v = self.range(ce);
            for &e in self.edges_into(v) {
                if on_cycle.contains(&e) {
                    continue;
                }
                if let Some(m) = within {
                    if !m.contains(self.source(e)) {
                        continue;
                    }
                }
                out.push(e);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// First simple cycle with no entry, in canonical order.
    pub fn entryless_cycle(&self) -> Option<Cycle> {
        self.simple_cycles()
            .into_iter()
            .find(|c| self.cycle_entries(c, None).is_empty())
    }

    /// All paths of length `depth` extending `mu` at its source end. The
    /// cylinder of `mu` is the disjoint union of their cylinders.
    pub fn refinements(&self, mu: &Path, depth: usize) -> Vec<Path> {
        assert!(depth >= mu.len());
        if depth == mu.len() {
            return vec![mu.clone()];
        }
        self.enumerate_paths(depth - mu.len(), Some(mu.source(self)))
            .into_iter()
            .map(|w| {
                let mut edges = mu.edges().to_vec();
                edges.extend_from_slice(w.edges());
                Path::from_edges(self, edges).expect("refinement composes")
            })
            .collect()
    }

    /// Condition (L): every simple cycle has an entry.
    pub fn condition_l(&self) -> bool {
        self.entryless_cycle().is_none()
    }

    /// Edges lying on at least one return path based at v: reachable from v
    /// and co-reachable to v without an interior visit to v.
    pub fn return_edge_set(&self, v: VertexId) -> Vec<EdgeId> {
        let n = self.vertex_count();
        // Forward: vertices u != v reachable from v without revisiting v.
        let mut fwd = vec![false; n];
        let mut queue: Vec<VertexId> = Vec::new();
        let push_fwd = |g: &Graph, u: VertexId, fwd: &mut Vec<bool>, q: &mut Vec<VertexId>| {
            for &e in g.edges_into(u) {
                let t = g.source(e);
                if t != v && !fwd[t.0] {
                    fwd[t.0] = true;
                    q.push(t);
                }
            }
        };
        push_fwd(self, v, &mut fwd, &mut queue);
        while let Some(u) = queue.pop() {
            push_fwd(self, u, &mut fwd, &mut queue);
        }
        // Backward: vertices u != v from which v is walkable without an
        // interior v.
        let mut bwd = vec![false; n];
        let mut queue: Vec<VertexId> = Vec::new();
        let push_bwd = |g: &Graph, u: VertexId, bwd: &mut Vec<bool>, q: &mut Vec<VertexId>| {
            for &e in g.edges_out_of(u) {
                let t = g.range(e);
                if t != v && !bwd[t.0] {
                    bwd[t.0] = true;
                    q.push(t);
                }
            }
        };
        push_bwd(self, v, &mut bwd, &mut queue);
        while let Some(u) = queue.pop() {
            push_bwd(self, u, &mut bwd, &mut queue);
        }
        self.edge_ids()
            .filter(|&e| {
                let r = self.range(e);
                let s = self.source(e);
                (r == v || fwd[r.0]) && (s == v || bwd[s.0])
            })
            .collect()
    }

    /// Classifies the return paths based at v as zero, exactly one, or many.
    pub fn count_return_paths(&self, v: VertexId) -> ReturnPathCount {
        let rset = self.return_edge_set(v);
        if rset.is_empty() {
            return ReturnPathCount::Zero;
        }
        // A unique return path forces R_v to be a single simple cycle: any
        // branch point would split off a second return path.
        let mut out_deg = vec![0usize; self.vertex_count()];
        for &e in &rset {
            out_deg[self.range(e).0] += 1;
        }
        if out_deg.iter().any(|&d| d >= 2) {
            return ReturnPathCount::Many;
        }
        let mut consumed = 0usize;
        let mut at = v;
        loop {
            let e = rset
                .iter()
                .copied()
                .find(|&e| self.range(e) == at)
                .expect("every return edge set vertex continues");
            consumed += 1;
            at = self.source(e);
            if at == v {
                break;
            }
            if consumed > rset.len() {
                return ReturnPathCount::Many;
            }
        }
        if consumed == rset.len() {
            ReturnPathCount::One
        } else {
            ReturnPathCount::Many
        }
    }

    /// The single return path based at v, when the classification is one.
    /// In that case the return edge set is one simple cycle, so walking it
    /// from v reads the path off deterministically.
    pub fn unique_return_path(&self, v: VertexId) -> Option<ReturnPath> {
        if self.count_return_paths(v) != ReturnPathCount::One {
            return None;
        }
        let rset = self.return_edge_set(v);
        let mut edges = Vec::with_capacity(rset.len());
        let mut at = v;
        loop {
            let e = rset
                .iter()
                .copied()
                .find(|&e| self.range(e) == at)
                .expect("a unique return path visits every return edge");
            edges.push(e);
            at = self.source(e);
            if at == v {
                break;
            }
        }
        let path = Path::from_edges(self, edges).expect("walked edges compose");
        Some(ReturnPath::from_path(self, &path).expect("walk returns to its base"))
    }

    /// First vertex whose return paths classify as exactly one.
    pub fn unique_return_vertex(&self) -> Option<VertexId> {
        self.vertex_ids()
            .find(|&v| self.count_return_paths(v) == ReturnPathCount::One)
    }

    /// Condition (K): no vertex lies on exactly one return path.
    pub fn condition_k(&self) -> bool {
        self.unique_return_vertex().is_none()
    }

    /// v <= w: some path mu has r(mu) = v and s(mu) = w (the trivial path
    /// when v = w).
    pub fn reaches(&self, v: VertexId, w: VertexId) -> bool {
        if v == w {
            return true;
        }
        let mut seen = vec![false; self.vertex_count()];
        seen[v.0] = true;
        let mut queue = vec![v];
        while let Some(u) = queue.pop() {
            for &e in self.edges_into(u) {
                let t = self.source(e);
                if t == w {
                    return true;
                }
                if !seen[t.0] {
                    seen[t.0] = true;
                    queue.push(t);
                }
            }
        }
        false
    }

    /// All w with v <= w, as a vertex set. Requires at most 64 vertices.
    pub fn reach_set(&self, v: VertexId) -> VertexSet {
        assert!(self.vertex_count() <= 64, "vertex sets support at most 64 vertices");
        let mut set = VertexSet::empty();
        set.insert(v);
        let mut queue = vec![v];
        while let Some(u) = queue.pop() {
            for &e in self.edges_into(u) {
                let t = self.source(e);
                if !set.contains(t) {
                    set.insert(t);
                    queue.push(t);
                }
            }
        }
        set
    }

    /// Strongly connected components of the walk digraph (u steps to s(e) for
    /// e with r(e) = u), in deterministic order; `terminal` marks components
    /// with no step leaving them.
    pub fn components(&self) -> Vec<Scc> {
        let n = self.vertex_count();
        // Iterative Tarjan.
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        #[derive(Clone)]
        struct Frame {
            v: usize,
            edge_pos: usize,
        }
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut frames = vec![Frame { v: root, edge_pos: 0 }];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(f) = frames.last_mut() {
                let v = f.v;
                let succs = &self.by_range[v];
                if f.edge_pos < succs.len() {
                    let w = self.source(succs[f.edge_pos]).0;
                    f.edge_pos += 1;
                    if index[w] == usize::MAX {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push(Frame { v: w, edge_pos: 0 });
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp_of[w] = comps.len();
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort();
                        comps.push(comp);
                    }
                    frames.pop();
                    if let Some(parent) = frames.last() {
                        let pv = parent.v;
                        low[pv] = low[pv].min(low[v]);
                    }
                }
            }
        }
        let mut sccs: Vec<Scc> = comps
            .iter()
            .enumerate()
            .map(|(ci, members)| {
                let terminal = members.iter().all(|&u| {
                    self.by_range[u]
                        .iter()
                        .all(|&e| comp_of[self.source(e).0] == ci)
                });
                Scc {
                    vertices: members.iter().map(|&u| VertexId(u)).collect(),
                    terminal,
                }
            })
            .collect();
        sccs.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        sccs
    }

    /// First witness that cofinality fails: a vertex v and a cycle whose
    /// periodic path never walks within reach of v. Requires an analyzable
    /// graph.
    pub fn cofinality_failure(&self) -> Option<(VertexId, Cycle)> {
        self.assert_analyzable();
        let cycles = self.simple_cycles();
        // Every infinite path eventually walks inside a terminal component,
        // so reachability from those components decides cofinality.
        let terminals: Vec<Scc> = self
            .components()
            .into_iter()
            .filter(|c| c.terminal)
            .collect();
        for v in self.vertex_ids() {
            for t in &terminals {
                let probe = t.vertices[0];
                if !self.reaches(probe, v) {
                    let witness = cycles
                        .iter()
                        .find(|c| c.vertices(self).iter().all(|u| t.vertices.contains(u)))
                        .expect("terminal component of an analyzable graph carries a cycle")
                        .clone();
                    return Some((v, witness));
                }
            }
        }
        None
    }

    /// Cofinality: from the tail of any infinite path every vertex is reachable.
    pub fn cofinal(&self) -> bool {
        self.cofinality_failure().is_none()
    }
}

/// Outcome of [`Graph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub no_sources: bool,
    pub shift_total: bool,
    pub row_finite: bool,
    pub column_finite: bool,
    /// Vertices with r^{-1}(v) empty.
    pub sources: Vec<VertexId>,
    /// Vertices with s^{-1}(v) empty.
    pub sinks: Vec<VertexId>,
}

impl ValidityReport {
    pub fn analyzable(&self) -> bool {
        self.no_sources && self.shift_total && self.row_finite && self.column_finite
    }
}

/// Return path classification at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReturnPathCount {
    Zero,
    One,
    Many,
}

impl fmt::Display for ReturnPathCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReturnPathCount::Zero => write!(f, "0"),
            ReturnPathCount::One => write!(f, "1"),
            ReturnPathCount::Many => write!(f, "many"),
        }
    }
}

/// A strongly connected component of the walk digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scc {
    pub vertices: Vec<VertexId>,
    pub terminal: bool,
}

/// A finite composable path. The empty path at a vertex is permitted and
/// carries that vertex as both range and source; cylinder bases use it for
/// depth zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            range: v,
            edges: Vec::new(),
        }
    }

    /// Validates composability of the edge sequence.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Option<Path> {
        if edges.is_empty() {
            return None;
        }
        for w in edges.windows(2) {
            if g.source(w[0]) != g.range(w[1]) {
                return None;
            }
        }
        Some(Path {
            range: g.range(edges[0]),
            edges,
        })
    }

    /// Parses a comma-separated edge identifier list, or a bare vertex
    /// identifier for the trivial path.
    pub fn parse(g: &Graph, text: &str) -> Option<Path> {
        if let Some(v) = g.vertex_by_name(text.trim()) {
            return Some(Path::trivial(v));
        }
        let edges: Option<Vec<EdgeId>> = text
            .split(',')
            .map(|t| g.edge_by_name(t.trim()))
            .collect();
        Path::from_edges(g, edges?)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self, g: &Graph) -> VertexId {
        match self.edges.last() {
            Some(&e) => g.source(e),
            None => self.range,
        }
    }

    /// The first edge, when the path is nonempty.
    pub fn first(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    /// Drops the first `k` edges; the result ranges at the vertex reached.
    pub fn suffix(&self, g: &Graph, k: usize) -> Path {
        assert!(k <= self.len());
        let edges: Vec<EdgeId> = self.edges[k..].to_vec();
        let range = match edges.first() {
            Some(&e) => g.range(e),
            None => self.source_at(g, k),
        };
        Path { range, edges }
    }

    fn source_at(&self, g: &Graph, k: usize) -> VertexId {
        if k == 0 {
            self.range
        } else {
            g.source(self.edges[k - 1])
        }
    }

    /// The first `k` edges as a path.
    pub fn prefix(&self, k: usize) -> Path {
        assert!(k <= self.len());
        Path {
            range: self.range,
            edges: self.edges[..k].to_vec(),
        }
    }

    /// e . mu, requiring s(e) = r(mu).
    pub fn prepend(&self, g: &Graph, e: EdgeId) -> Path {
        assert_eq!(g.source(e), self.range, "prepend requires s(e) = r(mu)");
        let mut edges = Vec::with_capacity(self.len() + 1);
        edges.push(e);
        edges.extend_from_slice(&self.edges);
        Path {
            range: g.range(e),
            edges,
        }
    }

    /// mu . e, requiring s(mu) = r(e).
    pub fn append(&self, g: &Graph, e: EdgeId) -> Path {
        assert_eq!(self.source(g), g.range(e), "append requires s(mu) = r(e)");
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            range: self.range,
            edges,
        }
    }

    /// Joined edge identifiers, or the vertex identifier for trivial paths.
    pub fn label(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            g.vertex_name(self.range).to_string()
        } else {
            self.edges
                .iter()
                .map(|&e| g.edge_name(e))
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Order within a fixed depth: lexicographic by edge index sequence, by
    /// range vertex for trivial paths.
    pub fn cmp_basis(&self, other: &Path) -> std::cmp::Ordering {
        self.edges
            .cmp(&other.edges)
            .then(self.range.cmp(&other.range))
    }
}

/// A nonempty path with r = s, canonically rotated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle(Path);

impl Cycle {
    /// Canonicalizes by choosing the lexicographically minimal rotation of the
    /// edge sequence.
    pub fn canonical(g: &Graph, edges: Vec<EdgeId>) -> Cycle {
        assert!(!edges.is_empty());
        let n = edges.len();
        let mut best = 0usize;
        for k in 1..n {
            let better = (0..n).find_map(|i| {
                let a = edges[(k + i) % n];
                let b = edges[(best + i) % n];
                if a != b {
                    Some(a < b)
                } else {
                    None
                }
            });
            if better == Some(true) {
                best = k;
            }
        }
        let rotated: Vec<EdgeId> = (0..n).map(|i| edges[(best + i) % n]).collect();
        let path = Path::from_edges(g, rotated).expect("cycle edges compose");
        assert_eq!(path.range(), path.source(g), "cycle requires r = s");
        Cycle(path)
    }

    pub fn from_path(g: &Graph, p: &Path) -> Option<Cycle> {
        if p.is_empty() || p.range() != p.source(g) {
            return None;
        }
        Some(Cycle::canonical(g, p.edges().to_vec()))
    }

    pub fn path(&self) -> &Path {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn base(&self) -> VertexId {
        self.0.range()
    }

    /// The distinct vertices visited, in traversal order from the base.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.0.edges().iter().map(|&e| g.range(e)).collect()
    }

    pub fn label(&self, g: &Graph) -> String {
        self.0.label(g)
    }
}

/// A return path: r = s and no interior visit to the base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnPath(Path);

impl ReturnPath {
    pub fn from_path(g: &Graph, p: &Path) -> Option<ReturnPath> {
        if p.is_empty() || p.range() != p.source(g) {
            return None;
        }
        let base = p.range();
        let interior_ok = p.edges()[1..].iter().all(|&e| g.range(e) != base);
        if interior_ok {
            Some(ReturnPath(p.clone()))
        } else {
            None
        }
    }

    pub fn path(&self) -> &Path {
        &self.0
    }

    pub fn base(&self) -> VertexId {
        self.0.range()
    }
}

/// A set of vertices, packed as a 64-bit mask over vertex indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub fn empty() -> VertexSet {
        VertexSet(0)
    }

    pub fn full(g: &Graph) -> VertexSet {
        assert!(g.vertex_count() <= 64, "vertex sets support at most 64 vertices");
        if g.vertex_count() == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << g.vertex_count()) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: VertexId) -> VertexSet {
        VertexSet(1u64 << v.0)
    }

    pub fn of<I: IntoIterator<Item = VertexId>>(vs: I) -> VertexSet {
        let mut s = VertexSet::empty();
        for v in vs {
            s.insert(v);
        }
        s
    }

    /// Resolves vertex names against a graph.
    pub fn by_names(g: &Graph, names: &[&str]) -> Option<VertexSet> {
        let mut s = VertexSet::empty();
        for n in names {
            s.insert(g.vertex_by_name(n)?);
        }
        Some(s)
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1u64 << v.0;
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 & (1u64 << v.0) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersect(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn complement(self, g: &Graph) -> VertexSet {
        VertexSet::full(g).minus(self)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(VertexId(i))
            }
        })
    }

    /// Sorted vertex names.
    pub fn names(self, g: &Graph) -> Vec<String> {
        self.iter().map(|v| g.vertex_name(v).to_string()).collect()
    }

    pub fn label(self, g: &Graph) -> String {
        format!("{{{}}}", self.names(g).join(","))
    }
}
