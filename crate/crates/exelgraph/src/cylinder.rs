//! Cylinder functions on path space and the operator calculus over them.
//!
//! A cylinder function is constant on the cylinders of some fixed depth; the
//! continuous functions they span are dense, so every operator identity of
//! the theory can be checked exactly on them. Functions are stored sparsely
//! as (path, value) pairs and the arithmetic never materializes refinements
//! it can avoid: products evaluate the shallower factor on the deeper
//! factor's support, and the averaging operator groups entries by their
//! dropped first edge.

use crate::dynamics::EvPath;
use crate::error::Error;
use crate::graph::{Graph, Path, VertexId};
use crate::scalar::Scalar;
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

/// A function on infinite path space constant on depth-`depth` cylinders,
/// with Gaussian-rational values. Entries hold the nonzero values, keyed by
/// basis paths of exactly that depth, sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylFun {
    depth: usize,
    entries: Vec<(Path, Scalar)>,
}

impl CylFun {
    pub fn zero(depth: usize) -> CylFun {
        CylFun {
            depth,
            entries: Vec::new(),
        }
    }

    /// The indicator of the cylinder Z(mu).
    pub fn chi(mu: &Path) -> CylFun {
        CylFun {
            depth: mu.len(),
            entries: vec![(mu.clone(), Scalar::one())],
        }
    }

    /// The indicator of all paths ranging at v.
    pub fn vertex_chi(v: VertexId) -> CylFun {
        CylFun::chi(&Path::trivial(v))
    }

    /// The constant function 1.
    pub fn unit(g: &Graph) -> CylFun {
        CylFun {
            depth: 0,
            entries: g
                .vertex_ids()
                .map(|v| (Path::trivial(v), Scalar::one()))
                .collect(),
        }
    }

    /// Normalizes arbitrary same-depth entries: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_entries(depth: usize, entries: Vec<(Path, Scalar)>) -> CylFun {
        for (p, _) in &entries {
            assert_eq!(p.len(), depth, "entry path depth mismatch");
        }
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp_basis(&b.0));
        let mut merged: Vec<(Path, Scalar)> = Vec::with_capacity(entries.len());
        for (p, v) in entries {
            match merged.last_mut() {
                Some((q, w)) if q.cmp_basis(&p) == Ordering::Equal => *w += &v,
                _ => merged.push((p, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        CylFun {
            depth,
            entries: merged,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn entries(&self) -> &[(Path, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry whose cylinder contains Z(nu), without materializing the
    /// prefix: entries of equal depth are ordered by their edge lists (by
    /// range at depth 0), so a slice comparison searches them directly.
    fn lookup(&self, nu: &Path) -> Option<&Scalar> {
        let found = if self.depth == 0 {
            let key = nu.range();
            self.entries.binary_search_by(|(p, _)| p.range().cmp(&key))
        } else {
            let key = &nu.edges()[..self.depth];
            self.entries.binary_search_by(|(p, _)| p.edges().cmp(key))
        };
        found.ok().map(|i| &self.entries[i].1)
    }

    /// The constant value on Z(nu), for nu at least as deep as the function.
    pub fn value_on(&self, nu: &Path) -> Scalar {
        assert!(nu.len() >= self.depth, "evaluation path too shallow");
        self.lookup(nu).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The value at a single infinite path.
    pub fn eval(&self, g: &Graph, xi: &EvPath) -> Scalar {
        self.value_on(&xi.prefix(g, self.depth))
    }

    /// The same function presented on a deeper cylinder basis.
    pub fn refine(&self, g: &Graph, depth: usize) -> CylFun {
        assert!(depth >= self.depth, "refinement cannot lose depth");
        if depth == self.depth {
            return self.clone();
        }
        let mut entries = Vec::new();
        for (p, v) in &self.entries {
            for nu in g.refinements(p, depth) {
                entries.push((nu, v.clone()));
            }
        }
        CylFun::from_entries(depth, entries)
    }

    pub fn scale(&self, c: &Scalar) -> CylFun {
        if c.is_zero() {
            return CylFun::zero(self.depth);
        }
        CylFun {
            depth: self.depth,
            entries: self
                .entries
                .iter()
                .map(|(p, v)| (p.clone(), c * v))
                .collect(),
        }
    }

    pub fn neg(&self) -> CylFun {
        self.scale(&Scalar::integer(-1))
    }

    pub fn conj(&self) -> CylFun {
        CylFun {
            depth: self.depth,
            entries: self
                .entries
                .iter()
                .map(|(p, v)| (p.clone(), v.conj()))
                .collect(),
        }
    }

    pub fn add(&self, g: &Graph, other: &CylFun) -> CylFun {
        let depth = self.depth.max(other.depth);
        let a = self.refine(g, depth);
        let b = other.refine(g, depth);
        let mut entries = a.entries;
        entries.extend(b.entries);
        CylFun::from_entries(depth, entries)
    }

    pub fn sub(&self, g: &Graph, other: &CylFun) -> CylFun {
        self.add(g, &other.neg())
    }

    /// Pointwise product at depth max(d1, d2), evaluated on the deeper
    /// factor's support so nothing is expanded.
    pub fn mul(&self, other: &CylFun) -> CylFun {
        let (deep, shallow) = if self.depth >= other.depth {
            (self, other)
        } else {
            (other, self)
        };
        let entries = deep
            .entries
            .iter()
            .filter_map(|(p, v)| shallow.lookup(p).map(|w| (p.clone(), v * w)))
            .collect();
        CylFun {
            depth: deep.depth,
            entries,
        }
    }

    /// Pointwise equality regardless of presentation depth.
    pub fn same_function(&self, g: &Graph, other: &CylFun) -> bool {
        if self.depth == other.depth {
            return self.entries == other.entries;
        }
        let depth = self.depth.max(other.depth);
        self.refine(g, depth) == other.refine(g, depth)
    }

    /// JSON form with canonical rational strings.
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "depth": self.depth,
            "entries": self.entries.iter().map(|(p, v)| serde_json::json!({
                "path": p.label(g),
                "re": v.re.to_string(),
                "im": v.im.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// c(v): the number of edges sourced at v, the local preimage count of the
/// shift.
pub fn preimage_count(g: &Graph, v: VertexId) -> usize {
    g.edges_out_of(v).len()
}

fn recip_c(g: &Graph, v: VertexId) -> Scalar {
    Scalar::real(BigRational::new(1.into(), (preimage_count(g, v) as i64).into()))
}

fn c_scalar(g: &Graph, v: VertexId) -> Scalar {
    Scalar::integer(preimage_count(g, v) as i64)
}

/// The endomorphism f -> f o shift: one depth deeper, value at e.mu equal to
/// the value at mu.
pub fn alpha(g: &Graph, f: &CylFun) -> CylFun {
    let mut entries = Vec::new();
    for (p, v) in f.entries() {
        for &e in g.edges_out_of(p.range()) {
            entries.push((p.prepend(g, e), v.clone()));
        }
    }
    CylFun::from_entries(f.depth() + 1, entries)
}

/// The transfer operator: the average of f over the shift preimages,
/// L(f)(xi) = c(r(xi))^-1 sum over s(e) = r(xi) of f(e.xi).
///
/// An entry at mu contributes its value, weighted by c(s(mu_1))^-1, to the
/// basis path mu with its first edge dropped; depth-0 functions are bumped
/// one level first so the same grouping applies.
pub fn transfer(g: &Graph, f: &CylFun) -> CylFun {
    let bumped;
    let f = if f.depth() == 0 {
        bumped = f.refine(g, 1);
        &bumped
    } else {
        f
    };
    let mut weights: Vec<Option<Scalar>> = vec![None; g.vertex_count()];
    let mut entries = Vec::with_capacity(f.entries().len());
    for (p, v) in f.entries() {
        let s = g.source(p.edges()[0]);
        let weight = weights[s.0].get_or_insert_with(|| recip_c(g, s));
        entries.push((p.suffix(g, 1), &*weight * v));
    }
    CylFun::from_entries(f.depth() - 1, entries)
}

/// The module inner product <f, h> = L(conj(f) . h).
pub fn inner(g: &Graph, f: &CylFun, h: &CylFun) -> CylFun {
    transfer(g, &f.conj().mul(h))
}

/// The right module action f . a = f . alpha(a).
pub fn right_act(g: &Graph, f: &CylFun, a: &CylFun) -> CylFun {
    f.mul(&alpha(g, a))
}

/// One summand of a finite-rank operator on the cylinder-function module.
#[derive(Clone, Debug)]
pub enum OpTerm {
    /// z -> f.z
    Mult(CylFun),
    /// z -> x . alpha(<y, z>)
    Theta(CylFun, CylFun),
}

/// A finite sum of multiplication and rank-one operators.
#[derive(Clone, Debug, Default)]
pub struct CylOperator {
    terms: Vec<OpTerm>,
}

impl CylOperator {
    pub fn mult(f: CylFun) -> CylOperator {
        CylOperator {
            terms: vec![OpTerm::Mult(f)],
        }
    }

    pub fn theta(x: CylFun, y: CylFun) -> CylOperator {
        CylOperator {
            terms: vec![OpTerm::Theta(x, y)],
        }
    }

    pub fn plus(mut self, other: CylOperator) -> CylOperator {
        self.terms.extend(other.terms);
        self
    }

    /// Scales the operator, folding the factor into the linear slot of each
    /// term.
    pub fn scaled(self, c: &Scalar) -> CylOperator {
        CylOperator {
            terms: self
                .terms
                .into_iter()
                .map(|t| match t {
                    OpTerm::Mult(f) => OpTerm::Mult(f.scale(c)),
                    OpTerm::Theta(x, y) => OpTerm::Theta(x.scale(c), y),
                })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[OpTerm] {
        &self.terms
    }

    /// The depth its application to a depth-d argument naturally produces.
    /// Rank-one terms always produce at least depth 1: the inner product
    /// they prepend with alpha lives one level below its arguments, but
    /// never below level 0.
    pub fn natural_depth(&self, z_depth: usize) -> usize {
        self.terms
            .iter()
            .map(|t| match t {
                OpTerm::Mult(f) => f.depth().max(z_depth),
                OpTerm::Theta(x, y) => x.depth().max(y.depth().max(z_depth)).max(1),
            })
            .max()
            .unwrap_or(z_depth)
    }

    /// Applies at the natural depth.
    pub fn apply_natural(&self, g: &Graph, z: &CylFun) -> CylFun {
        let mut acc = CylFun::zero(self.natural_depth(z.depth()));
        for t in &self.terms {
            let part = match t {
                OpTerm::Mult(f) => f.mul(z),
                OpTerm::Theta(x, y) => x.mul(&alpha(g, &inner(g, y, z))),
            };
            acc = acc.add(g, &part);
        }
        acc
    }

    /// Applies and presents the result on the depth-`depth` basis, which
    /// must accommodate the natural depth.
    pub fn apply(&self, g: &Graph, z: &CylFun, depth: usize) -> Result<CylFun, Error> {
        let natural = self.natural_depth(z.depth());
        if depth < natural {
            return Err(Error::DepthTooSmall {
                required: natural,
                given: depth,
            });
        }
        Ok(self.apply_natural(g, z).refine(g, depth))
    }

    /// The matrix on the depth-`depth` cylinder basis; column j is the image
    /// of the indicator of basis path j.
    pub fn matrix(&self, g: &Graph, depth: usize) -> Result<OpMatrix, Error> {
        let basis = g.enumerate_paths(depth, None);
        let mut rows = vec![vec![Scalar::zero(); basis.len()]; basis.len()];
        for (j, mu) in basis.iter().enumerate() {
            let image = self.apply(g, &CylFun::chi(mu), depth)?;
            for (i, nu) in basis.iter().enumerate() {
                rows[i][j] = image.value_on(nu);
            }
        }
        Ok(OpMatrix { basis, rows })
    }

    /// Operator agreement on the depth-`depth` basis, column by column with
    /// early exit. Together with the transfer law this extends to agreement
    /// on every deeper basis, since deeper indicators factor through
    /// depth-`depth` ones under the right module action.
    pub fn agrees_with(&self, g: &Graph, other: &CylOperator, depth: usize) -> Result<bool, Error> {
        for mu in g.enumerate_paths(depth, None) {
            let z = CylFun::chi(&mu);
            if !self
                .apply(g, &z, depth.max(self.natural_depth(depth)))?
                .same_function(g, &other.apply_natural(g, &z))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An exact operator matrix over a cylinder basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpMatrix {
    pub basis: Vec<Path>,
    pub rows: Vec<Vec<Scalar>>,
}

impl OpMatrix {
    pub fn render(&self, g: &Graph) -> String {
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!(
                "{:>8}  [{}]\n",
                self.basis[i].label(g),
                cells.join(", ")
            ));
        }
        out
    }
}

/// Outcome of one named identity check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub instances: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn tally(name: &'static str, instances: usize, failure: Option<String>) -> CheckResult {
        CheckResult {
            name,
            instances,
            pass: failure.is_none(),
            counterexample: failure,
        }
    }
}

/// Results of the full identity suite at a given depth.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub depth: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }
}

fn basis_paths(g: &Graph, max_depth: usize) -> Vec<Path> {
    (0..=max_depth)
        .flat_map(|d| g.enumerate_paths(d, None))
        .collect()
}

/// Runs the nine-identity verification suite over all cylinder bases up to
/// `max_depth`. The seed only drives the random functions of the
/// faithfulness check; everything else is exhaustive.
///
/// The checks, in order: the transfer law L(alpha(f)h) = f L(h); L alpha =
/// id; the closed form of L on indicators; the rank-one form of indicator
/// multiplication, both ways; the resolution of the identity into rank-one
/// operators over edges; the Cuntz-Krieger sum at each vertex; the edge
/// inner products; the rank-one adjoint law; and positivity plus
/// faithfulness of the inner product.
pub fn verify_identities(g: &Graph, max_depth: usize, seed: u64) -> VerifyReport {
    g.assert_analyzable();
    let basis = basis_paths(g, max_depth);
    let mut checks = Vec::new();

    // (1) L(alpha(f)h) = f L(h) on all basis pairs. The indicators and
    // their transfers are shared across the whole pair loop.
    {
        let chis: Vec<CylFun> = basis.iter().map(CylFun::chi).collect();
        let transfers: Vec<CylFun> = chis.iter().map(|h| transfer(g, h)).collect();
        let mut failure = None;
        let mut instances = 0;
        'outer: for (mu, f) in basis.iter().zip(&chis) {
            let af = alpha(g, f);
            for ((nu, h), lh) in basis.iter().zip(&chis).zip(&transfers) {
                instances += 1;
                let lhs = transfer(g, &af.mul(h));
                let rhs = f.mul(lh);
                if !lhs.same_function(g, &rhs) {
                    failure = Some(format!(
                        "f = chi({}), h = chi({}): {} vs {}",
                        mu.label(g),
                        nu.label(g),
                        lhs.to_json(g),
                        rhs.to_json(g)
                    ));
                    break 'outer;
                }
            }
        }
        checks.push(CheckResult::tally("transfer-law", instances, failure));
    }

    // (2) L(alpha(f)) = f.
    {
        let mut failure = None;
        for mu in &basis {
            let f = CylFun::chi(mu);
            let back = transfer(g, &alpha(g, &f));
            if !back.same_function(g, &f) {
                failure = Some(format!(
                    "f = chi({}): L(alpha(f)) = {}",
                    mu.label(g),
                    back.to_json(g)
                ));
                break;
            }
        }
        checks.push(CheckResult::tally("transfer-section", basis.len(), failure));
    }

    // (3) L(chi(mu)) = c(s(mu_1))^-1 chi(mu_2...mu_n).
    {
        let mut failure = None;
        let mut instances = 0;
        for mu in basis.iter().filter(|m| !m.is_empty()) {
            instances += 1;
            let got = transfer(g, &CylFun::chi(mu));
            let expected =
                CylFun::chi(&mu.suffix(g, 1)).scale(&recip_c(g, g.source(mu.edges()[0])));
            if got != expected {
                failure = Some(format!(
                    "mu = {}: {} vs {}",
                    mu.label(g),
                    got.to_json(g),
                    expected.to_json(g)
                ));
                break;
            }
        }
        checks.push(CheckResult::tally("transfer-on-cylinders", instances, failure));
    }

    // (4) mult(chi(mu)) = c(s(mu_1)) Theta(chi(mu), chi(mu_1)), both orders.
    {
        let mut failure = None;
        let mut instances = 0;
        'outer: for mu in basis.iter().filter(|m| !m.is_empty()) {
            let c = c_scalar(g, g.source(mu.edges()[0]));
            let head = CylFun::chi(&mu.prefix(1));
            let whole = CylFun::chi(mu);
            let lhs = CylOperator::mult(whole.clone());
            for rhs in [
                CylOperator::theta(whole.clone(), head.clone()).scaled(&c),
                CylOperator::theta(head, whole).scaled(&c),
            ] {
                instances += 1;
                if !lhs.agrees_with(g, &rhs, mu.len()).expect("depth accommodates") {
                    failure = Some(format!(
                        "mu = {}: operators differ at depth {}",
                        mu.label(g),
                        mu.len()
                    ));
                    break 'outer;
                }
            }
        }
        checks.push(CheckResult::tally("rank-one-multiplication", instances, failure));
    }

    // (5) mult(f) = sum over edges of c(s(e)) Theta(f chi(e), chi(e)).
    {
        let mut failure = None;
        for mu in &basis {
            let f = CylFun::chi(mu);
            let mut sum = CylOperator::default();
            for e in g.edge_ids() {
                let chi_e = CylFun::chi(&Path::from_edges(g, vec![e]).expect("edge path"));
                sum = sum.plus(
                    CylOperator::theta(f.mul(&chi_e), chi_e).scaled(&c_scalar(g, g.source(e))),
                );
            }
            let depth = mu.len().max(1);
            if !CylOperator::mult(f)
                .agrees_with(g, &sum, depth)
                .expect("depth accommodates")
            {
                failure = Some(format!(
                    "f = chi({}): resolution fails at depth {}",
                    mu.label(g),
                    depth
                ));
                break;
            }
        }
        checks.push(CheckResult::tally("resolution-of-identity", basis.len(), failure));
    }

    // (6) sum over r(e) = v of c(s(e)) Theta(chi(e), chi(e)) = mult(chi(v)).
    {
        let mut failure = None;
        let mut instances = 0;
        for v in g.vertex_ids() {
            instances += 1;
            let mut sum = CylOperator::default();
            for &e in g.edges_into(v) {
                let chi_e = CylFun::chi(&Path::from_edges(g, vec![e]).expect("edge path"));
                sum = sum.plus(
                    CylOperator::theta(chi_e.clone(), chi_e).scaled(&c_scalar(g, g.source(e))),
                );
            }
            let lhs = CylOperator::mult(CylFun::vertex_chi(v));
            if !lhs.agrees_with(g, &sum, 1).expect("depth accommodates") {
                failure = Some(format!("v = {}: sum differs at depth 1", g.vertex_name(v)));
                break;
            }
        }
        checks.push(CheckResult::tally("cuntz-krieger-sum", instances, failure));
    }

    // (7) <chi(e), chi(e')> = delta c(s(e))^-1 chi(s(e)).
    {
        let mut failure = None;
        let mut instances = 0;
        'outer: for e in g.edge_ids() {
            let chi_e = CylFun::chi(&Path::from_edges(g, vec![e]).expect("edge path"));
            for e2 in g.edge_ids() {
                instances += 1;
                let chi_e2 = CylFun::chi(&Path::from_edges(g, vec![e2]).expect("edge path"));
                let got = inner(g, &chi_e, &chi_e2);
                let expected = if e == e2 {
                    CylFun::vertex_chi(g.source(e)).scale(&recip_c(g, g.source(e)))
                } else {
                    CylFun::zero(0)
                };
                if !got.same_function(g, &expected) {
                    failure = Some(format!(
                        "e = {}, e' = {}: {} vs {}",
                        g.edge_name(e),
                        g.edge_name(e2),
                        got.to_json(g),
                        expected.to_json(g)
                    ));
                    break 'outer;
                }
            }
        }
        checks.push(CheckResult::tally("edge-inner-products", instances, failure));
    }

    // (8) <Theta(x,y) z, w> = <z, Theta(y,x) w> over shallow basis tuples;
    // the tuple depth is capped so the quartic range stays tractable.
    {
        let tuple_depth = if max_depth >= 4 { 2 } else { 1 };
        let small = basis_paths(g, tuple_depth);
        let mut failure = None;
        let mut instances = 0;
        'outer: for mx in &small {
            let x = CylFun::chi(mx);
            for my in &small {
                let y = CylFun::chi(my);
                let fwd = CylOperator::theta(x.clone(), y.clone());
                let bwd = CylOperator::theta(y.clone(), x.clone());
                for mz in &small {
                    let z = CylFun::chi(mz);
                    let tz = fwd.apply_natural(g, &z);
                    for mw in &small {
                        let w = CylFun::chi(mw);
                        instances += 1;
                        let lhs = inner(g, &tz, &w);
                        let rhs = inner(g, &z, &bwd.apply_natural(g, &w));
                        if !lhs.same_function(g, &rhs) {
                            failure = Some(format!(
                                "x,y,z,w = {},{},{},{}: {} vs {}",
                                mx.label(g),
                                my.label(g),
                                mz.label(g),
                                mw.label(g),
                                lhs.to_json(g),
                                rhs.to_json(g)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::tally("rank-one-adjoint", instances, failure));
    }

    // (9) <f, f> is nonnegative real and vanishes only at f = 0.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failure = None;
        let mut instances = 0;
        'outer: for depth in 0..=max_depth {
            let level = g.enumerate_paths(depth, None);
            for trial in 0..=8 {
                instances += 1;
                let f = if trial == 0 {
                    CylFun::zero(depth)
                } else {
                    random_fun(&mut rng, depth, &level)
                };
                let ip = inner(g, &f, &f);
                let positive = ip.entries().iter().all(|(_, v)| v.is_nonnegative_real());
                let faithful = ip.is_zero() == f.is_zero();
                if !positive || !faithful {
                    failure = Some(format!(
                        "f = {}: <f,f> = {}",
                        f.to_json(g),
                        ip.to_json(g)
                    ));
                    break 'outer;
                }
            }
        }
        checks.push(CheckResult::tally("inner-product-faithful", instances, failure));
    }

    VerifyReport {
        depth: max_depth,
        checks,
    }
}

/// A random function on the given basis level, with small Gaussian-rational
/// coefficients and roughly half the entries zero.
pub fn random_fun<R: Rng>(rng: &mut R, depth: usize, level: &[Path]) -> CylFun {
    let mut entries = Vec::new();
    for p in level {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let mut part = || {
            BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=9).into())
        };
        let v = Scalar {
            re: part(),
            im: part(),
        };
        entries.push((p.clone(), v));
    }
    CylFun::from_entries(depth, entries)
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

    fn p(g: &Graph, text: &str) -> Path {
        Path::parse(g, text).unwrap()
    }

    fn chi(g: &Graph, text: &str) -> CylFun {
        CylFun::chi(&p(g, text))
    }

    fn table(g: &Graph, f: &CylFun) -> Vec<(String, String)> {
        f.entries()
            .iter()
            .map(|(path, v)| (path.label(g), v.to_string()))
            .collect()
    }

    #[test]
    fn refinement_tables() {
        let g2 = double_loop();
        let r = chi(&g2, "e").refine(&g2, 2);
        assert_eq!(
            table(&g2, &r),
            [("e,e".into(), "1".into()), ("e,f".into(), "1".into())]
        );
        let g4 = loop_to_loop();
        let r = chi(&g4, "v").refine(&g4, 1);
        assert_eq!(table(&g4, &r), [("e".into(), "1".into()), ("h".into(), "1".into())]);
        let f = chi(&g4, "h");
        assert_eq!(f.refine(&g4, 1), f);
    }

    #[test]
    fn evaluation_and_arithmetic() {
        let g4 = loop_to_loop();
        let f = chi(&g4, "h");
        assert_eq!(f.value_on(&p(&g4, "h,k")), Scalar::one());
        assert_eq!(f.value_on(&p(&g4, "e,h")), Scalar::zero());
        let xi = EvPath::parse(&g4, "h|k").unwrap();
        assert_eq!(f.eval(&g4, &xi), Scalar::one());
        let g = chi(&g4, "e,h");
        let sum = f.add(&g4, &g);
        assert_eq!(sum.depth(), 2);
        assert_eq!(sum.value_on(&p(&g4, "e,h")), Scalar::one());
        assert!(sum.sub(&g4, &sum).is_zero());
        assert!(f.mul(&g).is_zero(), "Z(h) and Z(eh) are disjoint");
        assert_eq!(chi(&g4, "v").mul(&f), f, "shallow indicators act as projections");
    }

    #[test]
    fn products_match_pointwise_refinement() {
        for g in [double_loop(), two_cycle(), loop_to_loop()] {
            let basis = basis_paths(&g, 2);
            for mu in &basis {
                for nu in &basis {
                    let a = CylFun::chi(mu);
                    let b = CylFun::chi(nu);
                    let smart = a.mul(&b);
                    let d = mu.len().max(nu.len());
                    let slow = CylFun::from_entries(
                        d,
                        a.refine(&g, d)
                            .entries()
                            .iter()
                            .filter_map(|(p, v)| {
                                let w = b.value_on(p);
                                (!w.is_zero()).then(|| (p.clone(), v * &w))
                            })
                            .collect(),
                    );
                    assert!(smart.same_function(&g, &slow));
                }
            }
        }
    }

    #[test]
    fn alpha_tables() {
        let g4 = loop_to_loop();
        assert_eq!(
            table(&g4, &alpha(&g4, &chi(&g4, "w"))),
            [("h".into(), "1".into()), ("k".into(), "1".into())]
        );
        let g2 = double_loop();
        assert!(alpha(&g2, &chi(&g2, "v")).same_function(&g2, &CylFun::unit(&g2)));
        let g3 = two_cycle();
        assert_eq!(table(&g3, &alpha(&g3, &chi(&g3, "a"))), [("b,a".into(), "1".into())]);
    }

    #[test]
    fn alpha_is_multiplicative() {
        for g in [double_loop(), two_cycle(), loop_to_loop()] {
            let basis = basis_paths(&g, 2);
            for mu in &basis {
                for nu in &basis {
                    let a = CylFun::chi(mu);
                    let b = CylFun::chi(nu);
                    assert!(alpha(&g, &a.mul(&b))
                        .same_function(&g, &alpha(&g, &a).mul(&alpha(&g, &b))));
                }
            }
        }
    }

    #[test]
    fn transfer_tables() {
        let g2 = double_loop();
        assert_eq!(table(&g2, &transfer(&g2, &chi(&g2, "e"))), [("v".into(), "1/2".into())]);
        let g4 = loop_to_loop();
        assert_eq!(
            table(&g4, &transfer(&g4, &chi(&g4, "h,k"))),
            [("k".into(), "1/2".into())]
        );
        let g1 = single_loop();
        assert_eq!(table(&g1, &transfer(&g1, &chi(&g1, "e"))), [("v".into(), "1".into())]);
        // Depth 0 to depth 0: the value at v averages f over r(e) for e out
        // of v.
        let f = chi(&g4, "v");
        assert_eq!(
            table(&g4, &transfer(&g4, &f)),
            [("v".into(), "1".into()), ("w".into(), "1/2".into())],
            "both of w's edges land in Z(v) or not: h does, k does not"
        );
    }

    #[test]
    fn inner_product_tables() {
        let g2 = double_loop();
        assert!(inner(&g2, &chi(&g2, "e"), &chi(&g2, "f")).is_zero());
        assert_eq!(
            table(&g2, &inner(&g2, &chi(&g2, "e"), &chi(&g2, "e"))),
            [("v".into(), "1/2".into())]
        );
        let g1 = single_loop();
        let got = inner(&g1, &chi(&g1, "e"), &chi(&g1, "e").scale(&Scalar::i()));
        assert_eq!(table(&g1, &got), [("v".into(), "1i".into())]);
        let conj_side = inner(&g1, &chi(&g1, "e").scale(&Scalar::i()), &chi(&g1, "e"));
        assert_eq!(table(&g1, &conj_side), [("v".into(), "-1i".into())]);
    }

    #[test]
    fn right_action_tables() {
        let g4 = loop_to_loop();
        assert_eq!(
            right_act(&g4, &chi(&g4, "h"), &chi(&g4, "w")),
            chi(&g4, "h")
        );
        assert!(right_act(&g4, &chi(&g4, "e"), &chi(&g4, "w")).is_zero());
        for g in [double_loop(), loop_to_loop()] {
            for mu in basis_paths(&g, 2) {
                let f = CylFun::chi(&mu);
                assert!(right_act(&g, &f, &CylFun::unit(&g)).same_function(&g, &f));
            }
        }
    }

    #[test]
    fn operator_application() {
        let g2 = double_loop();
        let t = CylOperator::theta(chi(&g2, "e"), chi(&g2, "e"));
        let got = t.apply(&g2, &chi(&g2, "e"), 1).unwrap();
        assert_eq!(table(&g2, &got), [("e".into(), "1/2".into())]);
        assert!(t.apply(&g2, &chi(&g2, "f"), 1).unwrap().is_zero());
        let g4 = loop_to_loop();
        let m = CylOperator::mult(chi(&g4, "v"));
        assert_eq!(m.apply(&g4, &chi(&g4, "h"), 1).unwrap(), chi(&g4, "h"));
        assert!(m.apply(&g4, &chi(&g4, "k"), 1).unwrap().is_zero());
    }

    #[test]
    fn application_depth_errors() {
        let g2 = double_loop();
        let t = CylOperator::mult(chi(&g2, "e,e"));
        match t.apply(&g2, &chi(&g2, "e"), 1) {
            Err(Error::DepthTooSmall { required: 2, given: 1 }) => {}
            other => panic!("expected depth error, got {other:?}"),
        }
    }

    #[test]
    fn operator_matrices() {
        let g1 = single_loop();
        let m = CylOperator::mult(chi(&g1, "v")).matrix(&g1, 1).unwrap();
        assert_eq!(m.rows, vec![vec![Scalar::one()]]);
        let g2 = double_loop();
        let two_theta = CylOperator::theta(chi(&g2, "e"), chi(&g2, "e"))
            .scaled(&Scalar::integer(2));
        let m = two_theta.matrix(&g2, 1).unwrap();
        assert_eq!(
            m.rows,
            vec![
                vec![Scalar::one(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::zero()]
            ]
        );
        assert_eq!(
            m.rows,
            CylOperator::mult(chi(&g2, "e")).matrix(&g2, 1).unwrap().rows,
            "both present the same operator"
        );
        assert!(m.render(&g2).contains("e"));
    }

    #[test]
    fn refine_commutes_with_everything() {
        for g in [double_loop(), two_cycle(), loop_to_loop()] {
            for mu in basis_paths(&g, 2) {
                let f = CylFun::chi(&mu);
                let fr = f.refine(&g, mu.len() + 2);
                assert!(alpha(&g, &f).same_function(&g, &alpha(&g, &fr)));
                assert!(transfer(&g, &f).same_function(&g, &transfer(&g, &fr)));
                for nu in basis_paths(&g, 2) {
                    let h = CylFun::chi(&nu);
                    assert!(inner(&g, &f, &h).same_function(&g, &inner(&g, &fr, &h)));
                    let t = CylOperator::theta(h.clone(), h.clone());
                    assert!(t
                        .apply_natural(&g, &f)
                        .same_function(&g, &t.apply_natural(&g, &fr)));
                }
            }
        }
    }

    #[test]
    fn hilbert_module_axioms() {
        for g in [double_loop(), two_cycle(), loop_to_loop()] {
            let basis = basis_paths(&g, 2);
            for mf in &basis {
                let f = CylFun::chi(mf);
                for mh in &basis {
                    let h = CylFun::chi(mh);
                    assert!(inner(&g, &f, &h)
                        .conj()
                        .same_function(&g, &inner(&g, &h, &f)));
                    for ma in &basis {
                        let a = CylFun::chi(ma);
                        let lhs = inner(&g, &f, &right_act(&g, &h, &a));
                        let rhs = inner(&g, &f, &h).mul(&a);
                        assert!(lhs.same_function(&g, &rhs));
                    }
                }
            }
        }
    }

    #[test]
    fn suite_passes_on_fixtures() {
        for (g, depth) in [
            (single_loop(), 4),
            (double_loop(), 3),
            (two_cycle(), 3),
            (loop_to_loop(), 3),
        ] {
            let report = verify_identities(&g, depth, 7);
            assert_eq!(report.depth, depth);
            assert_eq!(report.checks.len(), 9);
            for check in &report.checks {
                assert!(
                    check.pass,
                    "{} failed: {:?}",
                    check.name, check.counterexample
                );
                assert!(check.instances > 0);
            }
            assert!(report.all_pass());
            assert!(report.first_failure().is_none());
        }
    }

    #[test]
    fn suite_is_seed_stable_on_pass() {
        let g2 = double_loop();
        for seed in [0, 1, 99] {
            assert!(verify_identities(&g2, 2, seed).all_pass());
        }
    }

    #[test]
    fn json_form() {
        let g2 = double_loop();
        let f = chi(&g2, "e").scale(&Scalar::ratio(1, 2));
        assert_eq!(
            f.to_json(&g2).to_string(),
            r#"{"depth":1,"entries":[{"im":"0","path":"e","re":"1/2"}]}"#
        );
    }
}
