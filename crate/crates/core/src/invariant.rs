//! The tempered primitive ideal space of an amplified graph algebra: a
//! finite poset of mutual-reachability components labelled by signed ranks,
//! together with canonical forms and witness-producing isomorphism tests.
//!
//! Order convention: `x <= y` iff component `x` reaches component `y`. The
//! open sets of the Alexandrov topology are the up-sets, and their vertex
//! unions are exactly the hereditary vertex sets.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::ideal_lattice::{self, IdealError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("relation closure is not antisymmetric: points {0} and {1} would coincide")]
    NotAntisymmetric(usize, usize),
    #[error("point index {index} out of range for {len} points")]
    PointOutOfRange { index: usize, len: usize },
    #[error("{found} tau values given for {expected} points")]
    TauCount { found: usize, expected: usize },
    #[error("locally closed set is empty")]
    EmptyLocallyClosedSet,
    #[error("point set {0} is not an up-set")]
    NotUpSet(String),
    #[error("point set {inner} is not contained in {outer}")]
    NotNested { inner: String, outer: String },
    #[error("unsupported graph: {0}")]
    UnsupportedGraphClass(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid tau value `{0}`")]
pub struct ParseTauError(pub String);

/// A value of `τ`: an integer or `±∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tau {
    NegInf,
    Int(i64),
    PosInf,
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tau::NegInf => f.write_str("-inf"),
            Tau::Int(k) => write!(f, "{k}"),
            Tau::PosInf => f.write_str("+inf"),
        }
    }
}

impl FromStr for Tau {
    type Err = ParseTauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "-inf" => Ok(Tau::NegInf),
            "+inf" | "inf" => Ok(Tau::PosInf),
            _ => s
                .parse::<i64>()
                .map(Tau::Int)
                .map_err(|_| ParseTauError(s.to_owned())),
        }
    }
}

/// A finite T0 space, given by its specialization order, with a `τ` label
/// per point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TemperedPrimSpace {
    leq: Vec<Vec<bool>>,
    tau: Vec<Tau>,
    origin: Option<Vec<VertexSet>>,
}

impl TemperedPrimSpace {
    /// Builds the space from generating relations `(a, b)` meaning `a <= b`;
    /// the reflexive-transitive closure is taken.
    pub fn new(tau: Vec<Tau>, relations: &[(usize, usize)]) -> Result<Self, InvariantError> {
        let n = tau.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            for x in [a, b] {
                if x >= n {
                    return Err(InvariantError::PointOutOfRange { index: x, len: n });
                }
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(InvariantError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(TemperedPrimSpace {
            leq,
            tau,
            origin: None,
        })
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn tau(&self) -> &[Tau] {
        &self.tau
    }

    /// Component each point came from, when built from a graph.
    pub fn origin(&self) -> Option<&[VertexSet]> {
        self.origin.as_deref()
    }

    pub fn without_origin(&self) -> Self {
        TemperedPrimSpace {
            origin: None,
            ..self.clone()
        }
    }

    pub fn with_tau(&self, tau: Vec<Tau>) -> Result<Self, InvariantError> {
        if tau.len() != self.len() {
            return Err(InvariantError::TauCount {
                found: tau.len(),
                expected: self.len(),
            });
        }
        Ok(TemperedPrimSpace {
            leq: self.leq.clone(),
            tau,
            origin: None,
        })
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq[a][b]
                    && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b])
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_up_set(&self, s: &[usize]) -> bool {
        let mut mask = vec![false; self.len()];
        for &x in s {
            mask[x] = true;
        }
        s.iter()
            .all(|&x| (0..self.len()).all(|y| !self.leq[x][y] || mask[y]))
    }

    /// Order-convex: `a <= c <= b` with `a, b` in the set forces `c` in.
    pub fn is_convex(&self, s: &[usize]) -> bool {
        let mut mask = vec![false; self.len()];
        for &x in s {
            mask[x] = true;
        }
        (0..self.len()).all(|c| {
            mask[c]
                || !s.iter().any(|&a| self.leq[a][c])
                || !s.iter().any(|&b| self.leq[c][b])
        })
    }

    /// Smallest up-set containing `s`.
    pub fn up_closure(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| s.iter().any(|&x| self.leq[x][y]))
            .collect()
    }

    /// Disjoint union; the points of `other` follow ours.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.len();
        let m = other.len();
        let mut leq = vec![vec![false; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = self.leq[i][j];
            }
        }
        for i in 0..m {
            for j in 0..m {
                leq[n + i][n + j] = other.leq[i][j];
            }
        }
        TemperedPrimSpace {
            leq,
            tau: self.tau.iter().chain(other.tau.iter()).copied().collect(),
            origin: None,
        }
    }

    fn check_points(&self, s: &[usize]) -> Result<(), InvariantError> {
        match s.iter().find(|&&x| x >= self.len()) {
            Some(&index) => Err(InvariantError::PointOutOfRange {
                index,
                len: self.len(),
            }),
            None => Ok(()),
        }
    }
}

fn format_points(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// One point per mutual-reachability component of the amplification of
/// `g`, ordered by the component's smallest vertex.
///
/// A component with a cycle (two or more vertices, or a loop) gives a
/// purely infinite simple subquotient with `τ = +|component|`; a singleton
/// without a loop gives `C` or `K` and `τ = -1`.
pub fn tempered_prim(g: &Graph) -> TemperedPrimSpace {
    let r = g.reachability();
    let comps = crate::graph::components_from_reachability(&r);
    let rep: Vec<usize> = comps.iter().map(|c| c.as_slice()[0]).collect();
    let leq = rep
        .iter()
        .map(|&a| rep.iter().map(|&b| r[a][b]).collect())
        .collect();
    let tau = comps
        .iter()
        .map(|c| {
            let v = c.as_slice()[0];
            if c.len() >= 2 || g.has_edge(v, v) {
                Tau::Int(c.len() as i64)
            } else {
                Tau::Int(-1)
            }
        })
        .collect();
    TemperedPrimSpace {
        leq,
        tau,
        origin: Some(comps),
    }
}

/// Vertex union of a set of points of `tempered_prim(g)`.
pub fn vertex_union(t: &TemperedPrimSpace, points: &[usize]) -> VertexSet {
    let origin = t.origin().expect("space built from a graph");
    VertexSet::from_indices(points.iter().flat_map(|&p| origin[p].iter()))
}

/// Unitality of the subquotient over `Y = U ∖ V` for up-sets `V ⊆ U` of
/// `tempered_prim(g)`, given by point indices.
///
/// The subquotient is the ideal of `H_U ∖ H_V` in the quotient graph by
/// `H_V`; it is unital iff no edge enters `H_U ∖ H_V` from outside `H_U`.
/// Supported for amplified graphs and for singular graphs without
/// breaking vertices.
pub fn sigma(g: &Graph, u_open: &[usize], v_open: &[usize]) -> Result<bool, InvariantError> {
    if !g.is_amplified() {
        if !g.is_singular() {
            return Err(InvariantError::UnsupportedGraphClass(
                "graph is neither amplified nor singular".into(),
            ));
        }
        if let Some((h, v)) = ideal_lattice::first_breaking_vertex(g) {
            return Err(InvariantError::UnsupportedGraphClass(format!(
                "`{}` is a breaking vertex for {}",
                g.name(v),
                g.format_set(&h)
            )));
        }
    }
    let t = tempered_prim(g);
    t.check_points(u_open)?;
    t.check_points(v_open)?;
    for s in [u_open, v_open] {
        if !t.is_up_set(s) {
            return Err(InvariantError::NotUpSet(format_points(s)));
        }
    }
    if !v_open.iter().all(|x| u_open.contains(x)) {
        return Err(InvariantError::NotNested {
            inner: format_points(v_open),
            outer: format_points(u_open),
        });
    }
    let hu = vertex_union(&t, u_open);
    let hv = vertex_union(&t, v_open);
    let y = hu.difference(&hv);
    if y.is_empty() {
        return Err(InvariantError::EmptyLocallyClosedSet);
    }
    let quotient = g.quotient_graph(&hv).map_err(IdealError::from)?;
    let kept: Vec<usize> = (0..g.len()).filter(|&v| !hv.contains(v)).collect();
    let y_in_quotient: VertexSet = kept
        .iter()
        .enumerate()
        .filter(|(_, &v)| y.contains(v))
        .map(|(i, _)| i)
        .collect();
    Ok(ideal_lattice::ideal_is_unital(&quotient, &y_in_quotient)?)
}

/// `σ` on a convex point set `Y`, presented as `U ∖ V` with `U` the up-closure of `Y`.
pub fn sigma_convex(g: &Graph, y: &[usize]) -> Result<bool, InvariantError> {
    let t = tempered_prim(g);
    t.check_points(y)?;
    if y.is_empty() {
        return Err(InvariantError::EmptyLocallyClosedSet);
    }
    let u = t.up_closure(y);
    let v: Vec<usize> = u.iter().copied().filter(|x| !y.contains(x)).collect();
    sigma(g, &u, &v)
}

/// A bijection between the points of two spaces, `map[i]` being the image of point `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointWitness {
    pub map: Vec<usize>,
}

impl PointWitness {
    /// Checks bijectivity, order preservation both ways, and `τ` preservation.
    pub fn verify(&self, a: &TemperedPrimSpace, b: &TemperedPrimSpace) -> bool {
        let n = a.len();
        if b.len() != n || self.map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.map {
            if y >= n || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        (0..n).all(|i| a.tau[i] == b.tau[self.map[i]])
            && (0..n).all(|i| (0..n).all(|j| a.leq[i][j] == b.leq[self.map[i]][self.map[j]]))
    }
}

/// Isomorphism-invariant colouring used to prune both the canonical-form
/// search and the isomorphism search. Colours are ranks of sorted
/// signatures, so equal spaces get equal colourings point for point.
fn refine(t: &TemperedPrimSpace) -> Vec<usize> {
    let n = t.len();
    let up: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| t.leq[x][y]).count()).collect();
    let down: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| t.leq[y][x]).count()).collect();
    let initial: Vec<(Tau, usize, usize)> = (0..n).map(|x| (t.tau[x], up[x], down[x])).collect();
    let mut colors = rank(&initial);
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut above: Vec<usize> = (0..n)
                    .filter(|&y| y != x && t.leq[x][y])
                    .map(|y| colors[y])
                    .collect();
                let mut below: Vec<usize> = (0..n)
                    .filter(|&y| y != x && t.leq[y][x])
                    .map(|y| colors[y])
                    .collect();
                above.sort_unstable();
                below.sort_unstable();
                (colors[x], above, below)
            })
            .collect();
        let next = rank(&sigs);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(s).expect("present"))
        .collect()
}

/// Canonical text encoding of a `τ`-labelled finite poset: equal strings
/// iff the labelled posets are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Connected components of the comparability graph.
fn order_components(t: &TemperedPrimSpace) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut label = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        label[s] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for y in 0..n {
                if label[y] == usize::MAX && (t.leq[x][y] || t.leq[y][x]) {
                    label[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// Points that can be swapped by an automorphism fixing everything else.
fn are_twins(t: &TemperedPrimSpace, a: usize, b: usize) -> bool {
    t.tau[a] == t.tau[b]
        && (0..t.len())
            .filter(|&c| c != a && c != b)
            .all(|c| t.leq[a][c] == t.leq[b][c] && t.leq[c][a] == t.leq[c][b])
}

/// Per-position code: (colour, τ, relation bits to every earlier position).
type PositionCode = (usize, Tau, Vec<u8>);

fn position_code(t: &TemperedPrimSpace, colors: &[usize], placed: &[usize], x: usize) -> PositionCode {
    let rel = placed
        .iter()
        .map(|&p| (t.leq[p][x] as u8) << 1 | t.leq[x][p] as u8)
        .collect();
    (colors[x], t.tau[x], rel)
}

/// Lexicographically least sequence of position codes over all orderings
/// of `members`, found by branching only over ties.
fn min_encoding(t: &TemperedPrimSpace, colors: &[usize], members: &[usize]) -> Vec<PositionCode> {
    fn search(
        t: &TemperedPrimSpace,
        colors: &[usize],
        remaining: &mut Vec<usize>,
        placed: &mut Vec<usize>,
        prefix: &mut Vec<PositionCode>,
        best: &mut Option<Vec<PositionCode>>,
    ) {
        if remaining.is_empty() {
            if best.as_ref().is_none_or(|b| *prefix < *b) {
                *best = Some(prefix.clone());
            }
            return;
        }
        let depth = prefix.len();
        let codes: Vec<PositionCode> = remaining
            .iter()
            .map(|&x| position_code(t, colors, placed, x))
            .collect();
        let least = codes.iter().min().expect("nonempty").clone();
        let candidates: Vec<usize> = remaining
            .iter()
            .zip(&codes)
            .filter(|(_, c)| **c == least)
            .map(|(&x, _)| x)
            .collect();
        prefix.push(least);
        if best.as_ref().is_none_or(|b| prefix[..] <= b[..=depth]) {
            let mut tried: Vec<usize> = Vec::new();
            for x in candidates {
                if tried.iter().any(|&y| are_twins(t, x, y)) {
                    continue;
                }
                tried.push(x);
                let at = remaining.iter().position(|&r| r == x).expect("remaining");
                remaining.remove(at);
                placed.push(x);
                search(t, colors, remaining, placed, prefix, best);
                placed.pop();
                remaining.insert(at, x);
            }
        }
        prefix.pop();
    }
    let mut best = None;
    search(
        t,
        colors,
        &mut members.to_vec(),
        &mut Vec::new(),
        &mut Vec::new(),
        &mut best,
    );
    best.unwrap_or_default()
}

fn encode(codes: &[PositionCode]) -> String {
    let mut out = String::new();
    for (i, (_, tau, rel)) in codes.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        out.push_str(&tau.to_string());
        if !rel.is_empty() {
            out.push(':');
            out.extend(rel.iter().map(|b| char::from(b'0' + b)));
        }
    }
    format!("[{out}]")
}

/// Canonical form: the sorted multiset of canonical encodings of the
/// connected components, each the least encoding over all orderings.
pub fn canonical_form(t: &TemperedPrimSpace) -> CanonicalForm {
    let colors = refine(t);
    let mut parts: Vec<(Vec<PositionCode>, String)> = order_components(t)
        .iter()
        .map(|members| {
            let codes = min_encoding(t, &colors, members);
            let text = encode(&codes);
            (codes, text)
        })
        .collect();
    parts.sort();
    let body: Vec<String> = parts.into_iter().map(|(_, s)| s).collect();
    CanonicalForm(format!("tps{}:{}", t.len(), body.join("+")))
}

/// An order- and `τ`-preserving bijection from `a` to `b`, if one exists.
pub fn iso_tps(a: &TemperedPrimSpace, b: &TemperedPrimSpace) -> Option<PointWitness> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    // cheap necessary condition before the search
    let sig = |t: &TemperedPrimSpace, x: usize| {
        let up = (0..n).filter(|&y| t.leq[x][y]).count();
        let down = (0..n).filter(|&y| t.leq[y][x]).count();
        (t.tau[x], up, down)
    };
    let mut ka: Vec<_> = (0..n).map(|x| sig(a, x)).collect();
    let mut kb: Vec<_> = (0..n).map(|x| sig(b, x)).collect();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }

    fn extend(
        i: usize,
        a: &TemperedPrimSpace,
        b: &TemperedPrimSpace,
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for y in 0..n {
            if used[y] || a.tau[i] != b.tau[y] {
                continue;
            }
            let consistent = (0..i).all(|j| {
                a.leq[i][j] == b.leq[y][map[j]] && a.leq[j][i] == b.leq[map[j]][y]
            });
            let degrees = (0..n).filter(|&z| a.leq[i][z]).count()
                == (0..n).filter(|&z| b.leq[y][z]).count()
                && (0..n).filter(|&z| a.leq[z][i]).count()
                    == (0..n).filter(|&z| b.leq[z][y]).count();
            if consistent && degrees {
                used[y] = true;
                map.push(y);
                if extend(i + 1, a, b, map, used) {
                    return true;
                }
                map.pop();
                used[y] = false;
            }
        }
        false
    }
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(0, a, b, &mut map, &mut used) {
        let w = PointWitness { map };
        assert!(w.verify(a, b), "constructed point witness failed verification");
        Some(w)
    } else {
        None
    }
}

/// Decides whether the amplified graph algebras of `g1` and `g2` are
/// isomorphic. On success returns `psi` with `psi[i]` the vertex of `g2`
/// matched to vertex `i` of `g1`; it is a graph isomorphism between the
/// amplified transitive closures.
pub fn iso_amplified(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    let t1 = tempered_prim(g1);
    let t2 = tempered_prim(g2);
    let w = iso_tps(&t1, &t2)?;
    let o1 = t1.origin().expect("graph space");
    let o2 = t2.origin().expect("graph space");
    let mut psi = vec![usize::MAX; g1.len()];
    for (p, comp) in o1.iter().enumerate() {
        let target = &o2[w.map[p]];
        // equal |τ| on both sides forces equal component sizes
        if comp.len() != target.len() {
            return None;
        }
        for (u, v) in comp.iter().zip(target.iter()) {
            psi[u] = v;
        }
    }
    let c1 = g1.tclose().amplify();
    let c2 = g2.tclose().amplify();
    let n = g1.len();
    let ok = g2.len() == n
        && (0..n).all(|i| (0..n).all(|j| c1.mult(i, j) == c2.mult(psi[i], psi[j])));
    assert!(ok, "constructed vertex bijection is not a graph isomorphism");
    Some(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::multiplicity::Finite;

    fn t(tau: &[i64], rel: &[(usize, usize)]) -> TemperedPrimSpace {
        TemperedPrimSpace::new(tau.iter().map(|&k| Tau::Int(k)).collect(), rel).unwrap()
    }

    #[test]
    fn m1_space_is_labelled_chain() {
        let s = tempered_prim(&m1());
        assert_eq!(s.len(), 4);
        assert_eq!(s.tau(), &[Tau::Int(2), Tau::Int(-1), Tau::Int(-1), Tau::Int(1)]);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(s.leq(a, b), a <= b);
            }
        }
        assert_eq!(
            s.origin().unwrap()[0],
            VertexSet::from_indices([0, 1])
        );
    }

    #[test]
    fn single_vertex_spaces() {
        assert_eq!(tempered_prim(&point(false)).tau(), &[Tau::Int(-1)]);
        assert_eq!(tempered_prim(&point(true)).tau(), &[Tau::Int(1)]);
    }

    #[test]
    fn closure_rejects_cycles() {
        let r = TemperedPrimSpace::new(vec![Tau::Int(1); 3], &[(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(r, Err(InvariantError::NotAntisymmetric(..))));
        let r = TemperedPrimSpace::new(vec![Tau::Int(1); 2], &[(0, 5)]);
        assert!(matches!(r, Err(InvariantError::PointOutOfRange { .. })));
    }

    #[test]
    fn canonical_form_relabelling_and_distinctions() {
        let a = t(&[2, -1, -1, 1], &[(0, 1), (1, 2), (2, 3)]);
        // same chain listed as 3,0,2,1
        let b = t(&[1, 2, -1, -1], &[(1, 3), (3, 2), (2, 0)]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_eq!(
            canonical_form(&tempered_prim(&m1())),
            canonical_form(&tempered_prim(&m2()))
        );
        let chain2 = t(&[-1, -1], &[(0, 1)]);
        let anti2 = t(&[-1, -1], &[]);
        assert_ne!(canonical_form(&chain2), canonical_form(&anti2));
        let flipped = t(&[2, -1, -1, 1], &[(3, 2), (2, 1), (1, 0)]);
        assert_ne!(canonical_form(&a), canonical_form(&flipped));
    }

    #[test]
    fn canonical_form_handles_large_symmetric_spaces() {
        let anti = TemperedPrimSpace::new(vec![Tau::Int(-1); 20], &[]).unwrap();
        let f = canonical_form(&anti);
        assert!(f.as_str().starts_with("tps20:"));
        // ten disjoint 2-chains
        let rel: Vec<(usize, usize)> = (0..10).map(|i| (2 * i, 2 * i + 1)).collect();
        let chains = TemperedPrimSpace::new(vec![Tau::Int(1); 20], &rel).unwrap();
        let rel2: Vec<(usize, usize)> = (0..10).map(|i| (i + 10, i)).collect();
        let chains2 = TemperedPrimSpace::new(vec![Tau::Int(1); 20], &rel2).unwrap();
        assert_eq!(canonical_form(&chains), canonical_form(&chains2));
    }

    #[test]
    fn iso_tps_examples() {
        let a = tempered_prim(&m1());
        let b = tempered_prim(&m2());
        let w = iso_tps(&a, &b).unwrap();
        assert_eq!(w.map, vec![0, 1, 2, 3]);
        let one_pos = t(&[1], &[]);
        let one_neg = t(&[-1], &[]);
        assert!(iso_tps(&one_pos, &one_neg).is_none());
        let id = iso_tps(&a, &a).unwrap();
        assert_eq!(id.map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn iso_amplified_examples() {
        let psi = iso_amplified(&m1(), &m2()).unwrap();
        assert_eq!(psi, vec![0, 1, 2, 3, 4]);
        let g = singular_g().amplify();
        let e = g.with_mult(0, 3, crate::multiplicity::Omega);
        assert!(iso_amplified(&g, &e).is_some());
        assert!(iso_amplified(&point(true), &point(false)).is_none());
    }

    #[test]
    fn sigma_examples() {
        let g = chain(&["u", "x"], crate::multiplicity::Omega);
        let s = tempered_prim(&g);
        assert_eq!(s.len(), 2);
        // point 0 is u, point 1 is x; x is the open point
        assert!(!sigma(&g, &[1], &[]).unwrap());
        assert!(sigma(&g, &[0, 1], &[1]).unwrap());
        assert!(sigma(&g, &[0, 1], &[]).unwrap());
        assert!(!sigma_convex(&g, &[1]).unwrap());
        assert!(sigma_convex(&g, &[0]).unwrap());

        assert_eq!(sigma(&g, &[1], &[1]), Err(InvariantError::EmptyLocallyClosedSet));
        assert!(matches!(sigma(&g, &[0], &[]), Err(InvariantError::NotUpSet(_))));
        assert!(matches!(sigma(&g, &[1], &[0, 1]), Err(InvariantError::NotNested { .. })));
        assert!(matches!(
            sigma(&singular_g(), &[0, 1, 2, 3], &[]),
            Err(InvariantError::UnsupportedGraphClass(_))
        ));
        let finite = chain(&["a", "b"], Finite(1));
        assert!(matches!(
            sigma(&finite, &[0, 1], &[]),
            Err(InvariantError::UnsupportedGraphClass(_))
        ));
    }

    #[test]
    fn tau_tokens() {
        assert_eq!("-inf".parse::<Tau>().unwrap(), Tau::NegInf);
        assert_eq!("+inf".parse::<Tau>().unwrap(), Tau::PosInf);
        assert_eq!("-1".parse::<Tau>().unwrap(), Tau::Int(-1));
        assert!("x".parse::<Tau>().is_err());
        assert!(Tau::NegInf < Tau::Int(-5) && Tau::Int(9) < Tau::PosInf);
    }
}
