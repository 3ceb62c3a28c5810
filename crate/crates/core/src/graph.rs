//! Directed multigraphs with finitely many vertices, stored as a matrix of
//! edge multiplicities, and the reachability constructions built on them:
//! amplification, transitive closure, hereditary sets, components, quotient
//! and restriction graphs.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::multiplicity::Multiplicity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {index} out of range for a graph with {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },
    #[error("matrix row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("{found} vertex names given for {expected} vertices")]
    NameCount { found: usize, expected: usize },
    #[error("duplicate vertex name `{0}`")]
    DuplicateName(String),
    #[error("invalid vertex name `{0}` (names must be nonempty, without whitespace or `#`)")]
    InvalidName(String),
    #[error("vertex set {0} is not hereditary")]
    NotHereditary(String),
}

/// A set of vertices of some graph, kept as sorted vertex indices.
///
/// The order on sets is by size first and then lexicographic on the sorted
/// indices, which is the canonical order used for every set listing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut members: Vec<usize> = indices.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            members: (0..n).collect(),
        }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet {
            members: mask
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_indices(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self.iter().filter(|&v| other.contains(v)).collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self.iter().filter(|&v| !other.contains(v)).collect(),
        }
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_indices(iter)
    }
}

/// A directed multigraph on finitely many named vertices.
///
/// `mult(i, j)` is the number of edges from vertex `i` to vertex `j`.
/// Parallel edges carry no identity of their own, so the matrix is the
/// complete edge data. Values are immutable; every transformation returns a
/// new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    names: Vec<String>,
    mult: Vec<Multiplicity>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph[{}]({})", self.names.join(","), self.compact())
    }
}

fn validate_name(name: &str) -> Result<(), GraphError> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(GraphError::InvalidName(name.to_owned()));
    }
    Ok(())
}

/// Default vertex names `v1, ..., vn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

impl Graph {
    pub fn new(names: Vec<String>, rows: Vec<Vec<Multiplicity>>) -> Result<Self, GraphError> {
        let n = rows.len();
        if names.len() != n {
            return Err(GraphError::NameCount {
                found: names.len(),
                expected: n,
            });
        }
        let mut seen = HashMap::with_capacity(n);
        for name in &names {
            validate_name(name)?;
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(GraphError::DuplicateName(name.clone()));
            }
        }
        let mut mult = Vec::with_capacity(n * n);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != n {
                return Err(GraphError::NotSquare {
                    row,
                    found: entries.len(),
                    expected: n,
                });
            }
            mult.extend(entries);
        }
        Ok(Graph { names, mult })
    }

    /// Graph with default names `v1..vn`.
    pub fn from_rows(rows: Vec<Vec<Multiplicity>>) -> Result<Self, GraphError> {
        Self::new(default_names(rows.len()), rows)
    }

    /// Edgeless graph on the given names.
    pub fn edgeless(names: Vec<String>) -> Result<Self, GraphError> {
        let n = names.len();
        Self::new(names, vec![vec![Multiplicity::ZERO; n]; n])
    }

    /// Internal constructor for matrices already known to be well formed.
    pub(crate) fn from_parts(names: Vec<String>, mult: Vec<Multiplicity>) -> Self {
        debug_assert_eq!(mult.len(), names.len() * names.len());
        Graph { names, mult }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// Index of the vertex called `name`.
    pub fn vertex(&self, name: &str) -> Result<usize, GraphError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
    }

    pub fn check_vertex(&self, v: usize) -> Result<usize, GraphError> {
        if v < self.len() {
            Ok(v)
        } else {
            Err(GraphError::VertexOutOfRange {
                index: v,
                len: self.len(),
            })
        }
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, GraphError> {
        names
            .iter()
            .map(|s| self.vertex(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(VertexSet::from_indices)
    }

    pub fn check_set(&self, h: &VertexSet) -> Result<(), GraphError> {
        h.iter().try_for_each(|v| self.check_vertex(v).map(|_| ()))
    }

    pub fn mult(&self, from: usize, to: usize) -> Multiplicity {
        self.mult[from * self.len() + to]
    }

    pub fn row(&self, v: usize) -> &[Multiplicity] {
        let n = self.len();
        &self.mult[v * n..(v + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Multiplicity]> {
        (0..self.len()).map(move |v| self.row(v))
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Multiplicity] {
        &mut self.mult
    }

    pub(crate) fn set(&mut self, from: usize, to: usize, m: Multiplicity) {
        let n = self.len();
        self.mult[from * n + to] = m;
    }

    /// Copy of `self` with one entry replaced.
    pub fn with_mult(&self, from: usize, to: usize, m: Multiplicity) -> Graph {
        let mut g = self.clone();
        g.set(from, to, m);
        g
    }

    /// Total number of edges leaving `v`.
    pub fn out_total(&self, v: usize) -> Multiplicity {
        self.row(v).iter().copied().sum()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_total(v).is_zero()
    }

    pub fn is_infinite_emitter(&self, v: usize) -> bool {
        self.out_total(v).is_omega()
    }

    /// Regular vertex: emits at least one and finitely many edges.
    pub fn is_finite_emitter(&self, v: usize) -> bool {
        matches!(self.out_total(v), Multiplicity::Finite(k) if k > 0)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.mult(from, to).is_positive()
    }

    /// One-line matrix encoding: rows separated by `/`, entries by `,`.
    pub fn compact(&self) -> String {
        if self.is_empty() {
            return "-".to_owned();
        }
        self.rows()
            .map(|r| r.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn format_set(&self, h: &VertexSet) -> String {
        let names: Vec<&str> = h.iter().map(|v| self.name(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Same vertices, every positive multiplicity replaced by `ω`.
    pub fn amplify(&self) -> Graph {
        Graph {
            names: self.names.clone(),
            mult: self.mult.iter().map(|m| m.amplified()).collect(),
        }
    }

    pub fn is_amplified(&self) -> bool {
        self.mult.iter().all(|m| m.is_zero() || m.is_omega())
    }

    /// `paths[i][j]` is true iff a path of length at least one runs from `i` to `j`.
    pub fn path_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut p: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| self.has_edge(i, j)).collect())
            .collect();
        for k in 0..n {
            for i in 0..n {
                if p[i][k] {
                    for j in 0..n {
                        if p[k][j] {
                            p[i][j] = true;
                        }
                    }
                }
            }
        }
        p
    }

    /// Reflexive reachability: `u >= v` iff `u == v` or a path runs from `u` to `v`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let mut r = self.path_matrix();
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
        r
    }

    pub fn reaches(&self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(true);
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for y in 0..self.len() {
                if self.has_edge(x, y) && !seen[y] {
                    if y == v {
                        return Ok(true);
                    }
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        Ok(false)
    }

    /// Adds a single edge `v -> w` wherever a nonempty path but no edge exists.
    pub fn tclose(&self) -> Graph {
        let p = self.path_matrix();
        let mut g = self.clone();
        let n = self.len();
        for (v, row) in p.iter().enumerate() {
            for w in 0..n {
                if row[w] && self.mult(v, w).is_zero() {
                    g.set(v, w, Multiplicity::ONE);
                }
            }
        }
        g
    }

    /// Forward-reachability closure of `v`, including `v`.
    pub fn iota(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        let r = self.reachability();
        Ok(VertexSet::from_mask(&r[v]))
    }

    /// Mutual-reachability class of `u`.
    pub fn component(&self, u: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        let r = self.reachability();
        Ok((0..self.len()).filter(|&v| r[u][v] && r[v][u]).collect())
    }

    /// All mutual-reachability classes, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let r = self.reachability();
        components_from_reachability(&r)
    }

    pub fn is_hereditary(&self, h: &VertexSet) -> bool {
        h.iter()
            .all(|u| (0..self.len()).all(|v| !self.has_edge(u, v) || h.contains(v)))
    }

    pub fn require_hereditary(&self, h: &VertexSet) -> Result<(), GraphError> {
        self.check_set(h)?;
        if self.is_hereditary(h) {
            Ok(())
        } else {
            Err(GraphError::NotHereditary(self.format_set(h)))
        }
    }

    /// Every hereditary vertex set, in canonical order (size, then lexicographic).
    ///
    /// Hereditary sets are exactly the unions of forward-closed families of
    /// components, so the enumeration walks the component DAG and never
    /// touches more candidates than there are results.
    pub fn hereditary_sets(&self) -> Vec<VertexSet> {
        let r = self.reachability();
        let comps = components_from_reachability(&r);
        let c = comps.len();
        let rep: Vec<usize> = comps.iter().map(|s| s.as_slice()[0]).collect();
        // comp_succ[a] lists components strictly below a.
        let comp_succ: Vec<Vec<usize>> = (0..c)
            .map(|a| {
                (0..c)
                    .filter(|&b| b != a && r[rep[a]][rep[b]])
                    .collect()
            })
            .collect();
        // Successors first: a successor always has a strictly smaller closure.
        let mut order: Vec<usize> = (0..c).collect();
        order.sort_by_key(|&a| (comp_succ[a].len(), a));

        let mut out = Vec::new();
        let mut chosen = vec![false; c];
        fn walk(
            depth: usize,
            order: &[usize],
            comp_succ: &[Vec<usize>],
            comps: &[VertexSet],
            chosen: &mut [bool],
            out: &mut Vec<VertexSet>,
        ) {
            if depth == order.len() {
                out.push(
                    chosen
                        .iter()
                        .enumerate()
                        .filter(|(_, &b)| b)
                        .flat_map(|(a, _)| comps[a].iter())
                        .collect(),
                );
                return;
            }
            let a = order[depth];
            walk(depth + 1, order, comp_succ, comps, chosen, out);
            if comp_succ[a].iter().all(|&b| chosen[b]) {
                chosen[a] = true;
                walk(depth + 1, order, comp_succ, comps, chosen, out);
                chosen[a] = false;
            }
        }
        walk(0, &order, &comp_succ, &comps, &mut chosen, &mut out);
        out.sort();
        out
    }

    /// Every vertex is a sink or an infinite emitter.
    pub fn is_singular(&self) -> bool {
        (0..self.len()).all(|v| self.is_sink(v) || self.is_infinite_emitter(v))
    }

    /// Smallest saturated superset of `h`: repeatedly adds every finite
    /// emitter whose whole range lies in the set.
    pub fn saturate(&self, h: &VertexSet) -> VertexSet {
        let n = self.len();
        let mut mask = h.to_mask(n);
        loop {
            let mut changed = false;
            for v in 0..n {
                if !mask[v]
                    && self.is_finite_emitter(v)
                    && (0..n).all(|w| !self.has_edge(v, w) || mask[w])
                {
                    mask[v] = true;
                    changed = true;
                }
            }
            if !changed {
                return VertexSet::from_mask(&mask);
            }
        }
    }

    pub fn is_saturated(&self, h: &VertexSet) -> bool {
        self.saturate(h) == *h
    }

    /// Graph on the vertices outside `h`; edges into `h` are dropped.
    pub fn quotient_graph(&self, h: &VertexSet) -> Result<Graph, GraphError> {
        self.require_hereditary(h)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&v| !h.contains(v)).collect();
        Ok(self.induced(&keep))
    }

    /// Graph on the vertices of `h` with the edges between them.
    pub fn restrict_graph(&self, h: &VertexSet) -> Result<Graph, GraphError> {
        self.require_hereditary(h)?;
        Ok(self.induced(h.as_slice()))
    }

    /// Induced subgraph on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let names = keep.iter().map(|&v| self.names[v].clone()).collect();
        let mult = keep
            .iter()
            .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.mult(i, j))
            .collect();
        Graph::from_parts(names, mult)
    }

    /// Relabels vertices: vertex `i` of `self` becomes vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut names = vec![String::new(); n];
        let mut mult = vec![Multiplicity::ZERO; n * n];
        for i in 0..n {
            names[perm[i]] = self.names[i].clone();
            for j in 0..n {
                mult[perm[i] * n + perm[j]] = self.mult(i, j);
            }
        }
        Graph::from_parts(names, mult)
    }

    /// Same matrix under different names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Graph, GraphError> {
        Graph::new(names, self.rows().map(|r| r.to_vec()).collect())
    }

    /// Block-diagonal union; names of `other` must not clash with ours.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.len();
        let m = other.len();
        let names: Vec<String> = self.names.iter().chain(other.names.iter()).cloned().collect();
        let mut rows = vec![vec![Multiplicity::ZERO; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = self.mult(i, j);
            }
        }
        for i in 0..m {
            for j in 0..m {
                rows[n + i][n + j] = other.mult(i, j);
            }
        }
        Graph::new(names, rows)
    }
}

pub(crate) fn components_from_reachability(r: &[Vec<bool>]) -> Vec<VertexSet> {
    let n = r.len();
    let mut assigned = vec![false; n];
    let mut comps = Vec::new();
    for u in 0..n {
        if assigned[u] {
            continue;
        }
        let comp: VertexSet = (u..n).filter(|&v| r[u][v] && r[v][u]).collect();
        for v in comp.iter() {
            assigned[v] = true;
        }
        comps.push(comp);
    }
    comps
}
