//! Graph moves that leave the isomorphism class of the graph algebra
//! unchanged: shortcut edges behind an infinite first edge, adding edges
//! past a finite emitter, out-splitting and out-amalgamation.
//!
//! Every move is recorded as a [`MoveRecord`], whose one-line text form is
//!
//! ```text
//! shortcut u w
//! addfin u v
//! split v w1=k1 w2=k2 ...
//! amalg v0 v1
//! ```
//!
//! A loop at the split vertex is listed under the vertex's own name. Its
//! outgoing end follows its partition class while its incoming end is
//! duplicated, so the class-`i` loops at `v` become edges `v^i -> v^0` and
//! `v^i -> v^1`. For example splitting `v` with loop multiplicity 3 and
//! `split v v=1` gives rows `v^0: [2, 2]` and `v^1: [1, 1]` on the columns
//! `v^0, v^1`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::multiplicity::Multiplicity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no path from `{from}` to `{to}` starts with an infinite bundle")]
    NoQualifyingPath { from: String, to: String },
    #[error("`{from}` does not emit infinitely many edges to `{to}`")]
    NotInfiniteEdge { from: String, to: String },
    #[error("`{0}` is not a finite emitter (it must emit at least one and finitely many edges)")]
    NotFiniteEmitter(String),
    #[error("invalid split of `{vertex}`: {reason}")]
    InvalidSplit { vertex: String, reason: String },
    #[error("cannot amalgamate `{0}` with itself")]
    SameVertex(String),
    #[error("`{v0}` and `{v1}` do not receive the same edges")]
    InMismatch { v0: String, v1: String },
    #[error("the graph is not amplified")]
    NotAmplified,
    #[error("vertex name `{0}` already in use")]
    NameCollision(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed move record: {0}")]
pub struct ParseMoveError(pub String);

/// One move, by vertex names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveRecord {
    Shortcut { from: String, to: String },
    AddFinite { from: String, via: String },
    /// Finite counts moved to the second class, per target.
    Split { vertex: String, counts: Vec<(String, u64)> },
    Amalgamate { v0: String, v1: String },
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveRecord::Shortcut { from, to } => write!(f, "shortcut {from} {to}"),
            MoveRecord::AddFinite { from, via } => write!(f, "addfin {from} {via}"),
            MoveRecord::Split { vertex, counts } => {
                write!(f, "split {vertex}")?;
                for (w, k) in counts {
                    write!(f, " {w}={k}")?;
                }
                Ok(())
            }
            MoveRecord::Amalgamate { v0, v1 } => write!(f, "amalg {v0} {v1}"),
        }
    }
}

impl FromStr for MoveRecord {
    type Err = ParseMoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        let kind = tokens
            .next()
            .ok_or_else(|| ParseMoveError("empty record".into()))?;
        let rest: Vec<&str> = tokens.collect();
        let pair = |rest: &[&str]| -> Result<(String, String), ParseMoveError> {
            match rest {
                [a, b] => Ok((a.to_string(), b.to_string())),
                _ => Err(ParseMoveError(format!("`{kind}` takes exactly two vertices"))),
            }
        };
        match kind {
            "shortcut" => pair(&rest).map(|(from, to)| MoveRecord::Shortcut { from, to }),
            "addfin" => pair(&rest).map(|(from, via)| MoveRecord::AddFinite { from, via }),
            "amalg" => pair(&rest).map(|(v0, v1)| MoveRecord::Amalgamate { v0, v1 }),
            "split" => {
                let (vertex, items) = rest
                    .split_first()
                    .ok_or_else(|| ParseMoveError("`split` needs a vertex".into()))?;
                let counts = items
                    .iter()
                    .map(|item| {
                        let (w, k) = item
                            .rsplit_once('=')
                            .ok_or_else(|| ParseMoveError(format!("expected `target=count`, got `{item}`")))?;
                        let k = k
                            .parse::<u64>()
                            .map_err(|_| ParseMoveError(format!("bad count in `{item}`")))?;
                        Ok((w.to_string(), k))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(MoveRecord::Split {
                    vertex: vertex.to_string(),
                    counts,
                })
            }
            other => Err(ParseMoveError(format!("unknown move `{other}`"))),
        }
    }
}

/// Partition of the edges leaving `vertex`: `first_class[w]` edges towards
/// `w` go to the new vertex `v^1`, the remainder stays with `v^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitSpec {
    pub vertex: usize,
    pub first_class: Vec<u64>,
}

impl SplitSpec {
    pub fn from_counts(g: &Graph, vertex: usize, counts: &[(usize, u64)]) -> Result<Self, MoveError> {
        g.check_vertex(vertex)?;
        let mut first_class = vec![0; g.len()];
        for &(w, k) in counts {
            g.check_vertex(w)?;
            first_class[w] += k;
        }
        Ok(SplitSpec { vertex, first_class })
    }

    pub fn validate(&self, g: &Graph) -> Result<(), MoveError> {
        let v = g.check_vertex(self.vertex)?;
        let invalid = |reason: String| MoveError::InvalidSplit {
            vertex: g.name(v).to_owned(),
            reason,
        };
        if self.first_class.len() != g.len() {
            return Err(invalid("one count per vertex is required".into()));
        }
        let mut total: u64 = 0;
        let mut remainder_nonempty = false;
        for (w, &k) in self.first_class.iter().enumerate() {
            let rest = g
                .mult(v, w)
                .checked_sub_finite(k)
                .ok_or_else(|| invalid(format!("only {} edges run to `{}`", g.mult(v, w), g.name(w))))?;
            remainder_nonempty |= rest.is_positive();
            total = total
                .checked_add(k)
                .ok_or_else(|| invalid("count overflow".into()))?;
        }
        if total == 0 {
            return Err(invalid("the split-off class is empty".into()));
        }
        if !remainder_nonempty {
            return Err(invalid("the remaining class is empty".into()));
        }
        Ok(())
    }

    pub fn to_record(&self, g: &Graph) -> MoveRecord {
        MoveRecord::Split {
            vertex: g.name(self.vertex).to_owned(),
            counts: self
                .first_class
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(w, &k)| (g.name(w).to_owned(), k))
                .collect(),
        }
    }
}

/// Some `v` with `mult(u, v) = ω` that reaches `w`, smallest index first.
fn qualifying_first_step(g: &Graph, u: usize, w: usize) -> Option<usize> {
    let r = g.reachability();
    (0..g.len()).find(|&v| g.mult(u, v).is_omega() && r[v][w])
}

/// Adds an `ω` bundle `u -> w`, provided some path from `u` to `w` starts
/// with an edge of infinite multiplicity.
pub fn add_shortcut(g: &Graph, u: usize, w: usize) -> Result<Graph, MoveError> {
    g.check_vertex(u)?;
    g.check_vertex(w)?;
    if qualifying_first_step(g, u, w).is_none() {
        return Err(MoveError::NoQualifyingPath {
            from: g.name(u).to_owned(),
            to: g.name(w).to_owned(),
        });
    }
    Ok(g.with_mult(u, w, Multiplicity::Omega))
}

/// For `u` emitting `ω` edges to the finite emitter `v`: `u` gets an `ω`
/// bundle to every target of `v`.
pub fn add_edges_finite(g: &Graph, u: usize, v: usize) -> Result<Graph, MoveError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.mult(u, v).is_omega() {
        return Err(MoveError::NotInfiniteEdge {
            from: g.name(u).to_owned(),
            to: g.name(v).to_owned(),
        });
    }
    if !g.is_finite_emitter(v) {
        return Err(MoveError::NotFiniteEmitter(g.name(v).to_owned()));
    }
    let mut out = g.clone();
    for w in 0..g.len() {
        if g.has_edge(v, w) {
            out.set(u, w, Multiplicity::Omega);
        }
    }
    Ok(out)
}

pub fn split_names(name: &str) -> (String, String) {
    (format!("{name}^0"), format!("{name}^1"))
}

/// Out-split at `spec.vertex`. `v^0` takes the place of `v`, `v^1` is
/// inserted right after it; every edge into `v` is duplicated onto both.
pub fn out_split(g: &Graph, spec: &SplitSpec) -> Result<Graph, MoveError> {
    spec.validate(g)?;
    let v = spec.vertex;
    let n = g.len();
    let (name0, name1) = split_names(g.name(v));
    for name in [&name0, &name1] {
        if g.names().iter().any(|x| x == name) {
            return Err(MoveError::NameCollision(name.clone()));
        }
    }
    // old index -> new index for every vertex but the new v^1
    let pos = |x: usize| if x <= v { x } else { x + 1 };
    let v1 = v + 1;
    let m = n + 1;
    let mut names: Vec<String> = Vec::with_capacity(m);
    for (x, name) in g.names().iter().enumerate() {
        if x == v {
            names.push(name0.clone());
            names.push(name1.clone());
        } else {
            names.push(name.clone());
        }
    }
    let mut mult = vec![Multiplicity::ZERO; m * m];
    for x in 0..n {
        for y in 0..n {
            let e = g.mult(x, y);
            if x == v {
                let k = spec.first_class[y];
                let rest = e.checked_sub_finite(k).expect("validated split");
                let moved = Multiplicity::Finite(k);
                let targets: &[usize] = if y == v { &[v, v1] } else { &[pos(y)] };
                for &t in targets {
                    mult[v * m + t] = rest;
                    mult[v1 * m + t] = moved;
                }
            } else if y == v {
                mult[pos(x) * m + v] = e;
                mult[pos(x) * m + v1] = e;
            } else {
                mult[pos(x) * m + pos(y)] = e;
            }
        }
    }
    Ok(Graph::from_parts(names, mult))
}

/// Out-amalgamation of `v0` and `v1` into one vertex at the position of
/// `v0`. Requires `v1` to be a finite emitter and both vertices to receive
/// identical edge bundles from every source. Edges into `v1` are dropped.
///
/// The merged vertex is named `s` when the names are `s^0` and `s^1`, and
/// keeps the name of `v0` otherwise.
pub fn out_amalgamate(g: &Graph, v0: usize, v1: usize) -> Result<Graph, MoveError> {
    g.check_vertex(v0)?;
    g.check_vertex(v1)?;
    if v0 == v1 {
        return Err(MoveError::SameVertex(g.name(v0).to_owned()));
    }
    if !g.is_finite_emitter(v1) {
        return Err(MoveError::NotFiniteEmitter(g.name(v1).to_owned()));
    }
    if (0..g.len()).any(|x| g.mult(x, v0) != g.mult(x, v1)) {
        return Err(MoveError::InMismatch {
            v0: g.name(v0).to_owned(),
            v1: g.name(v1).to_owned(),
        });
    }
    let merged_name = match (g.name(v0).strip_suffix("^0"), g.name(v1).strip_suffix("^1")) {
        (Some(a), Some(b)) if a == b => a.to_owned(),
        _ => g.name(v0).to_owned(),
    };
    if merged_name != g.name(v0) && g.names().contains(&merged_name) {
        return Err(MoveError::NameCollision(merged_name));
    }
    let keep: Vec<usize> = (0..g.len()).filter(|&x| x != v1).collect();
    let mut out = g.induced(&keep);
    let at = keep.iter().position(|&x| x == v0).expect("v0 kept");
    for (col, &y) in keep.iter().enumerate() {
        out.set(at, col, g.mult(v0, y) + g.mult(v1, y));
    }
    let mut names = out.names().to_vec();
    names[at] = merged_name;
    Ok(Graph::from_parts(names, out.entries_mut().to_vec()))
}

/// Applies one record to `g`.
pub fn apply_move(g: &Graph, record: &MoveRecord) -> Result<Graph, MoveError> {
    match record {
        MoveRecord::Shortcut { from, to } => add_shortcut(g, g.vertex(from)?, g.vertex(to)?),
        MoveRecord::AddFinite { from, via } => add_edges_finite(g, g.vertex(from)?, g.vertex(via)?),
        MoveRecord::Split { vertex, counts } => {
            let v = g.vertex(vertex)?;
            let counts = counts
                .iter()
                .map(|(w, k)| Ok((g.vertex(w)?, *k)))
                .collect::<Result<Vec<_>, GraphError>>()?;
            out_split(g, &SplitSpec::from_counts(g, v, &counts)?)
        }
        MoveRecord::Amalgamate { v0, v1 } => out_amalgamate(g, g.vertex(v0)?, g.vertex(v1)?),
    }
}

/// Applies `records` in order; on failure reports the index of the failing record.
pub fn replay(g: &Graph, records: &[MoveRecord]) -> Result<Graph, (usize, MoveError)> {
    records
        .iter()
        .enumerate()
        .try_fold(g.clone(), |acc, (i, r)| apply_move(&acc, r).map_err(|e| (i, e)))
}

/// Amplified transitive closure of an amplified graph, realised as a
/// sequence of shortcut moves.
///
/// Missing edges are added source by source; for each source the targets
/// come in breadth-first order of their distance along nonempty paths,
/// ties broken by vertex index.
pub fn tclose_by_moves(g: &Graph) -> Result<(Graph, Vec<MoveRecord>), MoveError> {
    if !g.is_amplified() {
        return Err(MoveError::NotAmplified);
    }
    let n = g.len();
    let mut out = g.clone();
    let mut records = Vec::new();
    for u in 0..n {
        let mut dist: Vec<Option<usize>> = vec![None; n];
        let mut queue = VecDeque::new();
        for w in 0..n {
            if g.has_edge(u, w) {
                dist[w] = Some(1);
                queue.push_back(w);
            }
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[x].expect("queued vertices have a distance");
            for y in 0..n {
                if g.has_edge(x, y) && dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        let mut missing: Vec<(usize, usize)> = (0..n)
            .filter_map(|w| dist[w].map(|d| (d, w)))
            .filter(|&(_, w)| !g.has_edge(u, w))
            .collect();
        missing.sort_unstable();
        for (_, w) in missing {
            out = add_shortcut(&out, u, w)?;
            records.push(MoveRecord::Shortcut {
                from: g.name(u).to_owned(),
                to: g.name(w).to_owned(),
            });
        }
    }
    Ok((out, records))
}
