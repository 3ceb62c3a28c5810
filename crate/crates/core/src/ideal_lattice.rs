//! Gauge-invariant ideal combinatorics for finite-vertex graphs: the size
//! class of the entry-path set `F_H`, breaking vertices, admissible pairs,
//! condition (K) and unitality of ideals.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::multiplicity::Multiplicity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the vertex set must be nonempty")]
    EmptySet,
    #[error("graph is not singular: vertex `{0}` is a finite emitter")]
    NotSingular(String),
    #[error("vertex `{vertex}` is a breaking vertex for {set}")]
    HasBreakingVertex { set: String, vertex: String },
}

/// Size class of the set of paths that enter `H` exactly at their last edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FCardinality {
    Empty,
    /// Always at least one.
    Finite(u64),
    Infinite,
}

/// Which ideals [`count_ideals`] counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Every gauge-invariant ideal, including zero and the whole algebra.
    All,
    /// Excludes the zero ideal and the whole algebra.
    ProperNontrivial,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::All => "all",
            Convention::ProperNontrivial => "proper",
        })
    }
}

/// A hereditary saturated set together with a set of its breaking vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissiblePair {
    pub h: VertexSet,
    pub b: VertexSet,
}

impl AdmissiblePair {
    pub fn display(&self, g: &Graph) -> String {
        format!("({}, {})", g.format_set(&self.h), g.format_set(&self.b))
    }
}

/// Classifies `|F_H|`.
///
/// A path in `F_H` runs inside `G⁰ ∖ H` and then crosses into `H` on its last
/// edge. The set is infinite as soon as a crossing bundle is `ω`, or a
/// crossing source can be reached inside the complement through a cycle or
/// an `ω` bundle. Otherwise the relevant part of the complement is a finite
/// DAG and paths are counted with multiplicities multiplied along the way.
pub fn f_class(g: &Graph, h: &VertexSet) -> Result<FCardinality, IdealError> {
    g.require_hereditary(h)?;
    let n = g.len();
    let inside = h.to_mask(n);
    let outside: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();

    // crossing[v]: total multiplicity of edges from v (outside) into H
    let mut crossing = vec![Multiplicity::ZERO; n];
    for &v in &outside {
        crossing[v] = h.iter().map(|w| g.mult(v, w)).sum();
    }
    if outside.iter().all(|&v| crossing[v].is_zero()) {
        return Ok(FCardinality::Empty);
    }
    if outside.iter().any(|&v| crossing[v].is_omega()) {
        return Ok(FCardinality::Infinite);
    }

    let sub = g.induced(&outside);
    let m = outside.len();
    let paths = sub.path_matrix();
    // vertices of the complement that receive infinitely many paths
    let mut flooded = vec![false; m];
    for a in 0..m {
        let on_cycle = paths[a][a];
        let omega_head = (0..m).any(|b| sub.mult(b, a).is_omega());
        if on_cycle || omega_head {
            flooded[a] = true;
            for b in 0..m {
                if paths[a][b] {
                    flooded[b] = true;
                }
            }
        }
    }
    if (0..m).any(|a| flooded[a] && crossing[outside[a]].is_positive()) {
        return Ok(FCardinality::Infinite);
    }

    // Vertices that can reach a crossing source form a DAG with finite bundles.
    let relevant: Vec<bool> = (0..m)
        .map(|a| {
            (0..m).any(|b| (a == b || paths[a][b]) && crossing[outside[b]].is_positive())
        })
        .collect();
    let mut memo: Vec<Option<Multiplicity>> = vec![None; m];
    fn count(
        a: usize,
        sub: &Graph,
        outside: &[usize],
        crossing: &[Multiplicity],
        relevant: &[bool],
        memo: &mut [Option<Multiplicity>],
    ) -> Multiplicity {
        if let Some(c) = memo[a] {
            return c;
        }
        let mut total = crossing[outside[a]];
        for b in 0..sub.len() {
            if relevant[b] && sub.has_edge(a, b) {
                total = total + sub.mult(a, b) * count(b, sub, outside, crossing, relevant, memo);
            }
        }
        memo[a] = Some(total);
        total
    }
    let total: Multiplicity = (0..m)
        .filter(|&a| relevant[a])
        .map(|a| count(a, &sub, &outside, &crossing, &relevant, &mut memo))
        .sum();
    Ok(match total {
        Multiplicity::Finite(0) => FCardinality::Empty,
        Multiplicity::Finite(k) => FCardinality::Finite(k),
        Multiplicity::Omega => FCardinality::Infinite,
    })
}

/// Infinite emitters outside `H` whose edges avoiding `H` number finitely
/// many but at least one.
pub fn breaking_vertices(g: &Graph, h: &VertexSet) -> Result<VertexSet, IdealError> {
    g.require_hereditary(h)?;
    Ok(breaking_unchecked(g, h))
}

fn breaking_unchecked(g: &Graph, h: &VertexSet) -> VertexSet {
    (0..g.len())
        .filter(|&v| !h.contains(v) && g.is_infinite_emitter(v))
        .filter(|&v| {
            let avoiding: Multiplicity = (0..g.len())
                .filter(|&w| !h.contains(w))
                .map(|w| g.mult(v, w))
                .sum();
            matches!(avoiding, Multiplicity::Finite(k) if k >= 1)
        })
        .collect()
}

/// Hereditary sets that are also saturated, in canonical order.
pub fn hereditary_saturated_sets(g: &Graph) -> Vec<VertexSet> {
    g.hereditary_sets()
        .into_iter()
        .filter(|h| g.is_saturated(h))
        .collect()
}

fn subsets(s: &VertexSet) -> Vec<VertexSet> {
    let items = s.as_slice();
    let mut out: Vec<VertexSet> = (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    out.sort();
    out
}

/// All admissible pairs `(H, B)`, ordered by `H` and then by `B`.
pub fn admissible_pairs(g: &Graph) -> Vec<AdmissiblePair> {
    let mut pairs = Vec::new();
    for h in hereditary_saturated_sets(g) {
        let breaking = breaking_unchecked(g, &h);
        for b in subsets(&breaking) {
            pairs.push(AdmissiblePair { h: h.clone(), b });
        }
    }
    pairs
}

/// Number of gauge-invariant ideals under the given convention.
///
/// Under condition (K) (see [`condition_k`]) these are all the ideals.
pub fn count_ideals(g: &Graph, convention: Convention) -> usize {
    let all = admissible_pairs(g).len();
    match convention {
        Convention::All => all,
        Convention::ProperNontrivial => all.saturating_sub(2),
    }
}

/// True iff no vertex lies on exactly one return path.
///
/// On a finite multigraph this fails exactly when some strongly connected
/// component is a bare cycle: every member emits exactly one edge (of
/// multiplicity one) that stays inside the component.
pub fn condition_k(g: &Graph) -> bool {
    let paths = g.path_matrix();
    g.components().iter().all(|comp| {
        let first = comp.as_slice()[0];
        if !paths[first][first] {
            return true;
        }
        let bare_cycle = comp.iter().all(|v| {
            let inner: Multiplicity = comp.iter().map(|w| g.mult(v, w)).sum();
            inner == Multiplicity::ONE
        });
        !bare_cycle
    })
}

/// Whether the ideal of the nonempty hereditary set `h` is unital, i.e.
/// `F_H` is empty or finite.
pub fn ideal_is_unital(g: &Graph, h: &VertexSet) -> Result<bool, IdealError> {
    if h.is_empty() {
        return Err(IdealError::EmptySet);
    }
    Ok(!matches!(f_class(g, h)?, FCardinality::Infinite))
}

/// First breaking vertex over all hereditary saturated sets, in canonical order.
pub fn first_breaking_vertex(g: &Graph) -> Option<(VertexSet, usize)> {
    hereditary_saturated_sets(g).into_iter().find_map(|h| {
        let first = breaking_unchecked(g, &h).iter().next();
        first.map(|v| (h.clone(), v))
    })
}

/// Replaces a singular graph without breaking vertices by its amplification.
pub fn normalize_singular(g: &Graph) -> Result<Graph, IdealError> {
    if let Some(v) = (0..g.len()).find(|&v| g.is_finite_emitter(v)) {
        return Err(IdealError::NotSingular(g.name(v).to_owned()));
    }
    if let Some((h, v)) = first_breaking_vertex(g) {
        return Err(IdealError::HasBreakingVertex {
            set: g.format_set(&h),
            vertex: g.name(v).to_owned(),
        });
    }
    Ok(g.amplify())
}
