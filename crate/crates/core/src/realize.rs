//! Range of the invariant: every finite T0 space with `τ` values in
//! `{-1, 1, 2, 3, ...}` is the tempered primitive ideal space of a concrete
//! amplified graph.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::Graph;
use crate::invariant::{Tau, TemperedPrimSpace};
use crate::multiplicity::Multiplicity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("tau value {value} at point {point} is outside the realizable range {{-1, 1, 2, 3, ...}}")]
    OutOfRange { point: usize, value: Tau },
    #[error("point set is not open (not an up-set)")]
    NotOpen,
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("no tau value given for point {0}")]
    MissingTau(usize),
    #[error("tau value given for point {0}, which lies on the other side of the split")]
    StrayTau(usize),
}

/// A `τ`-labelled finite poset whose labels are all realizable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetSpec(TemperedPrimSpace);

fn check_tau(point: usize, value: Tau) -> Result<(), RealizeError> {
    match value {
        Tau::Int(-1) => Ok(()),
        Tau::Int(k) if k >= 1 => Ok(()),
        _ => Err(RealizeError::OutOfRange { point, value }),
    }
}

impl TargetSpec {
    pub fn new(space: TemperedPrimSpace) -> Result<Self, RealizeError> {
        for (point, &value) in space.tau().iter().enumerate() {
            check_tau(point, value)?;
        }
        Ok(TargetSpec(space.without_origin()))
    }

    pub fn space(&self) -> &TemperedPrimSpace {
        &self.0
    }

    pub fn into_space(self) -> TemperedPrimSpace {
        self.0
    }
}

fn point_name(p: usize) -> String {
    (p + 1).to_string()
}

/// Hasse diagram as a graph: vertex per point, a single edge `x -> y` for
/// each covering pair `x < y`.
pub fn hasse(t: &TargetSpec) -> Graph {
    let s = t.space();
    let n = s.len();
    let mut rows = vec![vec![Multiplicity::ZERO; n]; n];
    for (a, b) in s.covers() {
        rows[a][b] = Multiplicity::ONE;
    }
    Graph::new((0..n).map(point_name).collect(), rows).expect("distinct point names")
}

/// Amplified graph whose invariant is `t`.
///
/// A point with `τ = k > 0` becomes a block of `k` vertices with `ω` edges
/// between every ordered pair, loops included; a point with `τ = -1`
/// becomes a single vertex without loop. Each Hasse edge `p -> q` becomes
/// an `ω` bundle from the first vertex of block `p` to the first vertex of
/// block `q`. Vertices are named `<point>.<index>`, both 1-based.
pub fn realize(t: &TargetSpec) -> Graph {
    let s = t.space();
    let sizes: Vec<usize> = s
        .tau()
        .iter()
        .map(|tau| match tau {
            Tau::Int(k) if *k > 0 => *k as usize,
            _ => 1,
        })
        .collect();
    let mut first = Vec::with_capacity(sizes.len());
    let mut names = Vec::new();
    for (p, &size) in sizes.iter().enumerate() {
        first.push(names.len());
        names.extend((1..=size).map(|i| format!("{}.{i}", point_name(p))));
    }
    let total = names.len();
    let mut rows = vec![vec![Multiplicity::ZERO; total]; total];
    for (p, &size) in sizes.iter().enumerate() {
        if matches!(s.tau()[p], Tau::Int(k) if k > 0) {
            for i in 0..size {
                for j in 0..size {
                    rows[first[p] + i][first[p] + j] = Multiplicity::Omega;
                }
            }
        }
    }
    for (a, b) in s.covers() {
        rows[first[a]][first[b]] = Multiplicity::Omega;
    }
    Graph::new(names, rows).expect("generated names are distinct")
}

/// Invariant of a unital extension whose ideal lives over the open set
/// `u_open` with labels `f_ideal`, and whose quotient lives over the
/// complement with labels `f_quotient`.
pub fn extension_invariant(
    ambient: &TargetSpec,
    u_open: &[usize],
    f_ideal: &BTreeMap<usize, Tau>,
    f_quotient: &BTreeMap<usize, Tau>,
) -> Result<TargetSpec, RealizeError> {
    let s = ambient.space();
    let n = s.len();
    if let Some(&p) = u_open.iter().find(|&&p| p >= n) {
        return Err(RealizeError::PointOutOfRange(p));
    }
    if !s.is_up_set(u_open) {
        return Err(RealizeError::NotOpen);
    }
    let mut tau = Vec::with_capacity(n);
    for p in 0..n {
        let (mine, other) = if u_open.contains(&p) {
            (f_ideal, f_quotient)
        } else {
            (f_quotient, f_ideal)
        };
        if other.contains_key(&p) {
            return Err(RealizeError::StrayTau(p));
        }
        let value = *mine.get(&p).ok_or(RealizeError::MissingTau(p))?;
        check_tau(p, value)?;
        tau.push(value);
    }
    if let Some(&p) = f_ideal.keys().chain(f_quotient.keys()).find(|&&p| p >= n) {
        return Err(RealizeError::PointOutOfRange(p));
    }
    let space = s.with_tau(tau).expect("one tau per point");
    TargetSpec::new(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::{canonical_form, iso_tps, tempered_prim};

    fn spec(tau: &[i64], rel: &[(usize, usize)]) -> TargetSpec {
        TargetSpec::new(
            TemperedPrimSpace::new(tau.iter().map(|&k| Tau::Int(k)).collect(), rel).unwrap(),
        )
        .unwrap()
    }

    fn edges(g: &Graph) -> Vec<(usize, usize)> {
        let n = g.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| g.has_edge(a, b))
            .collect()
    }

    #[test]
    fn hasse_examples() {
        assert_eq!(edges(&hasse(&spec(&[1, 1], &[(0, 1)]))), [(0, 1)]);
        assert_eq!(
            edges(&hasse(&spec(&[1; 4], &[(0, 1), (1, 2), (2, 3)]))),
            [(0, 1), (1, 2), (2, 3)]
        );
        let diamond = spec(&[1; 4], &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]);
        assert_eq!(edges(&hasse(&diamond)), [(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn realize_examples() {
        let g = realize(&spec(&[-1], &[]));
        assert_eq!(g.len(), 1);
        assert!(edges(&g).is_empty());

        let g = realize(&spec(&[3], &[]));
        assert_eq!(g.names(), ["1.1", "1.2", "1.3"]);
        assert!(g.rows().all(|r| r.iter().all(|m| m.is_omega())));

        let t = spec(&[1, -1], &[(0, 1)]);
        let g = realize(&t);
        assert_eq!(g.names(), ["1.1", "2.1"]);
        assert_eq!(edges(&g), [(0, 0), (0, 1)]);
        assert!(g.is_amplified());
        assert!(iso_tps(&tempered_prim(&g), t.space()).is_some());
    }

    #[test]
    fn out_of_range_tau() {
        for bad in [Tau::Int(0), Tau::Int(-2), Tau::PosInf, Tau::NegInf] {
            let s = TemperedPrimSpace::new(vec![bad], &[]).unwrap();
            assert!(matches!(TargetSpec::new(s), Err(RealizeError::OutOfRange { .. })));
        }
    }

    #[test]
    fn extension_examples() {
        let ambient = spec(&[-1, -1], &[(0, 1)]);
        let ideal = BTreeMap::from([(1, Tau::Int(1))]);
        let quotient = BTreeMap::from([(0, Tau::Int(-1))]);
        // point 1 is the top of the chain and hence open
        let ext = extension_invariant(&ambient, &[1], &ideal, &quotient).unwrap();
        assert_eq!(ext.space().tau(), &[Tau::Int(-1), Tau::Int(1)]);

        let all_q = BTreeMap::from([(0, Tau::Int(2)), (1, Tau::Int(3))]);
        let ext = extension_invariant(&ambient, &[], &BTreeMap::new(), &all_q).unwrap();
        assert_eq!(ext.space().tau(), &[Tau::Int(2), Tau::Int(3)]);

        assert_eq!(
            extension_invariant(&ambient, &[0], &BTreeMap::from([(0, Tau::Int(1))]), &BTreeMap::from([(1, Tau::Int(1))])),
            Err(RealizeError::NotOpen)
        );
        assert_eq!(
            extension_invariant(&ambient, &[1], &BTreeMap::new(), &quotient),
            Err(RealizeError::MissingTau(1))
        );
        assert!(matches!(
            extension_invariant(&ambient, &[1], &BTreeMap::from([(1, Tau::Int(0))]), &quotient),
            Err(RealizeError::OutOfRange { .. })
        ));
    }

    #[test]
    fn extension_over_disjoint_union() {
        let left = spec(&[2, -1], &[(0, 1)]);
        let right = spec(&[1], &[]);
        let ambient = TargetSpec::new(left.space().disjoint_union(right.space())).unwrap();
        let ideal = BTreeMap::from([(2, Tau::Int(1))]);
        let quotient = BTreeMap::from([(0, Tau::Int(2)), (1, Tau::Int(-1))]);
        let ext = extension_invariant(&ambient, &[2], &ideal, &quotient).unwrap();
        let glued = realize(&ext);
        let separate = realize(&left).disjoint_union(&realize(&right).renamed(vec!["r".into()]).unwrap()).unwrap();
        assert_eq!(
            canonical_form(&tempered_prim(&glued)),
            canonical_form(&tempered_prim(&separate))
        );
    }
}
