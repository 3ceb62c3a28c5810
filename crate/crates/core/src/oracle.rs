//! Brute-force ground truth: exhaustive enumeration of small amplified
//! graphs, permutation-search graph isomorphism, and sweeps that check the
//! classification and the moves against it.
//!
//! Random sweeps use ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`), so
//! a report is reproducible from its seed on every platform.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::{default_names, Graph};
use crate::invariant::{canonical_form, iso_tps, tempered_prim, CanonicalForm, TemperedPrimSpace};
use crate::ideal_lattice::IdealError;
use crate::moves::{self, SplitSpec};
use crate::multiplicity::Multiplicity;

/// Outcome of a verification sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub counters: Vec<(String, u64)>,
    /// Offending pairs, as compact matrix encodings.
    pub counterexamples: Vec<(String, String)>,
}

impl SweepReport {
    fn new(name: &str) -> Self {
        SweepReport {
            name: name.to_owned(),
            ..Default::default()
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_owned(), value.to_string()));
    }

    fn count(&mut self, key: &str, value: u64) {
        self.counters.push((key.to_owned(), value));
    }

    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn counter(&self, key: &str) -> Option<u64> {
        self.counters.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }

    /// Line-oriented text: header, counters, verdict, then one `CE` line per
    /// counterexample.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "report {}", self.name).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "param {k} {v}").unwrap();
        }
        for (k, v) in &self.counters {
            writeln!(out, "count {k} {v}").unwrap();
        }
        writeln!(out, "count counterexamples {}", self.counterexamples.len()).unwrap();
        writeln!(out, "verified {}", if self.verified() { "yes" } else { "no" }).unwrap();
        for (a, b) in &self.counterexamples {
            writeln!(out, "CE {a} {b}").unwrap();
        }
        out
    }
}

/// All `2^(n²)` amplified graphs on `n` vertices, in lexicographic order of
/// their row-major matrices (`0 < ω`).
pub fn enumerate_amplified(n: usize) -> impl Iterator<Item = Graph> {
    let cells = n * n;
    assert!(cells < 64, "enumeration limited to n <= 7");
    let names = default_names(n);
    (0u64..1 << cells).map(move |code| {
        let mult = (0..cells)
            .map(|i| {
                if code >> (cells - 1 - i) & 1 == 1 {
                    Multiplicity::Omega
                } else {
                    Multiplicity::ZERO
                }
            })
            .collect();
        Graph::from_parts(names.clone(), mult)
    })
}

fn vertex_signature(g: &Graph, v: usize) -> (Multiplicity, Vec<Multiplicity>, Vec<Multiplicity>) {
    let mut out: Vec<Multiplicity> = g.row(v).to_vec();
    let mut inc: Vec<Multiplicity> = (0..g.len()).map(|u| g.mult(u, v)).collect();
    out.sort_unstable();
    inc.sort_unstable();
    (g.mult(v, v), out, inc)
}

/// Vertex bijection `pi` with `g1.mult(i, j) == g2.mult(pi[i], pi[j])`,
/// found by exhaustive search over permutations compatible with the
/// per-vertex degree signatures.
pub fn brute_graph_iso(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    let n = g1.len();
    if g2.len() != n {
        return None;
    }
    let s1: Vec<_> = (0..n).map(|v| vertex_signature(g1, v)).collect();
    let s2: Vec<_> = (0..n).map(|v| vertex_signature(g2, v)).collect();
    let mut a = s1.clone();
    let mut b = s2.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    fn extend(
        i: usize,
        g1: &Graph,
        g2: &Graph,
        s1: &[(Multiplicity, Vec<Multiplicity>, Vec<Multiplicity>)],
        s2: &[(Multiplicity, Vec<Multiplicity>, Vec<Multiplicity>)],
        pi: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if i == g1.len() {
            return true;
        }
        for y in 0..g1.len() {
            if used[y] || s1[i] != s2[y] {
                continue;
            }
            let ok = (0..i).all(|j| {
                g1.mult(i, j) == g2.mult(y, pi[j]) && g1.mult(j, i) == g2.mult(pi[j], y)
            });
            if ok {
                used[y] = true;
                pi.push(y);
                if extend(i + 1, g1, g2, s1, s2, pi, used) {
                    return true;
                }
                pi.pop();
                used[y] = false;
            }
        }
        false
    }
    let mut pi = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(0, g1, g2, &s1, &s2, &mut pi, &mut used).then_some(pi)
}

/// How [`verify_main_theorem_with`] covers the pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Groups graphs by canonical form, checks every member against its
    /// group representative and every pair of representatives against each
    /// other. Both relations are equivalences, so this settles every pair.
    Bucketed,
    /// Checks every unordered pair directly.
    Naive,
}

struct Prepared {
    closure: Graph,
    space: TemperedPrimSpace,
}

fn prepare(g: &Graph) -> Prepared {
    Prepared {
        closure: g.tclose().amplify(),
        space: tempered_prim(g),
    }
}

/// Bucketed sweep over all amplified graphs on `1..=max_n` vertices.
pub fn verify_main_theorem(max_n: usize) -> SweepReport {
    verify_main_theorem_with(max_n, SweepMode::Bucketed)
}

/// Checks, for every unordered pair of amplified graphs on `1..=max_n`
/// vertices, that the amplified transitive closures are isomorphic exactly
/// when the tempered primitive ideal spaces are.
pub fn verify_main_theorem_with(max_n: usize, mode: SweepMode) -> SweepReport {
    let graphs: Vec<Graph> = (1..=max_n).flat_map(enumerate_amplified).collect();
    let prepared: Vec<Prepared> = graphs.par_iter().map(prepare).collect();
    let total = graphs.len() as u64;

    let mut report = SweepReport::new("verify-main-theorem");
    report.param("max_n", max_n);
    report.param(
        "mode",
        match mode {
            SweepMode::Bucketed => "bucketed",
            SweepMode::Naive => "naive",
        },
    );
    report.count("graphs", total);
    report.count("pairs", total * (total + 1) / 2);
    for k in 1..=max_n {
        let m = 1u64 << (k * k);
        report.count(&format!("pairs_size{k}"), m * (m + 1) / 2);
    }

    let agree = |i: usize, j: usize| {
        let closures = brute_graph_iso(&prepared[i].closure, &prepared[j].closure).is_some();
        let spaces = iso_tps(&prepared[i].space, &prepared[j].space).is_some();
        (closures, spaces)
    };

    let (checks, mut bad): (u64, Vec<(usize, usize)>) = match mode {
        SweepMode::Naive => {
            let bad: Vec<(usize, usize)> = (0..graphs.len())
                .into_par_iter()
                .flat_map_iter(|i| {
                    (i..graphs.len()).filter_map(move |j| {
                        let (c, s) = agree(i, j);
                        (c != s).then_some((i, j))
                    })
                })
                .collect();
            (total * (total + 1) / 2, bad)
        }
        SweepMode::Bucketed => {
            let forms: Vec<CanonicalForm> = prepared
                .par_iter()
                .map(|p| canonical_form(&p.space))
                .collect();
            let mut buckets: BTreeMap<&CanonicalForm, Vec<usize>> = BTreeMap::new();
            for (i, f) in forms.iter().enumerate() {
                buckets.entry(f).or_default().push(i);
            }
            let groups: Vec<&Vec<usize>> = buckets.values().collect();
            report.count("buckets", groups.len() as u64);
            let inner: Vec<(usize, usize)> = groups
                .par_iter()
                .flat_map_iter(|members| {
                    let rep = members[0];
                    members.iter().filter_map(move |&m| {
                        let (c, s) = agree(rep, m);
                        (!(c && s)).then_some((rep, m))
                    })
                })
                .collect();
            let reps: Vec<usize> = groups.iter().map(|m| m[0]).collect();
            let across: Vec<(usize, usize)> = (0..reps.len())
                .into_par_iter()
                .flat_map_iter(|a| {
                    let reps = &reps;
                    (a + 1..reps.len()).filter_map(move |b| {
                        let (c, s) = agree(reps[a], reps[b]);
                        (c || s).then_some((reps[a], reps[b]))
                    })
                })
                .collect();
            let r = reps.len() as u64;
            let checks = total + r * r.saturating_sub(1) / 2;
            (checks, inner.into_iter().chain(across).collect())
        }
    };
    bad.sort_unstable();
    report.count("checks", checks);
    report.counterexamples = bad
        .into_iter()
        .map(|(i, j)| (graphs[i].compact(), graphs[j].compact()))
        .collect();
    report
}

fn random_amplified(rng: &mut ChaCha8Rng, max_vertices: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let density: f64 = rng.gen_range(0.15..0.6);
    let mult = (0..n * n)
        .map(|_| {
            if rng.gen_bool(density) {
                Multiplicity::Omega
            } else {
                Multiplicity::ZERO
            }
        })
        .collect();
    Graph::from_parts(default_names(n), mult)
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, items: &[T]) -> Option<T> {
    (!items.is_empty()).then(|| items[rng.gen_range(0..items.len())])
}

/// Seeded random walk over move applications on amplified graphs with at
/// most `max_vertices` vertices.
///
/// Each iteration draws a graph and one of three experiments:
/// a direct shortcut (invariant must not change); the split, add-past-a-
/// finite-emitter, amalgamate chain that realises the same shortcut (every
/// step must apply and the end result must equal the direct shortcut); or a
/// random out-split followed by out-amalgamation (must give back the input).
pub fn fuzz_moves(seed: u64, iterations: u64, max_vertices: usize) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport::new("fuzz-moves");
    report.param("seed", seed);
    report.param("iterations", iterations);
    report.param("max_vertices", max_vertices);
    report.param("rng", "chacha8");

    let (mut moves_applied, mut shortcut_moves, mut chain_moves, mut round_trips, mut skipped) =
        (0u64, 0u64, 0u64, 0u64, 0u64);
    let mut invariant_checks = 0u64;
    let mut bad: Vec<(String, String)> = Vec::new();

    for _ in 0..iterations {
        let g = random_amplified(&mut rng, max_vertices);
        let n = g.len();
        let before = canonical_form(&tempered_prim(&g));
        match rng.gen_range(0..3) {
            0 => {
                let reach = g.reachability();
                let candidates: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (0..n).map(move |w| (u, w)))
                    .filter(|&(u, w)| {
                        !g.has_edge(u, w) && (0..n).any(|v| g.mult(u, v).is_omega() && reach[v][w])
                    })
                    .collect();
                let Some((u, w)) = pick(&mut rng, &candidates) else {
                    skipped += 1;
                    continue;
                };
                match moves::add_shortcut(&g, u, w) {
                    Ok(h) => {
                        moves_applied += 1;
                        shortcut_moves += 1;
                        invariant_checks += 1;
                        if canonical_form(&tempered_prim(&h)) != before {
                            bad.push((g.compact(), h.compact()));
                        }
                    }
                    Err(e) => bad.push((g.compact(), format!("shortcut-failed:{e}").replace(' ', "_"))),
                }
            }
            1 => {
                let candidates: Vec<(usize, usize, usize)> = (0..n)
                    .flat_map(|u| (0..n).flat_map(move |v| (0..n).map(move |w| (u, v, w))))
                    .filter(|&(u, v, w)| u != v && v != w && g.has_edge(u, v) && g.has_edge(v, w))
                    .collect();
                let Some((u, v, w)) = pick(&mut rng, &candidates) else {
                    skipped += 1;
                    continue;
                };
                let chain = || -> Result<Graph, moves::MoveError> {
                    let spec = SplitSpec::from_counts(&g, v, &[(w, 1)])?;
                    let os = moves::out_split(&g, &spec)?;
                    let (n0, n1) = moves::split_names(g.name(v));
                    let (u2, v0, v1) = (os.vertex(g.name(u))?, os.vertex(&n0)?, os.vertex(&n1)?);
                    let f = moves::add_edges_finite(&os, u2, v1)?;
                    moves::out_amalgamate(&f, v0, v1)
                };
                match chain() {
                    Ok(h) => {
                        moves_applied += 3;
                        chain_moves += 3;
                        invariant_checks += 1;
                        let direct = g.with_mult(u, w, Multiplicity::Omega);
                        if h != direct || canonical_form(&tempered_prim(&h)) != before {
                            bad.push((g.compact(), h.compact()));
                        }
                    }
                    Err(e) => bad.push((g.compact(), format!("chain-failed:{e}").replace(' ', "_"))),
                }
            }
            _ => {
                let emitters: Vec<usize> = (0..n).filter(|&v| !g.is_sink(v)).collect();
                let Some(v) = pick(&mut rng, &emitters) else {
                    skipped += 1;
                    continue;
                };
                let mut counts: Vec<(usize, u64)> = Vec::new();
                for w in (0..n).filter(|&w| g.has_edge(v, w)) {
                    if rng.gen_bool(0.5) {
                        counts.push((w, rng.gen_range(1..=3)));
                    }
                }
                if counts.is_empty() {
                    let targets: Vec<usize> = (0..n).filter(|&w| g.has_edge(v, w)).collect();
                    counts.push((pick(&mut rng, &targets).expect("v emits"), 1));
                }
                let trip = || -> Result<Graph, moves::MoveError> {
                    let spec = SplitSpec::from_counts(&g, v, &counts)?;
                    let os = moves::out_split(&g, &spec)?;
                    let (n0, n1) = moves::split_names(g.name(v));
                    moves::out_amalgamate(&os, os.vertex(&n0)?, os.vertex(&n1)?)
                };
                match trip() {
                    Ok(h) => {
                        moves_applied += 2;
                        round_trips += 1;
                        if h != g || brute_graph_iso(&g, &h).is_none() {
                            bad.push((g.compact(), h.compact()));
                        }
                    }
                    Err(e) => bad.push((g.compact(), format!("round-trip-failed:{e}").replace(' ', "_"))),
                }
            }
        }
    }

    report.count("moves", moves_applied);
    report.count("shortcut_moves", shortcut_moves);
    report.count("chain_moves", chain_moves);
    report.count("round_trips", round_trips);
    report.count("invariant_checks", invariant_checks);
    report.count("skipped", skipped);
    report.counterexamples = bad;
    report
}

/// Rows over `{0, 1, ω}` (coded `0, 1, 2`) that make a vertex a sink or an
/// infinite emitter.
fn singular_rows(n: usize) -> Vec<Vec<u8>> {
    let mut rows = Vec::new();
    for mut code in 0..3usize.pow(n as u32) {
        let mut row = vec![0u8; n];
        for cell in row.iter_mut().rev() {
            *cell = (code % 3) as u8;
            code /= 3;
        }
        if row.iter().all(|&c| c == 0) || row.contains(&2) {
            rows.push(row);
        }
    }
    rows
}

/// Breaking-vertex test straight from the definitions, on a `{0, 1, ω}`
/// matrix of a singular graph (where every hereditary set is saturated).
fn raw_has_breaking_vertex(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    (0u32..1 << n).any(|h| {
        let inside = |v: usize| h >> v & 1 == 1;
        let hereditary = (0..n).all(|v| !inside(v) || (0..n).all(|w| m[v][w] == 0 || inside(w)));
        hereditary
            && (0..n).any(|v| {
                let infinite = m[v].contains(&2);
                let avoiding: Vec<u8> = (0..n).filter(|&w| !inside(w)).map(|w| m[v][w]).collect();
                !inside(v)
                    && infinite
                    && !avoiding.contains(&2)
                    && avoiding.iter().any(|&c| c > 0)
            })
    })
}

/// Every singular graph on `1..=max_n` vertices with entries in `{0, 1, ω}`:
/// without breaking vertices it must normalize to its amplification with an
/// unchanged invariant; with one, normalization must refuse.
pub fn verify_singular_normalization(max_n: usize) -> SweepReport {
    let mut report = SweepReport::new("singular-normalization");
    report.param("max_n", max_n);
    let (mut graphs, mut clean, mut breaking) = (0u64, 0u64, 0u64);
    let mut bad = Vec::new();
    for n in 1..=max_n {
        let rows = singular_rows(n);
        let names = default_names(n);
        let total = rows.len().pow(n as u32);
        let tally = (0..total)
            .into_par_iter()
            .fold(SingularTally::default, |mut acc, code| {
                acc.visit(&rows, &names, code);
                acc
            })
            .reduce(SingularTally::default, SingularTally::merge);
        graphs += tally.graphs;
        clean += tally.clean;
        breaking += tally.breaking;
        bad.extend(tally.bad);
    }
    bad.sort();
    report.count("graphs", graphs);
    report.count("without_breaking", clean);
    report.count("with_breaking", breaking);
    report.counterexamples = bad;
    report
}

#[derive(Default)]
struct SingularTally {
    graphs: u64,
    clean: u64,
    breaking: u64,
    bad: Vec<(String, String)>,
    forms: HashMap<TemperedPrimSpace, CanonicalForm>,
}

impl SingularTally {
    fn form(&mut self, t: TemperedPrimSpace) -> CanonicalForm {
        self.forms
            .entry(t.without_origin())
            .or_insert_with_key(canonical_form)
            .clone()
    }

    fn visit(&mut self, rows: &[Vec<u8>], names: &[String], mut code: usize) {
        let n = names.len();
        let mut m = Vec::with_capacity(n);
        for _ in 0..n {
            m.push(rows[code % rows.len()].clone());
            code /= rows.len();
        }
        m.reverse();
        let mult = m
            .iter()
            .flatten()
            .map(|&c| match c {
                0 => Multiplicity::ZERO,
                1 => Multiplicity::ONE,
                _ => Multiplicity::Omega,
            })
            .collect();
        let g = Graph::from_parts(names.to_vec(), mult);
        self.graphs += 1;
        let normalized = crate::ideal_lattice::normalize_singular(&g);
        if raw_has_breaking_vertex(&m) {
            self.breaking += 1;
            if !matches!(normalized, Err(IdealError::HasBreakingVertex { .. })) {
                self.bad.push((g.compact(), "normalized-despite-breaking-vertex".to_owned()));
            }
            return;
        }
        self.clean += 1;
        let amplified = g.amplify();
        if normalized.as_ref() != Ok(&amplified) {
            self.bad.push((g.compact(), "normalization-failed".to_owned()));
        }
        if self.form(tempered_prim(&g)) != self.form(tempered_prim(&amplified)) {
            self.bad.push((g.compact(), amplified.compact()));
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.graphs += other.graphs;
        self.clean += other.clean;
        self.breaking += other.breaking;
        self.bad.extend(other.bad);
        if self.forms.len() < other.forms.len() {
            self.forms = other.forms;
        }
        self
    }
}
