//! Subcommands of the `agc` binary. Each one is a pure function from the
//! parsed arguments and input files to an [`Outcome`].

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use agc_core::ideal_lattice::{self, Convention};
use agc_core::invariant::{self, iso_amplified, tempered_prim};
use agc_core::moves;
use agc_core::oracle::{self, SweepMode, SweepReport};
use agc_core::realize::{self, TargetSpec};
use agc_core::{Graph, IdealError, InvariantError, MoveError, RealizeError, TemperedPrimSpace, VertexSet};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::format::{parse_agr, parse_moves, parse_tps, write_agr, write_tps, FormatError};

/// Exit status for a "yes" answer or a successful transformation.
pub const EXIT_OK: u8 = 0;
/// Exit status for a well-formed "no" answer.
pub const EXIT_NO: u8 = 1;
/// Exit status for parse and precondition errors.
pub const EXIT_ERROR: u8 = 2;

/// Largest space for which `invariant --sigma` lists every convex set.
const SIGMA_MAX_POINTS: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "agc", version, about = "Invariants and moves for amplified graph C*-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Replace every present edge by infinitely many parallel edges.
    Amplify { graph: PathBuf },
    /// Add an edge wherever a path exists but no edge does.
    Tclose { graph: PathBuf },
    /// Tempered primitive ideal space of an amplified or singular graph.
    Invariant {
        graph: PathBuf,
        /// Append a `sigma:` line for every convex point set.
        #[arg(long)]
        sigma: bool,
    },
    /// Decide isomorphism of the amplified graph algebras.
    Iso { first: PathBuf, second: PathBuf },
    /// List admissible pairs and count gauge-invariant ideals.
    Ideals {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ConventionArg::Proper)]
        convention: ConventionArg,
    },
    /// Report the graph class and whether it normalizes to its amplification.
    Check { graph: PathBuf },
    /// Build an amplified graph with the given invariant.
    Realize { space: PathBuf },
    /// Replay a file of move records on a graph.
    Apply { graph: PathBuf, moves: PathBuf },
    /// Run the brute-force verification sweeps.
    Verify {
        /// Largest vertex count for the classification sweep.
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Check every pair directly instead of by canonical-form buckets.
        #[arg(long)]
        naive: bool,
        /// Also fuzz the moves, as `seed,iterations`.
        #[arg(long, value_parser = parse_fuzz)]
        fuzz: Option<(u64, u64)>,
        /// Vertex bound for fuzzed graphs.
        #[arg(long, default_value_t = 5)]
        fuzz_vertices: usize,
        /// Also sweep singular {0,1,ω} graphs up to this many vertices.
        #[arg(long)]
        singular: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    All,
    Proper,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::All => Convention::All,
            ConventionArg::Proper => Convention::ProperNontrivial,
        }
    }
}

fn parse_fuzz(s: &str) -> Result<(u64, u64), String> {
    let (seed, iters) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `seed,iterations`, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("invalid number `{t}`"));
    Ok((num(seed)?, num(iters)?))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Ideal(#[from] IdealError),
    #[error("{0}")]
    Invariant(#[from] InvariantError),
    #[error("realize: {0}")]
    Realize(#[from] RealizeError),
    #[error("{path}: line {line}: {source}")]
    Move {
        path: String,
        line: usize,
        source: MoveError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_agr(&read(path)?).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn load_space(path: &Path) -> Result<TemperedPrimSpace, CliError> {
    parse_tps(&read(path)?).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Amplify { graph } => Ok(Outcome::ok(write_agr(&load_graph(graph)?.amplify()))),
        Command::Tclose { graph } => Ok(Outcome::ok(write_agr(&load_graph(graph)?.tclose()))),
        Command::Invariant { graph, sigma } => invariant_cmd(&load_graph(graph)?, *sigma),
        Command::Iso { first, second } => Ok(iso_cmd(&load_graph(first)?, &load_graph(second)?)),
        Command::Ideals { graph, convention } => Ok(ideals_cmd(&load_graph(graph)?, (*convention).into())),
        Command::Check { graph } => Ok(check_cmd(&load_graph(graph)?)),
        Command::Realize { space } => {
            let target = TargetSpec::new(load_space(space)?)?;
            Ok(Outcome::ok(write_agr(&realize::realize(&target))))
        }
        Command::Apply { graph, moves } => apply_cmd(&load_graph(graph)?, moves),
        Command::Verify {
            max_n,
            naive,
            fuzz,
            fuzz_vertices,
            singular,
        } => {
            let mode = if *naive { SweepMode::Naive } else { SweepMode::Bucketed };
            let mut reports = vec![oracle::verify_main_theorem_with(*max_n, mode)];
            if let Some((seed, iterations)) = fuzz {
                reports.push(oracle::fuzz_moves(*seed, *iterations, *fuzz_vertices));
            }
            if let Some(n) = singular {
                reports.push(oracle::verify_singular_normalization(*n));
            }
            Ok(verify_outcome(&reports))
        }
    }
}

fn verify_outcome(reports: &[SweepReport]) -> Outcome {
    let stdout = reports
        .iter()
        .map(SweepReport::to_text)
        .collect::<Vec<_>>()
        .join("\n");
    let code = if reports.iter().all(SweepReport::verified) {
        EXIT_OK
    } else {
        EXIT_NO
    };
    Outcome { stdout, code }
}

fn require_supported(g: &Graph) -> Result<(), CliError> {
    if g.is_amplified() {
        return Ok(());
    }
    ideal_lattice::normalize_singular(g).map(|_| ()).map_err(|e| {
        CliError::Invariant(InvariantError::UnsupportedGraphClass(format!(
            "invariant needs an amplified graph or a singular graph without breaking vertices; {e}"
        )))
    })
}

/// Nonempty convex point sets, by size and then lexicographically.
fn convex_sets(t: &TemperedPrimSpace) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut sets: Vec<VertexSet> = (1u32..1 << n)
        .map(|mask| VertexSet::from_indices((0..n).filter(|&p| mask >> p & 1 == 1)))
        .filter(|s| t.is_convex(s.as_slice()))
        .collect();
    sets.sort();
    sets.into_iter().map(|s| s.as_slice().to_vec()).collect()
}

fn points_text(points: &[usize]) -> String {
    points.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn invariant_cmd(g: &Graph, with_sigma: bool) -> Result<Outcome, CliError> {
    require_supported(g)?;
    let t = tempered_prim(g);
    let mut out = String::new();
    for (p, comp) in t.origin().expect("space built from a graph").iter().enumerate() {
        writeln!(out, "# point {}: {}", p + 1, g.format_set(comp)).unwrap();
    }
    out.push_str(&write_tps(&t));
    if with_sigma {
        if t.len() > SIGMA_MAX_POINTS {
            writeln!(out, "# sigma skipped: more than {SIGMA_MAX_POINTS} points").unwrap();
        } else {
            for y in convex_sets(&t) {
                let value = invariant::sigma_convex(g, &y)?;
                writeln!(out, "sigma: {} = {}", points_text(&y), u8::from(value)).unwrap();
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn iso_cmd(g1: &Graph, g2: &Graph) -> Outcome {
    match iso_amplified(g1, g2) {
        Some(psi) => {
            let stdout = psi
                .iter()
                .enumerate()
                .map(|(u, &w)| format!("map {} -> {}\n", g1.name(u), g2.name(w)))
                .collect();
            Outcome::ok(stdout)
        }
        None => Outcome {
            stdout: "iso: no\n".to_owned(),
            code: EXIT_NO,
        },
    }
}

fn ideals_cmd(g: &Graph, convention: Convention) -> Outcome {
    let full = VertexSet::full(g.len());
    let mut out = String::new();
    writeln!(out, "convention: {convention}").unwrap();
    writeln!(out, "condition_k: {}", yes_no(ideal_lattice::condition_k(g))).unwrap();
    for pair in ideal_lattice::admissible_pairs(g) {
        let trivial = pair.b.is_empty() && (pair.h.is_empty() || pair.h == full);
        if convention == Convention::All || !trivial {
            writeln!(out, "pair: {}", pair.display(g)).unwrap();
        }
    }
    for c in [Convention::ProperNontrivial, Convention::All] {
        writeln!(out, "{c}: {}", ideal_lattice::count_ideals(g, c)).unwrap();
    }
    Outcome::ok(out)
}

fn check_cmd(g: &Graph) -> Outcome {
    let mut out = String::new();
    writeln!(out, "amplified: {}", yes_no(g.is_amplified())).unwrap();
    writeln!(out, "singular: {}", yes_no(g.is_singular())).unwrap();
    writeln!(out, "condition_k: {}", yes_no(ideal_lattice::condition_k(g))).unwrap();
    for h in ideal_lattice::hereditary_saturated_sets(g) {
        let b = ideal_lattice::breaking_vertices(g, &h).expect("hereditary by construction");
        writeln!(out, "breaking {}: {}", g.format_set(&h), g.format_set(&b)).unwrap();
    }
    let code = match ideal_lattice::normalize_singular(g) {
        Ok(_) => {
            out.push_str("normalize: ok\n");
            EXIT_OK
        }
        Err(e) => {
            writeln!(out, "normalize: failed: {e}").unwrap();
            EXIT_NO
        }
    };
    Outcome { stdout: out, code }
}

fn apply_cmd(g: &Graph, path: &Path) -> Result<Outcome, CliError> {
    let shown = path.display().to_string();
    let records = parse_moves(&read(path)?).map_err(|source| CliError::Format {
        path: shown.clone(),
        source,
    })?;
    let mut current = g.clone();
    for (line, record) in &records {
        current = moves::apply_move(&current, record).map_err(|source| CliError::Move {
            path: shown.clone(),
            line: *line,
            source,
        })?;
    }
    Ok(Outcome::ok(write_agr(&current)))
}
