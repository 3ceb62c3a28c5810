//! Reference graphs used throughout the tests and benches.

use crate::graph::Graph;
use crate::multiplicity::{Finite, Multiplicity, Omega};

fn parse_rows(rows: &[&str]) -> Vec<Vec<Multiplicity>> {
    rows.iter()
        .map(|r| {
            r.split_whitespace()
                .map(|t| t.parse().expect("fixture token"))
                .collect()
        })
        .collect()
}

fn named(names: &[&str], rows: &[&str]) -> Graph {
    Graph::new(
        names.iter().map(|s| s.to_string()).collect(),
        parse_rows(rows),
    )
    .expect("fixture graph")
}

/// Five-vertex amplified graph whose transitive closure is [`m2`].
pub fn m1() -> Graph {
    Graph::from_rows(parse_rows(&[
        "0 * 0 0 0",
        "* 0 * 0 0",
        "0 0 0 * 0",
        "0 0 0 0 *",
        "0 0 0 0 *",
    ]))
    .expect("fixture graph")
}

/// Amplified transitive closure of [`m1`].
pub fn m2() -> Graph {
    Graph::from_rows(parse_rows(&[
        "* * * * *",
        "* * * * *",
        "0 0 0 * *",
        "0 0 0 0 *",
        "0 0 0 0 *",
    ]))
    .expect("fixture graph")
}

/// `x <-ω- u -1-> y -ω-> z`: singular, not amplified, `u` breaks `{x}`.
pub fn singular_g() -> Graph {
    named(
        &["u", "x", "y", "z"],
        &["0 * 1 0", "0 0 0 0", "0 0 0 *", "0 0 0 0"],
    )
}

/// [`singular_g`] with an extra `ω` bundle `u -> z`.
pub fn singular_e() -> Graph {
    named(
        &["u", "x", "y", "z"],
        &["0 * 1 *", "0 0 0 0", "0 0 0 *", "0 0 0 0"],
    )
}

/// Path `names[0] -> names[1] -> ...` with every edge of multiplicity `m`.
pub fn chain(names: &[&str], m: Multiplicity) -> Graph {
    let n = names.len();
    let mut rows = vec![vec![Finite(0); n]; n];
    for i in 1..n {
        rows[i - 1][i] = m;
    }
    Graph::new(names.iter().map(|s| s.to_string()).collect(), rows).expect("fixture graph")
}

/// One vertex, optionally carrying an `ω` loop.
pub fn point(looped: bool) -> Graph {
    Graph::from_rows(vec![vec![if looped { Omega } else { Finite(0) }]]).expect("fixture graph")
}
