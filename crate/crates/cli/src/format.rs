//! The `.agr` graph format, the `.tps` invariant format and move-record
//! files. Output is byte-stable: single spaces, `\n` line endings, fixed
//! ordering.

use std::fmt::Write as _;

use agc_core::moves::MoveRecord;
use agc_core::{Graph, GraphError, InvariantError, Multiplicity, Tau, TemperedPrimSpace};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split_once('#').map_or(raw, |(c, _)| c).trim();
        (!content.is_empty()).then_some((i + 1, content))
    })
}

pub fn parse_agr(text: &str) -> Result<Graph, FormatError> {
    let mut lines = significant_lines(text).peekable();
    let (line, first) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated("expected the vertex count".into()))?;
    let n: usize = first
        .parse()
        .map_err(|_| syntax(line, format!("expected the vertex count, got `{first}`")))?;

    let names = match lines.peek() {
        Some(&(_, l)) if l.starts_with("names:") => {
            lines.next();
            let names: Vec<String> = l["names:".len()..]
                .split_whitespace()
                .map(str::to_owned)
                .collect();
            Some(names)
        }
        _ => None,
    };

    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (line, content) = lines
            .next()
            .ok_or_else(|| FormatError::Truncated(format!("expected {n} matrix rows, found {r}")))?;
        let row = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Multiplicity>()
                    .map_err(|_| syntax(line, format!("invalid multiplicity `{tok}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(syntax(line, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "trailing content after the matrix"));
    }
    Ok(match names {
        Some(names) => Graph::new(names, rows)?,
        None => Graph::from_rows(rows)?,
    })
}

pub fn write_agr(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{}", g.len()).unwrap();
    out.push_str("names:");
    for name in g.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(Multiplicity::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

/// Parses a `.tps` file. `sigma:` lines are diagnostics and are skipped.
pub fn parse_tps(text: &str) -> Result<TemperedPrimSpace, FormatError> {
    let mut points: Option<usize> = None;
    let mut tau: Option<Vec<Tau>> = None;
    let mut relations = Vec::new();
    for (line, content) in significant_lines(text) {
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| syntax(line, format!("expected `key: value`, got `{content}`")))?;
        match key.trim() {
            "points" => {
                if points.is_some() {
                    return Err(syntax(line, "duplicate `points` line"));
                }
                let n = rest
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid point count `{}`", rest.trim())))?;
                points = Some(n);
            }
            "tau" => {
                if tau.is_some() {
                    return Err(syntax(line, "duplicate `tau` line"));
                }
                let values = rest
                    .split_whitespace()
                    .map(|tok| tok.parse::<Tau>().map_err(|e| syntax(line, e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                tau = Some(values);
            }
            "le" => {
                let idx = rest
                    .split_whitespace()
                    .map(|tok| match tok.parse::<usize>() {
                        Ok(k) if k >= 1 => Ok(k - 1),
                        _ => Err(syntax(line, format!("invalid point index `{tok}`"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                match idx[..] {
                    [a, b] => relations.push((line, a, b)),
                    _ => return Err(syntax(line, "`le` takes exactly two point indices")),
                }
            }
            "sigma" => {}
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    let n = points.ok_or_else(|| FormatError::Truncated("missing `points` line".into()))?;
    let tau = tau.ok_or_else(|| FormatError::Truncated("missing `tau` line".into()))?;
    if tau.len() != n {
        return Err(InvariantError::TauCount {
            found: tau.len(),
            expected: n,
        }
        .into());
    }
    if let Some(&(line, a, b)) = relations.iter().find(|&&(_, a, b)| a >= n || b >= n) {
        return Err(syntax(line, format!("point index {} out of range for {n} points", a.max(b) + 1)));
    }
    let pairs: Vec<(usize, usize)> = relations.iter().map(|&(_, a, b)| (a, b)).collect();
    Ok(TemperedPrimSpace::new(tau, &pairs)?)
}

/// Writes `points`, `tau` and one `le` line per covering pair.
pub fn write_tps(t: &TemperedPrimSpace) -> String {
    let mut out = String::new();
    writeln!(out, "points: {}", t.len()).unwrap();
    out.push_str("tau:");
    for value in t.tau() {
        write!(out, " {value}").unwrap();
    }
    out.push('\n');
    for (a, b) in t.covers() {
        writeln!(out, "le: {} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Move records with their 1-based line numbers.
pub fn parse_moves(text: &str) -> Result<Vec<(usize, MoveRecord)>, FormatError> {
    significant_lines(text)
        .map(|(line, content)| {
            content
                .parse::<MoveRecord>()
                .map(|r| (line, r))
                .map_err(|e| syntax(line, e.to_string()))
        })
        .collect()
}

pub fn write_moves(records: &[MoveRecord]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}
