//! Matrix file formats.
//!
//! Text: the first line holds `n`, followed by `n` lines of `n`
//! whitespace-separated entries. JSON: `{"n": <int>, "rows": [[...], ...]}`.
//! Integer grids are written with single spaces and a trailing newline, so
//! emitting a parsed file reproduces it exactly when it was already in that
//! form.

use matpow_core::{Grid, RealMatrix};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson<T> {
    pub n: usize,
    pub rows: Vec<Vec<T>>,
}

impl From<&Grid> for MatrixJson<i64> {
    fn from(g: &Grid) -> Self {
        MatrixJson { n: g.n(), rows: g.rows().map(<[i64]>::to_vec).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn parse_text<T: std::str::FromStr>(input: &str) -> Result<(usize, Vec<Vec<T>>), CliError> {
    let mut lines = input.lines().map(str::trim).enumerate().filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| CliError::parse("empty matrix file"))?;
    let n: usize =
        header.parse().map_err(|_| CliError::parse(format!("bad size line {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for (lineno, line) in lines {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<T>().map_err(|_| {
                    CliError::parse(format!("line {}: bad entry {tok:?}", lineno + 1))
                })
            })
            .collect::<Result<Vec<T>, _>>()?;
        rows.push(row);
    }
    Ok((n, rows))
}

fn check_shape<T>(n: usize, rows: &[Vec<T>]) -> Result<(), CliError> {
    if rows.len() != n {
        return Err(CliError::parse(format!("expected {n} rows, found {}", rows.len())));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(CliError::parse(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
    }
    Ok(())
}

fn parse_any<T>(input: &str) -> Result<(usize, Vec<Vec<T>>), CliError>
where
    T: std::str::FromStr + for<'de> Deserialize<'de>,
{
    let (n, rows) = if input.trim_start().starts_with('{') {
        let m: MatrixJson<T> =
            serde_json::from_str(input).map_err(|e| CliError::parse(e.to_string()))?;
        (m.n, m.rows)
    } else {
        parse_text(input)?
    };
    check_shape(n, &rows)?;
    Ok((n, rows))
}

/// Parses an integer grid from either format (JSON when the first
/// non-blank character is `{`).
pub fn parse_grid(input: &str) -> Result<Grid, CliError> {
    let (_, rows) = parse_any::<i64>(input)?;
    Ok(Grid::from_rows(&rows)?)
}

/// Parses a real matrix; integer files are accepted too.
pub fn parse_real(input: &str) -> Result<RealMatrix, CliError> {
    let (_, rows) = parse_any::<f64>(input)?;
    Ok(RealMatrix::from_rows(&rows)?)
}

pub fn grid_to_text(g: &Grid) -> String {
    let mut out = format!("{}\n", g.n());
    for row in g.rows() {
        let line: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn grid_to_json(g: &Grid) -> String {
    serde_json::to_string(&MatrixJson::from(g)).expect("grid serializes")
}

pub fn emit_grid(g: &Grid, format: Format) -> String {
    match format {
        Format::Text => grid_to_text(g),
        Format::Json => {
            let mut s = grid_to_json(g);
            s.push('\n');
            s
        }
    }
}
