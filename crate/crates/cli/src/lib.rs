//! Strict text formats for matrices, parameters, generators and scan boxes.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rankjump::exact_lattice::{Int, IntMatrix, Rat};
use rankjump::ranking::rat_string;
use thiserror::Error;

/// Malformed command-line input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    /// The matrix file does not start with `d n`.
    #[error("matrix header must be two positive integers \"d n\", got {0:?}")]
    BadHeader(String),
    /// A row has the wrong number of entries or a non-integer entry.
    #[error("matrix row {row}: {reason}")]
    BadRow {
        /// One-based row number.
        row: usize,
        /// What went wrong.
        reason: String,
    },
    /// The file has a different number of rows than announced.
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount {
        /// Announced row count.
        expected: usize,
        /// Rows present.
        found: usize,
    },
    /// A rational entry could not be read.
    #[error("invalid rational {0:?}")]
    BadRational(String),
    /// A vector has the wrong length.
    #[error("{what} has length {found}, expected {expected}")]
    Length {
        /// Which input.
        what: String,
        /// Expected length.
        expected: usize,
        /// Actual length.
        found: usize,
    },
    /// A generator line is malformed.
    #[error("generator line {line}: {reason}")]
    BadGenerator {
        /// One-based line number.
        line: usize,
        /// What went wrong.
        reason: String,
    },
    /// A box range is malformed.
    #[error("invalid box range {0:?}, expected lo:hi with lo <= hi")]
    BadRange(String),
}

fn parse_int(s: &str) -> Option<Int> {
    if s.is_empty() || s.starts_with('+') {
        return None;
    }
    s.parse::<BigInt>().ok()
}

fn significant_lines(text: &str) -> Vec<&str> {
    let mut lines: Vec<&str> = text.lines().collect();
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    lines
}

/// Reads `d n` followed by `d` rows of `n` integers. Only trailing blank
/// lines are tolerated.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, InputError> {
    let lines = significant_lines(text);
    let header = lines.first().copied().unwrap_or("");
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>().ok().filter(|&x| x > 0))
        .collect::<Option<Vec<_>>>()
        .filter(|v| v.len() == 2)
        .ok_or_else(|| InputError::BadHeader(header.to_string()))?;
    let (d, n) = (dims[0], dims[1]);
    if lines.len() - 1 != d {
        return Err(InputError::RowCount { expected: d, found: lines.len() - 1 });
    }
    let rows = lines[1..]
        .iter()
        .enumerate()
        .map(|(i, line)| {
            let row = line
                .split_whitespace()
                .map(parse_int)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| InputError::BadRow { row: i + 1, reason: "non-integer entry".into() })?;
            if row.len() != n {
                return Err(InputError::BadRow { row: i + 1, reason: format!("{} entries, expected {n}", row.len()) });
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntMatrix::from_rows(rows).expect("rows have equal length"))
}

/// Canonical text form accepted by [`parse_matrix`].
pub fn format_matrix(a: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Reads `p` or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rat, InputError> {
    let bad = || InputError::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => parse_int(t).map(Rat::from_integer).ok_or_else(bad),
        Some((p, q)) => {
            let p = parse_int(p).ok_or_else(bad)?;
            let q = parse_int(q).filter(|q| *q > Int::zero()).ok_or_else(bad)?;
            Ok(Rat::new(p, q))
        }
    }
}

/// Reads a comma-separated list of rationals of length `d`.
pub fn parse_beta(s: &str, d: usize) -> Result<Vec<Rat>, InputError> {
    let beta = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    if beta.len() != d {
        return Err(InputError::Length { what: "parameter".into(), expected: d, found: beta.len() });
    }
    Ok(beta)
}

/// Comma-separated `p/q` form accepted by [`parse_beta`], reduced.
pub fn format_beta(beta: &[Rat]) -> String {
    beta.iter().map(rat_string).collect::<Vec<_>>().join(",")
}

/// Reads one generator of length `d` per non-blank line.
pub fn parse_generators(text: &str, d: usize) -> Result<Vec<Vec<Int>>, InputError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let g = line
                .split_whitespace()
                .map(parse_int)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| InputError::BadGenerator { line: i + 1, reason: "non-integer entry".into() })?;
            if g.len() != d {
                return Err(InputError::BadGenerator { line: i + 1, reason: format!("{} entries, expected {d}", g.len()) });
            }
            Ok(g)
        })
        .collect()
}

/// Reads `lo:hi,lo:hi,...`, one range per coordinate.
pub fn parse_box(s: &str, d: usize) -> Result<Vec<(i64, i64)>, InputError> {
    let ranges = s
        .split(',')
        .map(|r| {
            let bad = || InputError::BadRange(r.to_string());
            let (lo, hi) = r.trim().split_once(':').ok_or_else(bad)?;
            let lo = parse_int(lo).and_then(|x| x.to_i64()).ok_or_else(bad)?;
            let hi = parse_int(hi).and_then(|x| x.to_i64()).ok_or_else(bad)?;
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if ranges.len() != d {
        return Err(InputError::Length { what: "box".into(), expected: d, found: ranges.len() });
    }
    Ok(ranges)
}

/// Canonical form accepted by [`parse_box`].
pub fn format_box(ranges: &[(i64, i64)]) -> String {
    ranges.iter().map(|(lo, hi)| format!("{lo}:{hi}")).collect::<Vec<_>>().join(",")
}
