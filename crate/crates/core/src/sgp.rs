//! The `.sgp` text format.
//!
//! ```text
//! <n> <zero_index>
//! <row 0: n space-separated indices>
//! ...
//! <row n-1>
//! # <index> <label>        (optional, any number)
//! ```
//!
//! Row `i` lists the products `i*0 ... i*(n-1)`. Lines end in LF. A file
//! whose zero is not at index 0 is re-indexed on input by swapping the zero
//! with element 0; output always puts the zero at 0.

use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::semigroup::{Elem, FiniteSemigroup, DEFAULT_MAX_WITNESSES};

/// Parse a single `.sgp` document.
pub fn parse_sgp(text: &str) -> Result<FiniteSemigroup> {
    parse_sgp_with(text, DEFAULT_MAX_WITNESSES)
}

/// Parse a single document, keeping at most `max_witnesses` validation failures.
pub fn parse_sgp_with(text: &str, max_witnesses: usize) -> Result<FiniteSemigroup> {
    parse_lines(
        text.split('\n').enumerate().map(|(i, l)| (i + 1, l)),
        max_witnesses,
    )
}

/// Parse a stream of `.sgp` records separated by blank lines.
pub fn parse_sgp_stream(text: &str) -> Result<Vec<FiniteSemigroup>> {
    let mut out = Vec::new();
    let mut record: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.split('\n').enumerate() {
        if line.trim().is_empty() {
            if !record.is_empty() {
                out.push(parse_lines(record.drain(..), DEFAULT_MAX_WITNESSES)?);
            }
        } else {
            record.push((i + 1, line));
        }
    }
    if !record.is_empty() {
        out.push(parse_lines(record.into_iter(), DEFAULT_MAX_WITNESSES)?);
    }
    Ok(out)
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| c != ' ' && c != '\t')?;
        let tail = &rest[start..];
        let len = tail.find([' ', '\t']).unwrap_or(tail.len());
        let tok = &tail[..len];
        let col = offset + start + 1;
        offset += start + len;
        rest = &tail[len..];
        Some((col, tok))
    })
}

fn number(line: usize, col: usize, tok: &str) -> Result<usize, ParseError> {
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(
            line,
            col,
            format!("expected an index, found {tok:?}"),
        ));
    }
    tok.parse()
        .map_err(|_| ParseError::new(line, col, format!("index {tok:?} too large")))
}

fn parse_lines<'a>(
    mut lines: impl Iterator<Item = (usize, &'a str)>,
    max_witnesses: usize,
) -> Result<FiniteSemigroup> {
    let mut last_line = 1;
    let mut next = |lines: &mut dyn Iterator<Item = (usize, &'a str)>| -> Result<Option<(usize, &'a str)>, ParseError> {
        match lines.next() {
            Some((no, line)) => {
                last_line = no;
                if let Some(col) = line.find('\r') {
                    return Err(ParseError::new(no, col + 1, "carriage return; expected LF line endings"));
                }
                Ok(Some((no, line)))
            }
            None => Ok(None),
        }
    };

    let (no, header) = next(&mut lines)?.ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    let toks: Vec<_> = tokens(header).collect();
    if toks.len() != 2 {
        return Err(ParseError::new(no, 1, "header must be \"<n> <zero_index>\"").into());
    }
    let n = number(no, toks[0].0, toks[0].1)?;
    let zero = number(no, toks[1].0, toks[1].1)?;
    if n == 0 {
        return Err(ParseError::new(no, toks[0].0, "order must be at least 1").into());
    }
    if zero >= n {
        return Err(
            ParseError::new(no, toks[1].0, format!("zero index {zero} out of range")).into(),
        );
    }

    let mut rows: Vec<Vec<Elem>> = Vec::new();
    while rows.len() < n {
        let Some((no, line)) = next(&mut lines)? else {
            return Err(ParseError::new(
                last_line + 1,
                1,
                format!("expected {n} table rows, found {}", rows.len()),
            )
            .into());
        };
        let mut row = Vec::new();
        for (col, tok) in tokens(line) {
            if row.len() == n {
                return Err(
                    ParseError::new(no, col, format!("row has more than {n} entries")).into(),
                );
            }
            let v = number(no, col, tok)?;
            if v >= n {
                return Err(ParseError::new(
                    no,
                    col,
                    format!("entry {v} out of range for order {n}"),
                )
                .into());
            }
            row.push(v);
        }
        if row.len() != n {
            return Err(ParseError::new(
                no,
                line.len() + 1,
                format!("row has {} entries, expected {n}", row.len()),
            )
            .into());
        }
        rows.push(row);
    }

    let mut labels: Option<Vec<String>> = None;
    while let Some((no, line)) = next(&mut lines)? {
        if line.trim().is_empty() {
            continue;
        }
        let Some(comment) = line.strip_prefix('#') else {
            return Err(ParseError::new(no, 1, "unexpected content after table").into());
        };
        // "# <index> <label>"; any other comment is ignored
        let body = comment.strip_prefix(' ').unwrap_or(comment);
        let Some((idx, label)) = body.split_once(' ') else {
            continue;
        };
        if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
            continue;
        }
        let col = line.len() - body.len() + 1;
        let i = number(no, col, idx)?;
        if i >= n {
            return Err(ParseError::new(no, col, format!("label index {i} out of range")).into());
        }
        labels.get_or_insert_with(|| (0..n).map(|k| k.to_string()).collect())[i] =
            label.to_string();
    }

    let s = FiniteSemigroup::from_rows_with(&rows, zero, max_witnesses)?;
    match labels {
        None => Ok(s),
        Some(mut labels) => {
            labels.swap(0, zero);
            s.with_labels(labels)
        }
    }
}

/// Serialize in canonical form (zero at index 0, one label line per element
/// when labels are present).
pub fn serialize_sgp(s: &FiniteSemigroup) -> String {
    let n = s.len();
    let mut out = String::with_capacity(n * n * 3 + 16);
    let _ = writeln!(out, "{n} 0");
    for a in 0..n {
        for (j, v) in s.row(a).iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    if let Some(labels) = s.labels() {
        for (i, label) in labels.iter().enumerate() {
            let _ = writeln!(out, "# {i} {label}");
        }
    }
    out
}

/// Serialize several semigroups as a blank-line separated stream.
pub fn serialize_sgp_stream<'a>(items: impl IntoIterator<Item = &'a FiniteSemigroup>) -> String {
    let mut out = String::new();
    for (i, s) in items.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&serialize_sgp(s));
    }
    out
}

impl std::str::FromStr for FiniteSemigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sgp(s)
    }
}
