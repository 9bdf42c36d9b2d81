//! Text encodings for matrices.
//!
//! Two input forms are understood. A *grid* is `n` lines of `n` digit
//! characters, `0`/`1` (the render glyphs `.`/`#` are accepted as
//! aliases so rendered output parses back). A *tuple* is a single line
//! `n:k_1,k_2,...,k_n` listing the order and the decimal row codes. A
//! tuple line always contains a colon and a grid line never does, so the
//! first line decides the format. Output side: grids, tuples, plain-text
//! bitmap (PBM) and glyph rendering.

use std::fmt::Write as _;

use thiserror::Error;

use crate::matrix::{row_mask, BitMatrix, MAX_ORDER};

/// Parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Parses either accepted form, deciding by the first line: with a colon
/// it is a tuple, otherwise a digit grid.
pub fn parse_matrix(input: &str) -> Result<BitMatrix, ParseError> {
    let first = input.lines().next().unwrap_or("");
    if first.contains(':') {
        parse_tuple(input)
    } else {
        parse_grid(input)
    }
}

/// Parses a square digit grid; the number of lines sets the order.
pub fn parse_grid(input: &str) -> Result<BitMatrix, ParseError> {
    let lines: Vec<&str> = trimmed_lines(input);
    if lines.is_empty() {
        return Err(ParseError::new(1, 1, "empty input"));
    }
    let order = lines.len();
    if order > MAX_ORDER {
        return Err(ParseError::new(
            MAX_ORDER + 1,
            1,
            format!("too many rows: the largest supported order is {MAX_ORDER}"),
        ));
    }
    let mut rows = Vec::with_capacity(order);
    for (i, line) in lines.iter().enumerate() {
        let mut row = 0u64;
        let mut width = 0usize;
        for (j, ch) in line.chars().enumerate() {
            if width == order {
                return Err(ParseError::new(
                    i + 1,
                    j + 1,
                    format!("row is longer than the {order} line(s) of the grid"),
                ));
            }
            let bit = match ch {
                '0' | '.' => 0,
                '1' | '#' => 1,
                _ => {
                    return Err(ParseError::new(
                        i + 1,
                        j + 1,
                        format!("invalid character {ch:?}, expected '0' or '1'"),
                    ))
                }
            };
            row = row << 1 | bit;
            width += 1;
        }
        if width < order {
            return Err(ParseError::new(
                i + 1,
                width + 1,
                format!("expected {order} characters on this row, found {width}"),
            ));
        }
        rows.push(row);
    }
    Ok(BitMatrix::from_rows_unchecked(rows))
}

/// Parses the `n:k_1,...,k_n` form.
pub fn parse_tuple(input: &str) -> Result<BitMatrix, ParseError> {
    let lines = trimmed_lines(input);
    if lines.is_empty() {
        return Err(ParseError::new(1, 1, "empty input"));
    }
    if lines.len() > 1 {
        return Err(ParseError::new(2, 1, "a row tuple is a single line"));
    }
    let line = lines[0];

    let colon = line
        .find(':')
        .ok_or_else(|| ParseError::new(1, line.len() + 1, "expected ':' after the order"))?;
    let order: usize = parse_number(&line[..colon], 1)?;
    if order == 0 || order > MAX_ORDER {
        return Err(ParseError::new(
            1,
            1,
            format!("order {order} is outside the supported range 1..={MAX_ORDER}"),
        ));
    }

    let mut rows = Vec::with_capacity(order);
    let codes = &line[colon + 1..];
    let mut column = colon + 2;
    for (i, piece) in codes.split(',').enumerate() {
        if i == order {
            return Err(ParseError::new(
                1,
                column,
                format!("expected {order} row codes, found more"),
            ));
        }
        let code: u64 = parse_number(piece, column)?;
        if code > row_mask(order) {
            return Err(ParseError::new(
                1,
                column,
                format!("row {}: code {code} does not fit in {order} bits", i + 1),
            ));
        }
        rows.push(code);
        column += piece.len() + 1;
    }
    if rows.len() < order {
        return Err(ParseError::new(
            1,
            column - 1,
            format!("expected {order} row codes, found {}", rows.len()),
        ));
    }
    Ok(BitMatrix::from_rows_unchecked(rows))
}

/// Splits into lines, dropping one trailing newline and any `\r` line
/// endings; interior blank lines stay and fail validation later.
fn trimmed_lines(input: &str) -> Vec<&str> {
    let mut lines: Vec<&str> = input
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    while lines.last() == Some(&"") {
        lines.pop();
    }
    lines
}

fn parse_number<T: std::str::FromStr>(text: &str, column: usize) -> Result<T, ParseError> {
    let trimmed = text.trim();
    if trimmed.len() != text.len() {
        return Err(ParseError::new(1, column, "spaces are not allowed here"));
    }
    text.parse()
        .map_err(|_| ParseError::new(1, column, format!("invalid number {text:?}")))
}

/// Digit grid, one line per row, each line newline-terminated.
pub fn to_grid(m: &BitMatrix) -> String {
    render_with(m, '0', '1')
}

/// Single-line `n:k_1,...,k_n` form, no trailing newline.
pub fn to_tuple(m: &BitMatrix) -> String {
    let mut out = String::new();
    let _ = write!(out, "{}:", m.order());
    for (i, &row) in m.rows().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{row}");
    }
    out
}

/// Plain-text bitmap: `P1`, the dimensions, then space-separated digits.
pub fn to_pbm(m: &BitMatrix) -> String {
    let n = m.order();
    let mut out = format!("P1\n{n} {n}\n");
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            out.push(if m.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Glyph rendering: `zero` and `one` stand in for the two entry values.
pub fn render_ascii(m: &BitMatrix, zero: char, one: char) -> String {
    render_with(m, zero, one)
}

fn render_with(m: &BitMatrix, zero: char, one: char) -> String {
    let n = m.order();
    let mut out = String::with_capacity((n + 1) * n);
    for i in 0..n {
        for j in 0..n {
            out.push(if m.get(i, j) { one } else { zero });
        }
        out.push('\n');
    }
    out
}
