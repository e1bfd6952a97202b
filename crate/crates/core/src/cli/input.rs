//! Text formats accepted on the command line.
//!
//! A matrix block is a header line `rows cols` followed by `rows` lines of
//! `cols` integers. Blank lines and lines starting with `#` are ignored. A
//! system file holds the `A` block followed by the `B` block. Inline
//! matrices separate rows with `;`: `"2 3; 1 0"`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with 1-based positions (commas count as
/// whitespace).
fn tokens(line: &str, line_no: usize, column_offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        let sep = c.is_whitespace() || c == ',';
        match (start, sep) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                out.push(Token {
                    text: &line[s..i],
                    line: line_no,
                    column: column_offset + line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn integer(tok: &Token<'_>) -> Result<BigInt> {
    tok.text.parse::<BigInt>().map_err(|_| {
        parse_error(
            tok.line,
            tok.column,
            format!("expected an integer, found '{}'", tok.text),
        )
    })
}

fn dimension(tok: &Token<'_>) -> Result<usize> {
    tok.text.parse::<usize>().map_err(|_| {
        parse_error(
            tok.line,
            tok.column,
            format!("expected a dimension, found '{}'", tok.text),
        )
    })
}

/// Parses consecutive matrix blocks.
pub fn parse_blocks(text: &str) -> Result<Vec<IntMatrix>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .peekable();
    let mut blocks = Vec::new();
    while let Some((line_no, header)) = lines.next() {
        let toks = tokens(header, line_no, 0);
        if toks.len() != 2 {
            let col = toks.get(2).map_or(1, |t| t.column);
            return Err(parse_error(line_no, col, "header must be 'rows cols'"));
        }
        let (rows, cols) = (dimension(&toks[0])?, dimension(&toks[1])?);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let Some((row_no, row)) = lines.next() else {
                let last = text.lines().count().max(1);
                return Err(parse_error(last, 1, format!("expected {rows} rows, found {i}")));
            };
            let toks = tokens(row, row_no, 0);
            if toks.len() != cols {
                let col = toks.get(cols).map_or(row.chars().count() + 1, |t| t.column);
                return Err(parse_error(
                    row_no,
                    col,
                    format!("expected {cols} entries, found {}", toks.len()),
                ));
            }
            for t in &toks {
                data.push(integer(t)?);
            }
        }
        blocks.push(IntMatrix::new(rows, cols, data)?);
    }
    Ok(blocks)
}

/// A single matrix block.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut blocks = parse_blocks(text)?;
    match blocks.len() {
        1 => Ok(blocks.remove(0)),
        n => Err(parse_error(1, 1, format!("expected one matrix block, found {n}"))),
    }
}

/// The `A` and `B` blocks of a system file.
pub fn parse_system(text: &str) -> Result<(IntMatrix, IntMatrix)> {
    let mut blocks = parse_blocks(text)?;
    if blocks.len() != 2 {
        return Err(parse_error(
            1,
            1,
            format!("expected an A block and a B block, found {} blocks", blocks.len()),
        ));
    }
    let b = blocks.pop().expect("two blocks");
    let a = blocks.pop().expect("two blocks");
    Ok((a, b))
}

/// `"2 3; 1 0"`: rows separated by `;`, entries by spaces or commas.
pub fn parse_inline(text: &str) -> Result<IntMatrix> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let toks = tokens(part, 1, offset);
        offset += part.chars().count() + 1;
        if toks.is_empty() {
            return Err(parse_error(1, offset, "empty row"));
        }
        let row = toks.iter().map(integer).collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(parse_error(
                    1,
                    toks[0].column,
                    format!(
                        "row {} has {} entries, expected {}",
                        rows.len() + 1,
                        row.len(),
                        first.len()
                    ),
                ));
            }
        }
        rows.push(row);
    }
    let cols = rows[0].len();
    IntMatrix::new(rows.len(), cols, rows.into_iter().flatten().collect())
}

/// `start..stop..step` (inclusive), `start..stop`, a comma list, or one value.
pub fn parse_radii(text: &str) -> Result<Vec<u64>> {
    let num = |s: &str, column: usize| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| parse_error(1, column, format!("expected a nonnegative integer, found '{s}'")))
    };
    if text.contains("..") {
        let parts: Vec<&str> = text.split("..").collect();
        if parts.len() > 3 {
            return Err(parse_error(1, 1, "expected start..stop or start..stop..step"));
        }
        let mut col = 1;
        let mut vals = Vec::new();
        for p in &parts {
            vals.push(num(p, col)?);
            col += p.chars().count() + 2;
        }
        let (start, stop) = (vals[0], vals[1]);
        let step = vals.get(2).copied().unwrap_or(1);
        if step == 0 {
            return Err(parse_error(
                1,
                text.rfind("..").map_or(1, |i| i + 3),
                "step must be positive",
            ));
        }
        if start > stop {
            return Err(parse_error(1, 1, "start exceeds stop"));
        }
        return Ok((start..=stop).step_by(step as usize).collect());
    }
    let mut col = 1;
    let mut out = Vec::new();
    for p in text.split(',') {
        out.push(num(p, col)?);
        col += p.chars().count() + 1;
    }
    Ok(out)
}
