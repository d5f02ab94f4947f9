//! The `.loop` file format.
//!
//! Grammar: optional `#` comment lines, then `loop N`, then `N` lines of
//! `N` space-separated base-10 entries; row `a` lists the products `a·b`
//! for `b = 0..N-1`. Element 0 must be the identity. Trailing whitespace
//! is ignored. Serialization is canonical, so parse-then-serialize is
//! byte-identical on serializer output.

use finloop::FiniteLoop;

use crate::error::{CliError, Result};

pub fn parse_loop(text: &str) -> Result<FiniteLoop> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| CliError::Parse("empty loop file".into()))?;
    let order: usize = header
        .strip_prefix("loop")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| CliError::Parse(format!("expected `loop N` header, found `{header}`")))?;
    let mut rows = Vec::with_capacity(order);
    for i in 0..order {
        let line = lines
            .next()
            .ok_or_else(|| CliError::Parse(format!("missing row {i} of {order}")))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse()
                    .map_err(|_| CliError::Parse(format!("bad entry `{tok}` in row {i}")))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(CliError::Parse(format!("unexpected trailing line `{extra}`")));
    }
    Ok(FiniteLoop::from_rows(rows)?)
}

pub fn serialize_loop(l: &FiniteLoop) -> String {
    let mut out = format!("loop {}\n", l.order());
    for row in l.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_loop_file(path: &std::path::Path) -> Result<FiniteLoop> {
    parse_loop(&std::fs::read_to_string(path)?)
}
