//! DIMACS shortest-path `.gr` files: `c` comments, one `p sp <n> <m>` line,
//! and `a <u> <v> <w>` arcs with 1-based vertex ids.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{Edge, Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `p sp <n> <m>` problem line")]
    MissingProblemLine,
    #[error("problem line declares {declared} arcs but {found} were read")]
    ArcCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

pub fn parse<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(syntax(lineno, "duplicate problem line"));
                }
                if fields.next() != Some("sp") {
                    return Err(syntax(lineno, "expected `p sp <n> <m>`"));
                }
                let n = parse_field::<usize>(fields.next(), lineno, "vertex count")?;
                let m = parse_field::<usize>(fields.next(), lineno, "arc count")?;
                if fields.next().is_some() {
                    return Err(syntax(lineno, "trailing fields on problem line"));
                }
                edges.reserve(m);
                header = Some((n, m));
            }
            Some("a") => {
                let (n, _) = header.ok_or_else(|| syntax(lineno, "arc before problem line"))?;
                let u = parse_field::<u64>(fields.next(), lineno, "arc tail")?;
                let v = parse_field::<u64>(fields.next(), lineno, "arc head")?;
                let w = parse_field::<f64>(fields.next(), lineno, "arc weight")?;
                if fields.next().is_some() {
                    return Err(syntax(lineno, "trailing fields on arc line"));
                }
                for x in [u, v] {
                    if x == 0 || x > n as u64 {
                        return Err(syntax(lineno, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if !w.is_finite() || w < 0.0 {
                    return Err(syntax(lineno, format!("weight {w} must be finite and non-negative")));
                }
                edges.push(Edge { src: (u - 1) as u32, dst: (v - 1) as u32, weight: w });
            }
            Some(tag) => return Err(syntax(lineno, format!("unknown line type `{tag}`"))),
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingProblemLine)?;
    if edges.len() != m {
        return Err(ParseError::ArcCountMismatch { declared: m, found: edges.len() });
    }
    Ok(Graph::new(n, edges)?)
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let s = field.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    s.parse().map_err(|_| syntax(line, format!("invalid {what} `{s}`")))
}

pub fn parse_str(s: &str) -> Result<Graph, ParseError> {
    parse(s.as_bytes())
}

/// Writes `g` in `.gr` form. Weights use the shortest decimal that parses
/// back to the same `f64`, so integral weights print without a fraction.
pub fn write<W: Write>(g: &Graph, mut out: W, comment: Option<&str>) -> io::Result<()> {
    if let Some(c) = comment {
        for line in c.lines() {
            writeln!(out, "c {line}")?;
        }
    }
    writeln!(out, "p sp {} {}", g.n(), g.m())?;
    for e in g.edges() {
        writeln!(out, "a {} {} {}", e.src + 1, e.dst + 1, e.weight)?;
    }
    out.flush()
}
