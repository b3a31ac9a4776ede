//! Plain edge lists (1-based) and graph6.

use std::fmt::Write as _;
use std::str::FromStr;

use bei_core::{Graph, GraphError};

/// Largest order graph6 is read or written for (single-byte size field).
pub const GRAPH6_MAX_N: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    EdgeList,
    Graph6,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::EdgeList => "edge-list",
            Format::Graph6 => "graph6",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edge-list" => Ok(Format::EdgeList),
            "graph6" => Ok(Format::Graph6),
            other => Err(format!("unknown format `{other}` (expected edge-list or graph6)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error("line {line}: expected a vertex count, found `{text}`")]
    Header { line: usize, text: String },
    #[error("missing vertex count")]
    MissingHeader,
    #[error("line {line}: expected `u v`, found `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("line {line}: graph6 {reason}")]
    Graph6 { line: usize, reason: String },
}

pub fn parse_graph(text: &[u8], format: Format) -> Result<Graph, ParseError> {
    let text = std::str::from_utf8(text).map_err(|_| ParseError::Encoding)?;
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => parse_graph6(text),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::EdgeList => write_edge_list(g),
        Format::Graph6 => {
            let mut s = to_graph6(g).expect("graph within the graph6 size limit");
            s.push('\n');
            s
        }
    }
}

/// First content line is `n`, then one `u v` pair per line; `#` starts a
/// comment. Pairs may come in either order.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let n: usize = header.parse().map_err(|_| ParseError::Header {
        line: hline,
        text: header.to_string(),
    })?;
    let mut g = Graph::empty(n);
    for (line, body) in lines {
        let malformed = || ParseError::Malformed {
            line,
            text: body.to_string(),
        };
        let mut it = body.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(malformed());
        };
        let u: usize = a.parse().map_err(|_| malformed())?;
        let v: usize = b.parse().map_err(|_| malformed())?;
        for vertex in [u, v] {
            if vertex == 0 || vertex > n {
                return Err(ParseError::OutOfRange { line, vertex, n });
            }
        }
        match g.add_edge(u - 1, v - 1) {
            Ok(()) => {}
            Err(GraphError::SelfLoop(_)) => return Err(ParseError::SelfLoop { line, vertex: u }),
            Err(GraphError::DuplicateEdge(..)) => {
                return Err(ParseError::Duplicate {
                    line,
                    u: u.min(v),
                    v: u.max(v),
                })
            }
            Err(e) => unreachable!("endpoints were range-checked: {e}"),
        }
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(s, "{} {}", u + 1, v + 1).expect("writing to a String");
    }
    s
}

fn g6_err(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Graph6 {
        line,
        reason: reason.into(),
    }
}

/// The first graph6 record in `text` (an optional `>>graph6<<` prefix is
/// skipped).
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let (line, body) = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| g6_err(1, "input is empty"))?;
    parse_graph6_record(body, line)
}

/// Every graph6 record in `text`, one per nonempty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, ParseError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(line, body)| parse_graph6_record(body, line))
        .collect()
}

fn parse_graph6_record(body: &str, line: usize) -> Result<Graph, ParseError> {
    let body = body.strip_prefix(">>graph6<<").unwrap_or(body).as_bytes();
    let (&first, rest) = body.split_first().ok_or_else(|| g6_err(line, "record is empty"))?;
    if !(63..=126).contains(&first) {
        return Err(g6_err(line, format!("byte {first} is not printable graph6")));
    }
    if first == 126 {
        return Err(g6_err(line, format!("orders above {GRAPH6_MAX_N} are not supported")));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let want = bits.div_ceil(6);
    if rest.len() != want {
        return Err(g6_err(
            line,
            format!("expected {want} data bytes for n = {n}, found {}", rest.len()),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = rest[k / 6];
            if !(63..=126).contains(&byte) {
                return Err(g6_err(line, format!("byte {byte} is not printable graph6")));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v).expect("each pair is visited once");
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> Result<String, ParseError> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(g6_err(0, format!("orders above {GRAPH6_MAX_N} are not supported")));
    }
    let mut out = vec![(n as u8) + 63];
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_examples() {
        assert_eq!(parse_edge_list("3\n1 2\n2 3\n").unwrap(), Graph::path(3));
        assert_eq!(parse_edge_list("2\r\n1 2\r\n").unwrap(), Graph::path(2));
        assert_eq!(
            parse_edge_list("# a path\n3 # order\n\n2 1\n3 2\n").unwrap(),
            Graph::path(3)
        );
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        assert_eq!(
            parse_edge_list("x\n").unwrap_err(),
            ParseError::Header { line: 1, text: "x".into() }
        );
        assert_eq!(
            parse_edge_list("3\n1 2\n1 4\n").unwrap_err(),
            ParseError::OutOfRange { line: 3, vertex: 4, n: 3 }
        );
        assert_eq!(
            parse_edge_list("3\n\n2 2\n").unwrap_err(),
            ParseError::SelfLoop { line: 3, vertex: 2 }
        );
        assert_eq!(
            parse_edge_list("3\n1 2\n2 1\n").unwrap_err(),
            ParseError::Duplicate { line: 3, u: 1, v: 2 }
        );
        assert!(matches!(
            parse_edge_list("3\n1 2 3\n").unwrap_err(),
            ParseError::Malformed { line: 2, .. }
        ));
        assert_eq!(parse_edge_list("# nothing\n").unwrap_err(), ParseError::MissingHeader);
    }

    #[test]
    fn graph6_examples() {
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(to_graph6(&Graph::complete(3)).unwrap(), "Bw");
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(to_graph6(&Graph::path(2)).unwrap(), "A_");
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), Graph::path(2));
        assert!(parse_graph6("Bww").is_err());
        assert!(parse_graph6("~").is_err());
    }
}
