//! On-disk formats: an arc-per-line edge list, the packed digraph6
//! interchange encoding, and the certificate text format.
//!
//! Edge list: header `<n> <arc_count>`, then one `u v` line per arc meaning
//! u -> v, arcs sorted by (u, v). digraph6: `&`, the length field, then the
//! row-major adjacency matrix six bits per character, each character offset
//! by 63. Both round-trip bit-exactly on canonical output.

use thiserror::Error;

use crate::certify::{CycleCert, PathCert};
use crate::graph::{GraphError, OrientedGraph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("line {0}: expected two vertex indices")]
    BadArcLine(usize),
    #[error("arc count mismatch: header says {expected}, found {found}")]
    ArcCountMismatch { expected: usize, found: usize },
    #[error("digraph6: {0}")]
    Digraph6(String),
    #[error("certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Input formats the readers understand.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Digraph6,
}

/// Guesses the format from the first byte: digraph6 payloads start with
/// `&` (or the optional `>>digraph6<<` tag), edge lists with a digit.
pub fn detect_format(input: &str) -> Result<GraphFormat, FormatError> {
    match input.trim_start().chars().next() {
        None => Err(FormatError::Empty),
        Some('&') | Some('>') => Ok(GraphFormat::Digraph6),
        Some(c) if c.is_ascii_digit() => Ok(GraphFormat::EdgeList),
        Some(c) => Err(FormatError::BadHeader(format!("unexpected leading '{c}'"))),
    }
}

pub fn read_graph(input: &str) -> Result<OrientedGraph, FormatError> {
    match detect_format(input)? {
        GraphFormat::EdgeList => read_edge_list(input),
        GraphFormat::Digraph6 => decode_digraph6(input.trim()),
    }
}

pub fn write_graph(g: &OrientedGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Digraph6 => encode_digraph6(g),
    }
}

// ---------------------------------------------------------------------------
// Edge list
// ---------------------------------------------------------------------------

pub fn read_edge_list(input: &str) -> Result<OrientedGraph, FormatError> {
    let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(FormatError::Empty)?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| FormatError::BadHeader(header.to_string()))?;
    let count: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| FormatError::BadHeader(header.to_string()))?;
    if parts.next().is_some() {
        return Err(FormatError::BadHeader(header.to_string()));
    }

    let mut g = OrientedGraph::new(n)?;
    let mut found = 0usize;
    for (lineno, line) in lines {
        let mut parts = line.split_whitespace();
        let u: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(FormatError::BadArcLine(lineno + 1))?;
        let v: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(FormatError::BadArcLine(lineno + 1))?;
        if parts.next().is_some() {
            return Err(FormatError::BadArcLine(lineno + 1));
        }
        g.add_arc(VertexId::new(u), VertexId::new(v))?;
        found += 1;
    }
    if found != count {
        return Err(FormatError::ArcCountMismatch { expected: count, found });
    }
    Ok(g)
}

pub fn write_edge_list(g: &OrientedGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.arc_count());
    for (u, v) in g.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// digraph6
// ---------------------------------------------------------------------------

const D6_HEADER: &str = ">>digraph6<<";

fn encode_length(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258047 {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    } else {
        // 36-bit form; unreachable for the sizes this library targets but
        // cheap to emit correctly.
        out.push(126 as char);
        out.push(126 as char);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
}

fn decode_length(bytes: &[u8]) -> Result<(usize, usize), FormatError> {
    let err = |m: &str| FormatError::Digraph6(m.to_string());
    let first = *bytes.first().ok_or_else(|| err("missing length"))?;
    if first != 126 {
        if !(63..=125).contains(&first) {
            return Err(err("bad length byte"));
        }
        return Ok(((first - 63) as usize, 1));
    }
    let second = *bytes.get(1).ok_or_else(|| err("truncated length"))?;
    let (count, skip) = if second == 126 { (6, 2) } else { (3, 1) };
    let mut n = 0usize;
    for i in 0..count {
        let b = *bytes.get(skip + i).ok_or_else(|| err("truncated length"))?;
        if !(63..=126).contains(&b) {
            return Err(err("bad length byte"));
        }
        n = (n << 6) | (b - 63) as usize;
    }
    Ok((n, skip + count))
}

/// Encodes the full row-major adjacency matrix, nauty style.
pub fn encode_digraph6(g: &OrientedGraph) -> String {
    let n = g.vertex_count();
    let mut out = String::from("&");
    encode_length(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0u8;
    for u in 0..n {
        for v in 0..n {
            let bit = g.has_arc(VertexId::new(u), VertexId::new(v)) as u8;
            acc = (acc << 1) | bit;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push((acc + 63) as char);
    }
    out
}

pub fn decode_digraph6(input: &str) -> Result<OrientedGraph, FormatError> {
    let err = |m: &str| FormatError::Digraph6(m.to_string());
    let s = input.strip_prefix(D6_HEADER).unwrap_or(input);
    let s = s.strip_prefix('&').ok_or_else(|| err("missing '&' marker"))?;
    let bytes = s.as_bytes();
    let (n, consumed) = decode_length(bytes)?;
    if n == 0 {
        return Err(FormatError::Graph(GraphError::EmptyGraph));
    }
    let body = &bytes[consumed..];
    let needed = (n * n).div_ceil(6);
    if body.len() != needed {
        return Err(err(&format!(
            "body length {} does not match {} expected characters",
            body.len(),
            needed
        )));
    }
    let mut g = OrientedGraph::new(n)?;
    let mut idx = 0usize;
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(err("bad payload byte"));
        }
        let word = b - 63;
        for shift in (0..6).rev() {
            if idx >= n * n {
                if (word >> shift) & 1 == 1 {
                    return Err(err("nonzero padding"));
                }
                continue;
            }
            if (word >> shift) & 1 == 1 {
                let (u, v) = (idx / n, idx % n);
                g.add_arc(VertexId::new(u), VertexId::new(v))?;
            }
            idx += 1;
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// A parsed certificate line, bound to a graph by the caller.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Cycle(CycleCert),
    Path(PathCert),
}

/// Parses `cycle: v1 v2 ...` or `path: v1 v2 ...` (0-based ids) against
/// `g`. Structure is not validated here; the verifier does that.
pub fn parse_certificate(input: &str, g: &OrientedGraph) -> Result<Certificate, FormatError> {
    let line = input
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or(FormatError::Empty)?;
    let (kind, rest) = line
        .split_once(':')
        .ok_or_else(|| FormatError::Certificate("missing 'cycle:' or 'path:' tag".to_string()))?;
    let vertices: Vec<VertexId> = rest
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map(VertexId::new)
                .map_err(|_| FormatError::Certificate(format!("bad vertex token '{tok}'")))
        })
        .collect::<Result<_, _>>()?;
    match kind.trim() {
        "cycle" => Ok(Certificate::Cycle(CycleCert::new(g, vertices))),
        "path" => Ok(Certificate::Path(PathCert::new(g, vertices))),
        other => Err(FormatError::Certificate(format!("unknown kind '{other}'"))),
    }
}

pub fn format_cycle(c: &CycleCert) -> String {
    format!(
        "cycle: {}\n",
        c.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    )
}

pub fn format_path(p: &PathCert) -> String {
    format!(
        "path: {}\n",
        p.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instruments;

    #[test]
    fn edge_list_round_trip() {
        let g = instruments::random_min_degree_oriented(9, 4, 3).unwrap();
        let text = write_edge_list(&g);
        let h = read_edge_list(&text).unwrap();
        assert_eq!(g.arcs(), h.arcs());
        assert_eq!(write_edge_list(&h), text);
    }

    #[test]
    fn edge_list_rejects_malformed() {
        assert_eq!(read_edge_list("").unwrap_err(), FormatError::Empty);
        assert!(matches!(
            read_edge_list("3\n0 1\n"),
            Err(FormatError::BadHeader(_))
        ));
        assert!(matches!(
            read_edge_list("3 2\n0 1\n"),
            Err(FormatError::ArcCountMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(
            read_edge_list("3 1\n0 x\n"),
            Err(FormatError::BadArcLine(_))
        ));
        assert!(matches!(
            read_edge_list("2 2\n0 1\n1 0\n"),
            Err(FormatError::Graph(GraphError::AntiparallelArc(1, 0)))
        ));
    }

    #[test]
    fn digraph6_round_trip_small() {
        let g = OrientedGraph::from_arcs(5, [(0, 2), (2, 1), (4, 0), (3, 4)]).unwrap();
        let text = encode_digraph6(&g);
        assert!(text.starts_with('&'));
        let h = decode_digraph6(&text).unwrap();
        assert_eq!(g.arcs(), h.arcs());
        assert_eq!(encode_digraph6(&h), text);
    }

    #[test]
    fn digraph6_known_encoding() {
        // Two vertices, single arc 0 -> 1: n header 'A' (65), matrix rows
        // 01 00 padded to 010000 -> 16 + 63 = 'O'.
        let g = OrientedGraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(encode_digraph6(&g), "&AO");
        let h = decode_digraph6("&AO").unwrap();
        assert!(h.has_arc(VertexId::new(0), VertexId::new(1)));
        assert_eq!(h.arc_count(), 1);
    }

    #[test]
    fn digraph6_accepts_optional_header() {
        let g = OrientedGraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let text = format!(">>digraph6<<{}", encode_digraph6(&g));
        let h = decode_digraph6(&text).unwrap();
        assert_eq!(g.arcs(), h.arcs());
    }

    #[test]
    fn digraph6_long_length_form() {
        let g = OrientedGraph::from_arcs(80, [(0, 79), (79, 1)]).unwrap();
        let text = encode_digraph6(&g);
        let h = decode_digraph6(&text).unwrap();
        assert_eq!(h.vertex_count(), 80);
        assert_eq!(g.arcs(), h.arcs());
    }

    #[test]
    fn digraph6_rejects_garbage() {
        assert!(decode_digraph6("AO").is_err());
        assert!(decode_digraph6("&A").is_err());
        assert!(decode_digraph6("&AOO").is_err());
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("5 0\n").unwrap(), GraphFormat::EdgeList);
        assert_eq!(detect_format("&AO").unwrap(), GraphFormat::Digraph6);
        assert_eq!(detect_format(">>digraph6<<&AO").unwrap(), GraphFormat::Digraph6);
        assert!(detect_format("").is_err());
        assert!(detect_format("x").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let g = OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = CycleCert::new(&g, (0..4).map(VertexId::new).collect());
        let text = format_cycle(&c);
        assert_eq!(text, "cycle: 0 1 2 3\n");
        match parse_certificate(&text, &g).unwrap() {
            Certificate::Cycle(parsed) => assert_eq!(parsed, c),
            _ => panic!("expected a cycle"),
        }
        let p = PathCert::new(&g, vec![VertexId::new(2), VertexId::new(3)]);
        match parse_certificate(&format_path(&p), &g).unwrap() {
            Certificate::Path(parsed) => assert_eq!(parsed, p),
            _ => panic!("expected a path"),
        }
        assert!(parse_certificate("tour: 0 1", &g).is_err());
        assert!(parse_certificate("cycle: a b", &g).is_err());
    }
}
