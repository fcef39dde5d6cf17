//! graph6 and edge-list text formats.
//!
//! graph6 stores `n` in a size header followed by the upper triangle of the
//! adjacency matrix in column order (`(0,1), (0,2), (1,2), (0,3), ...`),
//! six bits per byte, each byte offset by 63.

use std::path::Path;

use crate::error::{Error, Result};

use super::Graph;

const MAX_GRAPH6_N: usize = 68_719_476_735;

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses one graph6 string. An optional `>>graph6<<` prefix is skipped.
///
/// Padding bits must be zero, so accepted strings are exactly the canonical
/// ones and `emit_graph6(parse_graph6(s)) == s`.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let start = if bytes.starts_with(b">>graph6<<") { 10 } else { 0 };
    let bytes = &bytes[start..];
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(start + pos, format!("byte {:#04x} is not graph6 data", bytes[pos])));
    }
    let (n, header) = match bytes {
        [] => return Err(parse_err(start, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(parse_err(start + 2, "truncated 8-byte size header"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(start + 1, "truncated 4-byte size header"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n > MAX_GRAPH6_N {
        return Err(parse_err(start, "vertex count out of range"));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let payload = &bytes[header..];
    if payload.len() < need {
        return Err(parse_err(
            start + bytes.len(),
            format!("truncated payload: {n} vertices need {need} bytes, found {}", payload.len()),
        ));
    }
    if payload.len() > need {
        return Err(parse_err(start + header + need, "trailing bytes after payload"));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = payload[need - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(parse_err(start + header + need - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Parses the edge-list format: one `u v` pair per line (0-based), `#`
/// starts a comment, and a line holding a single integer declares the vertex
/// count (needed for trailing isolated vertices).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| parse_err(offset, format!("expected a vertex index, found {t:?}")))
        };
        match tokens.as_slice() {
            [] => {}
            [count] => {
                if declared.is_some() {
                    return Err(parse_err(offset, "vertex count declared twice"));
                }
                declared = Some(num(count)?);
            }
            [u, v] => edges.push((num(u)?, num(v)?)),
            _ => return Err(parse_err(offset, "expected `u v` or a vertex count")),
        }
        offset += line.len();
    }
    let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < implied => {
            return Err(parse_err(0, format!("declared {n} vertices but edges reach {implied}")))
        }
        Some(n) => n,
        None => implied,
    };
    Graph::from_edges(n, edges)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// True when every content line looks like a graph6 string.
fn looks_like_graph6(text: &str) -> bool {
    let mut any = false;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        any = true;
        let body = line.strip_prefix(">>graph6<<").unwrap_or(line);
        if body.is_empty() || !body.bytes().all(|b| (63..=126).contains(&b)) {
            return false;
        }
    }
    any
}

/// Reads graphs from text: a graph6 corpus (one per line) or a single
/// edge list, detected from the content.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    if looks_like_graph6(text) {
        let mut out = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                let lead = line.len() - line.trim_start().len();
                out.push(parse_graph6(t).map_err(|e| match e {
                    Error::Parse { offset: o, message } => Error::Parse {
                        offset: offset + lead + o,
                        message,
                    },
                    other => other,
                })?);
            }
            offset += line.len();
        }
        Ok(out)
    } else {
        Ok(vec![parse_edge_list(text)?])
    }
}

pub fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    parse_graphs(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn k2_from_graph6() {
        let g = parse_graph6("A_").unwrap();
        assert_eq!((g.n(), g.edges()), (2, vec![(0, 1)]));
        let e = parse_graph6("A?").unwrap();
        assert_eq!((e.n(), e.edge_count()), (2, 0));
    }

    #[test]
    fn known_strings() {
        // Hand-encoded: C5 bits (0,1)1 (0,2)0 (1,2)1 (0,3)0 (1,3)0 (2,3)1 |
        // (0,4)1 (1,4)0 (2,4)0 (3,4)1 -> 101001 1001(00) -> 41+63, 36+63.
        let c5 = generate(&Family::Cycle(5)).unwrap();
        assert_eq!(emit_graph6(&c5), "Dhc");
        assert_eq!(emit_graph6(&generate(&Family::Petersen).unwrap()).len(), 9);
        // Same five-vertex graph as the petgraph fixture: edges a-c a-e b-d d-e.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
    }

    #[test]
    fn large_header() {
        let c = generate(&Family::Cycle(100)).unwrap();
        let s = emit_graph6(&c);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap().edges(), c.edges());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match parse_graph6("A") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match parse_graph6("D h") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph6("~A"), Err(Error::Parse { offset: 1, .. })));
        assert!(parse_graph6("A`").is_err(), "padding bits set");
        assert!(parse_graph6("A__").is_err(), "trailing byte");
        assert!(parse_graph6(">>graph6<<A_").is_ok());
    }

    #[test]
    fn edge_list_with_comments_and_count() {
        let g = parse_edge_list("# a path\n6\n0 1\n1 2 # tail\n\n2 3\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 3));
        assert!(parse_edge_list("0 1 2\n").is_err());
        assert!(parse_edge_list("0 0\n").is_err());
        assert!(parse_edge_list("2\n0 5\n").is_err());
        let back = parse_edge_list(&emit_edge_list(&g)).unwrap();
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn format_detection() {
        let gs = parse_graphs("A_\nDhc\n").unwrap();
        assert_eq!(gs.len(), 2);
        let gs = parse_graphs("0 1\n1 2\n").unwrap();
        assert_eq!(gs[0].n(), 3);
        let gs = parse_graphs("3\n").unwrap();
        assert_eq!((gs.len(), gs[0].n()), (1, 3));
    }
}
