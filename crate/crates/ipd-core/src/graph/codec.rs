//! graph6 and edge-list encodings.
//!
//! graph6 follows McKay's format exactly: the order in `N(n)` form, then the
//! upper triangle of the adjacency matrix read column by column, packed into
//! big-endian 6-bit groups offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

const G6_HEADER: &str = ">>graph6<<";

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6Parse {
        offset,
        message: message.into(),
    }
}

/// Decodes a one-line graph6 string; the `>>graph6<<` header is optional.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (line, base) = match line.strip_prefix(G6_HEADER) {
        Some(rest) => (rest, G6_HEADER.len()),
        None => (line, 0),
    };
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(base + i, format!("byte {b:#04x} outside graph6 range 63..=126")));
        }
    }
    if bytes.is_empty() {
        return Err(g6_err(base, "empty input"));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as u64, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(g6_err(base + bytes.len(), "truncated order field"));
        }
        let n = ((bytes[1] - 63) as u64) << 12 | ((bytes[2] - 63) as u64) << 6 | (bytes[3] - 63) as u64;
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(g6_err(base + bytes.len(), "truncated order field"));
        }
        let mut n = 0u64;
        for &b in &bytes[2..8] {
            n = n << 6 | (b - 63) as u64;
        }
        (n, 8)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6) as usize;
    let have = bytes.len() - pos;
    if have < need {
        return Err(g6_err(
            base + bytes.len(),
            format!("truncated: order {n} needs {need} data bytes, found {have}"),
        ));
    }
    if have > need {
        return Err(g6_err(base + pos + need, "trailing garbage after adjacency data"));
    }
    let n = n as usize;
    let mut g = Graph::new(n);
    let mut bit = 0u32;
    let mut current = 0u8;
    for v in 1..n {
        for u in 0..v {
            if bit == 0 {
                current = bytes[pos] - 63;
                pos += 1;
                bit = 6;
            }
            bit -= 1;
            if current >> bit & 1 == 1 {
                g.add_edge(u, v)?;
            }
        }
    }
    if bit > 0 && current & ((1 << bit) - 1) != 0 {
        return Err(g6_err(base + pos - 1, "nonzero padding bits"));
    }
    Ok(g)
}

/// Encodes a graph as a plain graph6 line (no header, no newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        out.push(126);
        out.push(126);
        for shift in (0..36).step_by(6).rev() {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut group = 0u8;
    let mut bit = 6u32;
    for v in 1..n {
        for u in 0..v {
            bit -= 1;
            if g.has_edge(u, v) {
                group |= 1 << bit;
            }
            if bit == 0 {
                out.push(group + 63);
                group = 0;
                bit = 6;
            }
        }
    }
    if bit < 6 {
        out.push(group + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses the edge-list format: one `u v` pair per nonblank line, with an
/// optional leading `n <count>` header declaring the order. Without a header
/// the order is one more than the largest id mentioned.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_id: Option<usize> = None;
    let mut saw_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens[0] == "n" && !saw_content {
            if tokens.len() != 2 {
                return Err(Error::EdgeListParse {
                    line,
                    message: "header must be exactly `n <count>`".into(),
                });
            }
            declared_n = Some(parse_id(tokens[1], line)?);
            saw_content = true;
            continue;
        }
        saw_content = true;
        if tokens.len() != 2 {
            return Err(Error::EdgeListParse {
                line,
                message: format!("expected two vertex ids, found {} tokens", tokens.len()),
            });
        }
        let u = parse_id(tokens[0], line)?;
        let v = parse_id(tokens[1], line)?;
        if u == v {
            return Err(Error::EdgeListParse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let min_n = max_id.map_or(0, |m| m + 1);
    let n = match declared_n {
        Some(n) if n < min_n => {
            return Err(Error::EdgeListParse {
                line: 1,
                message: format!("declared order {n} but edges mention vertex {}", min_n - 1),
            })
        }
        Some(n) => n,
        None => min_n,
    };
    Graph::from_edges(n, &edges)
}

fn parse_id(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::EdgeListParse {
        line,
        message: format!("`{token}` is not a non-negative integer"),
    })
}

/// Emits the edge-list form with an explicit `n` header so that isolated
/// vertices survive a round trip.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn graph6_k5() {
        let g = parse_graph6("D~{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(emit_graph6(&generate::complete(5).unwrap()), "D~{");
    }

    #[test]
    fn graph6_empty_and_single_edge() {
        let g = parse_graph6("?").unwrap();
        assert_eq!(g.n(), 0);
        let g = parse_graph6("A_").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(emit_graph6(&g), "A_");
    }

    #[test]
    fn graph6_header_accepted() {
        let g = parse_graph6(">>graph6<<D~{").unwrap();
        assert_eq!(g.n(), 5);
    }

    #[test]
    fn graph6_petgraph_fixture() {
        // Five vertices, edges 0-2, 0-4, 1-3, 3-4.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn graph6_errors_name_offsets() {
        match parse_graph6("D~")
        {
            Err(Error::Graph6Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected truncation error, got {other:?}"),
        }
        match parse_graph6("D~{{") {
            Err(Error::Graph6Parse { offset, message }) => {
                assert_eq!(offset, 3);
                assert!(message.contains("trailing"));
            }
            other => panic!("expected trailing-garbage error, got {other:?}"),
        }
        match parse_graph6("D~\u{7f}") {
            Err(Error::Graph6Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected range error, got {other:?}"),
        }
    }

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);

        let g = parse_edge_list("0 1\n0 1").unwrap();
        assert_eq!(g.edge_count(), 1);

        match parse_edge_list("0 0") {
            Err(Error::EdgeListParse { line, message }) => {
                assert_eq!(line, 1);
                assert!(message.contains("self-loop"));
            }
            other => panic!("expected self-loop error, got {other:?}"),
        }

        match parse_edge_list("0 1\n2 x") {
            Err(Error::EdgeListParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected integer error, got {other:?}"),
        }
    }

    #[test]
    fn edge_list_header() {
        let g = parse_edge_list("n 5\n0 1\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 1);
        assert!(parse_edge_list("n 2\n0 3").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = generate::petersen();
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        let lonely = Graph::new(4);
        assert_eq!(parse_edge_list(&emit_edge_list(&lonely)).unwrap(), lonely);
    }
}
