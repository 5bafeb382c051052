//! graph6 and DIMACS `.col` codecs.
//!
//! graph6 follows the standard 63-offset encoding: the vertex count in 1, 4,
//! or 8 bytes, then the upper triangle in column-major order, 6 bits per
//! printable byte. Pair `(u, v)` with `u < v` occupies bit position
//! `v*(v-1)/2 + u`.

use crate::error::Error;
use crate::graph::{Graph, MAX_VERTICES};

/// Decode one graph6 line.
pub fn graph6_decode(text: &str) -> Result<Graph, Error> {
    let bytes = text.trim_end_matches(['\r', '\n']).as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    let (n, header_len) = decode_size(bytes)?;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    let pair_count = n * n.saturating_sub(1) / 2;
    let payload_len = pair_count.div_ceil(6);
    let payload = &bytes[header_len..];
    if payload.len() < payload_len {
        return Err(Error::Graph6(format!(
            "payload too short: need {payload_len} bytes for n={n}, got {}",
            payload.len()
        )));
    }
    if payload.len() > payload_len {
        return Err(Error::Graph6(format!(
            "trailing garbage: {} extra bytes",
            payload.len() - payload_len
        )));
    }
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = payload[bit_index / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Graph6(format!("byte {byte:#x} outside graph6 range")));
            }
            let chunk = byte - 63;
            if chunk >> (5 - bit_index % 6) & 1 == 1 {
                edges.push((u, v));
            }
            bit_index += 1;
            if bit_index >= pair_count {
                break 'outer;
            }
        }
    }
    // padding bits must be zero
    let last = payload.last().copied().unwrap_or(63) - 63;
    let pad = payload_len * 6 - pair_count;
    if pad > 0 && last & ((1 << pad) - 1) != 0 {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    Graph::from_edges(n, &edges)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), Error> {
    if bytes[0] != b'~' {
        let c = bytes[0];
        if !(63..=126).contains(&c) {
            return Err(Error::Graph6(format!("invalid size byte {c:#x}")));
        }
        return Ok(((c - 63) as usize, 1));
    }
    if bytes.len() >= 2 && bytes[1] != b'~' {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated 4-byte size header".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(Error::Graph6(format!("invalid size byte {b:#x}")));
            }
            n = n << 6 | (b - 63) as usize;
        }
        return Ok((n, 4));
    }
    if bytes.len() < 8 {
        return Err(Error::Graph6("truncated 8-byte size header".into()));
    }
    let mut n = 0usize;
    for &b in &bytes[2..8] {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("invalid size byte {b:#x}")));
        }
        n = n << 6 | (b - 63) as usize;
    }
    Ok((n, 8))
}

/// Encode to the canonical graph6 string (no trailing newline).
pub fn graph6_encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    // n <= 64 always fits the single-byte header for n <= 62,
    // the 4-byte form otherwise
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(b'~');
        out.push(63 + (n >> 12 & 0x3f) as u8);
        out.push(63 + (n >> 6 & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    }
    let mut chunk = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            chunk = chunk << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (chunk << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parse DIMACS `.col` text: a `p edge n m` line, then `e u v` lines (1-based).
/// Duplicate edges collapse; self-loops are rejected.
pub fn dimacs_read(text: &str) -> Result<Graph, Error> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                let kind = parts.next().unwrap_or("");
                if kind != "edge" && kind != "edges" && kind != "col" {
                    return Err(Error::Dimacs(format!(
                        "line {}: expected 'p edge', got 'p {kind}'",
                        lineno + 1
                    )));
                }
                let nv = parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| Error::Dimacs(format!("line {}: bad vertex count", lineno + 1)))?;
                n = Some(nv);
            }
            Some("e") => {
                let nv = n.ok_or_else(|| {
                    Error::Dimacs(format!("line {}: edge before problem line", lineno + 1))
                })?;
                let u = parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| Error::Dimacs(format!("line {}: bad endpoint", lineno + 1)))?;
                let v = parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| Error::Dimacs(format!("line {}: bad endpoint", lineno + 1)))?;
                if u == 0 || v == 0 || u > nv || v > nv {
                    return Err(Error::Dimacs(format!(
                        "line {}: vertex out of range 1..={nv}",
                        lineno + 1
                    )));
                }
                if u == v {
                    return Err(Error::Dimacs(format!("line {}: self-loop", lineno + 1)));
                }
                edges.push((u - 1, v - 1));
            }
            _ => {
                return Err(Error::Dimacs(format!(
                    "line {}: unrecognized line '{line}'",
                    lineno + 1
                )))
            }
        }
    }
    let n = n.ok_or_else(|| Error::Dimacs("missing problem line".into()))?;
    Graph::from_edges(n, &edges)
}

/// Write DIMACS `.col` text (1-based, one `e` line per edge).
pub fn dimacs_write(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn decode_triangle() {
        let g = graph6_decode("Bw").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.is_complete());
    }

    #[test]
    fn decode_c5() {
        let g = graph6_decode("Dhc").unwrap();
        assert_eq!(g, generate::cycle(5).unwrap());
    }

    #[test]
    fn decode_single_vertex() {
        let g = graph6_decode("@").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn encode_known_strings() {
        assert_eq!(graph6_encode(&generate::complete(3).unwrap()), "Bw");
        assert_eq!(graph6_encode(&generate::cycle(5).unwrap()), "Dhc");
        assert_eq!(graph6_encode(&Graph::empty(1).unwrap()), "@");
    }

    #[test]
    fn decode_rejects_short_payload() {
        assert!(graph6_decode("D").is_err());
    }

    #[test]
    fn decode_rejects_trailing_garbage() {
        assert!(graph6_decode("Bww").is_err());
    }

    #[test]
    fn dimacs_triangle() {
        let g = dimacs_read("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert!(g.is_complete());
        assert_eq!(g.n(), 3);
    }

    #[test]
    fn dimacs_round_trip_c5() {
        let c5 = generate::cycle(5).unwrap();
        assert_eq!(dimacs_read(&dimacs_write(&c5)).unwrap(), c5);
    }

    #[test]
    fn dimacs_out_of_range() {
        assert!(dimacs_read("p edge 3 1\ne 1 4\n").is_err());
    }

    #[test]
    fn dimacs_missing_problem_line() {
        assert!(dimacs_read("e 1 2\n").is_err());
    }

    #[test]
    fn dimacs_duplicate_edges_collapse() {
        let g = dimacs_read("p edge 3 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }
}
