//! McKay's graph6 format for graphs with at most 62 vertices.
//!
//! A line is one size byte `n + 63` followed by the upper triangle of the
//! adjacency matrix, column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ..`),
//! packed six bits per byte, each byte offset by 63, padded with zeros.

use crate::error::GraphError;
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (&first, rest) = bytes.split_first().ok_or(GraphError::Graph6Header)?;
    if !(63..=125).contains(&first) {
        // 126 introduces the multi-byte size form, which only matters past 62 vertices
        return Err(GraphError::Graph6Header);
    }
    let n = (first - 63) as usize;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if rest.len() != expected {
        return Err(GraphError::Graph6Truncated {
            expected,
            found: rest.len(),
        });
    }
    if let Some(&b) = rest.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Graph6Byte(b));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(1 + (n * n) / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push((acc + 63) as char);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        out.push((acc + 63) as char);
    }
    out
}

/// Parses one graph per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, GraphError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use proptest::prelude::*;

    #[test]
    fn decodes_small_examples() {
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4, Graph::complete(4));
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(parse_graph6("D??").unwrap(), Graph::empty(5));
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!(k2.edges(), vec![Edge { u: 0, v: 1 }]);
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), k2);
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(parse_graph6("@").unwrap().n(), 1);
    }

    #[test]
    fn encodes_known_strings() {
        assert_eq!(emit_graph6(&Graph::complete(4)), "C~");
        assert_eq!(emit_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(parse_graph6(""), Err(GraphError::Graph6Header));
        assert_eq!(parse_graph6(" A"), Err(GraphError::Graph6Header));
        assert_eq!(
            parse_graph6("D?"),
            Err(GraphError::Graph6Truncated {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(parse_graph6("A\x01"), Err(GraphError::Graph6Byte(1)));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..=8, seed in any::<u64>()) {
            let mut g = Graph::empty(n);
            let mut bits = seed;
            for j in 1..n {
                for i in 0..j {
                    if bits & 1 == 1 {
                        g.add_edge(i, j);
                    }
                    bits = bits.rotate_right(1) ^ (j as u64 * 0x9e37_79b9);
                }
            }
            prop_assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
        }
    }
}
