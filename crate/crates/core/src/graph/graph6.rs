//! The graph6 text format.
//!
//! A graph on `n` vertices is written as `N(n) R(x)` where `N(n)` encodes the
//! order in 1, 4 or 8 bytes and `R(x)` packs the upper triangle of the
//! adjacency matrix column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`) into
//! 6-bit groups, each offset by 63. The optional `>>graph6<<` header is
//! accepted on input and never written.

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";
const MAX_N: usize = 68_719_476_735;

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    assert!(n <= MAX_N, "graph too large for graph6");
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn decode(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("graph6: invalid byte 0x{bad:02x}")));
    }
    let (n, rest) = decode_order(bytes)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if rest.len() != bytes_needed {
        return Err(Error::Parse(format!(
            "graph6: {n} vertices need {bytes_needed} adjacency bytes, found {}",
            rest.len()
        )));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge_unchecked(i, j);
            }
            k += 1;
        }
    }
    if bits_needed % 6 != 0 {
        let last = rest[rest.len() - 1] - 63;
        let pad = 6 - bits_needed % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Parse("graph6: non-zero padding bits".into()));
        }
    }
    Ok(b.build())
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let value = |digits: &[u8]| {
        digits
            .iter()
            .fold(0usize, |acc, &d| acc << 6 | (d - 63) as usize)
    };
    match bytes {
        [] => Err(Error::Parse("graph6: empty input".into())),
        [126, 126, rest @ ..] if rest.len() >= 6 => Ok((value(&rest[..6]), &rest[6..])),
        [126, rest @ ..] if rest.len() >= 3 && rest[0] != 126 => {
            Ok((value(&rest[..3]), &rest[3..]))
        }
        [126, ..] => Err(Error::Parse("graph6: truncated order field".into())),
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, path};

    #[test]
    fn known_strings() {
        // Edges a-c, a-e, b-d, d-e on five vertices.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
        assert_eq!(encode(&complete(2)), "A_");
        assert_eq!(encode(&path(4)), "Ch");
    }

    #[test]
    fn header_and_newline_accepted() {
        let g = decode(">>graph6<<DQc\n").unwrap();
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn long_order_form() {
        let g = Graph::from_edges(300, [(0, 299), (150, 151)]).unwrap();
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
        let g = path(63);
        let s = encode(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert!(decode("").is_err());
        assert!(decode("D").is_err());
        assert!(decode("DQcc").is_err());
        assert!(decode("A ").is_err());
        // Padding bit set: one adjacency bit, five padding bits.
        assert!(decode("A`").is_err());
    }
}
