//! graph6 encoding (the ASCII format used by nauty and friends).
//!
//! Only the undirected, non-sparse variant is supported, for `n < 2^18`.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after the adjacency data")]
    Trailing(usize),
    #[error("non-zero padding bits")]
    Padding,
    #[error("graph too large for graph6 ({0} vertices)")]
    TooLarge(usize),
}

const MAX_N: usize = (1 << 18) - 1;

pub fn encode(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_N {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }

    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidByte { offset, byte });
        }
    }

    let (n, body) = if bytes[0] == 126 {
        if bytes.get(1) == Some(&126) {
            return Err(Graph6Error::TooLarge(usize::MAX));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated { expected: 4, found: bytes.len() });
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() < need {
        return Err(Graph6Error::Truncated { expected: need, found: body.len() });
    }
    if body.len() > need {
        return Err(Graph6Error::Trailing(body.len() - need));
    }

    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j).expect("each pair appears once");
            }
            k += 1;
        }
    }
    if (nbits..need * 6).any(bit) {
        return Err(Graph6Error::Padding);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_codes() {
        assert_eq!(decode("Bg").unwrap(), Graph::path(3));
        assert_eq!(decode("Bw").unwrap(), Graph::cycle(3));
        let one = decode("@").unwrap();
        assert_eq!((one.n(), one.m()), (1, 0));
        assert_eq!(decode("?").unwrap().n(), 0);
    }

    #[test]
    fn encodes_known_strings() {
        assert_eq!(encode(&Graph::path(3)).unwrap(), "Bg");
        assert_eq!(encode(&Graph::cycle(3)).unwrap(), "Bw");
        assert_eq!(encode(&Graph::complete(4)).unwrap(), "C~");
    }

    #[test]
    fn errors() {
        assert!(matches!(decode("B\u{7f}"), Err(Graph6Error::InvalidByte { offset: 1, .. })));
        assert!(matches!(decode("D"), Err(Graph6Error::Truncated { .. })));
        assert!(matches!(decode("Bgg"), Err(Graph6Error::Trailing(1))));
        assert_eq!(decode("Bh"), Err(Graph6Error::Padding));
        assert_eq!(decode(""), Err(Graph6Error::Empty));
    }

    #[test]
    fn large_header() {
        let g = Graph::cycle(100);
        let s = encode(&g).unwrap();
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn header_prefix_and_newline() {
        assert_eq!(decode(">>graph6<<Bw\n").unwrap(), Graph::cycle(3));
    }
}
