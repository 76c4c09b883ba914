//! graph6 encoding: a size prefix followed by the upper triangle of the
//! adjacency matrix, column by column, packed big-endian into 6-bit groups
//! offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_N: usize = 258_047;

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

pub fn encode(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_N {
        return Err(Error::Capacity {
            what: "graph6 vertex count",
            got: n,
            limit: MAX_N,
        });
    }
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.adj0(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push(((acc << (6 - used)) + 63) as char);
    }
    Ok(out)
}

pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(format_err(format!("invalid graph6 byte 0x{bad:02x}")));
    }
    let (n, body) = match bytes {
        [] => return Err(format_err("empty graph6 string")),
        [b'~', b'~', ..] => return Err(format_err("graph6 sizes above 258047 are not supported")),
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(format_err("truncated graph6 size field"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n == 0 {
        return Err(format_err("graph6 string encodes a graph with no vertices"));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(format_err(format!(
            "graph6 body has {} bytes, expected {expected} for n = {n}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i + 1, j + 1)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Decodes every non-blank line of a graph6 file.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| decode(l).map_err(|e| format_err(format!("line {}: {e}", i + 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use proptest::prelude::*;

    #[test]
    fn triangle() {
        let k3 = generate(Family::Complete, 3).unwrap();
        assert_eq!(encode(&k3).unwrap(), "Bw");
        assert_eq!(decode("Bw").unwrap(), k3);
        assert_eq!(decode(">>graph6<<Bw\n").unwrap(), k3);
    }

    #[test]
    fn known_strings() {
        // P4: edges 12, 23, 34 -> bits 1 0 1 0 0 1 -> 41 + 63 = 'h'
        assert_eq!(encode(&generate(Family::Path, 4).unwrap()).unwrap(), "Ch");
        assert_eq!(encode(&Graph::empty(1).unwrap()).unwrap(), "@");
    }

    #[test]
    fn malformed() {
        assert!(matches!(decode("?"), Err(Error::Format(_))));
        assert!(matches!(decode(""), Err(Error::Format(_))));
        assert!(matches!(decode("C"), Err(Error::Format(_))));
        assert!(matches!(decode("Chh"), Err(Error::Format(_))));
        assert!(matches!(decode("C h"), Err(Error::Format(_))));
    }

    #[test]
    fn long_form() {
        let g = generate(Family::Cycle, 70).unwrap();
        let s = encode(&g).unwrap();
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=20, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::empty(n).unwrap();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            prop_assert_eq!(decode(&encode(&g).unwrap()).unwrap(), g);
        }
    }
}
