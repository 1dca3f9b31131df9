//! The graph6 text encoding of simple graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

pub fn decode(text: &str) -> Result<Graph> {
    let body = text.trim_end_matches(['\n', '\r']);
    let body = body.strip_prefix(HEADER).unwrap_or(body);
    let bytes = body.as_bytes();
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Error::Graph6Malformed { offset, byte });
        }
    }

    let (n, start) = decode_size(bytes)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != bytes_needed {
        return Err(Error::Graph6Truncated {
            expected: bytes_needed,
            found: data.len(),
        });
    }

    let mut pairs = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let value = data[bit / 6] - 63;
            if value & (1 << (5 - bit % 6)) != 0 {
                pairs.push((i + 1, j + 1));
            }
            bit += 1;
        }
    }
    Graph::from_edge_list(n, &pairs)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let truncated = |expected| Error::Graph6Truncated {
        expected,
        found: bytes.len(),
    };
    let first = *bytes.first().ok_or_else(|| truncated(1))?;
    if first != 126 {
        return Ok(((first - 63) as usize, 1));
    }
    let (width, start) = if bytes.get(1) == Some(&126) {
        (6, 2)
    } else {
        (3, 1)
    };
    if bytes.len() < start + width {
        return Err(truncated(start + width));
    }
    let n = bytes[start..start + width]
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    Ok((n, start + width))
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        let width = if n <= 258_047 {
            out.push(126);
            3
        } else {
            out.extend([126, 126]);
            6
        };
        for k in (0..width).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i + 1, j + 1) as u8;
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

/// Decodes every non-empty line of a graph6 file.
pub fn decode_all(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            decode(l.trim()).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}
