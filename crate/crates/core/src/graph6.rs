//! graph6 encoding: size header followed by the column-major upper triangle
//! packed six bits per byte, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &[u8] = b">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.has_edge(u, v));
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
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn sextet(b: u8) -> Result<u8> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(Error::Graph6(format!("byte {b:#04x} outside the printable range 63..=126")))
    }
}

fn read_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let first = *bytes.first().ok_or_else(|| Error::Graph6("empty input".into()))?;
    if first != 126 {
        return Ok((sextet(first)? as usize, 1));
    }
    let (len, start) = if bytes.get(1) == Some(&126) { (6, 2) } else { (3, 1) };
    let digits = bytes.get(start..start + len).ok_or_else(|| Error::Graph6("truncated size header".into()))?;
    let mut n = 0usize;
    for &b in digits {
        n = n << 6 | sextet(b)? as usize;
    }
    let minimum = if len == 3 { 63 } else { 258_048 };
    if n < minimum {
        return Err(Error::Graph6(format!("non-minimal size header for n = {n}")));
    }
    Ok((n, start + len))
}

/// Decodes one graph. An optional `>>graph6<<` header is accepted; anything
/// else beyond the body (including a newline) is an error.
pub fn from_graph6(input: &[u8]) -> Result<Graph> {
    let bytes = input.strip_prefix(HEADER).unwrap_or(input);
    let (n, offset) = read_size(bytes)?;
    let total_bits = n * n.saturating_sub(1) / 2;
    let body_len = total_bits.div_ceil(6);
    let body = &bytes[offset..];
    if body.len() < body_len {
        return Err(Error::Graph6(format!("truncated body: expected {body_len} bytes, found {}", body.len())));
    }
    if body.len() > body_len {
        return Err(Error::Graph6(format!("{} trailing bytes after body", body.len() - body_len)));
    }
    let mut g = Graph::empty(n);
    let (mut u, mut v) = (0usize, 1usize);
    for (i, &b) in body.iter().enumerate() {
        let six = sextet(b)?;
        for bit in (0..6).rev() {
            let t = i * 6 + (5 - bit);
            let set = six >> bit & 1 == 1;
            if t >= total_bits {
                if set {
                    return Err(Error::Graph6("nonzero padding bits".into()));
                }
                continue;
            }
            if set {
                g.set(u, v);
            }
            u += 1;
            if u == v {
                u = 0;
                v += 1;
            }
        }
    }
    Ok(g)
}
