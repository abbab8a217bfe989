//! graph6 encoding: a size prefix followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(BIAS + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        push_sixes(&mut out, n as u64, 3);
    } else {
        out.extend([126, 126]);
        push_sixes(&mut out, n as u64, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn push_sixes(out: &mut Vec<u8>, value: u64, groups: u32) {
    for k in (0..groups).rev() {
        out.push(BIAS + ((value >> (6 * k)) & 0x3f) as u8);
    }
}

pub fn decode_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(BIAS..=126).contains(b)) {
        return Err(Error::Graph6(format!("illegal byte {} at offset {pos}", bytes[pos])));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => (read_sixes(rest, 6)?, &rest[6..]),
        [126, rest @ ..] => (read_sixes(rest, 3)?, &rest[3..]),
        [b, rest @ ..] => ((b - BIAS) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "malformed length: {n} vertices need {expected} body bytes, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte & (0x20 >> (k % 6)) != 0 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[body.len() - 1] - BIAS;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("trailing padding bits are nonzero".into()));
        }
    }
    Ok(g)
}

fn read_sixes(bytes: &[u8], groups: usize) -> Result<usize> {
    if bytes.len() < groups {
        return Err(Error::Graph6("truncated size field".into()));
    }
    Ok(bytes[..groups].iter().fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize))
}

/// One non-comment line of a corpus file.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// 1-based line number in the source file.
    pub line: usize,
    pub text: String,
    pub graph: Result<Graph>,
}

/// Parses a corpus: one graph6 string per line. Blank lines and lines
/// starting with `#` are skipped.
pub fn read_corpus(contents: &str) -> Vec<CorpusEntry> {
    contents
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                return None;
            }
            Some(CorpusEntry { line: i + 1, text: text.to_string(), graph: decode_graph6(text) })
        })
        .collect()
}
