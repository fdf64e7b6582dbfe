//! Graph serialization: graph6 (read/write, bit-exact), sparse6 (read only),
//! a plain edge-list text format, and DOT export.
//!
//! graph6 layout: a header encoding n, then the upper triangle of the
//! adjacency matrix in column order x(0,1), x(0,2), x(1,2), x(0,3), ...,
//! packed six bits per character with 63 added to land in ASCII 63..126.
//! For n >= 63 the header is '~' followed by three characters carrying n in
//! 18 bits, big-endian.  Padding bits must be zero; the parser rejects
//! anything else so that parse and serialize are exact inverses.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexSet, MAX_VERTICES};
use std::collections::BTreeMap;

/// Serialize to graph6.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        out.push((((n >> 12) & 63) as u8 + 63) as char);
        out.push((((n >> 6) & 63) as u8 + 63) as char);
        out.push(((n & 63) as u8 + 63) as char);
    }
    let mut value = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            value = (value << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((value + 63) as char);
                value = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        value <<= 6 - filled;
        out.push((value + 63) as char);
    }
    out
}

fn sixbits(line: &[u8], pos: usize) -> Result<u8> {
    let b = *line
        .get(pos)
        .ok_or_else(|| Error::Parse("truncated graph6 data".into()))?;
    if !(63..=126).contains(&b) {
        return Err(Error::Parse(format!(
            "invalid graph6 byte {b:#04x} at offset {pos}"
        )));
    }
    Ok(b - 63)
}

/// Read the size header; returns (n, offset of first data byte).
fn parse_header(line: &[u8]) -> Result<(usize, usize)> {
    if line.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    if line[0] == b'~' {
        if line.len() >= 2 && line[1] == b'~' {
            return Err(Error::Parse("graph6 sizes above 2^18 are not supported".into()));
        }
        let n = ((sixbits(line, 1)? as usize) << 12)
            | ((sixbits(line, 2)? as usize) << 6)
            | sixbits(line, 3)? as usize;
        Ok((n, 4))
    } else {
        Ok((sixbits(line, 0)? as usize, 1))
    }
}

/// Parse one graph6 line.  Strict: exact length, zero padding bits.
pub fn from_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\r', '\n']);
    let bytes = line.as_bytes();
    let (n, start) = parse_header(bytes)?;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let nbits = n * (n.saturating_sub(1)) / 2;
    let nchars = nbits.div_ceil(6);
    if bytes.len() != start + nchars {
        return Err(Error::Parse(format!(
            "graph6 line for n={n} must be {} bytes, got {}",
            start + nchars,
            bytes.len()
        )));
    }
    let mut adj = vec![0u64; n];
    let mut pos = 0usize;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if pos % 6 == 0 {
                current = sixbits(bytes, start + pos / 6)?;
            }
            if current & (1 << (5 - pos % 6)) != 0 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            pos += 1;
        }
    }
    if pos % 6 != 0 {
        let last = sixbits(bytes, start + pos / 6)?;
        let pad_mask = (1u8 << (6 - pos % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(Error::Parse("nonzero padding bits in graph6 line".into()));
        }
    }
    Ok(Graph::from_rows(adj))
}

/// Parse one sparse6 line (":" prefix).  Multi-edges collapse; loops are
/// rejected since the graph type is simple.
pub fn from_sparse6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\r', '\n']);
    let bytes = line.as_bytes();
    if bytes.first() != Some(&b':') {
        return Err(Error::Parse("sparse6 line must start with ':'".into()));
    }
    let (n, start) = parse_header(&bytes[1..])?;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let data = &bytes[1 + start..];
    let mut bits = Vec::with_capacity(data.len() * 6);
    for (i, _) in data.iter().enumerate() {
        let v = sixbits(data, i)?;
        for k in (0..6).rev() {
            bits.push((v >> k) & 1);
        }
    }
    let k = if n <= 1 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    };
    let mut adj = vec![0u64; n];
    let mut v = 0usize;
    let mut idx = 0usize;
    while idx + k < bits.len() {
        let b = bits[idx];
        let mut x = 0usize;
        for &bx in &bits[idx + 1..idx + 1 + k] {
            x = (x << 1) | bx as usize;
        }
        idx += k + 1;
        if b == 1 {
            v += 1;
        }
        // Trailing 1-padding shows up as an overflowing group.
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else if x == v {
            return Err(Error::SelfLoop(x));
        } else {
            adj[x] |= bit(v);
            adj[v] |= bit(x);
        }
    }
    Ok(Graph::from_rows(adj))
}

/// Parse either graph6 or sparse6, keyed on the ':' prefix.
pub fn from_g6_line(line: &str) -> Result<Graph> {
    if line.starts_with(':') {
        from_sparse6(line)
    } else {
        from_graph6(line)
    }
}

/// Edge-list text format: first line the vertex count, then one "u v" pair
/// per line.  Blank lines are skipped.
pub fn from_edge_list_text(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge-list input".into()))?;
    let n: usize = first.trim().parse().map_err(|_| Error::ParseAt {
        line: first_no + 1,
        msg: format!("expected vertex count, got {:?}", first.trim()),
    })?;
    let mut edges = Vec::new();
    for (no, l) in lines {
        let mut it = l.split_whitespace();
        let parse_end = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| Error::ParseAt {
                line: no + 1,
                msg: "expected \"u v\"".into(),
            })?
            .parse()
            .map_err(|_| Error::ParseAt {
                line: no + 1,
                msg: format!("bad endpoint in {l:?}"),
            })
        };
        let u = parse_end(it.next())?;
        let v = parse_end(it.next())?;
        if it.next().is_some() {
            return Err(Error::ParseAt {
                line: no + 1,
                msg: format!("trailing tokens in {l:?}"),
            });
        }
        edges.push((u, v));
    }
    Graph::from_edge_list(n, &edges)
}

pub fn to_edge_list_text(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// DOT export.  `highlight` maps vertices to a role label; highlighted
/// vertices are drawn filled so witnesses stand out.
pub fn to_dot(g: &Graph, name: &str, highlight: &BTreeMap<usize, String>) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in g.vertices() {
        match highlight.get(&v) {
            Some(role) => out.push_str(&format!(
                "  {v} [label=\"{v}:{role}\", style=filled, fillcolor=gold];\n"
            )),
            None => out.push_str(&format!("  {v};\n")),
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// All labeled graphs on `n` vertices, in mask order.  Test and oracle
/// helper; n is capped well below the point where this is sensible.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    assert!(n * (n - 1) / 2 <= 28, "too many labeled graphs to list");
    let m = n * (n - 1) / 2;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    (0u32..1 << m)
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edge_list(n, &edges).unwrap()
        })
        .collect()
}

#[allow(dead_code)]
fn _assert_vertexset_is_exported(v: VertexSet) -> Vec<usize> {
    v.to_vec()
}
