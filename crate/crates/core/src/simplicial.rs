//! k-simplicial vertices: vertices whose neighborhood is a union of at
//! most k cliques.  k = 1 is the classical simplicial notion, k = 2
//! bisimplicial, k = 3 trisimplicial.
//!
//! Deciding the property is exactly asking whether the complement of the
//! induced neighborhood is k-colorable; here a direct backtracking over
//! clique parts does the job, assigning vertices in ascending order so the
//! first cover found is the canonical one (least vertex goes to the
//! earliest possible part).

use crate::error::{Error, Result};
use crate::graph::{low_mask, Graph, VertexSet};
use serde::Serialize;

/// Disjoint cliques covering a vertex set.  Parts are listed in order of
/// their least member; fewer than k parts simply means some were unneeded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueCover {
    pub parts: Vec<VertexSet>,
}

impl CliqueCover {
    pub fn covered(&self) -> VertexSet {
        self.parts
            .iter()
            .fold(VertexSet::empty(), |acc, &p| acc.union(p))
    }
}

fn assign(g: &Graph, rest: &[usize], parts: &mut Vec<u64>, k: usize) -> bool {
    let Some((&v, rest)) = rest.split_first() else {
        return true;
    };
    let row = g.row(v);
    for i in 0..parts.len() {
        // v joins a part only if adjacent to all of it, keeping it a clique.
        if parts[i] & !row == 0 {
            parts[i] |= 1 << v;
            if assign(g, rest, parts, k) {
                return true;
            }
            parts[i] &= !(1u64 << v);
        }
    }
    if parts.len() < k {
        parts.push(1 << v);
        if assign(g, rest, parts, k) {
            return true;
        }
        parts.pop();
    }
    false
}

/// Can `s` be partitioned into at most `k` cliques of `g`?  Returns the
/// canonical cover when it exists.  The empty set is covered by zero parts.
pub fn union_of_k_cliques(g: &Graph, s: VertexSet, k: usize) -> Result<Option<CliqueCover>> {
    if s.bits() & !low_mask(g.n()) != 0 {
        let stray = VertexSet::from_bits(s.bits() & !low_mask(g.n()))
            .min()
            .unwrap();
        return Err(Error::VertexOutOfRange {
            vertex: stray,
            n: g.n(),
        });
    }
    let order: Vec<usize> = s.iter().collect();
    let mut parts: Vec<u64> = Vec::with_capacity(k);
    if assign(g, &order, &mut parts, k) {
        Ok(Some(CliqueCover {
            parts: parts.into_iter().map(VertexSet::from_bits).collect(),
        }))
    } else {
        Ok(None)
    }
}

/// Is N(v) a union of at most k cliques?
pub fn is_k_simplicial(g: &Graph, v: usize, k: usize) -> Result<bool> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(union_of_k_cliques(g, g.neighbors(v), k)?.is_some())
}

/// Least-index vertex whose neighborhood splits into at most `max_parts`
/// cliques, with the certifying cover.
pub fn find_simplicial_vertex(g: &Graph, max_parts: usize) -> Option<(usize, CliqueCover)> {
    for v in g.vertices() {
        if let Ok(Some(cover)) = union_of_k_cliques(g, g.neighbors(v), max_parts) {
            return Some((v, cover));
        }
    }
    None
}

/// Least-index trisimplicial vertex, if any.
pub fn find_trisimplicial(g: &Graph) -> Option<(usize, CliqueCover)> {
    find_simplicial_vertex(g, 3)
}

/// Does the cover really certify the claim?  Checked by tests and report
/// re-validation: parts disjoint, each a clique, union exactly `s`, count
/// within `k`.
pub fn cover_is_valid(g: &Graph, s: VertexSet, cover: &CliqueCover, k: usize) -> bool {
    if cover.parts.len() > k {
        return false;
    }
    let mut seen = VertexSet::empty();
    for &p in &cover.parts {
        if !seen.intersect(p).is_empty() {
            return false;
        }
        seen = seen.union(p);
        let vs = p.to_vec();
        for (i, &u) in vs.iter().enumerate() {
            for &w in &vs[i + 1..] {
                if !g.has_edge(u, w) {
                    return false;
                }
            }
        }
    }
    seen == s
}
