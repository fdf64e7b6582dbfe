//! Bitset graph representation.
//!
//! A [`Graph`] is a simple undirected graph on at most 64 vertices; each
//! vertex stores its neighborhood as one `u64` word.  Graphs are immutable
//! after construction, so they can be shared freely across worker threads.

use crate::error::{Error, Result};
use serde::{Serialize, Serializer};

/// Hard cap on the number of vertices: one machine word per neighborhood.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the low `n` bits set.
#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertices of some graph, stored as a bitmask.
///
/// The owner's vertex range is not recorded here; operations that combine a
/// set with a graph check the range at that point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct VertexSet {
    bits: u64,
}

impl VertexSet {
    #[inline]
    pub const fn empty() -> Self {
        VertexSet { bits: 0 }
    }

    /// All vertices of a graph on `n` vertices.
    #[inline]
    pub const fn full(n: usize) -> Self {
        VertexSet { bits: low_mask(n) }
    }

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet { bits }
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub const fn single(v: usize) -> Self {
        VertexSet { bits: bit(v) }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        let mut bits = 0;
        for v in vs {
            debug_assert!(v < MAX_VERTICES);
            bits |= bit(v);
        }
        VertexSet { bits }
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        self.bits & bit(v) != 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet {
            bits: self.bits | bit(v),
        }
    }

    #[inline]
    pub const fn without(self, v: usize) -> Self {
        VertexSet {
            bits: self.bits & !bit(v),
        }
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet {
            bits: self.bits | other.bits,
        }
    }

    #[inline]
    pub const fn intersect(self, other: Self) -> Self {
        VertexSet {
            bits: self.bits & other.bits,
        }
    }

    #[inline]
    pub const fn minus(self, other: Self) -> Self {
        VertexSet {
            bits: self.bits & !other.bits,
        }
    }

    #[inline]
    pub const fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub const fn min(self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// Iterate vertices in increasing order.
    #[inline]
    pub fn iter(self) -> BitIter {
        BitIter { bits: self.bits }
    }

    /// Sorted vertex list; this is also the JSON form.
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

pub struct BitIter {
    bits: u64,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            let v = self.bits.trailing_zeros() as usize;
            self.bits &= self.bits - 1;
            Some(v)
        }
    }
}

/// Simple undirected graph on `n <= 64` vertices.
///
/// Invariants, checked at construction: no self-loops, symmetric adjacency,
/// no bits at or above `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Build a graph from an explicit edge list.  Duplicate edges collapse;
    /// self-loops and out-of-range endpoints are errors.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    /// Internal constructor from adjacency rows assumed valid.
    pub(crate) fn from_rows(adj: Vec<u64>) -> Self {
        let n = adj.len();
        debug_assert!(n <= MAX_VERTICES);
        #[cfg(debug_assertions)]
        {
            for (v, &row) in adj.iter().enumerate() {
                debug_assert_eq!(row & bit(v), 0, "self-loop at {v}");
                debug_assert_eq!(row & !low_mask(n), 0, "stray bits in row {v}");
                for u in (VertexSet { bits: row }).iter() {
                    debug_assert_ne!(adj[u] & bit(v), 0, "asymmetric edge {v}-{u}");
                }
            }
        }
        Graph { n, adj }
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parse(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edge_list(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Open neighborhood N(v).
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet { bits: self.adj[v] }
    }

    /// Non-neighborhood M(v): everything other than v and N(v).
    #[inline]
    pub fn non_neighbors(&self, v: usize) -> VertexSet {
        VertexSet {
            bits: low_mask(self.n) & !self.adj[v] & !bit(v),
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in (VertexSet {
                bits: self.adj[u] & !low_mask(u + 1),
            })
            .iter()
            {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        ds.sort_unstable_by(|a, b| b.cmp(a));
        ds
    }

    /// Induced subgraph together with the relabeling map: vertex `i` of the
    /// new graph corresponds to `map[i]` of `self` (map is increasing).
    pub fn induced(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.bits & !low_mask(self.n) != 0 {
            let stray = (VertexSet {
                bits: s.bits & !low_mask(self.n),
            })
            .min()
            .unwrap();
            return Err(Error::VertexOutOfRange {
                vertex: stray,
                n: self.n,
            });
        }
        let map: Vec<usize> = s.iter().collect();
        let mut adj = vec![0u64; map.len()];
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    adj[i] |= bit(j);
                }
            }
        }
        Ok((Graph::from_rows(adj), map))
    }

    /// Complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mask = low_mask(self.n);
        let adj = (0..self.n)
            .map(|v| mask & !self.adj[v] & !bit(v))
            .collect();
        Graph::from_rows(adj)
    }

    /// Graph with the vertices of `s` removed (relabeling map as in
    /// [`Graph::induced`]).
    pub fn delete(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.induced(VertexSet::full(self.n).minus(s))
    }

    /// Graph with the single vertex `v` removed; later vertices slide
    /// down one slot.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        assert!(v < self.n, "vertex {v} out of range for order {}", self.n);
        let (g, _) = self
            .induced(VertexSet::full(self.n).without(v))
            .expect("subset is in range");
        g
    }

    /// Is every vertex of `xs` adjacent to every vertex of `ys`?
    /// The sets must be disjoint; either may be empty.
    pub fn is_complete_to(&self, xs: VertexSet, ys: VertexSet) -> Result<bool> {
        self.check_disjoint(xs, ys)?;
        Ok(xs.iter().all(|x| ys.bits & !self.adj[x] == 0))
    }

    /// Is there no edge between `xs` and `ys`?  Sets must be disjoint.
    pub fn is_anticomplete_to(&self, xs: VertexSet, ys: VertexSet) -> Result<bool> {
        self.check_disjoint(xs, ys)?;
        Ok(xs.iter().all(|x| ys.bits & self.adj[x] == 0))
    }

    fn check_disjoint(&self, xs: VertexSet, ys: VertexSet) -> Result<()> {
        for s in [xs, ys] {
            if s.bits & !low_mask(self.n) != 0 {
                let stray = (VertexSet {
                    bits: s.bits & !low_mask(self.n),
                })
                .min()
                .unwrap();
                return Err(Error::VertexOutOfRange {
                    vertex: stray,
                    n: self.n,
                });
            }
        }
        if let Some(v) = xs.intersect(ys).min() {
            return Err(Error::OverlappingSets(v));
        }
        Ok(())
    }

    /// Apply a relabeling: vertex `perm[i]` of `self` becomes vertex `i`.
    /// `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.has_edge(perm[i], perm[j]) {
                    adj[i] |= bit(j);
                }
            }
        }
        Graph::from_rows(adj)
    }

    /// Is the subgraph induced by `s` connected?  The empty set counts as
    /// connected.
    pub fn is_connected_within(&self, s: VertexSet) -> bool {
        let Some(start) = s.min() else { return true };
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in (VertexSet { bits: frontier }).iter() {
                next |= self.adj[v] & s.bits & !seen;
            }
            seen |= next;
            frontier = next;
        }
        seen == s.bits
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
