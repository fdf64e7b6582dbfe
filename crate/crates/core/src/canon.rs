//! Exact canonical labeling for small graphs.
//!
//! Iterative refinement splits the vertices into an ordered partition by
//! repeatedly distinguishing vertices through their per-cell neighbor
//! counts; when cells remain, the search individualizes each member of the
//! first non-singleton cell in turn and recurses, keeping the minimum
//! adjacency encoding over all leaves.  Discovered automorphisms prune
//! sibling branches, which keeps cliques and other highly symmetric graphs
//! from exploding into factorial work.
//!
//! Exactness rather than hashing is the point: equal keys if and only if
//! isomorphic, inside the size envelope.

use crate::codec::to_graph6;
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};

/// Exactness envelope for canonical forms.  The encoding packs the upper
/// triangle into a `u128`, and the search is tuned for desk-scale orders.
pub const MAX_CANON_VERTICES: usize = 12;

/// Identifier of an isomorphism class: the adjacency encoding of the
/// canonically labeled graph.  Ordered and hashable; the display form is
/// the graph6 line of the canonical form, which is the stable byte-string
/// representation used in reports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey {
    n: u8,
    bits: u128,
}

impl CanonicalKey {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Rebuild the canonical representative this key identifies.
    pub fn to_graph(&self) -> Graph {
        graph_from_bits(self.n as usize, self.bits)
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(&self.to_graph())
    }
}

impl std::fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

/// Upper-triangle encoding under the identity labeling, matching the
/// graph6 bit order: x(0,1), x(0,2), x(1,2), x(0,3), ...
fn bits_under(g: &Graph, lab: &[usize]) -> u128 {
    let n = g.n();
    let mut enc = 0u128;
    for j in 1..n {
        for i in 0..j {
            enc = (enc << 1) | g.has_edge(lab[i], lab[j]) as u128;
        }
    }
    enc
}

fn graph_from_bits(n: usize, bits: u128) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut adj = vec![0u64; n];
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if bits & (1u128 << (total - 1 - pos)) != 0 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            pos += 1;
        }
    }
    Graph::from_rows(adj)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut v = v;
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

struct Search<'g> {
    g: &'g Graph,
    n: usize,
    best: Option<(u128, Vec<usize>)>,
    /// Automorphisms discovered as equal-encoding leaves; used only to
    /// prune, so an incomplete list is always safe.
    gens: Vec<Vec<usize>>,
}

type Partition = Vec<Vec<usize>>;

impl<'g> Search<'g> {
    /// Split every cell by the vector of neighbor counts into each cell,
    /// repeating until stable.  Cells keep their relative order and split
    /// blocks are ordered by signature, so the result depends only on the
    /// isomorphism type, never on vertex numbering.
    fn refine(&self, mut partition: Partition) -> Partition {
        loop {
            let masks: Vec<u64> = partition
                .iter()
                .map(|cell| cell.iter().fold(0u64, |m, &v| m | bit(v)))
                .collect();
            let sig = |v: usize| -> Vec<u8> {
                masks
                    .iter()
                    .map(|&m| (self.g.row(v) & m).count_ones() as u8)
                    .collect()
            };
            let mut next: Partition = Vec::with_capacity(partition.len());
            let mut changed = false;
            for cell in &partition {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: std::collections::BTreeMap<Vec<u8>, Vec<usize>> =
                    std::collections::BTreeMap::new();
                for &v in cell {
                    groups.entry(sig(v)).or_default().push(v);
                }
                if groups.len() > 1 {
                    changed = true;
                }
                for (_, vs) in groups {
                    next.push(vs);
                }
            }
            partition = next;
            if !changed {
                return partition;
            }
        }
    }

    fn explore(&mut self, partition: Partition, path: &mut Vec<usize>) {
        if partition.iter().all(|c| c.len() == 1) {
            let lab: Vec<usize> = partition.into_iter().map(|c| c[0]).collect();
            let enc = bits_under(self.g, &lab);
            match &self.best {
                None => self.best = Some((enc, lab)),
                Some((b, blab)) => {
                    if enc < *b {
                        self.best = Some((enc, lab));
                    } else if enc == *b && self.gens.len() < 64 {
                        // Two labelings with the same encoding differ by an
                        // automorphism: gamma maps blab[i] to lab[i].
                        let mut gamma = vec![0usize; self.n];
                        for i in 0..self.n {
                            gamma[blab[i]] = lab[i];
                        }
                        debug_assert!((0..self.n).all(|u| (0..self.n).all(|v| {
                            u == v
                                || self.g.has_edge(u, v)
                                    == self.g.has_edge(gamma[u], gamma[v])
                        })));
                        self.gens.push(gamma);
                    }
                }
            }
            return;
        }
        let target = partition.iter().position(|c| c.len() > 1).unwrap();
        let cell = partition[target].clone();
        let mut tried: Vec<usize> = Vec::with_capacity(cell.len());
        for &v in &cell {
            // Skip v when an automorphism fixing the whole individualization
            // path maps an already-explored sibling onto it: that subtree is
            // a mirror image and contributes the same encodings.
            if !tried.is_empty() {
                let mut uf = UnionFind::new(self.n);
                for gamma in self
                    .gens
                    .iter()
                    .filter(|gamma| path.iter().all(|&p| gamma[p] == p))
                {
                    for u in 0..self.n {
                        uf.union(u, gamma[u]);
                    }
                }
                if tried.iter().any(|&u| uf.find(u) == uf.find(v)) {
                    continue;
                }
            }
            tried.push(v);
            let mut child: Partition = Vec::with_capacity(partition.len() + 1);
            for (ci, c) in partition.iter().enumerate() {
                if ci == target {
                    child.push(vec![v]);
                    child.push(c.iter().copied().filter(|&u| u != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            let refined = self.refine(child);
            path.push(v);
            self.explore(refined, path);
            path.pop();
        }
    }
}

/// Canonically labeled copy of `g`.  Two graphs are isomorphic exactly when
/// their canonical forms are equal as labeled graphs.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let key = canonical_key(g)?;
    Ok(key.to_graph())
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::SizeGuard {
            op: "canonical_key",
            limit: MAX_CANON_VERTICES,
            n,
        });
    }
    if n == 0 {
        return Ok(CanonicalKey { n: 0, bits: 0 });
    }
    let mut search = Search {
        g,
        n,
        best: None,
        gens: Vec::new(),
    };
    let initial = search.refine(vec![(0..n).collect()]);
    search.explore(initial, &mut Vec::new());
    let (bits, _) = search.best.expect("search visits at least one leaf");
    Ok(CanonicalKey { n: n as u8, bits })
}

/// Are the two graphs isomorphic?  Size guard as for [`canonical_key`].
pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() {
        return Ok(false);
    }
    Ok(canonical_key(a)? == canonical_key(b)?)
}
