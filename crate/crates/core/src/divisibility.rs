//! Division certificates and perfect divisibility.
//!
//! A division of a graph is a partition (A, B) of its vertices with the
//! subgraph on A perfect and the clique number of B strictly below that of
//! the whole graph.  A graph is perfectly divisible when every nonempty
//! induced subgraph admits a division.  Single-graph queries run on subset
//! tables; the every-subgraph predicate is memoized per isomorphism class
//! through the shared catalog.

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::graph::{bit, low_mask, Graph, VertexSet};
use crate::perfection::{clique_number, clique_number_within, is_perfect_structural};
use serde::Serialize;

/// Order bound for the subset tables behind [`find_division`].
pub const MAX_DIVISION_VERTICES: usize = 20;

/// Order bound for the every-subgraph predicates.
pub const MAX_DIVISIBILITY_VERTICES: usize = 10;

/// Order bound for the exhaustive failing-subgraph scan, slightly wider
/// than the divisibility guard so the scan can exhibit the smallest known
/// indivisible graph, which has eleven vertices.
pub const MAX_SUBSET_SCAN_VERTICES: usize = 12;

/// A partition witnessing one division step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionCertificate {
    #[serde(rename = "A")]
    pub a: VertexSet,
    #[serde(rename = "B")]
    pub b: VertexSet,
}

/// Per-subset facts about one graph, indexed by vertex bitmask.
struct Tables {
    /// Clique number of the subgraph induced by each subset.
    omega: Vec<u8>,
    /// Whether each subset contains an odd hole or odd antihole.
    imperfect: Vec<bool>,
}

/// Does `s` induce a chordless odd cycle of length at least five, reading
/// adjacency through `row`?  Two-regular plus connected forces a single
/// cycle, so chordlessness comes for free.
fn induces_odd_cycle(row: impl Fn(usize) -> u64, s: u64) -> bool {
    let k = s.count_ones() as usize;
    if k < 5 || k % 2 == 0 {
        return false;
    }
    let mut t = s;
    while t != 0 {
        let v = t.trailing_zeros() as usize;
        t &= t - 1;
        if (row(v) & s).count_ones() != 2 {
            return false;
        }
    }
    let start = s.trailing_zeros() as usize;
    let mut seen = bit(start);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= row(v) & s;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == s
}

impl Tables {
    fn build(g: &Graph) -> Tables {
        let n = g.n();
        let size = 1usize << n;
        let mut omega = vec![0u8; size];
        for s in 1..size {
            let v = s.trailing_zeros() as usize;
            let within = (s as u64 & g.row(v)) as usize;
            omega[s] = omega[s & (s - 1)].max(1 + omega[within]);
        }
        // A subset is imperfect exactly when it contains a minimal bad
        // set: the vertex set of an odd hole or odd antihole.  Checking
        // one-vertex-smaller subsets first keeps the cycle test off the
        // hot path.
        let mut imperfect = vec![false; size];
        for s in 1..size {
            let mut inherited = false;
            let mut t = s;
            while t != 0 {
                let v = t.trailing_zeros() as usize;
                t &= t - 1;
                if imperfect[s & !(1 << v)] {
                    inherited = true;
                    break;
                }
            }
            imperfect[s] = inherited
                || induces_odd_cycle(|v| g.row(v), s as u64)
                || induces_odd_cycle(|v| !g.row(v) & !bit(v), s as u64);
        }
        Tables { omega, imperfect }
    }

    /// Does the subgraph induced by `s` admit a division?
    fn divides(&self, s: u64) -> bool {
        let w = self.omega[s as usize];
        if w == 0 {
            return false;
        }
        let mut a = s;
        loop {
            if a != 0
                && !self.imperfect[a as usize]
                && self.omega[(s & !a) as usize] < w
            {
                return true;
            }
            if a == 0 {
                return false;
            }
            a = (a - 1) & s;
        }
    }
}

/// Visit the size-`k` subsets of `0..n` as bitmasks, in lexicographic
/// order of their sorted vertex lists; stop when `visit` returns true.
fn scan_combinations(n: usize, k: usize, mut visit: impl FnMut(u64) -> bool) -> bool {
    debug_assert!(k >= 1 && k <= n);
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        let mask = c.iter().fold(0u64, |m, &v| m | bit(v));
        if visit(mask) {
            return true;
        }
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// First division in the search order: candidate A by decreasing size,
/// lexicographic within a size, so a perfect graph yields (V, empty)
/// immediately.  None when no division exists.
pub fn find_division(g: &Graph) -> Result<Option<DivisionCertificate>> {
    if g.n() > MAX_DIVISION_VERTICES {
        return Err(Error::SizeGuard {
            op: "find_division",
            limit: MAX_DIVISION_VERTICES,
            n: g.n(),
        });
    }
    if g.n() == 0 {
        return Ok(None);
    }
    let tables = Tables::build(g);
    let full = low_mask(g.n());
    let w = tables.omega[full as usize];
    let mut found = None;
    for k in (1..=g.n()).rev() {
        scan_combinations(g.n(), k, |a| {
            if !tables.imperfect[a as usize] && tables.omega[(full & !a) as usize] < w {
                found = Some(DivisionCertificate {
                    a: VertexSet::from_bits(a),
                    b: VertexSet::from_bits(full & !a),
                });
                true
            } else {
                false
            }
        });
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}

/// Partition plus perfection plus strict clique drop, re-validated from
/// scratch against the graph.
pub fn division_is_valid(g: &Graph, cert: &DivisionCertificate) -> bool {
    if cert.a.union(cert.b) != VertexSet::full(g.n()) || !cert.a.intersect(cert.b).is_empty() {
        return false;
    }
    let on_a = match g.induced(cert.a) {
        Ok((h, _)) => h,
        Err(_) => return false,
    };
    is_perfect_structural(&on_a) && clique_number_within(g, cert.b) < clique_number(g).0
}

/// Existence of a division, for catalog construction.
pub(crate) fn has_division(g: &Graph) -> bool {
    if g.n() == 0 {
        return false;
    }
    Tables::build(g).divides(low_mask(g.n()))
}

/// Does every nonempty induced subgraph admit a division?  Memoized per
/// isomorphism class via the catalog, so repeated queries across a scan
/// share work.
pub fn is_perfectly_divisible(g: &Graph, catalog: &mut Catalog) -> Result<bool> {
    if g.n() > MAX_DIVISIBILITY_VERTICES {
        return Err(Error::SizeGuard {
            op: "is_perfectly_divisible",
            limit: MAX_DIVISIBILITY_VERTICES,
            n: g.n(),
        });
    }
    Ok(catalog.facts(g)?.perfectly_divisible)
}

/// Vertex set of an induced subgraph with no division, scanning subsets
/// smallest first and lexicographically within a size, so the returned
/// subgraph never divides and every strictly smaller subgraph does.
/// None exactly when the graph is perfectly divisible.
pub fn find_nondivisible_subgraph(g: &Graph) -> Result<Option<VertexSet>> {
    if g.n() > MAX_SUBSET_SCAN_VERTICES {
        return Err(Error::SizeGuard {
            op: "find_nondivisible_subgraph",
            limit: MAX_SUBSET_SCAN_VERTICES,
            n: g.n(),
        });
    }
    let tables = Tables::build(g);
    let mut found = None;
    for k in 1..=g.n() {
        scan_combinations(g.n(), k, |s| {
            if !tables.divides(s) {
                found = Some(VertexSet::from_bits(s));
                true
            } else {
                false
            }
        });
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::all_labeled_graphs;

    /// Mycielski construction over the five-cycle: triangle-free yet
    /// four-chromatic, hence no partition into a perfect part and an
    /// edgeless part exists.
    fn groetzsch() -> Graph {
        let mut edges = vec![];
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, (i + 1) % 5));
            edges.push((5 + i, (i + 4) % 5));
            edges.push((10, 5 + i));
        }
        Graph::from_edge_list(11, &edges).unwrap()
    }

    fn oracle_has_division(g: &Graph) -> bool {
        let full = low_mask(g.n());
        let w = clique_number(g).0;
        for a in 0..=full {
            if a & !full != 0 {
                continue;
            }
            let (on_a, _) = g.induced(VertexSet::from_bits(a)).unwrap();
            if is_perfect_structural(&on_a)
                && clique_number_within(g, VertexSet::from_bits(full & !a)) < w
            {
                return true;
            }
        }
        false
    }

    #[test]
    fn perfect_graphs_divide_as_everything_and_nothing() {
        for g in [
            Graph::path(4).unwrap(),
            Graph::complete(5).unwrap(),
            Graph::cycle(6).unwrap(),
        ] {
            let cert = find_division(&g).unwrap().unwrap();
            assert_eq!(cert.a, VertexSet::full(g.n()));
            assert!(cert.b.is_empty());
            assert!(division_is_valid(&g, &cert));
        }
    }

    #[test]
    fn five_cycle_division_is_path_plus_vertex() {
        let g = Graph::cycle(5).unwrap();
        let cert = find_division(&g).unwrap().unwrap();
        assert_eq!(cert.a.to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(cert.b.to_vec(), vec![4]);
        assert!(division_is_valid(&g, &cert));
    }

    #[test]
    fn empty_graph_has_no_division() {
        assert!(find_division(&Graph::empty(0).unwrap()).unwrap().is_none());
    }

    #[test]
    fn division_search_agrees_with_partition_oracle() {
        for (i, g) in all_labeled_graphs(5).iter().enumerate() {
            if i % 7 != 0 {
                continue;
            }
            let found = find_division(g).unwrap();
            assert_eq!(found.is_some(), oracle_has_division(g));
            if let Some(cert) = found {
                assert!(division_is_valid(g, &cert));
            }
        }
    }

    #[test]
    fn groetzsch_graph_is_indivisible_and_minimally_so() {
        let g = groetzsch();
        assert!(find_division(&g).unwrap().is_none());
        let failing = find_nondivisible_subgraph(&g).unwrap().unwrap();
        // Every proper induced subgraph is triangle-free and 3-colorable,
        // so the scan only trips on the full vertex set.
        assert_eq!(failing, VertexSet::full(11));
        let (h, _) = g.induced(failing).unwrap();
        assert!(find_division(&h).unwrap().is_none());
    }

    #[test]
    fn known_perfectly_divisible_graphs() {
        let mut cat = Catalog::new();
        assert!(is_perfectly_divisible(&Graph::cycle(5).unwrap(), &mut cat).unwrap());
        assert!(is_perfectly_divisible(&Graph::complete(6).unwrap(), &mut cat).unwrap());
        assert!(is_perfectly_divisible(&Graph::cycle(7).unwrap(), &mut cat).unwrap());
        assert!(is_perfectly_divisible(&Graph::empty(0).unwrap(), &mut cat).unwrap());
        assert!(
            find_nondivisible_subgraph(&Graph::cycle(7).unwrap())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn size_guards_fire() {
        let mut cat = Catalog::new();
        let big = Graph::empty(11).unwrap();
        assert!(matches!(
            is_perfectly_divisible(&big, &mut cat),
            Err(Error::SizeGuard { .. })
        ));
        assert!(matches!(
            find_nondivisible_subgraph(&Graph::empty(13).unwrap()),
            Err(Error::SizeGuard { .. })
        ));
        assert!(matches!(
            find_division(&Graph::empty(21).unwrap()),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn divisibility_is_hereditary_on_samples() {
        let mut cat = Catalog::new();
        for (i, g) in all_labeled_graphs(6).iter().enumerate() {
            if i % 1021 != 0 {
                continue;
            }
            if is_perfectly_divisible(g, &mut cat).unwrap() {
                for v in g.vertices() {
                    assert!(is_perfectly_divisible(&g.delete_vertex(v), &mut cat).unwrap());
                }
            }
        }
    }

    #[test]
    fn catalog_route_matches_direct_subset_scan() {
        let mut cat = Catalog::new();
        for (i, g) in all_labeled_graphs(6).iter().enumerate() {
            if i % 509 != 0 {
                continue;
            }
            let direct = find_nondivisible_subgraph(g).unwrap().is_none();
            assert_eq!(is_perfectly_divisible(g, &mut cat).unwrap(), direct);
        }
    }

    #[test]
    fn certificates_serialize_as_two_sorted_lists() {
        let cert = find_division(&Graph::cycle(5).unwrap()).unwrap().unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(json, r#"{"A":[0,1,2,3],"B":[4]}"#);
    }
}
