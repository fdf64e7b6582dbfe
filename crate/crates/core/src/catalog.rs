//! Memoized per-isomorphism-class facts.
//!
//! Exhaustive scans ask the same questions about the same small graphs
//! thousands of times under different labelings.  The catalog computes
//! each answer once per canonical key, bottom-up: the facts for a graph
//! fold in the facts of its one-vertex-deleted subgraphs, so hereditary
//! predicates (perfection by definition, perfect divisibility) come out
//! of a single recursion.  Construction is sequential; afterwards lookups
//! are read-only and safe to share across worker threads.

use crate::canon::{canonical_key, CanonicalKey};
use crate::divisibility::has_division;
use crate::error::Result;
use crate::graph::Graph;
use crate::perfection::{chromatic_number, clique_number, is_perfect_structural};
use serde::Serialize;
use std::collections::HashMap;

/// Everything the harness wants to know about one isomorphism class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Facts {
    pub n: usize,
    pub omega: usize,
    pub chi: usize,
    /// No odd hole and no odd antihole.
    pub perfect_structural: bool,
    /// Chi equals omega here and in every induced subgraph.
    pub perfect_definitional: bool,
    /// Some partition (A, B) has A perfect and omega(B) < omega.
    pub divides: bool,
    /// Every nonempty induced subgraph divides.
    pub perfectly_divisible: bool,
}

pub struct Catalog {
    map: HashMap<CanonicalKey, Facts>,
}

impl Catalog {
    pub fn new() -> Catalog {
        let mut map = HashMap::new();
        // The zero-vertex row anchors the recursions: it divides nothing
        // (omega cannot drop below zero) yet is perfectly divisible,
        // because the every-subgraph quantifier ranges over nonempty
        // subgraphs only.
        let empty_key =
            canonical_key(&Graph::empty(0).expect("zero is in range")).expect("within guard");
        map.insert(
            empty_key,
            Facts {
                n: 0,
                omega: 0,
                chi: 0,
                perfect_structural: true,
                perfect_definitional: true,
                divides: false,
                perfectly_divisible: true,
            },
        );
        Catalog { map }
    }

    /// Number of classes on record.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&Facts> {
        self.map.get(key)
    }

    /// Facts for this graph, computing and caching any missing classes
    /// (children first).
    pub fn facts(&mut self, g: &Graph) -> Result<Facts> {
        let key = canonical_key(g)?;
        if let Some(f) = self.map.get(&key) {
            return Ok(*f);
        }
        let mut all_children_definitional = true;
        let mut all_children_divisible = true;
        for v in g.vertices() {
            let child = self.facts(&g.delete_vertex(v))?;
            all_children_definitional &= child.perfect_definitional;
            all_children_divisible &= child.perfectly_divisible;
        }
        let facts = derive_facts(g, all_children_definitional, all_children_divisible);
        self.map.insert(key, facts);
        Ok(facts)
    }

    /// Facts without mutation, for parallel lookups after a sequential
    /// warm-up pass.  Falls back to recomputing (uncached) on a miss, so
    /// the answer never depends on what happens to be resident.
    pub fn facts_readonly(&self, g: &Graph) -> Result<Facts> {
        let key = canonical_key(g)?;
        if let Some(f) = self.map.get(&key) {
            return Ok(*f);
        }
        let mut all_children_definitional = true;
        let mut all_children_divisible = true;
        for v in g.vertices() {
            let child = self.facts_readonly(&g.delete_vertex(v))?;
            all_children_definitional &= child.perfect_definitional;
            all_children_divisible &= child.perfectly_divisible;
        }
        Ok(derive_facts(g, all_children_definitional, all_children_divisible))
    }
}

impl Default for Catalog {
    fn default() -> Catalog {
        Catalog::new()
    }
}

fn derive_facts(g: &Graph, all_children_definitional: bool, all_children_divisible: bool) -> Facts {
    debug_assert!(g.n() >= 1);
    let (omega, _) = clique_number(g);
    let (chi, _) = chromatic_number(g);
    let divides = has_division(g);
    Facts {
        n: g.n(),
        omega,
        chi,
        perfect_structural: is_perfect_structural(g),
        perfect_definitional: chi == omega && all_children_definitional,
        divides,
        perfectly_divisible: divides && all_children_divisible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::all_labeled_graphs;

    #[test]
    fn five_cycle_facts() {
        let mut cat = Catalog::new();
        let f = cat.facts(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!(
            f,
            Facts {
                n: 5,
                omega: 2,
                chi: 3,
                perfect_structural: false,
                perfect_definitional: false,
                divides: true,
                perfectly_divisible: true,
            }
        );
    }

    #[test]
    fn complete_graph_facts() {
        let mut cat = Catalog::new();
        let f = cat.facts(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!(f.omega, 4);
        assert_eq!(f.chi, 4);
        assert!(f.perfect_structural && f.perfect_definitional);
        assert!(f.divides && f.perfectly_divisible);
    }

    #[test]
    fn caching_is_by_isomorphism_class() {
        let mut cat = Catalog::new();
        cat.facts(&Graph::cycle(5).unwrap()).unwrap();
        let after_first = cat.len();
        // A relabeled copy adds nothing.
        let relabeled = Graph::from_edge_list(5, &[(2, 4), (4, 1), (1, 3), (3, 0), (0, 2)]).unwrap();
        cat.facts(&relabeled).unwrap();
        assert_eq!(cat.len(), after_first);
        // Classes by order for C5, counting the seeded empty row: one
        // each at orders 0, 1, 4, 5 and two each at orders 2 and 3 (a
        // pair is adjacent or not; any triple is P3 or K2+K1 since the
        // independence number is 2).
        assert_eq!(after_first, 8);
    }

    #[test]
    fn readonly_route_agrees_with_caching_route() {
        let mut warm = Catalog::new();
        let cold = Catalog::new();
        for (i, g) in all_labeled_graphs(5).iter().enumerate() {
            if i % 37 != 0 {
                continue;
            }
            assert_eq!(warm.facts(g).unwrap(), cold.facts_readonly(g).unwrap());
            assert_eq!(warm.facts(g).unwrap(), warm.facts_readonly(g).unwrap());
        }
        assert_eq!(cold.len(), 1);
    }

    #[test]
    fn perfection_routes_agree_on_all_five_vertex_graphs() {
        let mut cat = Catalog::new();
        for g in all_labeled_graphs(5) {
            let f = cat.facts(&g).unwrap();
            assert_eq!(f.perfect_structural, f.perfect_definitional);
        }
    }

    #[test]
    fn perfection_routes_agree_on_sampled_six_vertex_graphs() {
        let mut cat = Catalog::new();
        for (i, g) in all_labeled_graphs(6).iter().enumerate() {
            if i % 127 != 0 {
                continue;
            }
            let f = cat.facts(&g).unwrap();
            assert_eq!(f.perfect_structural, f.perfect_definitional);
        }
    }

    #[test]
    fn single_vertex_row() {
        let mut cat = Catalog::new();
        let f = cat.facts(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!((f.omega, f.chi), (1, 1));
        assert!(f.divides && f.perfectly_divisible);
    }
}
