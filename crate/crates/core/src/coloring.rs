//! Structural coloring with a triangular palette bound.
//!
//! For fork-free graphs with no odd parachute, a proper coloring using at
//! most omega(omega+1)/2 colors falls out of three facts: graphs with
//! omega at most 3 take at most four colors; a division (A, B) spends
//! omega fresh colors on the perfect side and recurses on B, whose omega
//! is strictly smaller; and failing both, some vertex is trisimplicial,
//! so it can be pulled out, the rest colored, and a free color found among
//! its at most 3(omega-1) neighbors.  The recursion logs every decision,
//! and [`replay`] re-executes a log to reproduce the coloring exactly.

use crate::codec::to_graph6;
use crate::divisibility::find_division;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::patterns::{find_forbidden, PatternId};
use crate::perfection::{chromatic_number, clique_number, clique_number_within, Coloring};
use crate::simplicial::find_trisimplicial;
use serde::Serialize;

/// The palette ceiling omega(omega+1)/2.
pub fn binom_bound(omega: usize) -> usize {
    omega * (omega + 1) / 2
}

/// One decision of the structural recursion, in original vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Step {
    /// The remaining vertices have omega at most 3 and are colored by the
    /// exact solver; this closes every log.
    BaseCase,
    /// A was colored exactly at the current palette offset, then the
    /// recursion moved to B one omega-sized block higher.
    PerfectDivision { a: VertexSet, b: VertexSet },
    /// The vertex was set aside and colored greedily after the rest.
    TrisimplicialElimination { vertex: usize },
}

/// A coloring together with the decision log that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringTrace {
    pub coloring: Coloring,
    pub steps: Vec<Step>,
}

const UNCOLORED: usize = usize::MAX;

/// Color the subgraph on `part` exactly, writing colors shifted up by
/// `base`; returns the palette height used.
fn color_exact_block(g: &Graph, part: VertexSet, base: usize, colors: &mut [usize]) -> Result<usize> {
    let (h, map) = g.induced(part)?;
    let (chi, block) = chromatic_number(&h);
    for (i, &orig) in map.iter().enumerate() {
        debug_assert_eq!(colors[orig], UNCOLORED);
        colors[orig] = base + block.colors[i];
    }
    Ok(chi)
}

/// Least color at or above `base` not used by an already colored neighbor
/// of `v`.  Colors below `base` belong to palette blocks `v` never
/// conflicts with.
fn extend_vertex(g: &Graph, v: usize, base: usize, colors: &mut [usize]) {
    debug_assert_eq!(colors[v], UNCOLORED);
    let mut c = base;
    while g
        .neighbors(v)
        .iter()
        .any(|u| colors[u] != UNCOLORED && colors[u] == c)
    {
        c += 1;
    }
    colors[v] = c;
}

fn counterexample(g: &Graph, active: VertexSet, detail: String) -> Error {
    let (h, _) = g.induced(active).expect("active set is in range");
    Error::Counterexample {
        graph6: to_graph6(&h),
        detail,
    }
}

fn color_rec(
    g: &Graph,
    active: VertexSet,
    base: usize,
    steps: &mut Vec<Step>,
    colors: &mut Vec<usize>,
) -> Result<()> {
    let w_active = clique_number_within(g, active);
    if w_active <= 3 {
        steps.push(Step::BaseCase);
        let used = color_exact_block(g, active, base, colors)?;
        if used > 4 {
            return Err(counterexample(
                g,
                active,
                format!("omega {w_active} subgraph needed {used} > 4 colors"),
            ));
        }
        return Ok(());
    }
    let (h, map) = g.induced(active)?;
    if let Some(cert) = find_division(&h)? {
        let part_a: VertexSet = cert.a.iter().map(|i| map[i]).collect();
        let part_b: VertexSet = cert.b.iter().map(|i| map[i]).collect();
        steps.push(Step::PerfectDivision {
            a: part_a,
            b: part_b,
        });
        let used = color_exact_block(g, part_a, base, colors)?;
        // A is perfect, so the exact solver uses exactly omega(A) colors,
        // which fit inside the omega(active)-sized block reserved here.
        assert_eq!(used, clique_number_within(g, part_a));
        assert!(used <= w_active);
        return color_rec(g, part_b, base + w_active, steps, colors);
    }
    if let Some((vh, _cover)) = find_trisimplicial(&h) {
        let u = map[vh];
        let degree_within = (g.row(u) & active.bits()).count_ones() as usize;
        assert!(degree_within <= 3 * (w_active - 1));
        steps.push(Step::TrisimplicialElimination { vertex: u });
        color_rec(g, active.without(u), base, steps, colors)?;
        extend_vertex(g, u, base, colors);
        return Ok(());
    }
    Err(counterexample(
        g,
        active,
        "no division and no trisimplicial vertex".into(),
    ))
}

/// Run the structural recursion on a fork-free graph with no odd
/// parachute, producing a proper coloring within the triangular bound and
/// the log of decisions behind it.  A graph outside the class is an
/// error, and a class member defeating one of the three branches or the
/// final bound is reported as a counterexample, never papered over.
pub fn color_structurally(g: &Graph) -> Result<ColoringTrace> {
    if let Some(found) = find_forbidden(g, &[PatternId::Fork, PatternId::OddParachute])? {
        return Err(Error::OutsideClass {
            pattern: found.pattern.to_string(),
            witness: found.vertices,
        });
    }
    let mut colors = vec![UNCOLORED; g.n()];
    let mut steps = vec![];
    color_rec(g, VertexSet::full(g.n()), 0, &mut steps, &mut colors)?;
    let palette = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    let coloring = Coloring { palette, colors };
    debug_assert!(coloring.is_valid_for(g));
    let (omega, _) = clique_number(g);
    if palette > binom_bound(omega) {
        return Err(Error::Counterexample {
            graph6: to_graph6(g),
            detail: format!(
                "structural coloring used {palette} colors, above the bound {}",
                binom_bound(omega)
            ),
        });
    }
    Ok(ColoringTrace { coloring, steps })
}

/// Proper-ness of a claimed coloring; the dimension must match.
pub fn verify_coloring(g: &Graph, coloring: &Coloring) -> Result<bool> {
    if coloring.colors.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: coloring.colors.len(),
        });
    }
    Ok(coloring.is_valid_for(g))
}

/// Re-execute a decision log against the graph it came from.  Steps are
/// applied in order; eliminations unwind in reverse once the closing base
/// case has colored whatever remained.  Structurally inconsistent logs
/// (a step touching vertices that are not active, steps after the close,
/// or no close at all) are rejected.
pub fn replay(g: &Graph, steps: &[Step]) -> Result<Coloring> {
    let mut colors = vec![UNCOLORED; g.n()];
    let mut active = VertexSet::full(g.n());
    let mut base = 0usize;
    let mut eliminated: Vec<(usize, usize)> = vec![];
    let mut closed = false;
    for step in steps {
        if closed {
            return Err(Error::BadTrace("steps after the closing base case".into()));
        }
        match step {
            Step::BaseCase => {
                color_exact_block(g, active, base, &mut colors)?;
                closed = true;
            }
            Step::PerfectDivision { a, b } => {
                if a.union(*b) != active || !a.intersect(*b).is_empty() {
                    return Err(Error::BadTrace(
                        "division parts do not partition the active set".into(),
                    ));
                }
                let w_active = clique_number_within(g, active);
                color_exact_block(g, *a, base, &mut colors)?;
                active = *b;
                base += w_active;
            }
            Step::TrisimplicialElimination { vertex } => {
                if !active.contains(*vertex) {
                    return Err(Error::BadTrace(format!(
                        "eliminated vertex {vertex} is not active"
                    )));
                }
                eliminated.push((*vertex, base));
                active = active.without(*vertex);
            }
        }
    }
    if !closed {
        return Err(Error::BadTrace("log never reaches a base case".into()));
    }
    for &(v, vbase) in eliminated.iter().rev() {
        extend_vertex(g, v, vbase, &mut colors);
    }
    let palette = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    Ok(Coloring { palette, colors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_arithmetic() {
        assert_eq!(binom_bound(0), 0);
        assert_eq!(binom_bound(2), 3);
        assert_eq!(binom_bound(3), 6);
        assert_eq!(binom_bound(4), 10);
    }

    #[test]
    fn five_cycle_hits_the_bound() {
        let g = Graph::cycle(5).unwrap();
        let trace = color_structurally(&g).unwrap();
        assert_eq!(trace.coloring.palette, 3);
        assert!(verify_coloring(&g, &trace.coloring).unwrap());
        assert_eq!(trace.steps, vec![Step::BaseCase]);
    }

    #[test]
    fn five_wheel_stays_under_the_bound() {
        let (g, _) = PatternId::Wheel(5).build().unwrap();
        let trace = color_structurally(&g).unwrap();
        assert_eq!(trace.coloring.palette, 4);
        assert!(trace.coloring.palette <= binom_bound(3));
        assert!(verify_coloring(&g, &trace.coloring).unwrap());
    }

    #[test]
    fn perfect_graph_takes_the_division_branch() {
        let g = Graph::complete(5).unwrap();
        let trace = color_structurally(&g).unwrap();
        assert_eq!(trace.coloring.palette, 5);
        assert_eq!(
            trace.steps,
            vec![
                Step::PerfectDivision {
                    a: VertexSet::full(5),
                    b: VertexSet::empty(),
                },
                Step::BaseCase,
            ]
        );
    }

    #[test]
    fn fork_input_is_rejected() {
        let (g, _) = PatternId::Fork.build().unwrap();
        assert!(matches!(
            color_structurally(&g),
            Err(Error::OutsideClass { .. })
        ));
    }

    #[test]
    fn replay_reproduces_the_coloring() {
        use crate::patterns::PatternId;
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::complete(6).unwrap(),
            PatternId::Wheel(6).build().unwrap().0,
            Graph::cycle(7).unwrap().complement(),
        ] {
            let trace = color_structurally(&g).unwrap();
            assert_eq!(replay(&g, &trace.steps).unwrap(), trace.coloring);
        }
    }

    #[test]
    fn replay_executes_elimination_steps() {
        // A hand-written log for K5 that the recursion itself would not
        // produce: pull a vertex out first, divide the K4, and extend.
        let g = Graph::complete(5).unwrap();
        let steps = vec![
            Step::TrisimplicialElimination { vertex: 4 },
            Step::PerfectDivision {
                a: VertexSet::from_vertices([0, 1, 2, 3]),
                b: VertexSet::empty(),
            },
            Step::BaseCase,
        ];
        let coloring = replay(&g, &steps).unwrap();
        assert_eq!(coloring.palette, 5);
        assert!(verify_coloring(&g, &coloring).unwrap());
        assert_eq!(coloring.colors[4], 4);
    }

    #[test]
    fn replay_rejects_inconsistent_logs() {
        let g = Graph::complete(4).unwrap();
        assert!(matches!(replay(&g, &[]), Err(Error::BadTrace(_))));
        assert!(matches!(
            replay(&g, &[Step::BaseCase, Step::BaseCase]),
            Err(Error::BadTrace(_))
        ));
        let bad_split = Step::PerfectDivision {
            a: VertexSet::from_vertices([0, 1]),
            b: VertexSet::from_vertices([1, 2, 3]),
        };
        assert!(matches!(
            replay(&g, &[bad_split, Step::BaseCase]),
            Err(Error::BadTrace(_))
        ));
        assert!(matches!(
            replay(&g, &[Step::TrisimplicialElimination { vertex: 9 }]),
            Err(Error::BadTrace(_))
        ));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let g = Graph::complete(3).unwrap();
        let short = Coloring {
            palette: 1,
            colors: vec![0, 0],
        };
        assert!(matches!(
            verify_coloring(&g, &short),
            Err(Error::DimensionMismatch { .. })
        ));
        let improper = Coloring {
            palette: 2,
            colors: vec![0, 0, 1],
        };
        assert!(!verify_coloring(&g, &improper).unwrap());
    }

    #[test]
    fn traces_serialize_with_tagged_steps() {
        let g = Graph::cycle(5).unwrap();
        let trace = color_structurally(&g).unwrap();
        let json = serde_json::to_string(&trace).unwrap();
        assert!(json.contains(r#""kind":"base-case""#));
        let k2 = Graph::complete(2).unwrap();
        let div = color_structurally(&k2).unwrap();
        assert_eq!(div.steps, vec![Step::BaseCase]);
        let json = serde_json::to_string(&Step::PerfectDivision {
            a: VertexSet::from_vertices([0]),
            b: VertexSet::empty(),
        })
        .unwrap();
        assert_eq!(json, r#"{"kind":"perfect-division","a":[0],"b":[]}"#);
    }
}
