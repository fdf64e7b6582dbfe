//! Exhaustive enumeration of small graphs and theorem verification.
//!
//! Graphs are enumerated one representative per isomorphism class by
//! extending each (n-1)-vertex representative with a new vertex in every
//! possible way and deduplicating on canonical keys.  Hereditary classes
//! get their own pruned enumeration: a class member minus any vertex is
//! again a member, so extending members only is exhaustive and far
//! cheaper than filtering the full tier.
//!
//! Verification runs in two phases per call.  A sequential pass warms the
//! shared fact catalog over the class members; then every graph in the
//! stream is judged independently, in parallel when the `parallel`
//! feature is on, against read-only lookups.  Results are folded in input
//! order, so a report never depends on the worker count.  Reports carry
//! per-order hypothesis counts because a universally quantified check
//! with an empty hypothesis proves nothing; vacuity is printed, never
//! hidden.

use crate::canon::{canonical_key, CanonicalKey};
use crate::catalog::Catalog;
use crate::codec::{from_g6_line, to_graph6};
use crate::coloring::{binom_bound, color_structurally, verify_coloring};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::patterns::{is_free, PatternId};
use crate::simplicial::find_simplicial_vertex;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

/// Enumeration stops here; the next tier would hold twelve million
/// classes.
pub const MAX_ENUMERATION_VERTICES: usize = 10;

/// The hereditary classes the verification commands know by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    ForkFree,
    ForkOddParachuteFree,
    ForkOddBalloonFree,
    ClawFree,
    ForkGemFree,
    ThreeP1Free,
    ForkDartFree,
}

impl GraphClass {
    pub const ALL: [GraphClass; 7] = [
        GraphClass::ForkFree,
        GraphClass::ForkOddParachuteFree,
        GraphClass::ForkOddBalloonFree,
        GraphClass::ClawFree,
        GraphClass::ForkGemFree,
        GraphClass::ThreeP1Free,
        GraphClass::ForkDartFree,
    ];

    /// The patterns no member may contain.
    pub fn forbidden(self) -> &'static [PatternId] {
        match self {
            GraphClass::ForkFree => &[PatternId::Fork],
            GraphClass::ForkOddParachuteFree => &[PatternId::Fork, PatternId::OddParachute],
            GraphClass::ForkOddBalloonFree => &[PatternId::Fork, PatternId::OddBalloon],
            GraphClass::ClawFree => &[PatternId::Claw],
            GraphClass::ForkGemFree => &[PatternId::Fork, PatternId::Gem],
            GraphClass::ThreeP1Free => &[PatternId::ThreeP1],
            GraphClass::ForkDartFree => &[PatternId::Fork, PatternId::Dart],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::ForkFree => "fork-free",
            GraphClass::ForkOddParachuteFree => "fork-odd-parachute-free",
            GraphClass::ForkOddBalloonFree => "fork-odd-balloon-free",
            GraphClass::ClawFree => "claw-free",
            GraphClass::ForkGemFree => "fork-gem-free",
            GraphClass::ThreeP1Free => "3p1-free",
            GraphClass::ForkDartFree => "fork-dart-free",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphClass> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = GraphClass::ALL.iter().map(|c| c.name()).collect();
                Error::Parse(format!(
                    "unknown class {s:?}; known classes: {}",
                    known.join(", ")
                ))
            })
    }
}

/// One enumeration tier: every representative has the same order.
#[derive(Clone, Debug)]
pub struct Tier {
    pub n: usize,
    pub graphs: Vec<Graph>,
}

fn attach_vertex(parent: &Graph, mask: u64) -> Graph {
    let k = parent.n();
    let mut rows: Vec<u64> = (0..k).map(|v| parent.row(v)).collect();
    rows.push(mask);
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        rows[v] |= bit(k);
    }
    Graph::from_rows(rows)
}

/// All canonical representatives one vertex larger than `parents`,
/// restricted by `keep` and sorted by canonical key.
fn extend_tier(parents: &[Graph], keep: &dyn Fn(&Graph) -> Result<bool>) -> Result<Vec<Graph>> {
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let mut kept: Vec<(CanonicalKey, Graph)> = Vec::new();
    for parent in parents {
        let k = parent.n();
        for mask in 0..(1u64 << k) {
            let child = attach_vertex(parent, mask);
            let key = canonical_key(&child)?;
            if seen.insert(key) {
                let representative = key.to_graph();
                if keep(&representative)? {
                    kept.push((key, representative));
                }
            }
        }
    }
    kept.sort_by_key(|&(key, _)| key);
    Ok(kept.into_iter().map(|(_, g)| g).collect())
}

fn check_enumeration_guard(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::SizeGuard {
            op: "enumerate",
            limit: MAX_ENUMERATION_VERTICES,
            n,
        });
    }
    Ok(())
}

fn tiers_up_to(max_n: usize, keep: &dyn Fn(&Graph) -> Result<bool>) -> Result<Vec<Tier>> {
    check_enumeration_guard(max_n)?;
    let mut tiers = Vec::new();
    let mut current = vec![Graph::empty(1).expect("one vertex is in range")];
    for n in 1..=max_n {
        if n > 1 {
            current = extend_tier(&current, keep)?;
        }
        tiers.push(Tier {
            n,
            graphs: current.clone(),
        });
    }
    Ok(tiers)
}

/// Tiers 1..=max_n of all graphs, one per isomorphism class.
pub fn enumerate_up_to(max_n: usize) -> Result<Vec<Tier>> {
    tiers_up_to(max_n, &|_| Ok(true))
}

/// One representative per isomorphism class of order `n`.
pub fn enumerate(n: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_up_to(n)?.pop().map_or_else(Vec::new, |t| t.graphs))
}

/// Class members only, grown from class members: sound because every
/// class here is closed under vertex deletion.
pub fn enumerate_class_up_to(class: GraphClass, max_n: usize) -> Result<Vec<Tier>> {
    let forbidden = class.forbidden();
    tiers_up_to(max_n, &|g| is_free(g, forbidden))
}

/// Flatten tiers into one stream, smallest order first.
pub fn all_graphs(tiers: &[Tier]) -> Vec<Graph> {
    tiers.iter().flat_map(|t| t.graphs.iter().cloned()).collect()
}

/// Parse one graph per line of graph6 (or sparse6) text.  Blank lines and
/// `>>header<<` lines from common generators are skipped; anything else
/// that fails to parse is an error naming its one-based line.
pub fn ingest_graph6_text(text: &str) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with(">>") {
            continue;
        }
        match from_g6_line(line) {
            Ok(g) => graphs.push(g),
            Err(e) => {
                return Err(Error::ParseAt {
                    line: i + 1,
                    msg: e.to_string(),
                })
            }
        }
    }
    Ok(graphs)
}

/// [`ingest_graph6_text`] over a file on disk.
pub fn ingest_graph6(path: impl AsRef<Path>) -> Result<Vec<Graph>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("reading {}: {e}", path.display())))?;
    ingest_graph6_text(&text)
}

/// Knobs for a verification run.  The two non-default settings exist so
/// the test suite can prove the harness detects violations: narrowing
/// `simplicial_parts` cripples the trisimplicial search, and
/// `assume_nonperfectly_divisible` forces the divisibility hypothesis on
/// every scanned graph.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// 0 uses the default thread pool; 1 forces a sequential scan.
    pub workers: usize,
    /// How many cliques a neighborhood may be split into; 3 is the
    /// theorem's value.
    pub simplicial_parts: usize,
    /// Treat every graph as nonperfectly divisible instead of asking the
    /// catalog.
    pub assume_nonperfectly_divisible: bool,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            workers: 0,
            simplicial_parts: 3,
            assume_nonperfectly_divisible: false,
        }
    }
}

/// Apply `f` to every item, in parallel for worker counts other than 1
/// when the `parallel` feature is enabled.  Output order always matches
/// input order.
#[cfg(feature = "parallel")]
pub fn scan_map<T, U, F>(items: &[T], workers: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    use rayon::prelude::*;
    match workers {
        1 => items.iter().map(f).collect(),
        0 => items.par_iter().map(f).collect(),
        k => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
            Err(_) => items.iter().map(f).collect(),
        },
    }
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn scan_map<T, U, F>(items: &[T], _workers: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    items.iter().map(f).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TierCounts {
    pub n: usize,
    pub scanned: usize,
    pub class_members: usize,
    pub hypothesis_members: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub detail: String,
}

/// Outcome of one verification run.  `violations` empty means PASS; the
/// per-order vacuity flags record where the hypothesis never fired.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub n_range: [usize; 2],
    pub counts: Vec<TierCounts>,
    pub vacuous_per_n: Vec<(usize, bool)>,
    pub violations: Vec<Violation>,
    pub seconds: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-graph verdict produced inside a scan.
struct Outcome {
    class_member: bool,
    hypothesis: bool,
    violation: Option<String>,
}

impl Outcome {
    fn outside() -> Outcome {
        Outcome {
            class_member: false,
            hypothesis: false,
            violation: None,
        }
    }

    fn member(hypothesis: bool, violation: Option<String>) -> Outcome {
        Outcome {
            class_member: true,
            hypothesis,
            violation,
        }
    }
}

fn run_scan(
    theorem: &str,
    graphs: &[Graph],
    opts: &VerifyOptions,
    class: &[PatternId],
    warm_catalog: bool,
    eval: impl Fn(&Graph, &Catalog) -> Result<Outcome> + Send + Sync,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut catalog = Catalog::new();
    if warm_catalog {
        for g in graphs {
            if is_free(g, class)? {
                catalog.facts(g)?;
            }
        }
    }
    let outcomes = scan_map(graphs, opts.workers, |g| eval(g, &catalog));
    let mut counts: BTreeMap<usize, TierCounts> = BTreeMap::new();
    let mut violations = Vec::new();
    for (g, outcome) in graphs.iter().zip(outcomes) {
        let outcome = outcome?;
        let row = counts.entry(g.n()).or_insert(TierCounts {
            n: g.n(),
            scanned: 0,
            class_members: 0,
            hypothesis_members: 0,
        });
        row.scanned += 1;
        row.class_members += usize::from(outcome.class_member);
        row.hypothesis_members += usize::from(outcome.hypothesis);
        if let Some(detail) = outcome.violation {
            violations.push(Violation {
                graph6: to_graph6(g),
                detail,
            });
        }
    }
    let n_range = match (counts.keys().next(), counts.keys().next_back()) {
        (Some(&lo), Some(&hi)) => [lo, hi],
        _ => [0, 0],
    };
    Ok(VerificationReport {
        theorem: theorem.into(),
        n_range,
        counts: counts.values().cloned().collect(),
        vacuous_per_n: counts
            .values()
            .map(|c| (c.n, c.hypothesis_members == 0))
            .collect(),
        violations,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn nonperfectly_divisible(g: &Graph, catalog: &Catalog, opts: &VerifyOptions) -> Result<bool> {
    if opts.assume_nonperfectly_divisible {
        return Ok(true);
    }
    Ok(!catalog.facts_readonly(g)?.perfectly_divisible)
}

fn missing_simplicial_detail(parts: usize) -> String {
    format!("nonperfectly divisible but no vertex has a neighborhood covered by {parts} cliques")
}

/// Every fork-free graph with no odd parachute that fails perfect
/// divisibility must contain a trisimplicial vertex.
pub fn verify_main_theorem(graphs: &[Graph], opts: &VerifyOptions) -> Result<VerificationReport> {
    let class = GraphClass::ForkOddParachuteFree.forbidden();
    run_scan(
        "main",
        graphs,
        opts,
        class,
        !opts.assume_nonperfectly_divisible,
        |g, catalog| {
            if !is_free(g, class)? {
                return Ok(Outcome::outside());
            }
            if !nonperfectly_divisible(g, catalog, opts)? {
                return Ok(Outcome::member(false, None));
            }
            let found = find_simplicial_vertex(g, opts.simplicial_parts).is_some();
            Ok(Outcome::member(
                true,
                (!found).then(|| missing_simplicial_detail(opts.simplicial_parts)),
            ))
        },
    )
}

/// Same conclusion over claw-free graphs.
pub fn verify_claw_corollary(graphs: &[Graph], opts: &VerifyOptions) -> Result<VerificationReport> {
    let class = GraphClass::ClawFree.forbidden();
    run_scan(
        "claw",
        graphs,
        opts,
        class,
        !opts.assume_nonperfectly_divisible,
        |g, catalog| {
            if !is_free(g, class)? {
                return Ok(Outcome::outside());
            }
            if !nonperfectly_divisible(g, catalog, opts)? {
                return Ok(Outcome::member(false, None));
            }
            let found = find_simplicial_vertex(g, opts.simplicial_parts).is_some();
            Ok(Outcome::member(
                true,
                (!found).then(|| missing_simplicial_detail(opts.simplicial_parts)),
            ))
        },
    )
}

/// Fork-free graphs with clique number at most 3 that fail perfect
/// divisibility must contain a trisimplicial vertex.
pub fn verify_w3_theorem(graphs: &[Graph], opts: &VerifyOptions) -> Result<VerificationReport> {
    let class = GraphClass::ForkFree.forbidden();
    run_scan("w3", graphs, opts, class, true, |g, catalog| {
        if !is_free(g, class)? {
            return Ok(Outcome::outside());
        }
        let facts = catalog.facts_readonly(g)?;
        if facts.omega > 3 || !nonperfectly_divisible(g, catalog, opts)? {
            return Ok(Outcome::member(false, None));
        }
        let found = find_simplicial_vertex(g, opts.simplicial_parts).is_some();
        Ok(Outcome::member(
            true,
            (!found).then(|| missing_simplicial_detail(opts.simplicial_parts)),
        ))
    })
}

/// Every fork-free graph with no odd balloon is perfectly divisible.
pub fn verify_balloon_theorem(
    graphs: &[Graph],
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let class = GraphClass::ForkOddBalloonFree.forbidden();
    run_scan(
        "balloon",
        graphs,
        opts,
        class,
        !opts.assume_nonperfectly_divisible,
        |g, catalog| {
            if !is_free(g, class)? {
                return Ok(Outcome::outside());
            }
            let bad = nonperfectly_divisible(g, catalog, opts)?;
            Ok(Outcome::member(
                true,
                bad.then(|| "class member is not perfectly divisible".to_string()),
            ))
        },
    )
}

/// Exact chi and the structural palette both stay within
/// omega(omega+1)/2 on fork-free graphs with no odd parachute.
pub fn verify_chi_bound(graphs: &[Graph], opts: &VerifyOptions) -> Result<VerificationReport> {
    let class = GraphClass::ForkOddParachuteFree.forbidden();
    run_scan("chi-bound", graphs, opts, class, true, |g, catalog| {
        if !is_free(g, class)? {
            return Ok(Outcome::outside());
        }
        let facts = catalog.facts_readonly(g)?;
        let bound = binom_bound(facts.omega);
        if facts.chi > bound {
            return Ok(Outcome::member(
                true,
                Some(format!(
                    "exact chromatic number {} exceeds the bound {bound}",
                    facts.chi
                )),
            ));
        }
        let detail = match color_structurally(g) {
            Ok(trace) => {
                if !verify_coloring(g, &trace.coloring)? {
                    Some("structural coloring is not proper".to_string())
                } else if trace.coloring.palette > bound {
                    Some(format!(
                        "structural palette {} exceeds the bound {bound}",
                        trace.coloring.palette
                    ))
                } else {
                    None
                }
            }
            Err(Error::Counterexample { detail, .. }) => Some(detail),
            Err(e) => return Err(e),
        };
        Ok(Outcome::member(true, detail))
    })
}

/// Search fork-free graphs violating both disjuncts of "perfectly
/// divisible or has a trisimplicial vertex".  A hit is a research
/// finding, reported like a violation and mapped to its own exit code by
/// the command-line front end.
pub fn hunt_counterexample(graphs: &[Graph], opts: &VerifyOptions) -> Result<VerificationReport> {
    let class = GraphClass::ForkFree.forbidden();
    run_scan(
        "hunt",
        graphs,
        opts,
        class,
        !opts.assume_nonperfectly_divisible,
        |g, catalog| {
            if !is_free(g, class)? {
                return Ok(Outcome::outside());
            }
            if !nonperfectly_divisible(g, catalog, opts)? {
                return Ok(Outcome::member(false, None));
            }
            let found = find_simplicial_vertex(g, opts.simplicial_parts).is_some();
            Ok(Outcome::member(
                true,
                (!found).then(|| {
                    "candidate counterexample: fork-free, not perfectly divisible, no \
                     trisimplicial vertex"
                        .to_string()
                }),
            ))
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiBindingRow {
    pub omega: usize,
    pub max_chi: usize,
    pub graphs: usize,
}

/// Observed chi maxima per clique number over a class; descriptive, no
/// assertion attached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiBindingTable {
    pub class: String,
    pub rows: Vec<ChiBindingRow>,
}

impl ChiBindingTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("omega,max_chi,graphs\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{}\n", row.omega, row.max_chi, row.graphs));
        }
        out
    }
}

pub fn chi_binding_table(
    graphs: &[Graph],
    class: GraphClass,
    workers: usize,
) -> Result<ChiBindingTable> {
    let forbidden = class.forbidden();
    let mut catalog = Catalog::new();
    for g in graphs {
        if is_free(g, forbidden)? {
            catalog.facts(g)?;
        }
    }
    let measured = scan_map(graphs, workers, |g| -> Result<Option<(usize, usize)>> {
        if !is_free(g, forbidden)? {
            return Ok(None);
        }
        let facts = catalog.facts_readonly(g)?;
        Ok(Some((facts.omega, facts.chi)))
    });
    let mut rows: BTreeMap<usize, ChiBindingRow> = BTreeMap::new();
    for item in measured {
        if let Some((omega, chi)) = item? {
            let row = rows.entry(omega).or_insert(ChiBindingRow {
                omega,
                max_chi: 0,
                graphs: 0,
            });
            row.max_chi = row.max_chi.max(chi);
            row.graphs += 1;
        }
    }
    Ok(ChiBindingTable {
        class: class.name().to_string(),
        rows: rows.into_values().collect(),
    })
}
