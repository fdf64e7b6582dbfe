//! Induced-pattern catalog and detectors.
//!
//! Fixed small configurations (claw, fork, paw, co-dart, bull, gem, dart,
//! 3P1), parameterized families (paths, wheels, balloons, parachutes), and
//! hole-based families (odd holes, odd antiholes).  A balloon is a hole
//! plus a degree-3 center adjacent to two consecutive hole vertices and to
//! a pendant leaf; a parachute is a hole plus an edge uv with u complete
//! and v anticomplete to the hole.
//!
//! All detectors are exact backtracking searches and return the
//! lexicographically least witness, so results are reproducible across
//! runs and worker counts.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexSet};
use serde::Serialize;
use std::collections::BTreeMap;

/// Identifier for everything the detectors can look for.
///
/// `Wheel`/`Balloon`/`Parachute` take the hole length `i >= 4`;
/// `OddHole`, `OddAntihole`, `OddBalloon`, `OddParachute` quantify over all
/// odd lengths `>= 5` that fit in the host.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PatternId {
    Claw,
    Fork,
    Paw,
    CoDart,
    Bull,
    Gem,
    Dart,
    ThreeP1,
    Path(usize),
    Wheel(usize),
    Balloon(usize),
    Parachute(usize),
    OddHole,
    OddAntihole,
    OddBalloon,
    OddParachute,
}

impl std::fmt::Display for PatternId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PatternId::Claw => write!(f, "claw"),
            PatternId::Fork => write!(f, "fork"),
            PatternId::Paw => write!(f, "paw"),
            PatternId::CoDart => write!(f, "co-dart"),
            PatternId::Bull => write!(f, "bull"),
            PatternId::Gem => write!(f, "gem"),
            PatternId::Dart => write!(f, "dart"),
            PatternId::ThreeP1 => write!(f, "3P1"),
            PatternId::Path(k) => write!(f, "P{k}"),
            PatternId::Wheel(i) => write!(f, "{i}-wheel"),
            PatternId::Balloon(i) => write!(f, "{i}-balloon"),
            PatternId::Parachute(i) => write!(f, "{i}-parachute"),
            PatternId::OddHole => write!(f, "odd-hole"),
            PatternId::OddAntihole => write!(f, "odd-antihole"),
            PatternId::OddBalloon => write!(f, "odd-balloon"),
            PatternId::OddParachute => write!(f, "odd-parachute"),
        }
    }
}

impl Serialize for PatternId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An induced occurrence: `vertices[k]` is the host vertex playing pattern
/// vertex `k`; `roles` names the structural parts (hole, center, apex, ...).
#[derive(Clone, Debug, Serialize)]
pub struct PatternWitness {
    pub pattern: PatternId,
    pub vertices: Vec<usize>,
    pub roles: BTreeMap<String, Vec<usize>>,
}

/// Minimum odd balloon, reported with its parts in host labels.
#[derive(Clone, Debug, Serialize)]
pub struct BalloonWitness {
    pub hole: Vec<usize>,
    pub center: usize,
    pub leaf: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParachuteWitness {
    pub hole: Vec<usize>,
    pub apex: usize,
    pub pendant: usize,
}

fn role_map(entries: &[(&str, Vec<usize>)]) -> BTreeMap<String, Vec<usize>> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

impl PatternId {
    /// Concrete pattern graph and role layout.  Families with a length
    /// parameter validate `i >= 4`; the quantified ids have no single
    /// graph and return an error here.
    pub fn build(&self) -> Result<(Graph, BTreeMap<String, Vec<usize>>)> {
        let pair = |edges: &[(usize, usize)], n: usize, roles: &[(&str, Vec<usize>)]| {
            Ok((Graph::from_edge_list(n, edges)?, role_map(roles)))
        };
        match *self {
            PatternId::Claw => pair(
                &[(0, 1), (0, 2), (0, 3)],
                4,
                &[("center", vec![0]), ("leaves", vec![1, 2, 3])],
            ),
            PatternId::Fork => pair(
                &[(0, 1), (0, 2), (0, 3), (3, 4)],
                5,
                &[
                    ("center", vec![0]),
                    ("leaves", vec![1, 2]),
                    ("stem", vec![3]),
                    ("tail", vec![4]),
                ],
            ),
            PatternId::Paw => pair(
                &[(0, 1), (0, 2), (1, 2), (2, 3)],
                4,
                &[("triangle", vec![0, 1, 2]), ("pendant", vec![3])],
            ),
            PatternId::CoDart => pair(
                &[(0, 1), (0, 2), (1, 2), (2, 3)],
                5,
                &[
                    ("triangle", vec![0, 1, 2]),
                    ("pendant", vec![3]),
                    ("isolated", vec![4]),
                ],
            ),
            PatternId::Bull => pair(
                &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)],
                5,
                &[("triangle", vec![0, 1, 2]), ("horns", vec![3, 4])],
            ),
            PatternId::Gem => pair(
                &[(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)],
                5,
                &[("path", vec![0, 1, 2, 3]), ("apex", vec![4])],
            ),
            PatternId::Dart => pair(
                &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3)],
                5,
                &[
                    ("apex", vec![0]),
                    ("path", vec![1, 2, 3]),
                    ("solo", vec![4]),
                ],
            ),
            PatternId::ThreeP1 => pair(&[], 3, &[("vertices", vec![0, 1, 2])]),
            PatternId::Path(k) => {
                if k == 0 {
                    return Err(Error::BadPatternParameter("P0 is not a pattern".into()));
                }
                pair(
                    &(1..k).map(|i| (i - 1, i)).collect::<Vec<_>>(),
                    k,
                    &[("path", (0..k).collect())],
                )
            }
            PatternId::Wheel(i) => {
                check_hole_len(i)?;
                let mut edges: Vec<_> = (0..i).map(|v| (v, (v + 1) % i)).collect();
                edges.extend((0..i).map(|v| (v, i)));
                pair(
                    &edges,
                    i + 1,
                    &[("hole", (0..i).collect()), ("hub", vec![i])],
                )
            }
            PatternId::Balloon(i) => {
                check_hole_len(i)?;
                let mut edges: Vec<_> = (0..i).map(|v| (v, (v + 1) % i)).collect();
                edges.extend([(0, i), (1, i), (i, i + 1)]);
                pair(
                    &edges,
                    i + 2,
                    &[
                        ("hole", (0..i).collect()),
                        ("center", vec![i]),
                        ("leaf", vec![i + 1]),
                    ],
                )
            }
            PatternId::Parachute(i) => {
                check_hole_len(i)?;
                let mut edges: Vec<_> = (0..i).map(|v| (v, (v + 1) % i)).collect();
                edges.extend((0..i).map(|v| (v, i)));
                edges.push((i, i + 1));
                pair(
                    &edges,
                    i + 2,
                    &[
                        ("hole", (0..i).collect()),
                        ("apex", vec![i]),
                        ("pendant", vec![i + 1]),
                    ],
                )
            }
            PatternId::OddHole
            | PatternId::OddAntihole
            | PatternId::OddBalloon
            | PatternId::OddParachute => Err(Error::BadPatternParameter(format!(
                "{self} quantifies over lengths and has no single pattern graph"
            ))),
        }
    }
}

fn check_hole_len(i: usize) -> Result<()> {
    if i < 4 {
        return Err(Error::BadPatternParameter(format!(
            "hole length must be at least 4, got {i}"
        )));
    }
    Ok(())
}

/// Backtracking injective embedding respecting both edges and non-edges.
/// Pattern vertices are assigned in index order against ascending host
/// candidates, so the first hit is the lexicographically least witness.
fn embed(host: &Graph, pat: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
    let k = map.len();
    if k == pat.n() {
        return true;
    }
    let pk = pat.degree(k);
    for v in 0..host.n() {
        if used & bit(v) != 0 || host.degree(v) < pk {
            continue;
        }
        if (0..k).all(|j| host.has_edge(map[j], v) == pat.has_edge(j, k)) {
            map.push(v);
            if embed(host, pat, map, used | bit(v)) {
                return true;
            }
            map.pop();
        }
    }
    false
}

pub(crate) fn find_embedding(host: &Graph, pat: &Graph) -> Option<Vec<usize>> {
    if pat.n() > host.n() {
        return None;
    }
    let mut map = Vec::with_capacity(pat.n());
    if embed(host, pat, &mut map, 0) {
        Some(map)
    } else {
        None
    }
}

/// Enumerate holes (induced cycles of length >= `min_len`) in canonical
/// orientation: minimum vertex first, smaller neighbor second.  The
/// callback returns `true` to stop; emission follows lexicographic order
/// of the witness sequences.
fn each_hole<F: FnMut(&[usize]) -> bool>(
    g: &Graph,
    min_len: usize,
    odd_only: bool,
    f: &mut F,
) -> bool {
    debug_assert!(min_len >= 4);
    let n = g.n();
    let mut path = Vec::with_capacity(n);
    for base in 0..n {
        path.clear();
        path.push(base);
        if grow_hole(g, min_len, odd_only, &mut path, f) {
            return true;
        }
    }
    false
}

fn grow_hole<F: FnMut(&[usize]) -> bool>(
    g: &Graph,
    min_len: usize,
    odd_only: bool,
    path: &mut Vec<usize>,
    f: &mut F,
) -> bool {
    let base = path[0];
    let last = *path.last().unwrap();
    // Interior vertices the next one must avoid: everything but the two
    // path ends.
    let mut interior = 0u64;
    let mut onpath = 0u64;
    for (i, &p) in path.iter().enumerate() {
        onpath |= bit(p);
        if i > 0 && i + 1 < path.len() {
            interior |= bit(p);
        }
    }
    for w in base + 1..g.n() {
        if onpath & bit(w) != 0 || !g.has_edge(last, w) || g.row(w) & interior != 0 {
            continue;
        }
        if path.len() == 1 {
            // First cycle edge: w plays v1 and is adjacent to the base by
            // construction, so the chord rule below does not apply yet.
            path.push(w);
            if grow_hole(g, min_len, odd_only, path, f) {
                return true;
            }
            path.pop();
        } else if g.has_edge(base, w) {
            // Chord to the base elsewhere, so w can only close the cycle.
            let len = path.len() + 1;
            if len >= min_len && (!odd_only || len % 2 == 1) && path.len() >= 2 && path[1] < w {
                path.push(w);
                let stop = f(path);
                path.pop();
                if stop {
                    return true;
                }
            }
        } else {
            path.push(w);
            if grow_hole(g, min_len, odd_only, path, f) {
                return true;
            }
            path.pop();
        }
    }
    false
}

/// First hole of length >= `min_len` (>= 4), if any.
pub fn find_hole(g: &Graph, min_len: usize) -> Result<Option<Vec<usize>>> {
    check_hole_len(min_len)?;
    let mut found = None;
    each_hole(g, min_len, false, &mut |h| {
        found = Some(h.to_vec());
        true
    });
    Ok(found)
}

/// First odd hole (odd induced cycle, length >= 5).
pub fn find_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    let mut found = None;
    each_hole(g, 5, true, &mut |h| {
        found = Some(h.to_vec());
        true
    });
    found
}

/// First odd antihole: an odd hole of the complement, reported in the
/// complement's cyclic order.
pub fn find_odd_antihole(g: &Graph) -> Option<Vec<usize>> {
    find_odd_hole(&g.complement())
}

/// Visit every odd hole once (used by the attachment-structure check).
pub(crate) fn for_each_odd_hole<F: FnMut(&[usize])>(g: &Graph, mut f: F) {
    each_hole(g, 5, true, &mut |h| {
        f(h);
        false
    });
}

fn witness_from_map(
    id: PatternId,
    map: Vec<usize>,
    roles: &BTreeMap<String, Vec<usize>>,
) -> PatternWitness {
    let roles = roles
        .iter()
        .map(|(name, ids)| (name.clone(), ids.iter().map(|&i| map[i]).collect()))
        .collect();
    PatternWitness {
        pattern: id,
        vertices: map,
        roles,
    }
}

/// Find an induced occurrence of `id` in `g`.
///
/// Fixed patterns and concrete family members return the lexicographically
/// least witness; the quantified ids search lengths in increasing order
/// (so the witness is size-minimal first, lexicographically least second).
pub fn find_induced(g: &Graph, id: PatternId) -> Result<Option<PatternWitness>> {
    match id {
        PatternId::OddHole => Ok(find_odd_hole(g).map(|h| PatternWitness {
            pattern: id,
            vertices: h.clone(),
            roles: role_map(&[("hole", h)]),
        })),
        PatternId::OddAntihole => Ok(find_odd_antihole(g).map(|h| PatternWitness {
            pattern: id,
            vertices: h.clone(),
            roles: role_map(&[("antihole", h)]),
        })),
        PatternId::OddBalloon => find_odd_attachment(g, false),
        PatternId::OddParachute => find_odd_attachment(g, true),
        _ => {
            let (pat, roles) = id.build()?;
            Ok(find_embedding(g, &pat).map(|map| witness_from_map(id, map, &roles)))
        }
    }
}

/// Shared search for the two odd hole-plus-attachment families.
fn find_odd_attachment(g: &Graph, parachute: bool) -> Result<Option<PatternWitness>> {
    let mut i = 5;
    while i + 2 <= g.n() {
        let id = if parachute {
            PatternId::Parachute(i)
        } else {
            PatternId::Balloon(i)
        };
        if let Some(w) = find_induced(g, id)? {
            return Ok(Some(w));
        }
        i += 2;
    }
    Ok(None)
}

/// Minimum-order odd balloon, ties broken lexicographically.
pub fn find_min_odd_balloon(g: &Graph) -> Option<BalloonWitness> {
    match find_induced(g, PatternId::OddBalloon) {
        Ok(Some(w)) => {
            let i = w.vertices.len() - 2;
            Some(BalloonWitness {
                hole: w.vertices[..i].to_vec(),
                center: w.vertices[i],
                leaf: w.vertices[i + 1],
            })
        }
        _ => None,
    }
}

/// Does `g` avoid every pattern in `ids` as an induced subgraph?
pub fn is_free(g: &Graph, ids: &[PatternId]) -> Result<bool> {
    Ok(find_forbidden(g, ids)?.is_none())
}

/// First pattern from `ids` that occurs, with its witness.
pub fn find_forbidden(g: &Graph, ids: &[PatternId]) -> Result<Option<PatternWitness>> {
    for &id in ids {
        if let Some(w) = find_induced(g, id)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// One bad attachment triple: an odd hole, a vertex `attached` outside it
/// with hole neighbors that are neither a consecutive pair nor the whole
/// hole, and a neighbor `companion` of `attached` anticomplete to the hole.
#[derive(Clone, Debug, Serialize)]
pub struct AttachmentViolation {
    pub hole: Vec<usize>,
    pub attached: usize,
    pub companion: usize,
    pub hole_neighbors: Vec<usize>,
}

/// Attachment-structure check for fork-free graphs: whenever u, v are
/// adjacent vertices outside an odd hole C, u has a neighbor on C and v has
/// none, then N(u) on C is two consecutive hole vertices or all of C.
/// Returns every violating triple (empty on fork-free graphs if the
/// underlying statement holds).  Errors when `g` is not fork-free.
pub fn check_odd_hole_attachment(g: &Graph) -> Result<Vec<AttachmentViolation>> {
    if let Some(w) = find_induced(g, PatternId::Fork)? {
        return Err(Error::OutsideClass {
            pattern: "fork".into(),
            witness: w.vertices,
        });
    }
    let mut violations = Vec::new();
    for_each_odd_hole(g, |hole| {
        let hole_set = VertexSet::from_vertices(hole.iter().copied());
        let full = hole_set.len();
        for u in g.vertices() {
            if hole_set.contains(u) {
                continue;
            }
            let on_hole = g.neighbors(u).intersect(hole_set);
            if on_hole.is_empty() {
                continue;
            }
            let ok = on_hole.len() == full
                || (on_hole.len() == 2 && {
                    let pair = on_hole.to_vec();
                    g.has_edge(pair[0], pair[1])
                });
            for v in g.neighbors(u).iter() {
                if hole_set.contains(v) || !g.neighbors(v).intersect(hole_set).is_empty() {
                    continue;
                }
                if !ok {
                    violations.push(AttachmentViolation {
                        hole: hole.to_vec(),
                        attached: u,
                        companion: v,
                        hole_neighbors: on_hole.to_vec(),
                    });
                }
            }
        }
    });
    Ok(violations)
}

/// Validate a witness against the host: the mapped vertices must induce
/// exactly the pattern graph.  Used by tests and report re-validation.
pub fn witness_is_valid(g: &Graph, w: &PatternWitness) -> bool {
    let concrete = match w.pattern {
        PatternId::OddHole => {
            return is_hole_sequence(g, &w.vertices) && w.vertices.len() % 2 == 1
        }
        PatternId::OddAntihole => {
            return is_hole_sequence(&g.complement(), &w.vertices) && w.vertices.len() % 2 == 1
        }
        PatternId::OddBalloon => PatternId::Balloon(w.vertices.len() - 2),
        PatternId::OddParachute => PatternId::Parachute(w.vertices.len() - 2),
        other => other,
    };
    let Ok((pat, _)) = concrete.build() else {
        return false;
    };
    if w.vertices.len() != pat.n() {
        return false;
    }
    let mut seen = 0u64;
    for &v in &w.vertices {
        if v >= g.n() || seen & bit(v) != 0 {
            return false;
        }
        seen |= bit(v);
    }
    for i in 0..pat.n() {
        for j in i + 1..pat.n() {
            if g.has_edge(w.vertices[i], w.vertices[j]) != pat.has_edge(i, j) {
                return false;
            }
        }
    }
    if matches!(w.pattern, PatternId::OddBalloon | PatternId::OddParachute) {
        return w.vertices.len() % 2 == 1;
    }
    true
}

fn is_hole_sequence(g: &Graph, seq: &[usize]) -> bool {
    let k = seq.len();
    if k < 4 {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if seq[i] >= g.n() || g.has_edge(seq[i], seq[j]) != consecutive {
                return false;
            }
        }
    }
    true
}
