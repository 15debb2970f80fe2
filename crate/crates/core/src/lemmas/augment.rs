//! Local augmentation rules: each one replaces one or two matching edges by
//! strictly more edges, or reports that the rule does not apply.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::matching::Matching;

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Edges to remove from and add to a matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replacement {
    pub removed: Vec<Vec<Vertex>>,
    pub added: Vec<Vec<Vertex>>,
    /// Vertices covered before but not after.
    pub uncovered: Vec<Vertex>,
}

impl Replacement {
    pub fn apply(&self, host: &Hypergraph, m: &Matching) -> Result<Matching> {
        m.replace(host, &self.removed, &self.added)
    }

    pub fn ensure_keeps_covered(&self, w: &[Vertex]) -> Result<()> {
        match self.uncovered.iter().find(|v| w.contains(v)) {
            Some(&v) => Err(Error::UncoversWVertex(v)),
            None => Ok(()),
        }
    }
}

fn sorted(mut e: Vec<Vertex>) -> Vec<Vertex> {
    e.sort_unstable();
    e
}

fn matching_edge(m: &Matching, edge: &[Vertex]) -> Result<Vec<Vertex>> {
    let idx = m
        .position(edge)
        .ok_or_else(|| Error::Precondition(format!("{edge:?} is not an edge of the matching")))?;
    Ok(m.edges()[idx].clone())
}

fn require_free(h: &Hypergraph, m: &Matching, vertices: &[Vertex]) -> Result<()> {
    let covered = m.covered();
    for &v in vertices {
        h.check_vertex(v)?;
        if covered.contains(v) {
            return Err(Error::Precondition(format!("vertex {v} is covered by the matching")));
        }
    }
    Ok(())
}

fn free_triple(h: &Hypergraph, m: &Matching, free: &[Vertex]) -> Result<[Vertex; 3]> {
    let mut f = free.to_vec();
    f.sort_unstable();
    f.dedup();
    if f.len() != 3 || free.len() != 3 {
        return Err(Error::Precondition(format!("need three distinct free vertices, got {free:?}")));
    }
    require_free(h, m, &f)?;
    Ok([f[0], f[1], f[2]])
}

/// Looks for a perfect matching of the 3-partite 3-graph on parts `e1`, `e2`,
/// `free` (part-transversal edges of `h` only); on success the two matching
/// edges are replaced by the three bridge edges.
pub fn augment_via_pair(
    h: &Hypergraph,
    m: &Matching,
    e1: &[Vertex],
    e2: &[Vertex],
    free: &[Vertex],
) -> Result<Option<Replacement>> {
    h.require_three_uniform()?;
    let a = matching_edge(m, e1)?;
    let b = matching_edge(m, e2)?;
    if a == b {
        return Err(Error::Precondition("e1 and e2 must be distinct".into()));
    }
    let c = free_triple(h, m, free)?;
    Ok(bridge_perfect_matching(h, &a, &b, &c).map(|added| Replacement {
        removed: vec![a, b],
        added,
        uncovered: Vec::new(),
    }))
}

fn bridge_perfect_matching(h: &Hypergraph, a: &[Vertex], b: &[Vertex], c: &[Vertex]) -> Option<Vec<Vec<Vertex>>> {
    for sigma in PERMS {
        for tau in PERMS {
            let triples: Vec<Vec<Vertex>> = (0..3)
                .map(|i| sorted(vec![a[i], b[sigma[i]], c[tau[i]]]))
                .collect();
            if triples.iter().all(|t| h.contains_edge(t)) {
                return Some(triples);
            }
        }
    }
    None
}

/// Number of bridge edges through each of the `free` vertices, summed.
fn bridge_link_sum(h: &Hypergraph, a: &[Vertex], b: &[Vertex], free: &[Vertex]) -> usize {
    let mut count = 0;
    for &u in free {
        for &x in a {
            for &y in b {
                if h.contains_edge(&[u, x, y]) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Looks for disjoint pairs `xy` in the link of `v_i` and `zw` in the link of
/// `v_j` inside `u3` (`i != j`, both vertices of `e`), and replaces `e` by
/// `{v_i, x, y}`, `{v_j, z, w}`. When `w_tag` is set that vertex is always
/// one of the two kept, so only a non-tagged vertex of `e` is uncovered.
pub fn augment_via_link(
    h: &Hypergraph,
    m: &Matching,
    e: &[Vertex],
    u3: &[Vertex],
    w_tag: Option<Vertex>,
) -> Result<Option<Replacement>> {
    h.require_three_uniform()?;
    let edge = matching_edge(m, e)?;
    require_free(h, m, u3)?;
    if let Some(t) = w_tag {
        if !edge.contains(&t) {
            return Err(Error::Precondition(format!("tagged vertex {t} is not in {edge:?}")));
        }
    }
    let links = edge
        .iter()
        .map(|&v| h.link(v, u3, None).map(|l| l.pairs))
        .collect::<Result<Vec<_>>>()?;
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        if w_tag == Some(edge[k]) {
            continue;
        }
        for &(x, y) in &links[i] {
            for &(z, w) in &links[j] {
                if x != z && x != w && y != z && y != w {
                    let r = Replacement {
                        removed: vec![edge.clone()],
                        added: vec![sorted(vec![edge[i], x, y]), sorted(vec![edge[j], z, w])],
                        uncovered: vec![edge[k]],
                    };
                    if let Some(t) = w_tag {
                        r.ensure_keeps_covered(&[t])?;
                    }
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

/// Grows an all-UUW matching by one edge while newly covering the
/// uncovered W-vertex `v0`: an edge `{u1, u2, v1}` of the matching is
/// replaced by `{u0, v1, u3}` and `{v0, u1, u4}` with `u3, u4` free
/// U-vertices, or by `{u0, v1, u2}` and `{v0, u1, u4}`.
pub fn swap_cover_w(
    h: &Hypergraph,
    m: &Matching,
    w: &[Vertex],
    v0: Vertex,
    u0: Vertex,
) -> Result<Option<Replacement>> {
    h.require_three_uniform()?;
    h.check_vertex(v0)?;
    h.check_vertex(u0)?;
    let in_w = |v: Vertex| w.contains(&v);
    if !in_w(v0) {
        return Err(Error::Precondition(format!("v0={v0} is not in W")));
    }
    if in_w(u0) {
        return Err(Error::Precondition(format!("u0={u0} is in W")));
    }
    require_free(h, m, &[v0, u0])?;
    if !h.adjacent(v0, u0)? {
        return Err(Error::Precondition(format!("v0={v0} and u0={u0} are not adjacent")));
    }
    for e in m.edges() {
        if e.iter().filter(|&&v| in_w(v)).count() != 1 {
            return Err(Error::Precondition(format!("matching edge {e:?} is not of type UUW")));
        }
    }
    let covered = m.covered();
    let free_u: Vec<Vertex> = (0..h.n() as Vertex)
        .filter(|&v| !covered.contains(v) && !in_w(v) && v != u0)
        .collect();
    let has = |a: Vertex, b: Vertex, c: Vertex| h.contains_edge(&[a, b, c]);
    for e in m.edges() {
        let v1 = *e.iter().find(|&&v| in_w(v)).expect("UUW");
        let us: Vec<Vertex> = e.iter().copied().filter(|&v| v != v1).collect();
        for (u1, u2) in [(us[0], us[1]), (us[1], us[0])] {
            let cover_v0 = |exclude: Vertex| {
                free_u
                    .iter()
                    .copied()
                    .find(|&u4| u4 != exclude && has(v0, u1, u4))
            };
            for &u3 in &free_u {
                if has(u0, v1, u3) {
                    if let Some(u4) = cover_v0(u3) {
                        return Ok(Some(Replacement {
                            removed: vec![e.clone()],
                            added: vec![sorted(vec![u0, v1, u3]), sorted(vec![v0, u1, u4])],
                            uncovered: Vec::new(),
                        }));
                    }
                }
            }
            if has(u0, v1, u2) {
                if let Some(u4) = cover_v0(u2) {
                    return Ok(Some(Replacement {
                        removed: vec![e.clone()],
                        added: vec![sorted(vec![u0, v1, u2]), sorted(vec![v0, u1, u4])],
                        uncovered: Vec::new(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    /// Meets W.
    M1,
    /// Disjoint from W.
    M2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairLinkCheck {
    pub e1: Vec<Vertex>,
    pub e2: Vec<Vertex>,
    pub sum: usize,
    pub bound: usize,
    pub exceeded: bool,
    pub augmentation: Option<Replacement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLinkCheck {
    pub edge: Vec<Vertex>,
    pub class: EdgeClass,
    pub sum: usize,
    pub bound: usize,
    /// The bound is only claimed once enough free vertices exist
    /// (`|U₃| >= 4` for M1 edges, `|U₃| >= 5` for M2 edges).
    pub applicable: bool,
    pub exceeded: bool,
    pub augmentation: Option<Replacement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkBoundReport {
    pub free: [Vertex; 3],
    pub u3: Vec<Vertex>,
    pub pairs: Vec<PairLinkCheck>,
    pub edges: Vec<EdgeLinkCheck>,
}

impl LinkBoundReport {
    pub fn exceedances(&self) -> usize {
        self.pairs.iter().filter(|p| p.exceeded).count() + self.edges.iter().filter(|e| e.exceeded).count()
    }

    /// Every exceeded bound comes with a successful augmentation.
    pub fn consistent(&self) -> bool {
        self.pairs
            .iter()
            .all(|p| !p.exceeded || p.augmentation.is_some())
            && self
                .edges
                .iter()
                .all(|e| !e.exceeded || e.augmentation.is_some())
    }
}

/// Evaluates the three link-count sums for the free triple against their
/// bounds (18 per edge pair; `6(|U₃|-1)` for edges meeting `w`;
/// `3(|U₃|+1)` for the others) and tries the matching augmentation wherever
/// a bound is exceeded.
pub fn link_bound_check(h: &Hypergraph, m: &Matching, free: &[Vertex], w: &[Vertex]) -> Result<LinkBoundReport> {
    h.require_three_uniform()?;
    let free = free_triple(h, m, free)?;
    let u3 = m.uncovered();
    let edges = m.edges();
    let mut pairs = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let sum = bridge_link_sum(h, &edges[i], &edges[j], &free);
            let exceeded = sum > 18;
            let augmentation = if exceeded {
                augment_via_pair(h, m, &edges[i], &edges[j], &free)?
            } else {
                None
            };
            pairs.push(PairLinkCheck {
                e1: edges[i].clone(),
                e2: edges[j].clone(),
                sum,
                bound: 18,
                exceeded,
                augmentation,
            });
        }
    }
    let mut edge_checks = Vec::new();
    for e in edges {
        let w_tag = e.iter().copied().find(|v| w.contains(v));
        let class = if w_tag.is_some() { EdgeClass::M1 } else { EdgeClass::M2 };
        let mut sum = 0;
        for &u in &free {
            sum += h.link(u, e, Some(&u3_without(&u3, u))).map(|l| l.len())?;
        }
        let size = u3.len();
        let (bound, applicable) = match class {
            EdgeClass::M1 => (6 * size.saturating_sub(1), size >= 4),
            EdgeClass::M2 => (3 * (size + 1), size >= 5),
        };
        let exceeded = applicable && sum > bound;
        let augmentation = if exceeded {
            augment_via_link(h, m, e, &u3, w_tag)?.filter(|r| r.ensure_keeps_covered(w).is_ok())
        } else {
            None
        };
        edge_checks.push(EdgeLinkCheck {
            edge: e.clone(),
            class,
            sum,
            bound,
            applicable,
            exceeded,
            augmentation,
        });
    }
    Ok(LinkBoundReport {
        free,
        u3,
        pairs,
        edges: edge_checks,
    })
}

fn u3_without(u3: &[Vertex], v: Vertex) -> Vec<Vertex> {
    u3.iter().copied().filter(|&x| x != v).collect()
}
