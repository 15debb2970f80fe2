//! Immutable k-uniform hypergraphs with degree, adjacency, link and
//! degree-sum queries.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::VertexMask;

/// Vertex label; vertices of a hypergraph of order `n` are `0..n`.
pub type Vertex = u32;

/// A k-uniform hypergraph on the vertex set `0..n`.
///
/// Edges are stored flat (stride `k`), each strictly increasing, and the edge
/// list is sorted lexicographically without duplicates. Edge ids are indices
/// into that sorted list, so iterating ids in ascending order visits edges in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    verts: Vec<Vertex>,
    incidence: Vec<Vec<u32>>,
    masks: OnceLock<Vec<VertexMask>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.verts == other.verts
    }
}

impl Eq for Hypergraph {}

/// Which vertex pairs `sigma2` minimises over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sigma2Variant {
    All,
    Adjacent,
    NonAdjacent,
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary-order tuples, sorting each edge and
    /// dropping duplicates.
    pub fn new<I, E>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if k < 2 {
            return Err(Error::UniformityTooSmall { k });
        }
        if k > n {
            return Err(Error::UniformityExceedsOrder { n, k });
        }
        let mut normalized: Vec<Vec<Vertex>> = Vec::new();
        for edge in edges {
            normalized.push(normalize_edge(n, k, edge.as_ref())?);
        }
        normalized.sort_unstable();
        normalized.dedup();
        let verts = normalized.into_iter().flatten().collect();
        Ok(Self::from_sorted_flat(n, k, verts))
    }

    /// The edgeless hypergraph of order `n`.
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, std::iter::empty::<Vec<Vertex>>())
    }

    /// Builds from a flat, already-normalized edge buffer. Callers guarantee
    /// sorted, distinct, in-range edges in strictly increasing lexicographic
    /// order.
    pub(crate) fn from_sorted_flat(n: usize, k: usize, verts: Vec<Vertex>) -> Self {
        debug_assert_eq!(verts.len() % k, 0);
        let mut incidence = vec![Vec::new(); n];
        for (id, edge) in verts.chunks_exact(k).enumerate() {
            for &v in edge {
                incidence[v as usize].push(id as u32);
            }
        }
        Hypergraph {
            n,
            k,
            verts,
            incidence,
            masks: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_edges(&self) -> usize {
        self.verts.len() / self.k
    }

    pub fn edge(&self, id: usize) -> &[Vertex] {
        &self.verts[id * self.k..(id + 1) * self.k]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.verts.chunks_exact(self.k)
    }

    /// Ids of edges containing `v`, ascending.
    pub fn incident_edges(&self, v: Vertex) -> &[u32] {
        &self.incidence[v as usize]
    }

    /// Per-edge vertex bitmasks, built on first use.
    pub fn edge_masks(&self) -> &[VertexMask] {
        self.masks.get_or_init(|| {
            self.edges()
                .map(|e| VertexMask::from_vertices(self.n, e))
                .collect()
        })
    }

    pub fn edge_id(&self, edge: &[Vertex]) -> Option<usize> {
        if edge.len() != self.k {
            return None;
        }
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        let (mut lo, mut hi) = (0usize, self.num_edges());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(sorted.as_slice()) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        self.edge_id(edge).is_some()
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub(crate) fn require_three_uniform(&self) -> Result<()> {
        if self.k == 3 {
            Ok(())
        } else {
            Err(Error::NotThreeUniform { k: self.k })
        }
    }

    pub fn vertex_degree(&self, v: Vertex) -> usize {
        self.incidence[v as usize].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    /// Minimum vertex degree.
    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Number of edges containing every vertex of `set`. The empty set is
    /// contained in every edge, so `degree(&[])` is the edge count.
    pub fn degree(&self, set: &[Vertex]) -> Result<usize> {
        for &v in set {
            self.check_vertex(v)?;
        }
        let mut members: Vec<Vertex> = set.to_vec();
        members.sort_unstable();
        members.dedup();
        let Some(&pivot) = members
            .iter()
            .min_by_key(|&&v| self.incidence[v as usize].len())
        else {
            return Ok(self.num_edges());
        };
        Ok(self.incidence[pivot as usize]
            .iter()
            .filter(|&&id| {
                let e = self.edge(id as usize);
                members.iter().all(|v| e.binary_search(v).is_ok())
            })
            .count())
    }

    /// The vertices `w` with `{u, v, w}` an edge.
    pub fn neighborhood(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        self.require_three_uniform()?;
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let mut out: Vec<Vertex> = self.incidence[u as usize]
            .iter()
            .map(|&id| self.edge(id as usize))
            .filter(|e| e.contains(&v))
            .map(|e| *e.iter().find(|&&w| w != u && w != v).expect("3-edge"))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(self.incidence[u as usize]
            .iter()
            .any(|&id| self.edge(id as usize).contains(&v)))
    }

    /// Shadow graph: for each vertex, the mask of vertices it shares an edge
    /// with.
    pub fn shadow(&self) -> Vec<VertexMask> {
        let mut adj = vec![VertexMask::empty(self.n); self.n];
        for e in self.edges() {
            for &a in e {
                for &b in e {
                    if a != b {
                        adj[a as usize].insert(b);
                    }
                }
            }
        }
        adj
    }

    /// The link of `v` inside `a`, or between `a` and `b` when `b` is given.
    pub fn link(&self, v: Vertex, a: &[Vertex], b: Option<&[Vertex]>) -> Result<LinkGraph> {
        self.require_three_uniform()?;
        self.check_vertex(v)?;
        let a_set: BTreeSet<Vertex> = a.iter().copied().collect();
        for &x in &a_set {
            self.check_vertex(x)?;
        }
        if a_set.contains(&v) {
            return Err(Error::ScopeOverlap(format!("center {v} lies in A")));
        }
        let mut in_a = VertexMask::empty(self.n);
        for &x in &a_set {
            in_a.insert(x);
        }
        let mut pairs = BTreeSet::new();
        match b {
            None => {
                for &id in &self.incidence[v as usize] {
                    let (x, y) = other_two(self.edge(id as usize), v);
                    if in_a.contains(x) && in_a.contains(y) {
                        pairs.insert((x.min(y), x.max(y)));
                    }
                }
                Ok(LinkGraph {
                    center: v,
                    pairs: pairs.into_iter().collect(),
                    scope: LinkScope::Within(a_set.into_iter().collect()),
                })
            }
            Some(b) => {
                let b_set: BTreeSet<Vertex> = b.iter().copied().collect();
                for &x in &b_set {
                    self.check_vertex(x)?;
                }
                if b_set.contains(&v) {
                    return Err(Error::ScopeOverlap(format!("center {v} lies in B")));
                }
                if let Some(x) = a_set.intersection(&b_set).next() {
                    return Err(Error::ScopeOverlap(format!("A and B share vertex {x}")));
                }
                let in_b = VertexMask::from_vertices(self.n, &b_set.iter().copied().collect::<Vec<_>>());
                for &id in &self.incidence[v as usize] {
                    let (x, y) = other_two(self.edge(id as usize), v);
                    if in_a.contains(x) && in_b.contains(y) {
                        pairs.insert((x, y));
                    } else if in_a.contains(y) && in_b.contains(x) {
                        pairs.insert((y, x));
                    }
                }
                Ok(LinkGraph {
                    center: v,
                    pairs: pairs.into_iter().collect(),
                    scope: LinkScope::Between(
                        a_set.into_iter().collect(),
                        b_set.into_iter().collect(),
                    ),
                })
            }
        }
    }

    /// Minimum of `deg(u) + deg(v)` over distinct pairs in the requested
    /// class, or `None` when the class is empty.
    pub fn sigma2(&self, variant: Sigma2Variant) -> Option<u64> {
        let deg = self.degrees();
        match variant {
            Sigma2Variant::All => {
                let mut sorted = deg;
                sorted.sort_unstable();
                (sorted.len() >= 2).then(|| (sorted[0] + sorted[1]) as u64)
            }
            Sigma2Variant::Adjacent => {
                let mut best: Option<u64> = None;
                for e in self.edges() {
                    for (i, &a) in e.iter().enumerate() {
                        for &b in &e[i + 1..] {
                            let s = (deg[a as usize] + deg[b as usize]) as u64;
                            best = Some(best.map_or(s, |x| x.min(s)));
                        }
                    }
                }
                best
            }
            Sigma2Variant::NonAdjacent => {
                let adj = self.shadow();
                let mut best: Option<u64> = None;
                for u in 0..self.n {
                    for v in u + 1..self.n {
                        if !adj[u].contains(v as Vertex) {
                            let s = (deg[u] + deg[v]) as u64;
                            best = Some(best.map_or(s, |x| x.min(s)));
                        }
                    }
                }
                best
            }
        }
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        (0..self.n as Vertex)
            .filter(|&v| self.incidence[v as usize].is_empty())
            .collect()
    }

    /// Sub-hypergraph induced on `keep`, relabeled to `0..keep.len()` in
    /// increasing label order. Returns the hypergraph and the map from new
    /// labels to old ones.
    pub fn induced(&self, keep: &[Vertex]) -> Result<(Hypergraph, Vec<Vertex>)> {
        let mut old: Vec<Vertex> = keep.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_of = vec![Vertex::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            self.check_vertex(v)?;
            new_of[v as usize] = i as Vertex;
        }
        let order = old.len();
        let mut verts = Vec::new();
        for e in self.edges() {
            if e.iter().all(|&v| new_of[v as usize] != Vertex::MAX) {
                verts.extend(e.iter().map(|&v| new_of[v as usize]));
            }
        }
        // the map is monotone, so lexicographic order survives relabeling
        let k = self.k;
        let h = if k > order {
            Hypergraph {
                n: order,
                k,
                verts: Vec::new(),
                incidence: vec![Vec::new(); order],
                masks: OnceLock::new(),
            }
        } else {
            Hypergraph::from_sorted_flat(order, k, verts)
        };
        Ok((h, old))
    }

    /// Hypergraph on the same vertices with edge set `self ∪ extra`.
    pub fn with_edges<I, E>(&self, extra: I) -> Result<Hypergraph>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        let mut all: Vec<Vec<Vertex>> = self.edges().map(<[Vertex]>::to_vec).collect();
        for e in extra {
            all.push(e.as_ref().to_vec());
        }
        Hypergraph::new(self.n, self.k, all)
    }

    /// Hypergraph on the same vertices keeping only edges accepted by `keep`.
    pub fn filter_edges<F: FnMut(&[Vertex]) -> bool>(&self, mut keep: F) -> Hypergraph {
        let mut verts = Vec::new();
        for e in self.edges() {
            if keep(e) {
                verts.extend_from_slice(e);
            }
        }
        Hypergraph::from_sorted_flat(self.n, self.k, verts)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-graph on {} vertices with {} edges", self.k, self.n, self.num_edges())
    }
}

fn normalize_edge(n: usize, k: usize, edge: &[Vertex]) -> Result<Vec<Vertex>> {
    if edge.len() != k {
        return Err(Error::WrongArity {
            edge: edge.to_vec(),
            got: edge.len(),
            k,
        });
    }
    let mut sorted = edge.to_vec();
    sorted.sort_unstable();
    for &v in &sorted {
        if v as usize >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex {
            edge: edge.to_vec(),
            vertex: w[0],
        });
    }
    Ok(sorted)
}

fn other_two(edge: &[Vertex], v: Vertex) -> (Vertex, Vertex) {
    let mut it = edge.iter().copied().filter(|&x| x != v);
    (it.next().expect("3-edge"), it.next().expect("3-edge"))
}

/// Where the pairs of a link were drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkScope {
    Within(Vec<Vertex>),
    Between(Vec<Vertex>, Vec<Vertex>),
}

/// The link of a vertex viewed as a 2-graph.
///
/// For `Within` scopes pairs are stored as `(min, max)`; for `Between` scopes
/// as `(a, b)` with `a` from the first set and `b` from the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub center: Vertex,
    pub pairs: Vec<(Vertex, Vertex)>,
    pub scope: LinkScope,
}

impl LinkGraph {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Degree of `v` in the link viewed as a graph.
    pub fn degree_of(&self, v: Vertex) -> usize {
        self.pairs.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// Labeled, pairwise disjoint vertex blocks (W/U, S/T, U₁/U₂/…).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    n: usize,
    blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub label: String,
    pub members: Vec<Vertex>,
}

impl VertexPartition {
    pub fn new<L: Into<String>>(n: usize, blocks: Vec<(L, Vec<Vertex>)>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(blocks.len());
        for (label, mut members) in blocks {
            members.sort_unstable();
            members.dedup();
            for &v in &members {
                let slot = seen
                    .get_mut(v as usize)
                    .ok_or(Error::VertexOutOfRange { vertex: v, n })?;
                if *slot {
                    return Err(Error::PartitionOverlap(v));
                }
                *slot = true;
            }
            out.push(Block {
                label: label.into(),
                members,
            });
        }
        Ok(VertexPartition { n, blocks: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, label: &str) -> Option<&[Vertex]> {
        self.blocks
            .iter()
            .find(|b| b.label == label)
            .map(|b| b.members.as_slice())
    }

    pub fn label_of(&self, v: Vertex) -> Option<&str> {
        self.blocks
            .iter()
            .find(|b| b.members.binary_search(&v).is_ok())
            .map(|b| b.label.as_str())
    }

    /// The multiset of block labels met by `edge`, sorted (e.g. `UUW`).
    pub fn edge_type(&self, edge: &[Vertex]) -> Result<EdgeType> {
        let mut labels = Vec::with_capacity(edge.len());
        for &v in edge {
            labels.push(
                self.label_of(v)
                    .ok_or(Error::OutsidePartition(v))?
                    .to_string(),
            );
        }
        labels.sort();
        Ok(EdgeType(labels))
    }
}

/// Canonically ordered multiset of block labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeType(pub Vec<String>);

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(l)?;
        }
        Ok(())
    }
}
