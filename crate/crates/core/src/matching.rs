use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::mask::VertexMask;

/// A set of pairwise vertex-disjoint edges of a host hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    n: usize,
    k: usize,
    edges: Vec<Vec<Vertex>>,
}

impl Matching {
    pub fn empty(host: &Hypergraph) -> Self {
        Matching {
            n: host.n(),
            k: host.k(),
            edges: Vec::new(),
        }
    }

    /// Validates that every edge belongs to `host` and that edges are
    /// pairwise disjoint. Edge order is kept as given.
    pub fn new<I, E>(host: &Hypergraph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        let mut owner: Vec<Option<usize>> = vec![None; host.n()];
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        for edge in edges {
            let mut e = edge.as_ref().to_vec();
            e.sort_unstable();
            if !host.contains_edge(&e) {
                return Err(Error::NotAnEdge(e));
            }
            for &v in &e {
                if let Some(j) = owner[v as usize] {
                    return Err(Error::MatchingOverlap(out[j].clone(), e));
                }
            }
            for &v in &e {
                owner[v as usize] = Some(out.len());
            }
            out.push(e);
        }
        Ok(Matching {
            n: host.n(),
            k: host.k(),
            edges: out,
        })
    }

    pub(crate) fn from_ids(host: &Hypergraph, ids: &[u32]) -> Self {
        Matching {
            n: host.n(),
            k: host.k(),
            edges: ids.iter().map(|&id| host.edge(id as usize).to_vec()).collect(),
        }
    }

    /// Re-checks the matching invariants against `host`.
    pub fn validate(&self, host: &Hypergraph) -> Result<()> {
        if host.n() != self.n || host.k() != self.k {
            return Err(Error::HostMismatch(self.n, self.k));
        }
        Matching::new(host, &self.edges).map(|_| ())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn host_shape(&self) -> (usize, usize) {
        (self.n, self.k)
    }

    pub fn covered(&self) -> VertexMask {
        let mut m = VertexMask::empty(self.n);
        for e in &self.edges {
            for &v in e {
                m.insert(v);
            }
        }
        m
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.edges.iter().any(|e| e.contains(&v))
    }

    /// Vertices not covered by the matching, ascending.
    pub fn uncovered(&self) -> Vec<Vertex> {
        let c = self.covered();
        (0..self.n as Vertex).filter(|&v| !c.contains(v)).collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.edges.len() * self.k == self.n
    }

    pub fn position(&self, edge: &[Vertex]) -> Option<usize> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.iter().position(|x| *x == e)
    }

    /// Removes `removed` and appends `added`, revalidating against `host`.
    pub fn replace(&self, host: &Hypergraph, removed: &[Vec<Vertex>], added: &[Vec<Vertex>]) -> Result<Matching> {
        let mut keep: Vec<Vec<Vertex>> = Vec::with_capacity(self.edges.len() + added.len());
        for e in &self.edges {
            if !removed.contains(e) {
                keep.push(e.clone());
            }
        }
        if keep.len() + removed.len() != self.edges.len() {
            return Err(Error::Precondition(
                "replacement removes an edge that is not in the matching".into(),
            ));
        }
        keep.extend(added.iter().cloned());
        Matching::new(host, keep)
    }
}
