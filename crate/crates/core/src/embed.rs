//! Embedding tests into the two-part constructions.
//!
//! A 3-graph embeds into the construction with a small side of size `m`
//! exactly when some `m`-set of vertices meets every edge in at most one
//! vertex, i.e. when the shadow graph has an independent set of size `m`.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::mask::VertexMask;

/// The lexicographically first `size`-set meeting every edge in at most one
/// vertex, if any.
pub fn find_sparse_set(h: &Hypergraph, size: usize) -> Result<Option<Vec<Vertex>>> {
    h.require_three_uniform()?;
    if size > h.n() {
        return Ok(None);
    }
    let adj = h.shadow();
    let mut chosen = Vec::with_capacity(size);
    let candidates = VertexMask::full(h.n());
    Ok(extend(&adj, &candidates, 0, size, &mut chosen).then_some(chosen))
}

fn extend(
    adj: &[VertexMask],
    candidates: &VertexMask,
    from: usize,
    size: usize,
    chosen: &mut Vec<Vertex>,
) -> bool {
    if chosen.len() == size {
        return true;
    }
    let mut v = candidates.next_at_or_after(from);
    while let Some(x) = v {
        let remaining = candidates.iter().filter(|&c| c >= x).count();
        if chosen.len() + remaining < size {
            return false;
        }
        let mut next = candidates.clone();
        next.difference_with(&adj[x as usize]);
        next.remove(x);
        chosen.push(x);
        if extend(adj, &next, x as usize + 1, size, chosen) {
            return true;
        }
        chosen.pop();
        v = candidates.next_at_or_after(x as usize + 1);
    }
    false
}

/// Witness small side `S` (size `n/3 + 1`) showing `h` is a subgraph of H*
/// up to relabeling, if any.
pub fn embeds_in_h_star(h: &Hypergraph) -> Result<Option<Vec<Vertex>>> {
    h.require_three_uniform()?;
    if !h.n().is_multiple_of(3) {
        return Err(Error::Divisibility { n: h.n(), divisor: 3 });
    }
    find_sparse_set(h, h.n() / 3 + 1)
}

/// Witness small side (size `n - 2s + 1`) showing `h` is a subgraph of the
/// construction with `|T| = 2s - 1` and edges meeting `T` at least twice.
pub fn embeds_in_h2(h: &Hypergraph, s: usize) -> Result<Option<Vec<Vertex>>> {
    h.require_three_uniform()?;
    if s < 1 || 2 * s > h.n() + 1 {
        return Err(Error::InvalidParams(format!("s={s} invalid for n={}", h.n())));
    }
    find_sparse_set(h, h.n() + 1 - 2 * s)
}
