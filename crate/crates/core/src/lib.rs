//! Core library for studying degree-sum conditions that force perfect
//! matchings and large matchings in 3-uniform hypergraphs.
//!
//! - [`Hypergraph`] with degree, link and `σ₂` queries
//! - extremal constructions and their exact closed forms ([`constructions`])
//! - an exact branch-and-bound matching solver ([`solver`])
//! - finite checks of the extremal lemmas and the augmentation rules
//!   ([`lemmas`])

pub mod combin;
pub mod constructions;
pub mod embed;
mod error;
pub mod hypergraph;
pub mod lemmas;
pub mod mask;
pub mod matching;
pub mod solver;

pub use embed::{embeds_in_h2, embeds_in_h_star, find_sparse_set};
pub use error::{Error, Result};
pub use hypergraph::{EdgeType, Hypergraph, LinkGraph, LinkScope, Sigma2Variant, Vertex, VertexPartition};
pub use mask::VertexMask;
pub use matching::Matching;
pub use solver::{has_perfect_matching, max_matching, max_uuw_matching, max_w_covering_matching, MatchingSolver};

/// Returns an S-set witnessing that `h` embeds into H*, if one exists.
pub fn is_subgraph_of_hstar(h: &Hypergraph) -> Result<Option<Vec<Vertex>>> {
    embeds_in_h_star(h)
}
