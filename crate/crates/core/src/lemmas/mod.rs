//! Finite checks of the extremal lemmas and the augmentation rules used in
//! the perfect-matching argument.

mod augment;
mod lemma1;
mod pairs;
mod params;
mod proof;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex, VertexPartition};

pub use augment::{
    augment_via_link, augment_via_pair, link_bound_check, swap_cover_w, EdgeClass, EdgeLinkCheck,
    LinkBoundReport, PairLinkCheck, Replacement,
};
pub use lemma1::{family_has_three_disjoint, lemma1_tight_family, transversal_triples, verify_lemma1_333};
pub use pairs::{cross_disjoint_free, verify_lemma2, verify_lemma3, PairGraph};
pub use params::ProofParams;
pub use proof::{proof_guided_pm, ProofOutcome, OutcomeKind, RuleCounts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    Exhaustive,
    SmartExhaustive,
    Sampled,
}

/// Configuration attaining (or violating) a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// Three graphs on `0..n` given by their edge lists.
    GraphTriple {
        n: usize,
        graphs: [Vec<(Vertex, Vertex)>; 3],
    },
    /// A family of part-transversal triples.
    TripleFamily(Vec<[Vertex; 3]>),
}

/// Outcome of a finite lemma check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub lemma: String,
    pub n: usize,
    pub max_found: u64,
    pub bound: u64,
    pub violations: Vec<Witness>,
    /// Number of violating configurations (the list above may be truncated).
    pub violation_count: u64,
    /// A configuration attaining `max_found`.
    pub extremal: Option<Witness>,
    /// Whether the known tight configuration satisfies the constraint and
    /// attains `max_found`.
    pub tight_reproduced: bool,
    pub mode: SearchMode,
    /// Configurations examined.
    pub work: u64,
}

impl LemmaVerdict {
    pub fn holds(&self) -> bool {
        self.violation_count == 0 && self.max_found <= self.bound
    }

    pub fn is_tight(&self) -> bool {
        self.holds() && self.max_found == self.bound && self.tight_reproduced
    }
}

/// Splits vertices into low-degree `W` (`deg(v) <= n²/3 - εn²/2`) and
/// `U = V \ W`, by exact rational comparison.
pub fn w_partition(h: &Hypergraph, eps: &BigRational) -> Result<VertexPartition> {
    h.require_three_uniform()?;
    if eps <= &BigRational::from_integer(0.into()) || eps >= &BigRational::from_integer(1.into()) {
        return Err(Error::InvalidParams(format!("eps must lie in (0,1), got {eps}")));
    }
    let threshold = w_threshold(h.n(), eps);
    let (mut w, mut u) = (Vec::new(), Vec::new());
    for v in 0..h.n() as Vertex {
        let deg = BigRational::from_integer(BigInt::from(h.vertex_degree(v)));
        if deg <= threshold {
            w.push(v);
        } else {
            u.push(v);
        }
    }
    VertexPartition::new(h.n(), vec![("W", w), ("U", u)])
}

/// `n²/3 - εn²/2`.
pub fn w_threshold(n: usize, eps: &BigRational) -> BigRational {
    let n2 = BigRational::from_integer(BigInt::from(n * n));
    &n2 / BigInt::from(3) - eps * &n2 / BigInt::from(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, h_star};

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn w_partition_examples() {
        let (h, _) = h_star(6).unwrap();
        let p = w_partition(&h, &ratio(1, 10)).unwrap();
        assert_eq!(p.block("W").unwrap().len(), 6);
        assert!(p.block("U").unwrap().is_empty());
        assert_eq!(w_threshold(6, &ratio(1, 10)), ratio(51, 5));

        let k6 = complete(6, 3).unwrap();
        let p = w_partition(&k6, &ratio(1, 10)).unwrap();
        assert_eq!(p.block("W").unwrap().len(), 6);

        let empty = Hypergraph::empty(6, 3).unwrap();
        let p = w_partition(&empty, &ratio(1, 3)).unwrap();
        assert_eq!(p.block("W").unwrap().len(), 6);
    }

    #[test]
    fn w_partition_boundary_is_inclusive() {
        // n = 6, eps = 2/3: threshold 12 - 12 = 0, so only isolated vertices fall in W
        let h = Hypergraph::new(6, 3, [[0, 1, 2]]).unwrap();
        let p = w_partition(&h, &ratio(2, 3)).unwrap();
        assert_eq!(p.block("W").unwrap(), &[3, 4, 5]);
        assert!(w_partition(&h, &ratio(0, 1)).is_err());
        assert!(w_partition(&h, &ratio(1, 1)).is_err());
    }
}
