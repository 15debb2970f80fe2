//! Every labeled 3-graph on `n <= 6` vertices, encoded as a bitmask over the
//! `C(n, 3)` triples in lexicographic order.

use rayon::prelude::*;

use ore3_core::combin::for_each_combination;
use ore3_core::{Hypergraph, Vertex};

use super::{judge, Aggregate, Facts, Plan, ScanConfig};

/// Lookup tables shared read-only by all workers.
#[derive(Debug, Clone)]
pub struct ExhaustiveTables {
    pub n: usize,
    pub triples: Vec<[Vertex; 3]>,
    pairs: Vec<(Vertex, Vertex)>,
    /// Pair-bit mask of the three pairs inside each triple.
    triple_pairs: Vec<u32>,
    /// Masks of two disjoint triples.
    disjoint_pairs: Vec<u32>,
    /// Per sparse-side size `m`: for every `m`-set, the triples meeting it
    /// in two or more vertices.
    forbidden: Vec<Vec<u32>>,
}

impl ExhaustiveTables {
    pub fn new(n: usize) -> Self {
        assert!((3..=6).contains(&n), "exhaustive tables need 3 <= n <= 6");
        let mut triples = Vec::new();
        for_each_combination(n, 3, |c| triples.push([c[0], c[1], c[2]]));
        let mut pairs = Vec::new();
        for_each_combination(n, 2, |c| pairs.push((c[0], c[1])));
        let pair_bit = |a: Vertex, b: Vertex| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
        let triple_pairs = triples
            .iter()
            .map(|t| (1 << pair_bit(t[0], t[1])) | (1 << pair_bit(t[0], t[2])) | (1 << pair_bit(t[1], t[2])))
            .collect();
        let mut disjoint_pairs = Vec::new();
        for i in 0..triples.len() {
            for j in i + 1..triples.len() {
                if triples[i].iter().all(|v| !triples[j].contains(v)) {
                    disjoint_pairs.push((1 << i) | (1 << j));
                }
            }
        }
        let forbidden = (0..=n)
            .map(|m| {
                let mut sets = Vec::new();
                for_each_combination(n, m, |s| {
                    let mask = triples
                        .iter()
                        .enumerate()
                        .filter(|(_, t)| t.iter().filter(|v| s.contains(v)).count() >= 2)
                        .fold(0u32, |acc, (i, _)| acc | 1 << i);
                    sets.push(mask);
                });
                sets
            })
            .collect();
        ExhaustiveTables {
            n,
            triples,
            pairs,
            triple_pairs,
            disjoint_pairs,
            forbidden,
        }
    }

    pub fn num_instances(&self) -> u64 {
        1 << self.triples.len()
    }

    pub fn hypergraph(&self, mask: u64) -> Hypergraph {
        let edges = self
            .triples
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, t)| *t);
        Hypergraph::new(self.n, 3, edges).expect("valid triples")
    }

    /// Mask of `h`'s edges; `h` must be a 3-graph on `n` vertices.
    pub fn mask_of(&self, h: &Hypergraph) -> u64 {
        h.edges()
            .map(|e| self.triples.iter().position(|t| t[..] == *e).expect("3-edge"))
            .fold(0, |m, i| m | 1 << i)
    }

    fn facts(&self, mask: u32) -> MaskFacts<'_> {
        let mut deg = [0u32; 6];
        let mut adj = 0u32;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            for &v in &self.triples[i] {
                deg[v as usize] += 1;
            }
            adj |= self.triple_pairs[i];
        }
        let mut sigma = None::<u64>;
        let mut a = adj;
        while a != 0 {
            let p = a.trailing_zeros() as usize;
            a &= a - 1;
            let (u, v) = self.pairs[p];
            let s = (deg[u as usize] + deg[v as usize]) as u64;
            sigma = Some(sigma.map_or(s, |x| x.min(s)));
        }
        MaskFacts {
            tables: self,
            mask,
            isolated: deg[..self.n].contains(&0),
            sigma,
        }
    }
}

struct MaskFacts<'a> {
    tables: &'a ExhaustiveTables,
    mask: u32,
    isolated: bool,
    sigma: Option<u64>,
}

impl Facts for MaskFacts<'_> {
    fn sigma2_prime(&self) -> Option<u64> {
        self.sigma
    }

    fn has_isolated(&self) -> bool {
        self.isolated
    }

    fn has_matching_of_size(&mut self, s: usize) -> Option<bool> {
        // at most two disjoint triples fit in six vertices
        Some(match s {
            0 => true,
            1 => self.mask != 0,
            2 => self.tables.disjoint_pairs.iter().any(|&p| p & !self.mask == 0),
            _ => false,
        })
    }

    fn embeds(&mut self, size: usize) -> bool {
        self.tables
            .forbidden
            .get(size)
            .is_some_and(|sets| sets.iter().any(|&f| f & self.mask == 0))
    }
}

const SHARD_BITS: u32 = 12;

pub(super) fn scan(plan: &Plan, cfg: &ScanConfig) -> Aggregate {
    let tables = ExhaustiveTables::new(plan.n);
    let bits = tables.triples.len() as u32;
    let shard_bits = SHARD_BITS.min(bits);
    let shards = 1u32 << (bits - shard_bits);
    let cap = cfg.witness_cap;
    (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut agg = Aggregate::default();
            let base = shard << shard_bits;
            for mask in base..base + (1 << shard_bits) {
                let mut f = tables.facts(mask);
                let j = judge(plan, &mut f);
                agg.record(mask as u64, j, cap, || tables.hypergraph(mask as u64));
            }
            agg
        })
        .reduce(Aggregate::default, |a, b| a.merge(b, cap))
}
