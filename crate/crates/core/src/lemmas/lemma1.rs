//! Exhaustive check that a balanced 3-partite 3-graph with parts of size 3
//! and more than 18 edges has three disjoint edges.

use rayon::prelude::*;

use super::{LemmaVerdict, SearchMode, Witness};
use crate::hypergraph::Vertex;

/// The 27 triples `(a, b, c)` with `a ∈ {0,1,2}`, `b ∈ {3,4,5}`,
/// `c ∈ {6,7,8}`, in lexicographic order. Bit `i` of a family mask selects
/// triple `i`.
pub fn transversal_triples() -> Vec<[Vertex; 3]> {
    let mut out = Vec::with_capacity(27);
    for a in 0..3 {
        for b in 3..6 {
            for c in 6..9 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn triple_index(a: Vertex, b: Vertex, c: Vertex) -> usize {
    (a as usize) * 9 + (b as usize - 3) * 3 + (c as usize - 6)
}

const PERMS: [[u32; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Masks of the 36 perfect matchings of the complete 3-partite 3-graph.
fn perfect_matching_masks() -> Vec<u32> {
    let mut out = Vec::with_capacity(36);
    for sigma in PERMS {
        for tau in PERMS {
            let mut m = 0u32;
            for i in 0..3u32 {
                m |= 1 << triple_index(i, 3 + sigma[i as usize], 6 + tau[i as usize]);
            }
            out.push(m);
        }
    }
    out
}

/// The 18 triples whose first-part vertex is 0 or 1.
pub fn lemma1_tight_family() -> Vec<[Vertex; 3]> {
    transversal_triples().into_iter().filter(|t| t[0] < 2).collect()
}

fn family_mask(family: &[[Vertex; 3]]) -> u32 {
    family
        .iter()
        .fold(0, |m, t| m | 1 << triple_index(t[0], t[1], t[2]))
}

fn family_of(mask: u32) -> Vec<[Vertex; 3]> {
    let triples = transversal_triples();
    (0..27).filter(|i| mask >> i & 1 == 1).map(|i| triples[i]).collect()
}

const VIOLATION_SAMPLE: usize = 16;

/// Checks every 19-edge family of transversal triples for three disjoint
/// edges and certifies the 18-edge family with first vertex in `{0, 1}`.
pub fn verify_lemma1_333() -> LemmaVerdict {
    let pms = perfect_matching_masks();
    let has_pm = |f: u32| pms.iter().any(|&m| m & !f == 0);
    const CHUNK: u32 = 1 << 16;
    let (families, violators): (u64, Vec<u32>) = (0..(1u32 << 27) / CHUNK)
        .into_par_iter()
        .map(|chunk| {
            let mut count = 0u64;
            let mut bad = Vec::new();
            for f in chunk * CHUNK..(chunk + 1) * CHUNK {
                if f.count_ones() != 19 {
                    continue;
                }
                count += 1;
                if !has_pm(f) {
                    bad.push(f);
                }
            }
            (count, bad)
        })
        .reduce(
            || (0, Vec::new()),
            |(c1, mut b1), (c2, b2)| {
                b1.extend(b2);
                (c1 + c2, b1)
            },
        );
    let mut violators = violators;
    violators.sort_unstable();
    let violation_count = violators.len() as u64;

    let tight = lemma1_tight_family();
    let tight_mask = family_mask(&tight);
    let tight_ok = tight.len() == 18 && !has_pm(tight_mask);
    let max_found = if violation_count > 0 { 19 } else if tight_ok { 18 } else { 0 };
    LemmaVerdict {
        lemma: "lemma1-333".into(),
        n: 3,
        max_found,
        bound: 18,
        violations: violators
            .iter()
            .take(VIOLATION_SAMPLE)
            .map(|&f| Witness::TripleFamily(family_of(f)))
            .collect(),
        violation_count,
        extremal: tight_ok.then_some(Witness::TripleFamily(tight)),
        tight_reproduced: tight_ok,
        mode: SearchMode::Exhaustive,
        work: families,
    }
}

/// Whether `family` (transversal triples) contains three disjoint edges.
pub fn family_has_three_disjoint(family: &[[Vertex; 3]]) -> bool {
    let f = family_mask(family);
    perfect_matching_masks().iter().any(|&m| m & !f == 0)
}
