mod common;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ore3_core::lemmas::{
    cross_disjoint_free, family_has_three_disjoint, lemma1_tight_family, transversal_triples, verify_lemma2,
    verify_lemma3, PairGraph, Witness,
};
use ore3_core::Vertex;

/// Pairs of `0..n` meeting `A = {0,1,2}`. Pairs missing A add nothing to the
/// degree sum and only add constraints, so dropping them keeps the maximum.
fn a_incident_pairs(n: Vertex) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, _)| a < 3)
        .collect()
}

fn all_pairs(n: Vertex) -> Vec<(Vertex, Vertex)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn disjoint(p: (Vertex, Vertex), q: (Vertex, Vertex)) -> bool {
    p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1
}

struct Naive {
    score: Vec<u64>,
    compatible: Vec<Vec<bool>>,
}

impl Naive {
    fn new(pairs: &[(Vertex, Vertex)]) -> Self {
        let size = 1usize << pairs.len();
        let members = |g: usize| (0..pairs.len()).filter(move |i| g >> i & 1 == 1).map(|i| pairs[i]);
        let score = (0..size)
            .map(|g| {
                members(g)
                    .map(|(a, b)| (a < 3) as u64 + (b < 3) as u64)
                    .sum()
            })
            .collect();
        let compatible = (0..size)
            .map(|g| {
                (0..size)
                    .map(|h| members(g).all(|p| members(h).all(|q| !disjoint(p, q))))
                    .collect()
            })
            .collect();
        Naive { score, compatible }
    }

    fn lemma2_max(&self) -> u64 {
        let size = self.score.len();
        let mut best = 0;
        for g1 in 0..size {
            for g2 in (0..size).filter(|&g2| self.compatible[g1][g2]) {
                for g3 in (0..size).filter(|&g3| self.compatible[g1][g3]) {
                    best = best.max(self.score[g1] + self.score[g2] + self.score[g3]);
                }
            }
        }
        best
    }

    fn lemma3_max(&self) -> u64 {
        let size = self.score.len();
        let mut best = 0;
        for g1 in 0..size {
            for g2 in (0..size).filter(|&g2| self.compatible[g1][g2]) {
                for g3 in (0..size).filter(|&g3| self.compatible[g1][g3] && self.compatible[g2][g3]) {
                    best = best.max(self.score[g1] + self.score[g2] + self.score[g3]);
                }
            }
        }
        best
    }
}

#[test]
fn lemma2_matches_naive_triple_enumeration_on_four_vertices() {
    let naive = Naive::new(&all_pairs(4)).lemma2_max();
    assert_eq!(naive, 18);
    assert_eq!(verify_lemma2(4).unwrap().max_found, naive);
}

#[test]
fn lemma2_matches_restricted_enumeration_on_five_vertices() {
    let naive = Naive::new(&a_incident_pairs(5)).lemma2_max();
    let verdict = verify_lemma2(5).unwrap();
    assert_eq!(verdict.max_found, naive);
    assert_eq!(naive, 24);
}

#[test]
fn lemma3_matches_restricted_enumeration_on_five_vertices() {
    let naive = Naive::new(&a_incident_pairs(5)).lemma3_max();
    let verdict = verify_lemma3(5).unwrap();
    assert_eq!(verdict.max_found, naive);
    assert_eq!(naive, 18);
}

#[test]
fn lemma_extremal_witnesses_satisfy_constraints() {
    for (verdict, pairwise) in [
        (verify_lemma2(5).unwrap(), false),
        (verify_lemma3(5).unwrap(), true),
    ] {
        let Some(Witness::GraphTriple { n, graphs }) = verdict.extremal else { panic!("no witness") };
        let g: Vec<PairGraph> = graphs.iter().map(|e| PairGraph::new(n, e.iter().copied()).unwrap()).collect();
        assert!(cross_disjoint_free(&g[0], &g[1]).unwrap());
        assert!(cross_disjoint_free(&g[0], &g[2]).unwrap());
        if pairwise {
            assert!(cross_disjoint_free(&g[1], &g[2]).unwrap());
        }
        let score: usize = g.iter().map(|x| (0..3).map(|v| x.degree(v)).sum::<usize>()).sum();
        assert_eq!(score as u64, verdict.max_found);
    }
}

fn brute_three_disjoint(family: &[[Vertex; 3]]) -> bool {
    let meets = |a: &[Vertex; 3], b: &[Vertex; 3]| a.iter().any(|x| b.contains(x));
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if meets(&family[i], &family[j]) {
                continue;
            }
            for k in j + 1..family.len() {
                if !meets(&family[i], &family[k]) && !meets(&family[j], &family[k]) {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn lemma1_disjointness_agrees_with_brute_force() {
    let all = transversal_triples();
    assert_eq!(all.len(), 27);
    assert!(brute_three_disjoint(&all));
    assert!(!brute_three_disjoint(&lemma1_tight_family()));
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e44a1);
    for _ in 0..5000 {
        let size = rng.gen_range(3..=27);
        let family: Vec<[Vertex; 3]> = all.choose_multiple(&mut rng, size).copied().collect();
        let expected = brute_three_disjoint(&family);
        assert_eq!(family_has_three_disjoint(&family), expected);
        if size >= 19 {
            assert!(expected, "{family:?}");
        }
    }
}
