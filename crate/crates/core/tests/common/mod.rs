#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ore3_core::combin::for_each_combination;
use ore3_core::{Hypergraph, Vertex};

pub fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64) -> Hypergraph {
    let mut edges = Vec::new();
    for_each_combination(n, k, |c| {
        if rng.gen_bool(p) {
            edges.push(c.to_vec());
        }
    });
    Hypergraph::new(n, k, edges).unwrap()
}

pub fn edge_list(h: &Hypergraph) -> Vec<Vec<Vertex>> {
    h.edges().map(<[Vertex]>::to_vec).collect()
}

/// Largest matching by plain include/exclude recursion over the edge list.
pub fn brute_max_matching(edges: &[Vec<Vertex>]) -> usize {
    fn go(edges: &[Vec<Vertex>], i: usize, used: u64) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = go(edges, i + 1, used);
        let mask = edges[i].iter().fold(0u64, |m, &v| m | 1 << v);
        if mask & used == 0 {
            skip.max(1 + go(edges, i + 1, used | mask))
        } else {
            skip
        }
    }
    go(edges, 0, 0)
}

/// Pair degree by scanning every edge.
pub fn naive_codegree(edges: &[Vec<Vertex>], u: Vertex, v: Vertex) -> usize {
    edges.iter().filter(|e| e.contains(&u) && e.contains(&v)).count()
}

pub fn naive_degree(edges: &[Vec<Vertex>], v: Vertex) -> usize {
    edges.iter().filter(|e| e.contains(&v)).count()
}

/// Minimum of `deg(u) + deg(v)` over adjacent pairs, from the raw edge list.
pub fn naive_sigma2_prime(n: usize, edges: &[Vec<Vertex>]) -> Option<usize> {
    let deg: Vec<usize> = (0..n as Vertex).map(|v| naive_degree(edges, v)).collect();
    let mut best = None::<usize>;
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if naive_codegree(edges, u, v) > 0 {
                let s = deg[u as usize] + deg[v as usize];
                best = Some(best.map_or(s, |b| b.min(s)));
            }
        }
    }
    best
}
