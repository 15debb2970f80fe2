//! Seeded sampling: half the samples are independent random 3-graphs, the
//! other half hill-climb from an extremal construction, toggling triples to
//! raise `σ₂′` while the matching barrier stays in place.
//!
//! Sample `i` draws from its own ChaCha stream, so results do not depend on
//! how samples are spread over workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ore3_core::combin::for_each_combination;
use ore3_core::constructions::{h_nkls, h_star, ConstructionParams};
use ore3_core::solver::{Feasibility, MatchingSolver, SolveBudget};
use ore3_core::{find_sparse_set, Hypergraph, Sigma2Variant, Vertex};

use super::{judge, Aggregate, Experiment, Facts, Plan, ScanConfig};

struct GraphFacts<'a> {
    h: &'a Hypergraph,
    budget: SolveBudget,
}

impl Facts for GraphFacts<'_> {
    fn sigma2_prime(&self) -> Option<u64> {
        self.h.sigma2(Sigma2Variant::Adjacent)
    }

    fn has_isolated(&self) -> bool {
        !self.h.isolated_vertices().is_empty()
    }

    fn has_matching_of_size(&mut self, s: usize) -> Option<bool> {
        has_matching(self.h, s, self.budget)
    }

    fn embeds(&mut self, size: usize) -> bool {
        find_sparse_set(self.h, size).ok().flatten().is_some()
    }
}

fn has_matching(h: &Hypergraph, s: usize, budget: SolveBudget) -> Option<bool> {
    match MatchingSolver::new(h).with_budget(budget).matching_of_size(s) {
        Feasibility::Found(_) => Some(true),
        Feasibility::Infeasible(_) => Some(false),
        Feasibility::Undecided(_) => None,
    }
}

fn triples(n: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for_each_combination(n, 3, |c| out.push(c.to_vec()));
    out
}

fn from_flags(n: usize, all: &[Vec<Vertex>], on: &[bool]) -> Hypergraph {
    let edges = all.iter().zip(on).filter(|(_, &b)| b).map(|(t, _)| t);
    Hypergraph::new(n, 3, edges).expect("valid triples")
}

/// Starting points for hill-climbing: graphs sitting on the barrier.
fn seeds(plan: &Plan) -> Vec<Hypergraph> {
    let n = plan.n;
    match plan.exp {
        Experiment::Theorem1 | Experiment::Theorem6 => vec![h_star(n).expect("checked").0],
        _ => [2, 3, 1]
            .into_iter()
            .filter_map(|ell| ConstructionParams::new(n, 3, plan.s, ell).ok())
            .filter_map(|p| h_nkls(&p).ok().map(|(h, _)| h))
            .collect(),
    }
}

fn climb(plan: &Plan, start: &Hypergraph, all: &[Vec<Vertex>], steps: usize, budget: SolveBudget, rng: &mut ChaCha8Rng) -> Hypergraph {
    let mut on: Vec<bool> = all.iter().map(|t| start.contains_edge(t)).collect();
    let mut cur = start.clone();
    let mut cur_sigma = cur.sigma2(Sigma2Variant::Adjacent).unwrap_or(0);
    for _ in 0..steps {
        let i = rng.gen_range(0..all.len());
        on[i] = !on[i];
        let next = from_flags(plan.n, all, &on);
        let sigma = next.sigma2(Sigma2Variant::Adjacent).unwrap_or(0);
        if sigma >= cur_sigma && has_matching(&next, plan.target, budget) == Some(false) {
            cur = next;
            cur_sigma = sigma;
        } else {
            on[i] = !on[i];
        }
    }
    cur
}

pub(super) fn scan(plan: &Plan, cfg: &ScanConfig) -> Aggregate {
    let samples = cfg.samples.unwrap_or(super::DEFAULT_SAMPLES);
    let budget = cfg.budget_nodes.map_or(SolveBudget::unlimited(), SolveBudget::nodes);
    let all = triples(plan.n);
    let seeds = seeds(plan);
    let cap = cfg.witness_cap;
    (0..samples)
        .into_par_iter()
        .fold(Aggregate::default, |mut agg, i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i);
            let h = if i % 2 == 0 || seeds.is_empty() {
                let p = rng.gen_range(0.35..0.95);
                let on: Vec<bool> = all.iter().map(|_| rng.gen_bool(p)).collect();
                from_flags(plan.n, &all, &on)
            } else {
                let start = &seeds[(i as usize / 2) % seeds.len()];
                climb(plan, start, &all, cfg.climb_steps, budget, &mut rng)
            };
            let j = judge(plan, &mut GraphFacts { h: &h, budget });
            agg.record(i, j, usize::MAX, || h.clone());
            if agg.witnesses.len() > cap {
                agg.witnesses.sort_by_key(|w| w.0);
                agg.witnesses.truncate(cap);
            }
            agg
        })
        .reduce(Aggregate::default, |a, b| a.merge(b, cap))
}
