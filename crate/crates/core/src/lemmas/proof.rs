//! A constructive run of the two-step perfect-matching argument: cover the
//! low-degree vertices first, then grow the matching with the local
//! augmentation rules until it is perfect or no rule applies.

use serde::{Deserialize, Serialize};

use super::augment::{augment_via_link, augment_via_pair, swap_cover_w, Replacement};
use super::{w_partition, ProofParams};
use crate::combin::for_each_combination;
use crate::embed::embeds_in_h_star;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::matching::Matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeKind {
    PerfectMatching,
    /// No rule applies and the host does not embed into H*.
    Stalled,
    /// No rule applies and the host embeds into H*.
    StructuralExit,
}

/// How often each rule fired.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCounts {
    pub greedy_uuw: u32,
    pub swap_cover_w: u32,
    pub greedy_cover_w: u32,
    pub greedy_extend: u32,
    pub via_pair: u32,
    pub via_link: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofOutcome {
    pub kind: OutcomeKind,
    pub matching: Matching,
    pub w: Vec<Vertex>,
    /// Whether the first step covered every vertex of `w`.
    pub w_covered: bool,
    pub rules: RuleCounts,
    /// The S-set of an embedding into H*, for structural exits.
    pub embedding: Option<Vec<Vertex>>,
}

impl ProofOutcome {
    pub fn is_perfect(&self) -> bool {
        self.kind == OutcomeKind::PerfectMatching
    }
}

struct State<'a> {
    h: &'a Hypergraph,
    in_w: Vec<bool>,
    m: Matching,
    rules: RuleCounts,
}

impl State<'_> {
    fn covered(&self) -> Vec<bool> {
        let mut c = vec![false; self.h.n()];
        for e in self.m.edges() {
            for &v in e {
                c[v as usize] = true;
            }
        }
        c
    }

    fn free_edge_through(&self, v: Vertex, accept: impl Fn(&[Vertex]) -> bool) -> Option<Vec<Vertex>> {
        let covered = self.covered();
        self.h
            .incident_edges(v)
            .iter()
            .map(|&id| self.h.edge(id as usize))
            .find(|e| e.iter().all(|&x| !covered[x as usize]) && accept(e))
            .map(<[Vertex]>::to_vec)
    }

    fn push(&mut self, e: Vec<Vertex>) -> Result<()> {
        self.m = self.m.replace(self.h, &[], &[e])?;
        Ok(())
    }

    fn apply(&mut self, r: &Replacement) -> Result<()> {
        let w: Vec<Vertex> = (0..self.h.n() as Vertex).filter(|&v| self.in_w[v as usize]).collect();
        r.ensure_keeps_covered(&w)?;
        let next = r.apply(self.h, &self.m)?;
        debug_assert!(next.len() > self.m.len());
        self.m = next;
        Ok(())
    }

    fn w_count(&self, e: &[Vertex]) -> usize {
        e.iter().filter(|&&v| self.in_w[v as usize]).count()
    }

    fn step_one(&mut self, w: &[Vertex]) -> Result<bool> {
        let mut pending = Vec::new();
        for &v0 in w {
            if self.m.covers(v0) {
                continue;
            }
            if let Some(e) = self.free_edge_through(v0, |e| self.w_count(e) == 1) {
                self.push(e)?;
                self.rules.greedy_uuw += 1;
                continue;
            }
            if self.try_swap(v0)? {
                self.rules.swap_cover_w += 1;
                continue;
            }
            pending.push(v0);
        }
        // general edges once the all-UUW phase is over
        for v0 in pending {
            if self.m.covers(v0) {
                continue;
            }
            if let Some(e) = self.free_edge_through(v0, |_| true) {
                self.push(e)?;
                self.rules.greedy_cover_w += 1;
            }
        }
        Ok(w.iter().all(|&v| self.m.covers(v)))
    }

    fn try_swap(&mut self, v0: Vertex) -> Result<bool> {
        let w: Vec<Vertex> = (0..self.h.n() as Vertex).filter(|&v| self.in_w[v as usize]).collect();
        let covered = self.covered();
        for u0 in 0..self.h.n() as Vertex {
            if self.in_w[u0 as usize] || covered[u0 as usize] || !self.h.adjacent(v0, u0)? {
                continue;
            }
            if let Some(r) = swap_cover_w(self.h, &self.m, &w, v0, u0)? {
                self.apply(&r)?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn step_two(&mut self) -> Result<()> {
        while !self.m.is_perfect() {
            if let Some(e) = self.first_free_edge() {
                self.push(e)?;
                self.rules.greedy_extend += 1;
            } else if let Some(r) = self.find_pair_augmentation()? {
                self.apply(&r)?;
                self.rules.via_pair += 1;
            } else if let Some(r) = self.find_link_augmentation()? {
                self.apply(&r)?;
                self.rules.via_link += 1;
            } else {
                break;
            }
        }
        Ok(())
    }

    fn first_free_edge(&self) -> Option<Vec<Vertex>> {
        let covered = self.covered();
        self.h
            .edges()
            .find(|e| e.iter().all(|&x| !covered[x as usize]))
            .map(<[Vertex]>::to_vec)
    }

    fn find_pair_augmentation(&self) -> Result<Option<Replacement>> {
        let u3 = self.m.uncovered();
        let edges = self.m.edges();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let mut found = None;
                let mut err = None;
                for_each_combination(u3.len(), 3, |c| {
                    if found.is_some() || err.is_some() {
                        return;
                    }
                    let free = [u3[c[0] as usize], u3[c[1] as usize], u3[c[2] as usize]];
                    match augment_via_pair(self.h, &self.m, &edges[i], &edges[j], &free) {
                        Ok(r) => found = r,
                        Err(e) => err = Some(e),
                    }
                });
                if let Some(e) = err {
                    return Err(e);
                }
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    fn find_link_augmentation(&self) -> Result<Option<Replacement>> {
        let u3 = self.m.uncovered();
        for e in self.m.edges() {
            let tags: Vec<Vertex> = e.iter().copied().filter(|&v| self.in_w[v as usize]).collect();
            // an edge with two or more W-vertices would uncover one of them
            let tag = match tags.len() {
                0 => None,
                1 => Some(tags[0]),
                _ => continue,
            };
            if let Some(r) = augment_via_link(self.h, &self.m, e, &u3, tag)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }
}

/// Runs the two-step construction on `h`. The rules are sound but not
/// complete: a stall is not a proof that no perfect matching exists.
pub fn proof_guided_pm(h: &Hypergraph, params: &ProofParams) -> Result<ProofOutcome> {
    h.require_three_uniform()?;
    params.validate()?;
    if !h.n().is_multiple_of(3) {
        return Err(Error::Divisibility { n: h.n(), divisor: 3 });
    }
    if let Some(&v) = h.isolated_vertices().first() {
        return Err(Error::Precondition(format!("vertex {v} is isolated")));
    }
    let partition = w_partition(h, &params.epsilon)?;
    let w = partition.block("W").unwrap_or_default().to_vec();
    let mut in_w = vec![false; h.n()];
    for &v in &w {
        in_w[v as usize] = true;
    }
    let mut st = State {
        h,
        in_w,
        m: Matching::empty(h),
        rules: RuleCounts::default(),
    };
    let w_covered = st.step_one(&w)?;
    if w_covered {
        st.step_two()?;
    }
    let (kind, embedding) = if st.m.is_perfect() {
        (OutcomeKind::PerfectMatching, None)
    } else {
        match embeds_in_h_star(h)? {
            Some(s) => (OutcomeKind::StructuralExit, Some(s)),
            None => (OutcomeKind::Stalled, None),
        }
    };
    Ok(ProofOutcome {
        kind,
        matching: st.m,
        w,
        w_covered,
        rules: st.rules,
        embedding,
    })
}
