//! Exact branch-and-bound matching solver for k-uniform hypergraphs.
//!
//! The search branches on the lowest-labeled undecided vertex: first on each
//! available incident edge (lexicographic edge order), then on leaving the
//! vertex uncovered, which is disabled for vertices that must be covered. A
//! branch is cut when `current + bound(free vertices) <= best`. Node order is
//! fixed, so results do not depend on timing or thread count.

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::mask::VertexMask;
use crate::matching::Matching;

/// Optional limits on a single solve. Exceeding either returns the best
/// matching found so far, flagged non-optimal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SolveBudget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub matching: Matching,
    /// True when the search was exhausted: no larger feasible matching exists.
    pub optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Outcome of a constrained search that may have no feasible solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Found(SolveResult),
    /// Search exhausted without a feasible matching.
    Infeasible(SearchStats),
    /// Budget ran out before any feasible matching was found.
    Undecided(SearchStats),
}

impl Feasibility {
    pub fn found(&self) -> Option<&SolveResult> {
        match self {
            Feasibility::Found(r) => Some(r),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<SolveResult> {
        match self {
            Feasibility::Found(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Feasibility::Undecided(_))
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            Feasibility::Found(r) => SearchStats {
                nodes_explored: r.nodes_explored,
                elapsed: r.elapsed,
            },
            Feasibility::Infeasible(s) | Feasibility::Undecided(s) => *s,
        }
    }
}

/// Solver bound to one host hypergraph.
#[derive(Debug, Clone, Copy)]
pub struct MatchingSolver<'a> {
    host: &'a Hypergraph,
    budget: SolveBudget,
}

impl<'a> MatchingSolver<'a> {
    pub fn new(host: &'a Hypergraph) -> Self {
        MatchingSolver {
            host,
            budget: SolveBudget::unlimited(),
        }
    }

    pub fn with_budget(mut self, budget: SolveBudget) -> Self {
        self.budget = budget;
        self
    }

    /// A maximum matching.
    pub fn max_matching(&self) -> SolveResult {
        let cap = self.host.n() / self.host.k();
        let engine = Engine::new(self.host, |_| true, None, None, cap, self.budget);
        engine.run().into_result(self.host)
    }

    /// A matching of at least `size` edges, if one exists.
    pub fn matching_of_size(&self, size: usize) -> Feasibility {
        if size == 0 {
            return Feasibility::Found(SolveResult {
                matching: Matching::empty(self.host),
                optimal: false,
                nodes_explored: 0,
                elapsed: Duration::ZERO,
            });
        }
        if size * self.host.k() > self.host.n() {
            return Feasibility::Infeasible(SearchStats::default());
        }
        let engine = Engine::new(self.host, |_| true, None, None, size, self.budget);
        engine.run().into_feasibility(self.host, Some(size))
    }

    /// A perfect matching, if one exists. Short-circuits when `k ∤ n` or an
    /// isolated vertex exists.
    pub fn perfect_matching(&self) -> Feasibility {
        let (n, k) = (self.host.n(), self.host.k());
        if n % k != 0 || (0..n as Vertex).any(|v| self.host.vertex_degree(v) == 0) {
            return Feasibility::Infeasible(SearchStats::default());
        }
        let all = VertexMask::full(n);
        let engine = Engine::new(self.host, |_| true, Some(all), None, n / k, self.budget);
        engine.run().into_feasibility(self.host, None)
    }

    /// Maximum matching whose edges each contain exactly one vertex of `w`
    /// and `k - 1` vertices outside it.
    pub fn max_uuw_matching(&self, w: &[Vertex]) -> Result<SolveResult> {
        for &v in w {
            self.host.check_vertex(v)?;
        }
        let n = self.host.n();
        let k = self.host.k();
        let w_mask = VertexMask::from_vertices(n, w);
        let w_count = w_mask.count();
        let cap = w_count.min((n - w_count) / (k - 1));
        let filter = |e: &[Vertex]| e.iter().filter(|&&v| w_mask.contains(v)).count() == 1;
        let engine = Engine::new(self.host, filter, None, Some(w_mask.clone()), cap, self.budget);
        Ok(engine.run().into_result(self.host))
    }

    /// Among matchings covering every vertex of `w`, one of maximum size.
    pub fn max_w_covering_matching(&self, w: &[Vertex]) -> Result<Feasibility> {
        for &v in w {
            self.host.check_vertex(v)?;
        }
        let n = self.host.n();
        let required = VertexMask::from_vertices(n, w);
        if required.iter().any(|v| self.host.vertex_degree(v) == 0) {
            return Ok(Feasibility::Infeasible(SearchStats::default()));
        }
        let cap = n / self.host.k();
        let engine = Engine::new(self.host, |_| true, Some(required), None, cap, self.budget);
        Ok(engine.run().into_feasibility(self.host, None))
    }
}

pub fn max_matching(h: &Hypergraph) -> SolveResult {
    MatchingSolver::new(h).max_matching()
}

pub fn has_perfect_matching(h: &Hypergraph) -> Option<Matching> {
    MatchingSolver::new(h)
        .perfect_matching()
        .into_found()
        .map(|r| r.matching)
}

pub fn max_uuw_matching(h: &Hypergraph, w: &[Vertex]) -> Result<SolveResult> {
    MatchingSolver::new(h).max_uuw_matching(w)
}

pub fn max_w_covering_matching(h: &Hypergraph, w: &[Vertex]) -> Result<Option<SolveResult>> {
    Ok(MatchingSolver::new(h)
        .max_w_covering_matching(w)?
        .into_found())
}

struct Engine<'a> {
    n: usize,
    k: usize,
    masks: &'a [VertexMask],
    options: Vec<Vec<u32>>,
    required: Option<VertexMask>,
    w_class: Option<VertexMask>,
    w_in_edge: Vec<u8>,
    blocked: VertexMask,
    free_count: usize,
    free_w: usize,
    stack: Vec<u32>,
    best: Option<Vec<u32>>,
    cap: usize,
    nodes: u64,
    budget: SolveBudget,
    start: Instant,
    aborted: bool,
}

struct EngineOutcome {
    best: Option<Vec<u32>>,
    exhausted: bool,
    nodes: u64,
    elapsed: Duration,
}

impl EngineOutcome {
    fn into_result(self, host: &Hypergraph) -> SolveResult {
        let ids = self.best.unwrap_or_default();
        SolveResult {
            matching: Matching::from_ids(host, &ids),
            optimal: self.exhausted,
            nodes_explored: self.nodes,
            elapsed: self.elapsed,
        }
    }

    /// `target`: when set, reaching that size counts as a decision even if
    /// the search stopped early.
    fn into_feasibility(self, host: &Hypergraph, target: Option<usize>) -> Feasibility {
        let stats = SearchStats {
            nodes_explored: self.nodes,
            elapsed: self.elapsed,
        };
        match self.best {
            Some(ids) if target.is_none_or(|t| ids.len() >= t) => Feasibility::Found(SolveResult {
                matching: Matching::from_ids(host, &ids),
                optimal: self.exhausted,
                nodes_explored: self.nodes,
                elapsed: self.elapsed,
            }),
            _ if self.exhausted => Feasibility::Infeasible(stats),
            _ => Feasibility::Undecided(stats),
        }
    }
}

impl<'a> Engine<'a> {
    fn new<F: Fn(&[Vertex]) -> bool>(
        host: &'a Hypergraph,
        allow: F,
        required: Option<VertexMask>,
        w_class: Option<VertexMask>,
        cap: usize,
        budget: SolveBudget,
    ) -> Self {
        let n = host.n();
        let allowed: Vec<bool> = host.edges().map(&allow).collect();
        let options = (0..n as Vertex)
            .map(|v| {
                host.incident_edges(v)
                    .iter()
                    .copied()
                    .filter(|&id| allowed[id as usize])
                    .collect()
            })
            .collect();
        let w_in_edge = match &w_class {
            Some(w) => host
                .edges()
                .map(|e| e.iter().filter(|&&v| w.contains(v)).count() as u8)
                .collect(),
            None => Vec::new(),
        };
        let free_w = w_class.as_ref().map_or(0, VertexMask::count);
        Engine {
            n,
            k: host.k(),
            masks: host.edge_masks(),
            options,
            required,
            w_class,
            w_in_edge,
            blocked: VertexMask::empty(n),
            free_count: n,
            free_w,
            stack: Vec::with_capacity(n / host.k()),
            best: None,
            cap,
            nodes: 0,
            budget,
            start: Instant::now(),
            aborted: false,
        }
    }

    fn run(mut self) -> EngineOutcome {
        let infeasible_required = self
            .required
            .as_ref()
            .is_some_and(|r| r.iter().any(|v| self.options[v as usize].is_empty()));
        if !infeasible_required {
            self.search(0);
        }
        EngineOutcome {
            exhausted: !self.aborted,
            best: self.best,
            nodes: self.nodes,
            elapsed: self.start.elapsed(),
        }
    }

    fn done(&self) -> bool {
        self.aborted || self.best.as_ref().is_some_and(|b| b.len() >= self.cap)
    }

    fn out_of_budget(&mut self) -> bool {
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                return true;
            }
        }
        if let Some(max) = self.budget.max_time {
            if self.nodes.is_multiple_of(1024) && self.start.elapsed() > max {
                return true;
            }
        }
        false
    }

    fn upper_bound(&self) -> usize {
        let by_size = self.free_count / self.k;
        match &self.w_class {
            Some(_) => by_size
                .min(self.free_w)
                .min((self.free_count - self.free_w) / (self.k - 1)),
            None => by_size,
        }
    }

    fn search(&mut self, from: usize) {
        self.nodes += 1;
        if self.out_of_budget() {
            self.aborted = true;
            return;
        }
        if let Some(best) = &self.best {
            if self.stack.len() + self.upper_bound() <= best.len() {
                return;
            }
        }
        let mut v = from;
        while v < self.n && self.blocked.contains(v as Vertex) {
            v += 1;
        }
        if v == self.n {
            if self.best.as_ref().is_none_or(|b| self.stack.len() > b.len()) {
                self.best = Some(self.stack.clone());
            }
            return;
        }
        let vertex = v as Vertex;
        for i in 0..self.options[v].len() {
            let id = self.options[v][i];
            let mask = &self.masks[id as usize];
            if !mask.is_disjoint(&self.blocked) {
                continue;
            }
            self.blocked.union_with(mask);
            self.free_count -= self.k;
            let w_used = self.w_in_edge.get(id as usize).copied().unwrap_or(0) as usize;
            self.free_w -= w_used;
            self.stack.push(id);
            self.search(v + 1);
            self.stack.pop();
            self.free_w += w_used;
            self.free_count += self.k;
            self.blocked.difference_with(&self.masks[id as usize]);
            if self.done() {
                return;
            }
        }
        let must_cover = self.required.as_ref().is_some_and(|r| r.contains(vertex));
        if !must_cover {
            let in_w = self.w_class.as_ref().is_some_and(|w| w.contains(vertex));
            self.blocked.insert(vertex);
            self.free_count -= 1;
            self.free_w -= in_w as usize;
            self.search(v + 1);
            self.free_w += in_w as usize;
            self.free_count += 1;
            self.blocked.remove(vertex);
        }
    }
}
