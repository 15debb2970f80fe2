//! Threshold scans over all (n <= 6) or sampled 3-graphs.
//!
//! Each experiment fixes a hypothesis (a degree-sum threshold, possibly with
//! no isolated vertices) and a conclusion (a perfect matching, a matching of
//! size `s`, or an embedding into a two-part construction). Instances are
//! judged independently and the per-shard results merge commutatively, so
//! reports do not depend on scheduling.

mod exhaustive;
mod sampled;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use ore3_core::constructions::{sigma2_prime_closed, ClosedForm, ConstructionParams};
use ore3_core::lemmas::w_partition;
use ore3_core::{embeds_in_h_star, has_perfect_matching, Hypergraph, Sigma2Variant, Vertex};

use crate::error::{HarnessError, Result};
use crate::report::{CensusRow, ScanParams, ScanReport, Totals, WitnessRecord};

pub use exhaustive::ExhaustiveTables;

pub const DEFAULT_SAMPLES: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Experiment {
    Theorem1,
    Theorem6,
    Conj2,
    Conj3,
    Conj4,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::Theorem1,
        Experiment::Theorem6,
        Experiment::Conj2,
        Experiment::Conj3,
        Experiment::Conj4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Theorem1 => "theorem1",
            Experiment::Theorem6 => "theorem6",
            Experiment::Conj2 => "conj2",
            Experiment::Conj3 => "conj3",
            Experiment::Conj4 => "conj4",
        }
    }

    fn is_theorem(self) -> bool {
        matches!(self, Experiment::Theorem1 | Experiment::Theorem6)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| HarnessError::Usage(format!("unknown experiment {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub n: usize,
    pub s: Option<usize>,
    pub eps: Option<BigRational>,
    pub seed: u64,
    /// `None` scans every labeled 3-graph (only for `n <= 6`).
    pub samples: Option<u64>,
    pub workers: usize,
    pub budget_nodes: Option<u64>,
    pub witness_cap: usize,
    /// Mutation proposals per hill-climbing sample.
    pub climb_steps: usize,
}

impl ScanConfig {
    pub fn new(n: usize) -> Self {
        ScanConfig {
            n,
            s: None,
            eps: None,
            seed: 0,
            samples: None,
            workers: 1,
            budget_nodes: None,
            witness_cap: 32,
            climb_steps: 16,
        }
    }
}

/// Exact thresholds of one scan, with the hypothesis `σ₂′ > threshold`
/// turned into `σ₂′ >= min_sigma`.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    pub exp: Experiment,
    pub n: usize,
    pub s: usize,
    pub min_sigma: u64,
    pub threshold: BigRational,
    /// Matching size whose absence is the barrier.
    pub target: usize,
    /// Sparse-side size of the embedding test.
    pub embed_size: usize,
    pub requires_no_isolated: bool,
}

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn min_above(thr: &BigRational) -> u64 {
    let f: BigInt = thr.floor().to_integer() + 1;
    if f.is_negative() {
        0
    } else {
        f.to_u64().unwrap_or(u64::MAX)
    }
}

impl Plan {
    pub fn new(exp: Experiment, cfg: &ScanConfig) -> Result<Self> {
        let n = cfg.n;
        if n > 64 {
            return Err(HarnessError::Usage(format!("n={n} is too large to scan")));
        }
        let (threshold, s) = if exp.is_theorem() {
            if !n.is_multiple_of(3) {
                return Err(ore3_core::Error::Divisibility { n, divisor: 3 }.into());
            }
            if n < 6 {
                return Err(HarnessError::Usage(format!("theorem scans need n >= 6, got {n}")));
            }
            let n2 = int(n * n);
            let thr = match exp {
                Experiment::Theorem1 => int(2 * n * n + 6 - 8 * n) / int(3),
                _ => {
                    let eps = cfg
                        .eps
                        .clone()
                        .ok_or_else(|| HarnessError::Usage("theorem6 needs --eps".into()))?;
                    if !eps.is_positive() || eps >= int(1) {
                        return Err(HarnessError::Usage(format!("eps must lie in (0,1), got {eps}")));
                    }
                    int(2) * &n2 / int(3) - eps * n2
                }
            };
            (thr, n / 3)
        } else {
            let s = cfg
                .s
                .ok_or_else(|| HarnessError::Usage(format!("{exp} needs --s")))?;
            let p2 = ConstructionParams::new(n, 3, s, 2)?;
            let thr = match exp {
                Experiment::Conj2 => sigma2_prime_closed(ClosedForm::EllOne, &ConstructionParams::new(n, 3, s, 1)?)?,
                Experiment::Conj3 => sigma2_prime_closed(ClosedForm::EllTwoCubic, &p2)?,
                _ if 9 * s <= 2 * n + 4 => sigma2_prime_closed(ClosedForm::EllTwoCubic, &p2)?,
                _ => sigma2_prime_closed(ClosedForm::EllThreeCubic, &ConstructionParams::new(n, 3, s, 3)?)?,
            };
            (BigRational::from_integer(thr), s)
        };
        Ok(Plan {
            exp,
            n,
            s,
            min_sigma: min_above(&threshold),
            threshold,
            target: s,
            embed_size: if exp.is_theorem() { n / 3 + 1 } else { n + 1 - 2 * s },
            requires_no_isolated: exp != Experiment::Conj4,
        })
    }

    fn census_of(&self) -> String {
        match self.exp {
            Experiment::Theorem1 | Experiment::Theorem6 => "no-isolated instances without a perfect matching".into(),
            Experiment::Conj4 => format!("instances without a matching of size {}", self.s),
            _ => format!("no-isolated instances without a matching of size {}", self.s),
        }
    }
}

/// Per-instance queries; implementations may compute lazily.
pub(crate) trait Facts {
    fn sigma2_prime(&self) -> Option<u64>;
    fn has_isolated(&self) -> bool;
    /// `None` when the solver budget ran out.
    fn has_matching_of_size(&mut self, s: usize) -> Option<bool>;
    fn embeds(&mut self, size: usize) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Judgement {
    pub filtered: bool,
    pub violating: bool,
    pub class: &'static str,
    pub census: Option<u64>,
    pub witness: Option<&'static str>,
}

pub(crate) fn judge(plan: &Plan, f: &mut dyn Facts) -> Judgement {
    let iso = f.has_isolated();
    let sigma = f.sigma2_prime();
    let has = f.has_matching_of_size(plan.target);
    let census_eligible = !(plan.requires_no_isolated && iso);
    let census = if census_eligible && has == Some(false) { sigma } else { None };
    let filtered = !(plan.requires_no_isolated && iso) && sigma.is_some_and(|x| x >= plan.min_sigma);
    let mut j = Judgement {
        filtered,
        violating: false,
        class: if plan.requires_no_isolated && iso { "isolated" } else { "below-threshold" },
        census,
        witness: None,
    };
    if !filtered {
        return j;
    }
    let (class, violating) = match plan.exp {
        Experiment::Theorem6 => match (f.embeds(plan.embed_size), has) {
            // pigeonhole forbids both
            (true, Some(true)) => ("inconsistent", true),
            (true, _) => ("embeds", false),
            (false, Some(true)) => ("has-pm", false),
            (false, Some(false)) => ("violator", true),
            (false, None) => ("undecided", false),
        },
        Experiment::Conj2 => match (f.embeds(plan.embed_size), has) {
            (true, Some(false)) => ("no-match-embeds", false),
            (false, Some(true)) => ("match-not-embeds", false),
            (false, Some(false)) => ("only-if-failure", true),
            (true, Some(true)) => ("if-failure", true),
            (_, None) => ("undecided", false),
        },
        Experiment::Theorem1 => match has {
            Some(true) => ("has-pm", false),
            Some(false) => ("violator", true),
            None => ("undecided", false),
        },
        Experiment::Conj3 | Experiment::Conj4 => match has {
            Some(true) => ("has-matching", false),
            Some(false) => ("violator", true),
            None => ("undecided", false),
        },
    };
    j.class = class;
    j.violating = violating;
    if violating || class == "undecided" {
        j.witness = Some(class);
    }
    j
}

/// Mergeable per-shard results.
#[derive(Debug, Clone, Default)]
pub(crate) struct Aggregate {
    pub totals: Totals,
    pub classes: BTreeMap<&'static str, u64>,
    pub census: BTreeMap<u64, u64>,
    pub witnesses: Vec<(u64, &'static str, Hypergraph)>,
}

impl Aggregate {
    pub fn record(&mut self, key: u64, j: Judgement, cap: usize, h: impl FnOnce() -> Hypergraph) {
        self.totals.scanned += 1;
        self.totals.filtered += j.filtered as u64;
        self.totals.violating += j.violating as u64;
        *self.classes.entry(j.class).or_default() += 1;
        if let Some(s) = j.census {
            *self.census.entry(s).or_default() += 1;
        }
        if let Some(role) = j.witness {
            // keys arrive in increasing order within a shard
            if self.witnesses.len() < cap {
                self.witnesses.push((key, role, h()));
            }
        }
    }

    pub fn merge(mut self, other: Aggregate, cap: usize) -> Aggregate {
        self.totals.scanned += other.totals.scanned;
        self.totals.filtered += other.totals.filtered;
        self.totals.violating += other.totals.violating;
        for (k, v) in other.classes {
            *self.classes.entry(k).or_default() += v;
        }
        for (k, v) in other.census {
            *self.census.entry(k).or_default() += v;
        }
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort_by_key(|w| w.0);
        self.witnesses.truncate(cap);
        self
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(HarnessError::Usage("--workers must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Usage(e.to_string()))
}

/// Runs one experiment and assembles its report.
pub fn run_scan(exp: Experiment, cfg: &ScanConfig) -> Result<ScanReport> {
    let start = Instant::now();
    let plan = Plan::new(exp, cfg)?;
    let exhaustive = cfg.samples.is_none();
    if exhaustive && cfg.n > 6 {
        return Err(HarnessError::Usage(format!(
            "exhaustive scans need n <= 6 (got {}); pass --samples",
            cfg.n
        )));
    }
    let mut thresholds = BTreeMap::new();
    thresholds.insert("sigma2_prime".to_string(), plan.threshold.to_string());
    let params = ScanParams {
        n: cfg.n,
        k: 3,
        s: (!exp.is_theorem()).then_some(plan.s),
        eps: (exp == Experiment::Theorem6).then(|| cfg.eps.as_ref().map(|e| e.to_string())).flatten(),
        thresholds,
        seed: cfg.seed,
        samples: cfg.samples,
        budget_nodes: cfg.budget_nodes,
        workers: cfg.workers,
        mode: if exhaustive { "exhaustive" } else { "sampled" }.into(),
    };
    let agg = pool(cfg.workers)?.install(|| {
        if exhaustive {
            exhaustive::scan(&plan, cfg)
        } else {
            sampled::scan(&plan, cfg)
        }
    });
    let witnesses = agg
        .witnesses
        .iter()
        .map(|(key, role, h)| WitnessRecord::new(*key, role, h, plan.embed_size))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ScanReport::empty(exp.name(), params);
    report.totals = agg.totals;
    report.classification = agg.classes.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    report.census_of = plan.census_of();
    report.census = agg
        .census
        .into_iter()
        .map(|(sigma2_prime, count)| CensusRow { sigma2_prime, count })
        .collect();
    report.witness_cap = cfg.witness_cap;
    report.witnesses = witnesses;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// How a single 3-graph fares against the perfect-matching statements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceClass {
    pub sigma2_prime: Option<u64>,
    pub isolated: usize,
    pub has_perfect_matching: bool,
    pub embedding: Option<Vec<Vertex>>,
    pub theorem1_threshold: String,
    pub above_theorem1: bool,
    pub theorem6_threshold: String,
    pub above_theorem6: bool,
    /// `embeds`, `has-pm` or `violator`.
    pub class: String,
    /// Size of the W side of the degree split at `eps`.
    pub w_size: usize,
}

pub fn classify_instance(h: &Hypergraph, eps: &BigRational) -> Result<InstanceClass> {
    let mut cfg = ScanConfig::new(h.n());
    cfg.eps = Some(eps.clone());
    let t1 = Plan::new(Experiment::Theorem1, &cfg)?;
    let t6 = Plan::new(Experiment::Theorem6, &cfg)?;
    let sigma = h.sigma2(Sigma2Variant::Adjacent);
    let above = |t: &BigRational| sigma.is_some_and(|x| &int(x) > t);
    let pm = has_perfect_matching(h).is_some();
    let embedding = embeds_in_h_star(h)?;
    let class = match (&embedding, pm) {
        (Some(_), _) => "embeds",
        (None, true) => "has-pm",
        (None, false) => "violator",
    };
    Ok(InstanceClass {
        sigma2_prime: sigma,
        isolated: h.isolated_vertices().len(),
        has_perfect_matching: pm,
        embedding,
        above_theorem1: above(&t1.threshold),
        theorem1_threshold: t1.threshold.to_string(),
        above_theorem6: above(&t6.threshold),
        theorem6_threshold: t6.threshold.to_string(),
        class: class.into(),
        w_size: w_partition(h, eps)?.block("W").map_or(0, <[Vertex]>::len),
    })
}
