//! Scan reports: a versioned JSON document and a tab-separated witness table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use ore3_core::constructions::CrossoverS;
use ore3_core::solver::{MatchingSolver, SolveBudget};
use ore3_core::{embeds_in_h2, embeds_in_h_star, Hypergraph, Sigma2Variant, Vertex};

use crate::error::{HarnessError, Result};

pub const FORMAT_VERSION: &str = "ore3-scan/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanParams {
    pub n: usize,
    pub k: usize,
    pub s: Option<usize>,
    pub eps: Option<String>,
    /// Named thresholds as exact rationals, e.g. `"sigma2_prime": "10"`.
    pub thresholds: BTreeMap<String, String>,
    pub seed: u64,
    pub samples: Option<u64>,
    pub budget_nodes: Option<u64>,
    pub workers: usize,
    pub mode: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub scanned: u64,
    /// Instances satisfying the hypothesis under test.
    pub filtered: u64,
    /// Filtered instances where the conclusion failed.
    pub violating: u64,
}

impl Totals {
    pub fn consistent(&self) -> bool {
        self.violating <= self.filtered && self.filtered <= self.scanned
    }
}

/// Statistics stored with a witness; recomputed on revalidation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStats {
    pub num_edges: usize,
    pub sigma2_prime: Option<u64>,
    pub min_degree: usize,
    pub isolated: usize,
    pub max_matching: usize,
    pub has_perfect_matching: bool,
    /// Size of the sparse side used for the embedding test.
    pub embed_size: usize,
    pub embedding: Option<Vec<Vertex>>,
}

impl WitnessStats {
    /// Exact statistics; `embed_size` selects the construction tested.
    pub fn compute(h: &Hypergraph, embed_size: usize) -> Result<Self> {
        let max_matching = MatchingSolver::new(h)
            .with_budget(SolveBudget::unlimited())
            .max_matching()
            .matching
            .len();
        let embedding = if h.n().is_multiple_of(3) && embed_size == h.n() / 3 + 1 {
            embeds_in_h_star(h)?
        } else {
            let s = (h.n() + 1 - embed_size) / 2;
            embeds_in_h2(h, s)?
        };
        Ok(WitnessStats {
            num_edges: h.num_edges(),
            sigma2_prime: h.sigma2(Sigma2Variant::Adjacent),
            min_degree: h.min_degree(),
            isolated: h.isolated_vertices().len(),
            max_matching,
            has_perfect_matching: max_matching * h.k() == h.n(),
            embed_size,
            embedding,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// Instance mask (exhaustive) or sample index (sampled).
    pub key: u64,
    pub role: String,
    pub n: usize,
    pub k: usize,
    pub edges: Vec<Vec<Vertex>>,
    pub stats: WitnessStats,
}

impl WitnessRecord {
    pub fn new(key: u64, role: &str, h: &Hypergraph, embed_size: usize) -> Result<Self> {
        Ok(WitnessRecord {
            key,
            role: role.to_string(),
            n: h.n(),
            k: h.k(),
            edges: h.edges().map(<[Vertex]>::to_vec).collect(),
            stats: WitnessStats::compute(h, embed_size)?,
        })
    }

    pub fn hypergraph(&self) -> Result<Hypergraph> {
        Ok(Hypergraph::new(self.n, self.k, &self.edges)?)
    }

    /// Recomputes the statistics from the stored edges and compares.
    pub fn revalidate(&self) -> Result<bool> {
        let h = self.hypergraph()?;
        Ok(WitnessStats::compute(&h, self.stats.embed_size)? == self.stats)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub sigma2_prime: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub format_version: String,
    pub experiment: String,
    pub params: ScanParams,
    pub totals: Totals,
    pub classification: BTreeMap<String, u64>,
    /// What the census counts, e.g. instances without a perfect matching.
    pub census_of: String,
    pub census: Vec<CensusRow>,
    pub witness_cap: usize,
    pub witnesses: Vec<WitnessRecord>,
    /// Wall-clock time; kept out of the document so reruns are byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn empty(experiment: &str, params: ScanParams) -> Self {
        ScanReport {
            format_version: FORMAT_VERSION.into(),
            experiment: experiment.into(),
            params,
            totals: Totals::default(),
            classification: BTreeMap::new(),
            census_of: String::new(),
            census: Vec::new(),
            witness_cap: 0,
            witnesses: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn census_max(&self) -> Option<u64> {
        self.census.iter().map(|r| r.sigma2_prime).max()
    }

    pub fn census_count(&self, sigma2_prime: u64) -> u64 {
        self.census
            .iter()
            .find(|r| r.sigma2_prime == sigma2_prime)
            .map_or(0, |r| r.count)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: ScanReport = serde_json::from_str(text)?;
        if r.format_version != FORMAT_VERSION {
            return Err(HarnessError::Usage(format!(
                "unsupported report version {:?}",
                r.format_version
            )));
        }
        Ok(r)
    }

    /// One row per witness.
    pub fn to_table(&self) -> String {
        let mut out = String::from("key\trole\tn\tedges\tsigma2_prime\tmin_degree\tmax_matching\thas_pm\tembedding\n");
        for w in &self.witnesses {
            let edges: Vec<String> = w
                .edges
                .iter()
                .map(|e| e.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
                .collect();
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                w.key,
                w.role,
                w.n,
                edges.join(";"),
                opt(w.stats.sigma2_prime),
                w.stats.min_degree,
                w.stats.max_matching,
                w.stats.has_perfect_matching,
                w.stats
                    .embedding
                    .as_ref()
                    .map_or("-".to_string(), |s| s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
            );
        }
        out
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or("-".to_string(), |v| v.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Structured,
    Table,
}

pub fn report_emit(r: &ScanReport, path: impl AsRef<Path>, format: ReportFormat) -> Result<()> {
    let path = path.as_ref();
    let body = match format {
        ReportFormat::Structured => r.to_json()?,
        ReportFormat::Table => r.to_table(),
    };
    fs::write(path, body).map_err(|e| HarnessError::io(path, e))
}

pub fn read_report(path: impl AsRef<Path>) -> Result<ScanReport> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    ScanReport::from_json(&text)
}

/// One row per `s`.
pub fn crossover_s_table(c: &CrossoverS) -> String {
    let mut out = String::from("s\tsigma2_prime_ell2\tsigma2_prime_ell3\tell2_ge_ell3\ts_le_threshold\tagrees\n");
    for r in &c.rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.s,
            r.sigma_ell2,
            r.sigma_ell3,
            r.ell2_ge_ell3,
            r.below_threshold,
            r.agrees()
        );
    }
    out
}
