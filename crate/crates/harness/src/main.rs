use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use ore3_core::constructions::{complete, crossover_k, crossover_k_onset, crossover_s, full_star, h_nkls, h_star, ConstructionParams};
use ore3_core::lemmas::{verify_lemma1_333, verify_lemma2, verify_lemma3};
use ore3_core::solver::{Feasibility, MatchingSolver, SolveBudget};
use ore3_core::{Hypergraph, Sigma2Variant, Vertex};
use ore3_harness::report::crossover_s_table;
use ore3_harness::{read_hypergraph, report_emit, run_scan, write_hypergraph, Experiment, HarnessError, ReportFormat, Result, ScanConfig};

#[derive(Parser)]
#[command(name = "ore3", version, about = "Degree-sum matching thresholds in 3-graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a construction as an edge list.
    Construct {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree statistics of an edge-list file.
    Stats {
        path: PathBuf,
        /// Also print every vertex degree.
        #[arg(long)]
        degrees: bool,
    },
    /// Exact matching queries.
    Match {
        mode: MatchMode,
        path: PathBuf,
        /// Comma-separated vertex set for cover-w and uuw.
        #[arg(long, value_delimiter = ',')]
        w: Vec<Vertex>,
        #[arg(long)]
        budget_nodes: Option<u64>,
    },
    /// Finite checks of the extremal lemmas.
    VerifyLemma {
        lemma: u8,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Exhaustive or sampled threshold scan.
    Scan {
        experiment: ExperimentArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: Option<usize>,
        /// Rational such as 1/10 or 0.1.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count; omit for an exhaustive scan (n <= 6).
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long, default_value_t = 32)]
        witnesses: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Structured)]
        format: FormatArg,
    },
    /// Compare the constructions' degree-sum parameters.
    Crossover {
        #[command(subcommand)]
        which: Crossover,
    },
}

#[derive(Subcommand)]
enum Crossover {
    /// ℓ = 2 against ℓ = 3 for every s at fixed n.
    S {
        #[arg(long)]
        n: usize,
    },
    /// ℓ = 1 against ℓ = k-1 at s = n/k.
    K {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Also report the onset of the large-n ordering up to this order.
        #[arg(long)]
        onset: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Hstar,
    Hnkls,
    FullStar,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatchMode {
    Max,
    Perfect,
    CoverW,
    Uuw,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentArg {
    Theorem1,
    Theorem6,
    Conj2,
    Conj3,
    Conj4,
}

impl From<ExperimentArg> for Experiment {
    fn from(e: ExperimentArg) -> Self {
        match e {
            ExperimentArg::Theorem1 => Experiment::Theorem1,
            ExperimentArg::Theorem6 => Experiment::Theorem6,
            ExperimentArg::Conj2 => Experiment::Conj2,
            ExperimentArg::Conj3 => Experiment::Conj3,
            ExperimentArg::Conj4 => Experiment::Conj4,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Structured,
    Table,
}

fn usage(msg: impl Into<String>) -> HarnessError {
    HarnessError::Usage(msg.into())
}

/// Parses `a/b`, an integer, or a finite decimal exactly.
fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || usage(format!("not a rational number: {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(num, den));
    }
    BigRational::from_str(s).map_err(|_| bad())
}

fn need<T>(x: Option<T>, name: &str) -> Result<T> {
    x.ok_or_else(|| usage(format!("--{name} is required")))
}

fn construct(family: Family, n: usize, k: usize, s: Option<usize>, ell: Option<usize>) -> Result<Hypergraph> {
    Ok(match family {
        Family::Hstar => h_star(n)?.0,
        Family::Hnkls => h_nkls(&ConstructionParams::new(n, k, need(s, "s")?, need(ell, "ell")?)?)?.0,
        Family::FullStar => full_star(n)?,
        Family::Complete => complete(n, k)?,
    })
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or("none".into(), |v| v.to_string())
}

fn print_matching(label: &str, edges: &[Vec<Vertex>], optimal: bool, nodes: u64) {
    println!("{label}: size {} optimal {optimal} nodes {nodes}", edges.len());
    for e in edges {
        println!("  {}", e.iter().map(u32::to_string).collect::<Vec<_>>().join(" "));
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Construct { family, n, k, s, ell, out } => {
            let h = construct(family, n, k, s, ell)?;
            match out {
                Some(path) => write_hypergraph(&h, path)?,
                None => print!("{}", ore3_harness::format_hypergraph(&h)),
            }
        }
        Cmd::Stats { path, degrees } => {
            let parsed = read_hypergraph(&path)?;
            if parsed.duplicates > 0 {
                eprintln!("warning: dropped {} duplicate edges", parsed.duplicates);
            }
            let h = parsed.hypergraph;
            println!("n {} k {} edges {}", h.n(), h.k(), h.num_edges());
            println!("min_degree {}", h.min_degree());
            println!("isolated {}", h.isolated_vertices().len());
            if h.k() == 3 {
                println!("sigma2 {}", opt(h.sigma2(Sigma2Variant::All)));
                println!("sigma2_adjacent {}", opt(h.sigma2(Sigma2Variant::Adjacent)));
                println!("sigma2_nonadjacent {}", opt(h.sigma2(Sigma2Variant::NonAdjacent)));
            }
            if degrees {
                for (v, d) in h.degrees().iter().enumerate() {
                    println!("deg {v} {d}");
                }
            }
        }
        Cmd::Match { mode, path, w, budget_nodes } => {
            let h = read_hypergraph(&path)?.hypergraph;
            let budget = budget_nodes.map_or(SolveBudget::unlimited(), SolveBudget::nodes);
            let solver = MatchingSolver::new(&h).with_budget(budget);
            let report = |label: &str, f: Feasibility| match f {
                Feasibility::Found(r) => print_matching(label, r.matching.edges(), r.optimal, r.nodes_explored),
                Feasibility::Infeasible(s) => println!("{label}: none (nodes {})", s.nodes_explored),
                Feasibility::Undecided(s) => println!("{label}: undecided (budget spent, nodes {})", s.nodes_explored),
            };
            match mode {
                MatchMode::Max => {
                    let r = solver.max_matching();
                    print_matching("max", r.matching.edges(), r.optimal, r.nodes_explored);
                }
                MatchMode::Perfect => report("perfect", solver.perfect_matching()),
                MatchMode::CoverW => report("cover-w", solver.max_w_covering_matching(&w)?),
                MatchMode::Uuw => {
                    let r = solver.max_uuw_matching(&w)?;
                    print_matching("uuw", r.matching.edges(), r.optimal, r.nodes_explored);
                }
            }
        }
        Cmd::VerifyLemma { lemma, n } => {
            let v = match lemma {
                1 => verify_lemma1_333(),
                2 => verify_lemma2(need(n, "n")?)?,
                3 => verify_lemma3(need(n, "n")?)?,
                other => return Err(usage(format!("unknown lemma {other}; expected 1, 2 or 3"))),
            };
            println!(
                "{} n={} max {} bound {} violations {} tight {} work {} mode {:?}",
                v.lemma,
                v.n,
                v.max_found,
                v.bound,
                v.violation_count,
                v.is_tight(),
                v.work,
                v.mode
            );
        }
        Cmd::Scan {
            experiment,
            n,
            s,
            eps,
            seed,
            samples,
            workers,
            budget_nodes,
            witnesses,
            out,
            format,
        } => {
            let mut cfg = ScanConfig::new(n);
            cfg.s = s;
            cfg.eps = eps.as_deref().map(parse_rational).transpose()?;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.workers = workers;
            cfg.budget_nodes = budget_nodes;
            cfg.witness_cap = witnesses;
            let r = run_scan(experiment.into(), &cfg)?;
            eprintln!(
                "{}: scanned {} filtered {} violating {} in {:.2?}",
                r.experiment, r.totals.scanned, r.totals.filtered, r.totals.violating, r.elapsed
            );
            let format = match format {
                FormatArg::Structured => ReportFormat::Structured,
                FormatArg::Table => ReportFormat::Table,
            };
            match out {
                Some(path) => report_emit(&r, path, format)?,
                None => match format {
                    ReportFormat::Structured => print!("{}", r.to_json()?),
                    ReportFormat::Table => print!("{}", r.to_table()),
                },
            }
        }
        Cmd::Crossover { which } => match which {
            Crossover::S { n } => {
                let c = crossover_s(n)?;
                print!("{}", crossover_s_table(&c));
                eprintln!("threshold (2n+4)/9 = {}; exceptions {:?}", c.threshold, c.exceptions());
            }
            Crossover::K { k, n, onset } => {
                let c = crossover_k(k, n)?;
                println!(
                    "k {} n {} ell1 {} ell_k_minus_1 {} ordering {:?} expected {:?}",
                    c.k, c.n, c.sigma_ell1, c.sigma_ell_k_minus_1, c.ordering, c.expected()
                );
                if let Some(max) = onset {
                    println!("onset {}", opt(crossover_k_onset(k, max)?));
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
