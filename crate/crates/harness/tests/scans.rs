use num_rational::BigRational;

use ore3_core::constructions::{complete, h_star};
use ore3_core::{has_perfect_matching, is_subgraph_of_hstar};
use ore3_harness::report::ScanReport;
use ore3_harness::scan::ExhaustiveTables;
use ore3_harness::{classify_instance, read_report, report_emit, run_scan, Experiment, ReportFormat, ScanConfig};

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn conj(n: usize, s: usize, samples: Option<u64>) -> ScanConfig {
    let mut cfg = ScanConfig::new(n);
    cfg.s = Some(s);
    cfg.samples = samples;
    cfg.seed = 3;
    cfg
}

#[test]
fn exhaustive_theorem1_counts_and_boundary() {
    let r = run_scan(Experiment::Theorem1, &ScanConfig::new(6)).unwrap();
    assert_eq!(r.totals.scanned, 1 << 20);
    assert!(r.totals.consistent());
    assert_eq!(r.params.thresholds["sigma2_prime"], "10");
    // the densest instances without a perfect matching sit exactly on the threshold
    assert_eq!(r.census_max(), Some(10));
    assert!(r.census_count(10) >= 20);
    let t = ExhaustiveTables::new(6);
    let h = h_star(6).unwrap().0;
    assert_eq!(t.hypergraph(t.mask_of(&h)), h);
}

#[test]
fn theorem6_filter_is_vacuous_at_small_eps() {
    let mut cfg = ScanConfig::new(6);
    cfg.eps = Some(ratio(1, 10));
    let r = run_scan(Experiment::Theorem6, &cfg).unwrap();
    assert_eq!(r.totals.filtered, 0);
    assert_eq!(r.params.thresholds["sigma2_prime"], "102/5");
    // a larger eps lowers the threshold and every filtered instance is classified
    cfg.eps = Some(ratio(1, 2));
    let r = run_scan(Experiment::Theorem6, &cfg).unwrap();
    assert!(r.totals.filtered > 0);
    let classified: u64 = ["embeds", "has-pm", "violator", "undecided", "inconsistent"]
        .iter()
        .map(|c| r.classification.get(*c).copied().unwrap_or(0))
        .sum();
    assert_eq!(classified, r.totals.filtered);
    assert_eq!(r.classification.get("inconsistent"), None);
}

#[test]
fn conjecture_thresholds() {
    let r = run_scan(Experiment::Conj3, &conj(6, 2, None)).unwrap();
    assert_eq!(r.params.thresholds["sigma2_prime"], "10");
    assert_eq!(r.totals.scanned, 1 << 20);
    let r = run_scan(Experiment::Conj4, &conj(15, 4, Some(4))).unwrap();
    assert_eq!(r.params.thresholds["sigma2_prime"], "90");
    let r = run_scan(Experiment::Conj4, &conj(15, 3, Some(0))).unwrap();
    // s = 3 <= 34/9 selects the ℓ = 2 value (2s-2)(n-1)
    assert_eq!(r.params.thresholds["sigma2_prime"], "56");
}

#[test]
fn conj2_reports_both_directions() {
    let r = run_scan(Experiment::Conj2, &conj(6, 2, None)).unwrap();
    assert_eq!(r.classification.get("if-failure"), None);
    let only_if = r.classification.get("only-if-failure").copied().unwrap_or(0);
    assert_eq!(only_if, r.totals.violating);
    for w in &r.witnesses {
        assert_eq!(w.role, "only-if-failure");
        assert_eq!(w.stats.max_matching, 1);
        assert!(w.stats.embedding.is_none());
        assert!(w.revalidate().unwrap());
    }
}

#[test]
fn zero_budget_gives_an_empty_valid_report() {
    let r = run_scan(Experiment::Conj3, &conj(9, 2, Some(0))).unwrap();
    assert_eq!(r.totals.scanned, 0);
    assert!(r.witnesses.is_empty());
    let json = r.to_json().unwrap();
    assert_eq!(ScanReport::from_json(&json).unwrap().to_json().unwrap(), json);
}

#[test]
fn sampled_reports_are_deterministic() {
    let mut a = conj(12, 3, Some(60));
    a.workers = 2;
    let r1 = run_scan(Experiment::Conj3, &a).unwrap().to_json().unwrap();
    let r2 = run_scan(Experiment::Conj3, &a).unwrap().to_json().unwrap();
    assert_eq!(r1, r2);
    let mut b = a.clone();
    b.workers = 1;
    let mut r3 = run_scan(Experiment::Conj3, &b).unwrap();
    r3.params.workers = 2;
    assert_eq!(r3.to_json().unwrap(), r1);
    let mut c = a.clone();
    c.seed = 4;
    assert_ne!(run_scan(Experiment::Conj3, &c).unwrap().to_json().unwrap(), r1);
}

#[test]
fn parameter_errors() {
    assert!(run_scan(Experiment::Theorem1, &ScanConfig::new(7)).is_err());
    assert!(run_scan(Experiment::Theorem6, &ScanConfig::new(6)).is_err());
    assert!(run_scan(Experiment::Conj3, &ScanConfig::new(6)).is_err());
    assert!(run_scan(Experiment::Conj3, &conj(6, 3, None)).is_err());
    assert!(run_scan(Experiment::Theorem1, &ScanConfig::new(9)).is_err());
    let mut zero_workers = ScanConfig::new(6);
    zero_workers.workers = 0;
    assert!(run_scan(Experiment::Theorem1, &zero_workers).is_err());
}

#[test]
fn emitted_reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_scan(Experiment::Conj2, &conj(6, 2, None)).unwrap();
    let json = dir.path().join("r.json");
    report_emit(&r, &json, ReportFormat::Structured).unwrap();
    let back = read_report(&json).unwrap();
    assert_eq!(back.totals, r.totals);
    assert_eq!(back.witnesses, r.witnesses);
    let tsv = dir.path().join("r.tsv");
    report_emit(&r, &tsv, ReportFormat::Table).unwrap();
    let text = std::fs::read_to_string(&tsv).unwrap();
    assert_eq!(text.lines().count(), 1 + r.witnesses.len());
    assert!(text.lines().all(|l| l.split('\t').count() == 9));
    assert!(report_emit(&r, "/nonexistent/dir/r.json", ReportFormat::Structured).is_err());
}

#[test]
fn h_star_embedding_examples() {
    let (h, p) = h_star(6).unwrap();
    let s = is_subgraph_of_hstar(&h).unwrap().unwrap();
    assert_eq!(s.len(), 3);
    assert_eq!(p.block("S").unwrap(), &s[..]);
    assert!(is_subgraph_of_hstar(&complete(6, 3).unwrap()).unwrap().is_none());
    for e in h.edges() {
        let smaller = h.filter_edges(|x| x != e);
        let s = is_subgraph_of_hstar(&smaller).unwrap().unwrap();
        assert!(smaller.edges().all(|x| x.iter().filter(|v| s.contains(v)).count() <= 1));
        assert!(has_perfect_matching(&smaller).is_none());
    }
    assert!(is_subgraph_of_hstar(&complete(7, 3).unwrap()).is_err());
}

#[test]
fn h_star_six_is_classified_as_embedding() {
    let c = classify_instance(&h_star(6).unwrap().0, &ratio(1, 10)).unwrap();
    assert_eq!(c.class, "embeds");
    assert_eq!(c.sigma2_prime, Some(10));
    assert_eq!(c.theorem1_threshold, "10");
    assert!(!c.above_theorem1);
    assert!(!c.has_perfect_matching);
    assert_eq!(c.w_size, 6);
}
