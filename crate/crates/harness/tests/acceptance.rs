//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any FAIL.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ore3_core::combin::for_each_combination;
use ore3_core::constructions::{
    complete, crossover_k, crossover_s, full_star, h_nkls, h_star, sigma2_prime_closed, ClosedForm,
    ConstructionParams,
};
use ore3_core::lemmas::{proof_guided_pm, verify_lemma1_333, verify_lemma2, verify_lemma3, OutcomeKind, ProofParams};
use ore3_core::{has_perfect_matching, max_matching, Hypergraph, Sigma2Variant};
use ore3_harness::{classify_instance, run_scan, Experiment, ScanConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big_binom(n: i64, r: i64) -> BigInt {
    if r < 0 || n < r {
        return BigInt::from(0);
    }
    (0..r).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn random_3graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Hypergraph {
    let mut edges = Vec::new();
    for_each_combination(n, 3, |c| {
        if rng.gen_bool(p) {
            edges.push(c.to_vec());
        }
    });
    Hypergraph::new(n, 3, edges).unwrap()
}

/// Largest matching by include/exclude recursion over the edge list.
fn brute_max_matching(h: &Hypergraph) -> usize {
    fn go(edges: &[u64], i: usize, used: u64) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = go(edges, i + 1, used);
        if edges[i] & used == 0 {
            skip.max(1 + go(edges, i + 1, used | edges[i]))
        } else {
            skip
        }
    }
    let masks: Vec<u64> = h.edges().map(|e| e.iter().fold(0, |m, &v| m | 1 << v)).collect();
    go(&masks, 0, 0)
}

fn c1_formulas() -> Outcome {
    let mut checked = 0;
    for n in (6..=30).step_by(3) {
        let (h, _) = h_star(n).map_err(|e| e.to_string())?;
        let p = ConstructionParams::new(n, 3, n / 3, 2).unwrap();
        let closed = sigma2_prime_closed(ClosedForm::HStar, &p).unwrap();
        let direct = h.sigma2(Sigma2Variant::Adjacent).map(BigInt::from);
        ensure(direct.as_ref() == Some(&closed), || format!("H* n={n}: closed {closed} direct {direct:?}"))?;
        checked += 1;
    }
    for n in 6..=30 {
        for s in 2..=n / 3 {
            for ell in 1..=3 {
                let p = ConstructionParams::new(n, 3, s, ell).unwrap();
                let (h, _) = h_nkls(&p).unwrap();
                let form = match ell {
                    1 => ClosedForm::EllOne,
                    2 => ClosedForm::EllTwoCubic,
                    _ => ClosedForm::EllThreeCubic,
                };
                let closed = sigma2_prime_closed(form, &p).unwrap();
                let direct = h.sigma2(Sigma2Variant::Adjacent).map(BigInt::from);
                ensure(direct.as_ref() == Some(&closed), || {
                    format!("n={n} s={s} ell={ell}: closed {closed} direct {direct:?}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} constructions, exact equality"))
}

fn c2_h_star_extremal() -> Outcome {
    let mut sizes = Vec::new();
    for n in [6, 9, 12, 15] {
        let (h, _) = h_star(n).unwrap();
        let r = max_matching(&h);
        ensure(r.optimal, || format!("n={n}: search not exhausted"))?;
        r.matching.validate(&h).map_err(|e| e.to_string())?;
        ensure(r.matching.len() == n / 3 - 1, || format!("n={n}: max matching {}", r.matching.len()))?;
        ensure(has_perfect_matching(&h).is_none(), || format!("n={n}: perfect matching found"))?;
        sizes.push(format!("n={n}:{}", r.matching.len()));
    }
    Ok(format!("max matching n/3-1 certified ({}), no perfect matching", sizes.join(" ")))
}

fn c3_lemma2() -> Outcome {
    let mut out = Vec::new();
    for n in [4usize, 5, 6] {
        let v = verify_lemma2(n).map_err(|e| e.to_string())?;
        let bound = 6 * (n as u64 - 1);
        ensure(v.bound == bound && v.max_found == bound, || format!("n={n}: max {} bound {bound}", v.max_found))?;
        ensure(v.violation_count == 0, || format!("n={n}: {} violations", v.violation_count))?;
        ensure(v.tight_reproduced, || format!("n={n}: (empty, K_n, K_n) not reproduced"))?;
        out.push(format!("n={n}:{}", v.max_found));
    }
    Ok(format!("max = 6(n-1) ({}), tight (empty, K_n, K_n) reproduced", out.join(" ")))
}

fn c4_lemma3() -> Outcome {
    let mut out = Vec::new();
    for n in [5usize, 6] {
        let v = verify_lemma3(n).map_err(|e| e.to_string())?;
        let bound = 3 * (n as u64 + 1);
        ensure(v.bound == bound && v.max_found == bound, || format!("n={n}: max {} bound {bound}", v.max_found))?;
        ensure(v.violation_count == 0, || format!("n={n}: {} violations", v.violation_count))?;
        ensure(v.tight_reproduced, || format!("n={n}: triple star not reproduced"))?;
        out.push(format!("n={n}:{}", v.max_found));
    }
    Ok(format!("max = 3(n+1) ({}), triple-star tight configuration reproduced", out.join(" ")))
}

fn c5_lemma1() -> Outcome {
    let v = verify_lemma1_333();
    let families = big_binom(27, 19);
    ensure(BigInt::from(v.work) == families, || format!("scanned {} families, expected {families}", v.work))?;
    ensure(v.violation_count == 0, || format!("{} 19-edge families without 3 disjoint edges", v.violation_count))?;
    ensure(v.tight_reproduced && v.max_found == 18, || "18-edge family not certified".into())?;
    Ok(format!("{} 19-edge families all contain 3 disjoint edges; 18-edge family certified", v.work))
}

fn c6_crossover_s() -> Outcome {
    let mut rows = 0;
    for n in 6..=200usize {
        let c = crossover_s(n).map_err(|e| e.to_string())?;
        ensure(c.exceptions().is_empty(), || format!("n={n}: exceptions at s={:?}", c.exceptions()))?;
        ensure(c.rows.len() == n / 3 - 1, || format!("n={n}: {} rows", c.rows.len()))?;
        for r in &c.rows {
            let s = r.s as i128;
            let n = n as i128;
            // (2s-2)(n-1) >= 2·C(3s-2, 2) = (3s-2)(3s-3)
            let ge = (2 * s - 2) * (n - 1) >= (3 * s - 2) * (3 * s - 3);
            let below = 9 * s <= 2 * n + 4;
            ensure(ge == r.ell2_ge_ell3 && ge == below, || format!("n={n} s={s}: ge={ge} below={below}"))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} (n, s) pairs, zero exceptions"))
}

fn c7_crossover_k() -> Outcome {
    let mut out = String::new();
    for k in 3..=10usize {
        let n = 3000 * k;
        let c = crossover_k(k, n).map_err(|e| e.to_string())?;
        let (ni, ki, s) = (n as i64, k as i64, (n / k) as i64);
        let one = BigInt::from(2) * (big_binom(ni - 1, ki - 1) - big_binom(ni - s, ki - 1));
        let other = if k == 3 {
            BigInt::from((2 * s - 2) * (ni - 1))
        } else {
            let t = s * (ki - 1) - 2;
            BigInt::from(2) * big_binom(t, ki - 1) + BigInt::from(ni - s * (ki - 1) + 2) * big_binom(t, ki - 2)
        };
        ensure(c.sigma_ell1 == one && c.sigma_ell_k_minus_1 == other, || format!("k={k}: value mismatch"))?;
        let want = if k <= 6 { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater };
        ensure(one.cmp(&other) == want && c.ordering == want, || format!("k={k}: ordering {:?}", c.ordering))?;
        let _ = write!(out, "k={k}:{} ", if k <= 6 { "<" } else { ">" });
    }
    Ok(format!("ell=1 vs ell=k-1 at n=3000k: {}", out.trim_end()))
}

fn c8_solver_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
    let mut instances: Vec<Hypergraph> = Vec::new();
    for _ in 0..10_000 {
        let n = rng.gen_range(3..=7);
        let p = rng.gen_range(0.02..0.95);
        instances.push(random_3graph(&mut rng, n, p));
    }
    instances.push(h_star(6).unwrap().0);
    for n in 3..=7 {
        instances.push(complete(n, 3).unwrap());
        instances.push(full_star(n).unwrap());
    }
    for n in 6..=7 {
        for ell in 1..=3 {
            instances.push(h_nkls(&ConstructionParams::new(n, 3, 2, ell).unwrap()).unwrap().0);
        }
    }
    let mut disagreements = 0;
    for h in &instances {
        let r = max_matching(h);
        let valid = r.matching.validate(h).is_ok();
        if !r.optimal || !valid || r.matching.len() != brute_max_matching(h) {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    Ok(format!("{} instances, zero disagreements with brute force", instances.len()))
}

fn c9_theorem_scans() -> Outcome {
    let mut cfg = ScanConfig::new(6);
    cfg.workers = 8;
    cfg.seed = 2024;
    let t1a = run_scan(Experiment::Theorem1, &cfg).map_err(|e| e.to_string())?;
    let t1b = run_scan(Experiment::Theorem1, &cfg).map_err(|e| e.to_string())?;
    cfg.eps = Some(BigRational::new(1.into(), 10.into()));
    let t6a = run_scan(Experiment::Theorem6, &cfg).map_err(|e| e.to_string())?;
    let t6b = run_scan(Experiment::Theorem6, &cfg).map_err(|e| e.to_string())?;
    for (a, b) in [(&t1a, &t1b), (&t6a, &t6b)] {
        ensure(a.totals.scanned == 1 << 20, || format!("{}: scanned {}", a.experiment, a.totals.scanned))?;
        ensure(a.totals.consistent(), || format!("{}: inconsistent totals", a.experiment))?;
        let (ja, jb) = (a.to_json().map_err(|e| e.to_string())?, b.to_json().map_err(|e| e.to_string())?);
        ensure(ja == jb, || format!("{}: reruns differ", a.experiment))?;
        ensure(a.witnesses.iter().all(|w| w.revalidate().unwrap_or(false)), || "witness failed revalidation".into())?;
    }
    let boundary = t1a.census_max();
    ensure(boundary == Some(10) && t1a.census_count(10) > 0, || format!("no-PM census max {boundary:?}"))?;
    let c = classify_instance(&h_star(6).unwrap().0, &BigRational::new(1.into(), 10.into())).map_err(|e| e.to_string())?;
    ensure(
        c.class == "embeds" && !c.has_perfect_matching && c.sigma2_prime == Some(10) && c.theorem1_threshold == "10",
        || format!("h_star(6) classified {c:?}"),
    )?;
    Ok(format!(
        "2^20 instances each; theorem1 filtered {} violating {}; theorem6(1/10) filtered {} violating {}; \
         h_star(6): no PM, sigma2'=10 on threshold, embeds",
        t1a.totals.filtered, t1a.totals.violating, t6a.totals.filtered, t6a.totals.violating
    ))
}

fn c10_proof_guided() -> Outcome {
    let params = ProofParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0010);
    let mut log = String::new();
    let (mut pm, mut exits, mut stalls, mut stall_pm, mut unsound) = (0, 0, 0, 0, 0);
    let mut done = 0;
    while done < 1000 {
        let n = if rng.gen_bool(0.5) { 9 } else { 12 };
        let p = rng.gen_range(0.05..0.6);
        let h = random_3graph(&mut rng, n, p);
        if !h.isolated_vertices().is_empty() {
            continue;
        }
        let out = proof_guided_pm(&h, &params).map_err(|e| e.to_string())?;
        let line = match out.kind {
            OutcomeKind::PerfectMatching => {
                pm += 1;
                let ok = out.matching.validate(&h).is_ok() && out.matching.is_perfect();
                if !ok {
                    unsound += 1;
                }
                format!("perfect-matching certificate_valid={ok}")
            }
            kind => {
                let exact = has_perfect_matching(&h).is_some();
                if kind == OutcomeKind::StructuralExit {
                    exits += 1;
                    if exact {
                        unsound += 1;
                    }
                } else {
                    stalls += 1;
                }
                stall_pm += exact as usize;
                format!(
                    "{kind:?} matching={} w_covered={} exact_solver_pm={exact}",
                    out.matching.len(),
                    out.w_covered
                )
            }
        };
        let _ = writeln!(log, "{done}\tn={n}\tedges={}\t{line}", h.num_edges());
        done += 1;
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("proof_guided_adjudication.tsv");
    std::fs::write(&path, &log).map_err(|e| e.to_string())?;
    ensure(unsound == 0, || format!("{unsound} unsound claims"))?;
    Ok(format!(
        "{done} instances: {pm} PM certificates valid, {stalls} stalls + {exits} structural exits adjudicated \
         ({stall_pm} had a PM per exact solver), zero unsound; log {}",
        path.display()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("construction/formula agreement", c1_formulas, Duration::from_secs(10)),
        ("H* extremality", c2_h_star_extremal, Duration::from_secs(30)),
        ("lemma 2 oracle", c3_lemma2, Duration::from_secs(120)),
        ("lemma 3 oracle", c4_lemma3, Duration::from_secs(300)),
        ("lemma 1 oracle at 3x3x3", c5_lemma1, Duration::from_secs(300)),
        ("crossover in s", c6_crossover_s, Duration::from_secs(5)),
        ("crossover in k", c7_crossover_k, Duration::from_secs(5)),
        ("solver oracle equivalence", c8_solver_oracle, Duration::from_secs(600)),
        ("theorem scans at n=6", c9_theorem_scans, Duration::from_secs(600)),
        ("proof-guided soundness", c10_proof_guided, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > *limit => Err(format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
