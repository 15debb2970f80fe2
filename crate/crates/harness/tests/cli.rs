use std::path::Path;
use std::process::{Command, Output};

fn ore3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ore3")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn construct_stats_and_match() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hstar9.txt");
    let p = path.to_str().unwrap();
    let o = ore3(&["construct", "hstar", "--n", "9", "--out", p]);
    assert!(o.status.success());
    let o = ore3(&["stats", p]);
    assert!(o.status.success());
    let text = stdout(&o);
    // (2·81 - 72 + 6)/3 = 32
    assert!(text.contains("sigma2_adjacent 32"), "{text}");
    let o = ore3(&["match", "max", p]);
    assert!(stdout(&o).starts_with("max: size 2 optimal true"));
    let o = ore3(&["match", "perfect", p]);
    assert!(stdout(&o).starts_with("perfect: none"));
    let o = ore3(&["match", "uuw", p, "--w", "0,1,2,3"]);
    assert!(stdout(&o).starts_with("uuw: size 2"), "{}", stdout(&o));
}

#[test]
fn construct_to_stdout() {
    let o = ore3(&["construct", "hnkls", "--n", "6", "--s", "2", "--ell", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("6 3"));
    assert_eq!(text.lines().count(), 1 + 10);
}

#[test]
fn exit_codes() {
    assert_eq!(ore3(&["bogus"]).status.code(), Some(1));
    assert_eq!(ore3(&["scan", "theorem1", "--n", "7"]).status.code(), Some(1));
    assert_eq!(ore3(&["stats", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(ore3(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "6 3\n0 1\n").unwrap();
    assert_eq!(ore3(&["stats", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn scan_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t6.json");
    let o = ore3(&[
        "scan", "theorem6", "--n", "9", "--eps", "0.1", "--samples", "20", "--seed", "5", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = ore3_harness::read_report(Path::new(&out)).unwrap();
    assert_eq!(r.totals.scanned, 20);
    assert_eq!(r.params.eps.as_deref(), Some("1/10"));
}

#[test]
fn lemma_and_crossover_commands() {
    let o = ore3(&["verify-lemma", "2", "--n", "5"]);
    assert!(stdout(&o).contains("max 24 bound 24 violations 0 tight true"), "{}", stdout(&o));
    let o = ore3(&["crossover", "s", "--n", "100"]);
    assert_eq!(stdout(&o).lines().count(), 33);
    let o = ore3(&["crossover", "k", "--k", "7", "--n", "21000"]);
    assert!(stdout(&o).contains("ordering Greater expected Greater"), "{}", stdout(&o));
    assert_eq!(ore3(&["verify-lemma", "4", "--n", "5"]).status.code(), Some(1));
}
