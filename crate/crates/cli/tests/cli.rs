use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use specgraph::constructions::{catalog, CatalogId};
use specgraph::secular::secular_poly;

fn specgraph(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specgraph"))
        .args(args)
        .current_dir(dir)
        .env_remove("SPECGRAPH_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_catalog(dir: &Path, id: &str) -> String {
    let o = specgraph(&["catalog", id], dir);
    assert!(o.status.success());
    let name = format!("{id}.g");
    fs::write(dir.join(&name), &o.stdout).unwrap();
    name
}

#[test]
fn compare_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write_catalog(dir.path(), "Gamma1");
    let g2 = write_catalog(dir.path(), "Gamma2");
    let k5 = write_catalog(dir.path(), "K5");
    let same = specgraph(&["compare", &g1, &g2, "--mode", "metric"], dir.path());
    assert_eq!(same.status.code(), Some(0));
    let shared = secular_poly(&catalog(CatalogId::Gamma1)).unwrap().to_line();
    assert!(stdout(&same).contains(&shared));
    assert_eq!(specgraph(&["compare", &k5, &g1, "--mode", "metric"], dir.path()).status.code(), Some(1));
    assert_eq!(specgraph(&["compare", &g1, &g2, "--mode", "proposition"], dir.path()).status.code(), Some(0));
    assert_eq!(specgraph(&["compare", &g1, &g2, "--mode", "discrete"], dir.path()).status.code(), Some(0));
    assert_eq!(specgraph(&["secular", "missing.g"], dir.path()).status.code(), Some(2));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.g"), "graph bad\nvertex a contact\nvertex b\nedge a c\n").unwrap();
    let o = specgraph(&["secular", "bad.g"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
    assert_eq!(specgraph(&["validate", "bad.g"], dir.path()).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(specgraph(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(specgraph(&["secular", "x.g", "--bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(specgraph(&["catalog", "K9"], dir.path()).status.code(), Some(2));
    assert_eq!(specgraph(&["mfun", "--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn catalog_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["Gamma1", "K5", "fig6_eight", "Q2", "C1"] {
        let f = write_catalog(dir.path(), id);
        let o = specgraph(&["secular", &f], dir.path());
        assert!(o.status.success(), "{id}");
        let expected = secular_poly(&specgraph::constructions::catalog_by_name(id).unwrap()).unwrap();
        assert_eq!(stdout(&o).trim(), expected.to_line(), "{id}");
    }
}

#[test]
fn outputs_are_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_catalog(dir.path(), "K5");
    let sweep = |jobs: &str, out: &str| {
        let o = specgraph(
            &["sweep", &k5, "--lmin", "-5", "--lmax", "40", "--steps", "200", "--jobs", jobs, "--out", out],
            dir.path(),
        );
        assert!(o.status.success());
        fs::read(dir.path().join(out)).unwrap()
    };
    let a = sweep("1", "a.csv");
    assert_eq!(a, sweep("3", "b.csv"));
    assert!(String::from_utf8(a).unwrap().starts_with("lambda,regular,mu_1,mu_2,mu_3,mu_4,mu_5,det\n"));
    let search = |jobs: &str| stdout(&specgraph(&["search", "--vertices", "5", "--key", "ln", "--jobs", jobs], dir.path()));
    let s1 = search("1");
    assert_eq!(s1, search("4"));
    let env = Command::new(env!("CARGO_BIN_EXE_specgraph"))
        .args(["search", "--vertices", "5", "--key", "ln"])
        .env("SPECGRAPH_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&env), s1);
}

#[test]
fn spectrum_and_detect() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_catalog(dir.path(), "K5");
    let s = stdout(&specgraph(&["spectrum", &k5], dir.path()));
    assert!(s.starts_with("1.82347658194 4\n"), "{s}");
    assert!(s.ends_with("lambda0_multiplicity 1\n"));
    let d = stdout(&specgraph(&["detect", &k5, "--kmax", "3"], dir.path()));
    assert_eq!(d, "1.82347658194 4\n");
}

#[test]
fn constructions() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let path = write_catalog(p, "path3");
    let cyc = write_catalog(p, "fig6_cycle");
    let eight = write_catalog(p, "fig6_eight");
    let before = specgraph(&["construct", "exchange", "--frame", &path, "--slot", &format!("{cyc}@0,1"), "--slot", &format!("{eight}@1,2"), "--swap", "0,0"], p);
    let after = specgraph(&["construct", "exchange", "--frame", &path, "--slot", &format!("{cyc}@0,1"), "--slot", &format!("{eight}@1,2"), "--swap", "0,1"], p);
    fs::write(p.join("before.g"), &before.stdout).unwrap();
    fs::write(p.join("after.g"), &after.stdout).unwrap();
    assert_eq!(specgraph(&["compare", "before.g", "after.g"], p).status.code(), Some(0));
    assert_eq!(specgraph(&["compare", &cyc, &eight, "--mode", "steklov"], p).status.code(), Some(0));
    assert_eq!(specgraph(&["compare", &cyc, &eight, "--mode", "metric"], p).status.code(), Some(1));

    let one = specgraph(&["construct", "clarify", "--which", "1", "--out", "c1.g"], p);
    let two = specgraph(&["construct", "clarify", "--which", "2", "--out", "c2.g"], p);
    assert!(one.status.success() && two.status.success());
    assert_eq!(specgraph(&["compare", "c1.g", "c2.g"], p).status.code(), Some(0));

    let k4 = write_catalog(p, "K4");
    let s4 = write_catalog(p, "S4");
    let glued = specgraph(&["construct", "glue", &k4, &s4, "--pairs", "0:0,1:1,2:2,3:3", "--out", "k5.g"], p);
    assert!(glued.status.success());
    let k5 = write_catalog(p, "K5");
    assert_eq!(specgraph(&["compare", "k5.g", &k5], p).status.code(), Some(0));
    assert_eq!(specgraph(&["validate", "k5.g"], p).status.code(), Some(0));
}
