use std::fs;
use std::path::{Path, PathBuf};

use mono_cli::{dispatch, CommandResult, EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use mono_core::factorization::{canonical_form, scramble};
use mono_core::io::serialize_factorization;
use tempfile::TempDir;

fn run(args: &[&str]) -> CommandResult {
    dispatch(std::iter::once("mono").chain(args.iter().copied()))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn normalize_canonical_input() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "canonical_110.txt",
        &serialize_factorization(&canonical_form(1, 1, 0).unwrap()),
    );
    let r = run(&["normalize", s(&f)]);
    assert_eq!(r.exit, EXIT_OK, "{}", r.report);
    assert!(r.report.starts_with("p=1 q=1 k=0\n"));
    assert_eq!(r.get("length"), Some("18"));
}

#[test]
fn normalize_with_moves_replays() {
    let dir = TempDir::new().unwrap();
    let sc = scramble(&canonical_form(0, 1, 1).unwrap(), 7, 25);
    let f = write(dir.path(), "sc.txt", &serialize_factorization(&sc));
    let r = run(&["normalize", s(&f), "--moves", "--budget", "100000"]);
    assert_eq!(r.exit, EXIT_OK, "{}", r.report);
    let moves: Vec<mono_core::Move> = r
        .get("moves")
        .unwrap()
        .split_whitespace()
        .map(|t| {
            let (d, i) = t.split_at(1);
            let i = i.parse().unwrap();
            if d == "R" {
                mono_core::Move::right(i)
            } else {
                mono_core::Move::left(i)
            }
        })
        .collect();
    assert_eq!(
        sc.apply_moves(&moves).unwrap(),
        canonical_form(0, 1, 1).unwrap()
    );
}

#[test]
fn rejects_non_twist_entries() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "bad.txt", "s1\n[[1,0],[2,1]]\n");
    let r = run(&["normalize", s(&f)]);
    assert_eq!(r.exit, EXIT_INVALID);
    assert!(r.report.contains("line 2"), "{}", r.report);
}

#[test]
fn equiv_of_two_scrambles() {
    let dir = TempDir::new().unwrap();
    let c = canonical_form(1, 0, 0).unwrap();
    let a = write(
        dir.path(),
        "a.txt",
        &serialize_factorization(&scramble(&c, 1, 60)),
    );
    let b = write(
        dir.path(),
        "b.txt",
        &serialize_factorization(&scramble(&c, 2, 60)),
    );
    let r = run(&["equiv", s(&a), s(&b)]);
    assert_eq!(r.exit, EXIT_OK);
    assert_eq!(
        r.report.trim(),
        "equivalent (certificate: same boundary type (0,0), same length 12)"
    );
    let d = write(
        dir.path(),
        "d.txt",
        &serialize_factorization(&canonical_form(0, 1, 6).unwrap()),
    );
    let r = run(&["equiv", s(&a), s(&d)]);
    assert_eq!(r.get("equivalent"), Some("false"));
}

#[test]
fn classify_perutz_descriptor() {
    let dir = TempDir::new().unwrap();
    let d = write(
        dir.path(),
        "perutz.sblf",
        "# two twists with product [[-1,0],[4,-1]]\n\
         round=yes\n\
         factorization=[[0,-1],[1,2]]; [[2,-1],[1,0]]\n\
         twist=id\nm=0\nlower=pao n=0 parity=even\n",
    );
    let r = run(&["classify", s(&d)]);
    assert_eq!(r.exit, EXIT_OK, "{}", r.report);
    assert_eq!(r.get("blowups"), Some("4"));
    assert_eq!(r.get("case"), Some("d"));
    assert_eq!(r.get("manifold"), Some("CP2 # 5*CP2bar"));
    assert_eq!(r.get("candidates"), Some("CP2 # CP2bar; S2xS2"));
    assert!(r.render().contains("blowups=4"));
}

#[test]
fn classify_descriptor_with_factorization_path() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "e1.txt",
        &serialize_factorization(&canonical_form(1, 0, 0).unwrap()),
    );
    let d = write(dir.path(), "e1.sblf", "round=no\nfactorization=e1.txt\n");
    let r = run(&["classify", s(&d)]);
    assert_eq!(r.get("manifold"), Some("E(1)"), "{}", r.report);
    assert_eq!(r.get("euler"), Some("12"));
}

#[test]
fn orbit_reports() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.txt", "s1\ns2\ns1\ns2\ns1\ns2\n");
    let r = run(&[
        "orbit",
        s(&f),
        "--entry-bound",
        "5",
        "--budget",
        "10000",
        "--jobs",
        "2",
    ]);
    assert_eq!(r.exit, EXIT_OK, "{}", r.report);
    assert_eq!(r.get("canonical_reached"), Some("true"));

    let sc = scramble(&canonical_form(1, 0, 0).unwrap(), 3, 40);
    let g = write(dir.path(), "g.txt", &serialize_factorization(&sc));
    let bound = sc.max_abs_entry().to_string();
    let r = run(&["orbit", s(&g), "--entry-bound", &bound, "--budget", "3"]);
    assert_eq!(r.exit, EXIT_BUDGET, "{}", r.report);

    let r = run(&["orbit", s(&g), "--entry-bound", "0", "--budget", "3"]);
    assert_eq!(r.exit, EXIT_USAGE);
}

#[test]
fn chart_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("c.dot");
    let r = run(&[
        "chart",
        "canonical",
        "-p",
        "2",
        "-q",
        "1",
        "-k",
        "4",
        "--dot",
        s(&dot),
    ]);
    assert_eq!(r.exit, EXIT_OK);
    assert_eq!(r.get("c"), Some("34"));
    assert_eq!(r.get("p_signed"), Some("2"));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    let chart = write(dir.path(), "c.txt", &r.render());
    let v = run(&["chart", "validate", s(&chart)]);
    assert_eq!(v.exit, EXIT_OK, "{}", v.report);
    assert_eq!(v.get("boundary_word"), r.get("boundary_word"));

    let w = run(&["chart", "word", s(&chart), "u0e:+1 u1e:+1"]);
    assert_eq!(w.exit, EXIT_OK, "{}", w.report);
    assert_eq!(w.get("word"), Some("s1 s2"));
}

#[test]
fn invalid_chart_is_reported() {
    let dir = TempDir::new().unwrap();
    let c = write(
        dir.path(),
        "bad.txt",
        "vertex a black\nvertex b black\nedge e 1 a:0 b:0\n",
    );
    let r = run(&["chart", "validate", s(&c)]);
    assert_eq!(r.exit, EXIT_INVALID);
    assert_eq!(r.get("valid"), Some("false"));
}

#[test]
fn scramble_is_seed_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "c.txt",
        &serialize_factorization(&canonical_form(0, 1, 3).unwrap()),
    );
    let a = run(&["scramble", s(&f), "--seed", "9", "--steps", "50"]);
    let b = run(&["scramble", s(&f), "--seed", "9", "--steps", "50"]);
    assert_eq!(a.render(), b.render());
    let c = run(&["scramble", s(&f), "--seed", "10", "--steps", "50"]);
    assert_ne!(a.report, c.report);
    // the rendered output is itself a factorization file
    let back = mono_core::io::parse_factorization(&a.render()).unwrap();
    assert_eq!(back.len(), 9);
}

#[test]
fn sweep_small_grid() {
    let r = run(&[
        "sweep", "--max-p", "0", "--max-k", "1", "--seeds", "2", "--steps", "20",
    ]);
    assert_eq!(r.exit, EXIT_OK, "{}", r.report);
    assert_eq!(r.get("cases"), Some("8"));
    assert_eq!(r.get("failures"), Some("0"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).exit, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).exit, EXIT_USAGE);
    assert_eq!(run(&["orbit", "x.txt"]).exit, EXIT_USAGE);
    assert_eq!(run(&["--help"]).exit, EXIT_OK);
    assert_eq!(run(&["normalize", "/nonexistent/file"]).exit, EXIT_INVALID);
}
