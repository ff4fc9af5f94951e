//! End-to-end runs of the binary: outputs and exit codes.

use std::fs;
use std::path::Path;
use std::process::Command;

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_multihyp"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn has_line(r: &Run, line: &str) -> bool {
    r.stdout.lines().any(|l| l.trim() == line)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn term_commands() {
    let r = run(&["term", "addresses", "f(f(x,y),y)"]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "addresses: 2"));
    assert!(has_line(&r, "at ε: f(f(x1,x2),x2)"));
    assert!(has_line(&r, "at (1): f(x1,x2)"));
    let r = run(&["term", "format", "--named", "f( x1 , f(x2,x1))"]);
    assert!(has_line(&r, "term: f(x,f(y,x))"));
    assert!(has_line(&r, "depth: 2"));
    let r = run(&["term", "format", "f(x1)"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("error"));
}

#[test]
fn hypersubstitution_commands() {
    let r = run(&["hyp", "apply", "--hyp", "swap", "f(f(x,y),y)"]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "result: f(x2,f(x2,x1))"));
    let r = run(&["hyp", "compose", "proj-first", "swap"]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "f -> x2"));
    let dir = TempDir::new().unwrap();
    let h = write(dir.path(), "g.hyp", "f -> f(x1,f(x1,x2))\n");
    let r = run(&["hyp", "apply", "--hyp", &h, "f(x,y)"]);
    assert!(has_line(&r, "result: f(x1,f(x1,x2))"));
    let r = run(&["hyp", "apply", "--hyp", "no-such-hyp", "x"]);
    assert_eq!(r.code, 2);
}

#[test]
fn multi_hypersubstitution_apply() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "rho.mhyp", "default id\ncolor 0 swap\n");
    let r = run(&[
        "mhyp",
        "apply",
        "--coloration",
        "leftmost-special:f(y,f(y,x)):0:1:0",
        "--mhyp",
        &m,
        "f(y,f(y,x))",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(has_line(&r, "colors: 0 1"));
    assert!(has_line(&r, "result: f(f(x2,x1),x2)"));
    let r = run(&["mhyp", "apply", "--coloration", "bogus", "--mhyp", &m, "x"]);
    assert_eq!(r.code, 2);
}

#[test]
fn algebra_identities_and_hyperidentities() {
    let r = run(&[
        "algebra",
        "check",
        "--algebra",
        "builtin:semilattice",
        "--eq",
        "f(x,y) = f(y,x)",
    ]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "holds: true"));
    let r = run(&[
        "algebra",
        "check",
        "--algebra",
        "builtin:semilattice",
        "--eq",
        "f(x,y) = x",
    ]);
    assert_eq!(r.code, 1);
    assert!(has_line(&r, "witness: x1=1, x2=0"));

    let r = run(&[
        "algebra",
        "check",
        "--algebra",
        "builtin:semilattice",
        "--hyper",
        "f(x1,x2) = f(x2,x1)",
    ]);
    assert_eq!(r.code, 1);
    assert!(has_line(&r, "σ(f): x1"), "{}", r.stdout);
    assert!(has_line(&r, "image: x1 = x2"));
    let r = run(&[
        "algebra",
        "check",
        "--algebra",
        "builtin:left-zero",
        "--hyper",
        "f(f(x,y),z) = f(x,f(y,z))",
    ]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "exhaustive: true"));
    // pool mode
    let r = run(&[
        "algebra",
        "check",
        "--algebra",
        "builtin:semilattice",
        "--hyper",
        "f(x1,x2) = f(x2,x1)",
        "--pool-names",
        "id,swap",
    ]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "exhaustive: false"));
    // a clone bound that stops the search is a bounds error
    let r = run(&[
        "algebra",
        "check",
        "--algebra",
        "builtin:rect-band",
        "--hyper",
        "f(x,x) = x",
        "--clone-bound",
        "2",
    ]);
    assert_eq!(r.code, 3);
}

#[test]
fn derived_algebras_and_clones() {
    let r = run(&[
        "algebra",
        "derive",
        "--algebra",
        "builtin:left-zero",
        "--hyp",
        "swap",
        "--kv",
    ]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "table_f=0 1 0 1"));

    let dir = TempDir::new().unwrap();
    let m = write(
        dir.path(),
        "rho.mhyp",
        "default proj-last\ncolor 0 proj-first\n",
    );
    let a = write(dir.path(), "sl.alg", "carrier 2\ntable f\n0 0\n0 1\n");
    let r = run(&[
        "algebra",
        "derive",
        "--algebra",
        &a,
        "--mhyp",
        &m,
        "--coloration",
        "prop63:f",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "carrier 2\ntable f\n0 1\n0 1\n");

    let r = run(&["algebra", "clone", "--algebra", &a]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "size: 3"));
    assert!(has_line(&r, "complete: true"));
    assert!(has_line(&r, "op f(x1,x2): 0 0 0 1"));

    let bad = write(dir.path(), "bad.alg", "carrier 2\ntable f\n0 0 0\n");
    let r = run(&["algebra", "clone", "--algebra", &bad]);
    assert_eq!(r.code, 2);
    let r = run(&["algebra", "clone", "--algebra", "builtin:nope"]);
    assert_eq!(r.code, 2);
}

#[test]
fn colored_closures_from_a_pool_directory() {
    let dir = TempDir::new().unwrap();
    let pool = dir.path().join("pool");
    fs::create_dir(&pool).unwrap();
    write(&pool, "id.hyp", "f -> f(x1,x2)\n");
    write(&pool, "first.hyp", "f -> x1\n");
    write(&pool, "README", "not a hypersubstitution\n");
    let eqs = write(
        dir.path(),
        "sigma.eq",
        "f(f(x,x),f(f(x,x),f(x,x))) = f(x,x)\n",
    );
    let pool_s = pool.to_string_lossy().into_owned();
    let spec = "singleton:f(f(x,x),f(f(x,x),f(x,x))):1:0";
    let r = run(&[
        "closure",
        "chi-e",
        "--equations",
        &eqs,
        "--pool",
        &pool_s,
        "--coloration",
        spec,
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(has_line(&r, "pool: 2"));
    assert!(has_line(&r, "equation: x1 = f(x1,x1)"));
    let r = run(&[
        "closure",
        "chi-E",
        "--equations",
        &eqs,
        "--pool",
        &pool_s,
        "--coloration",
        spec,
        "--rounds",
        "4",
    ]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "equation: x1 = x1"));
    assert!(has_line(&r, "fixpoint: true"));

    let lonely = dir.path().join("lonely");
    fs::create_dir(&lonely).unwrap();
    write(&lonely, "first.hyp", "f -> x1\n");
    let r = run(&[
        "closure",
        "chi-e",
        "--equations",
        &eqs,
        "--pool",
        &lonely.to_string_lossy(),
        "--coloration",
        spec,
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("identity"));
}

#[test]
fn solidity_checks_and_exit_codes() {
    let r = run(&[
        "solid",
        "check",
        "--algebra",
        "builtin:semilattice",
        "--variety",
        "SL",
        "--pool-names",
        "id,proj-first",
        "--basis-only",
    ]);
    assert_eq!(r.code, 1);
    assert!(has_line(&r, "verdict: violated"));
    assert!(has_line(&r, "image: x1 = x2"));
    let r = run(&[
        "solid",
        "colored-check",
        "--algebra",
        "builtin:rect-band",
        "--variety",
        "RB",
        "--pool-depth",
        "2",
        "--depth",
        "3",
        "--coloration",
        "rb-firstlast",
        "--rounds",
        "2",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(has_line(&r, "verdict: no-violation-within-bounds"));
    assert!(r
        .stdout
        .contains("its absence is evidence within these bounds only"));
    let r = run(&[
        "solid",
        "check",
        "--algebra",
        "builtin:rect-band",
        "--variety",
        "RB",
        "--pool-depth",
        "1",
        "--max-terms",
        "10",
    ]);
    assert_eq!(r.code, 3);
    // the model must satisfy its base
    let r = run(&[
        "solid",
        "check",
        "--algebra",
        "builtin:semilattice",
        "--variety",
        "RB",
        "--pool-depth",
        "1",
    ]);
    assert_eq!(r.code, 2);
    let r = run(&[
        "solid",
        "check",
        "--algebra",
        "builtin:rect-band",
        "--variety",
        "RB",
    ]);
    assert_eq!(r.code, 2);
}

#[test]
fn verify_scenarios() {
    let r = run(&["verify", "--list"]);
    assert_eq!(r.code, 0);
    for name in [
        "sec2-example",
        "ex33-rb",
        "ex311-collapse",
        "ex43-vhs",
        "prop63-nonconjugate",
        "ex64-bands",
        "ex65-bands",
    ] {
        assert!(r.stdout.contains(&format!("{name}: ")), "{name}");
    }
    let r = run(&["verify", "sec2-example"]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "[ok] ρ̂_C[t]: f(y,f(y,x))"));
    assert!(has_line(&r, "[ok] ρ̂_C[s]: f(f(y,x),y)"));
    let r = run(&["verify", "ex311-collapse", "--kv"]);
    assert_eq!(r.code, 0);
    assert!(has_line(&r, "ex311-collapse.ρ̂_C[s]=x"));
    assert!(r
        .stdout
        .lines()
        .any(|l| l.starts_with("ex311-collapse.seed=")));
    assert!(has_line(&r, "ex311-collapse.result=pass"));
    let again = run(&["verify", "ex311-collapse", "--kv"]);
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.contains(".seconds="))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&r.stdout), strip(&again.stdout));
    let r = run(&["verify", "nope"]);
    assert_eq!(r.code, 2);
    let r = run(&["verify"]);
    assert_eq!(r.code, 2);
}

#[test]
fn signature_files() {
    let dir = TempDir::new().unwrap();
    let sig = write(dir.path(), "sig", "op g 1\nop h 2\n");
    let r = run(&[
        "--sig",
        &sig,
        "hyp",
        "apply",
        "--hyp",
        "proj-first",
        "h(g(x),y)",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(has_line(&r, "result: x1"));
    let bad = write(dir.path(), "bad", "op g\n");
    let r = run(&["--sig", &bad, "term", "format", "x"]);
    assert_eq!(r.code, 2);
}
