use std::process::{Command, Output};

fn simplicial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simplicial"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("simplicial-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn expand_prints_the_f_vector() {
    let o = simplicial(&["expand", "--dataset", "s2s2s2_124", "--fvector"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "(124, 1908, 11740, 34140, 50532, 36876, 10536)"
    );
}

#[test]
fn quotient_is_good_and_isomorphic() {
    let o = simplicial(&[
        "quotient",
        "--dataset",
        "s2s2s2_124",
        "--group",
        "S3",
        "--check-good",
        "--compare",
        "cp3_30",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("good: true, isomorphic: true"));
}

#[test]
fn reduce_reports_budget_status() {
    let o = simplicial(&[
        "reduce",
        "--dataset",
        "cp3_30",
        "--seed",
        "1",
        "--max-seconds",
        "1",
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "budget");
}

#[test]
fn reduce_is_deterministic_per_seed() {
    let x = scratch("tri.txt", "1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n");
    let run = |tag: &str| {
        let log = x.with_file_name(format!("log-{tag}.txt"));
        let o = simplicial(&[
            "reduce",
            "--in",
            x.to_str().unwrap(),
            "--seed",
            "9",
            "--target",
            "3",
            "--max-moves",
            "1000",
            "--log",
            log.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read_to_string(log).unwrap()
    };
    let a = run("a");
    assert_eq!(a, run("b"));
    assert!(a.starts_with("# initial sha256 "));
}

#[test]
fn numbers_and_checks() {
    let o = simplicial(&["euler", "--dataset", "cp3_18"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = simplicial(&["neighborly", "--dataset", "cp3_18", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["neighborliness"], 2);
    let o = simplicial(&["check", "pseudomanifold", "--dataset", "cp3_30"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("orientable: true"));
}

#[test]
fn failed_checks_exit_one() {
    let bowtie = scratch("bowtie.txt", "1 2 3\n1 4 5\n");
    let o = simplicial(&["check", "pseudomanifold", "--in", bowtie.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = simplicial(&[
        "check",
        "manifold",
        "--in",
        bowtie.to_str().unwrap(),
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = simplicial(&["iso", "--dataset", "cp3_18", "--compare", "cp3_30"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(simplicial(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(simplicial(&["fvector"]).status.code(), Some(2));
    assert_eq!(
        simplicial(&["fvector", "--dataset", "cp3_18", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        simplicial(&["check", "manifold", "--dataset", "cp3_18"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn operation_errors_exit_one() {
    let o = simplicial(&["fvector", "--dataset", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    let bad = scratch("bad.txt", "1 1 2\n");
    assert_eq!(
        simplicial(&["fvector", "--in", bad.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn homology_of_a_torus() {
    let tri = scratch("c3.txt", "1 2\n2 3\n1 3\n");
    let o = simplicial(&[
        "product",
        "--in",
        tri.to_str().unwrap(),
        "--with",
        tri.to_str().unwrap(),
        "--out",
        tri.with_file_name("torus.txt").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = simplicial(&[
        "homology",
        "--in",
        tri.with_file_name("torus.txt").to_str().unwrap(),
        "--ring",
        "z",
    ]);
    assert_eq!(stdout(&o), "H_0: 1\nH_1: 2\nH_2: 1\n");
}

#[test]
fn iso_and_aut_on_the_small_complex() {
    let o = simplicial(&["aut", "--dataset", "cp3_18"]);
    assert!(stdout(&o).starts_with("order: 1\n"));
    let emitted = scratch("cp3_18.txt", "");
    simplicial(&[
        "dataset",
        "emit",
        "cp3_18",
        "--out",
        emitted.to_str().unwrap(),
    ]);
    let o = simplicial(&[
        "iso",
        "--in",
        emitted.to_str().unwrap(),
        "--compare",
        "cp3_18",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("a1 -> a1"));
}
