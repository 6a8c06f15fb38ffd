use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn fdea(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdea"))
        .args(args)
        .env_remove("FDEA_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn rank_table_with_comparison() {
    let o = fdea(&[
        "rank",
        &fixture("guo_tanaka.csv"),
        "--external-ranks",
        &fixture("wang_ranks.csv"),
        "--reference-rho",
        "0.883",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("seed=42"));
    assert!(out.contains("spearman_rho=") && out.contains("reference_rho=0.883"));
    assert!(out.contains("Recommendations"));
    for id in ["A", "B", "C", "D", "E"] {
        assert!(out.lines().any(|l| l.starts_with(id)), "missing row {id}");
    }
}

#[test]
fn csv_and_json_are_deterministic() {
    for format in ["csv", "json"] {
        let args = ["rank", &fixture("iim.csv"), "--format", format];
        let (a, b) = (fdea(&args), fdea(&args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn json_output_parses() {
    let o = fdea(&[
        "evaluate",
        &fixture("guo_tanaka.csv"),
        "--format",
        "json",
        "--orientation",
        "pessimistic",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 5);
    assert_eq!(v["results"][0]["orientation"], "pessimistic");
}

#[test]
fn seed_flag_and_environment() {
    let base = fdea(&["evaluate", &fixture("guo_tanaka.csv"), "--format", "csv"]);
    let flag = fdea(&["evaluate", &fixture("guo_tanaka.csv"), "--format", "csv", "--seed", "7"]);
    let env = Command::new(env!("CARGO_BIN_EXE_fdea"))
        .args(["evaluate", &fixture("guo_tanaka.csv"), "--format", "csv"])
        .env("FDEA_SEED", "7")
        .output()
        .unwrap();
    assert_ne!(base.stdout, flag.stdout);
    assert_eq!(flag.stdout, env.stdout);
    assert!(stdout(&flag).contains("# seed=7"));
}

#[test]
fn literal_mode_exits_with_two() {
    let o = fdea(&["evaluate", &fixture("guo_tanaka.csv"), "--mode", "literal"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("DMU A") && err.contains("literal"), "{err}");
}

#[test]
fn usage_and_parse_errors_exit_with_one() {
    assert_eq!(fdea(&["bogus"]).status.code(), Some(1));
    assert_eq!(fdea(&["rank"]).status.code(), Some(1));
    assert_eq!(
        fdea(&["rank", &fixture("iim.csv"), "--epsilon", "-1"]).status.code(),
        Some(1)
    );
    assert_eq!(fdea(&["rank", "/nonexistent.csv"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(
        &bad,
        "id,label,in:x:L,in:x:M,in:x:U,out:y:L,out:y:M,out:y:U\nA,a,1,3,2,1,1,1\n",
    )
    .unwrap();
    let o = fdea(&["evaluate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn help_exits_with_zero() {
    assert!(fdea(&["--help"]).status.success());
}

#[test]
fn fuzzify_then_rank() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("raw.csv");
    std::fs::write(
        &raw,
        "id,label,period,in:staff,out:sales\n\
         A,Alpha,1,4,10\nA,Alpha,2,6,14\nA,Alpha,3,5,12\n\
         B,Beta,1,5,9\nB,Beta,2,5,11\nB,Beta,3,8,10\n\
         C,Gamma,1,3,6\nC,Gamma,2,4,7\nC,Gamma,3,5,8\n",
    )
    .unwrap();
    let fuzzy = dir.path().join("fuzzy.csv");
    let o = fdea(&["fuzzify", raw.to_str().unwrap(), "-o", fuzzy.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&fuzzy).unwrap();
    assert!(text.starts_with("id,label,in:staff:L,in:staff:M,in:staff:U,out:sales:L,out:sales:M,out:sales:U"));
    assert!(text.contains("A,Alpha,4,5,6,10,12,14"), "{text}");

    let o = fdea(&["rank", fuzzy.to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 4);
}

#[test]
fn compare_prints_rho() {
    let o = fdea(&[
        "compare",
        &fixture("guo_tanaka.csv"),
        "--external-ranks",
        &fixture("wang_ranks.csv"),
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("id,rank,external_rank"));
    assert!(out.contains("# spearman_rho="));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let to_file = fdea(&[
        "rank",
        &fixture("guo_tanaka.csv"),
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    let to_stdout = fdea(&["rank", &fixture("guo_tanaka.csv"), "--format", "json"]);
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
}
