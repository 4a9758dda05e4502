use std::process::{Command, Output};

use serde_json::Value;

use rootcomp_cli::{EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_USAGE};
use rootcomp_core::{DecompositionReport, VerificationReport};

fn rootcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootcomp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn central_charge_text() {
    let o = rootcomp(&["gko", "charge", "--type", "A1~", "-l", "1", "-m", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    assert_eq!(stdout(&o), "1/2\n");
}

#[test]
fn tensor_json_round_trip() {
    let o = rootcomp(&[
        "tensor", "--type", "A1~", "--lambda", "L0", "--mu", "L0", "--depth", "6", "--both", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    assert_eq!(v["cross_check"]["agree"], Value::Bool(true));
    let report: DecompositionReport = serde_json::from_value(v.clone()).unwrap();
    let mut again = serde_json::to_value(&report).unwrap();
    again["cross_check"] = v["cross_check"].clone();
    assert_eq!(again, v);
    let mults: Vec<u64> = report.components.iter().filter(|c| c.nu.finite[0] == 0.into()).map(|c| c.mult).collect();
    assert_eq!(&mults[..3], &[1, 0, 1]);
}

#[test]
fn verify_report_round_trip() {
    let o = rootcomp(&["verify", "table1", "--type", "F4~", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let text = stdout(&o);
    let r: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.instances_checked, 6);
    assert!(r.passed());
    let back = serde_json::to_value(&r).unwrap();
    assert_eq!(serde_json::to_string_pretty(&back).unwrap() + "\n", text);
}

#[test]
fn deterministic_across_parallelism() {
    for args in [
        vec!["verify", "theorem1", "--type", "A2~", "--max-level", "2", "--max-k", "2", "--depth", "4"],
        vec!["tensor", "--type", "C2~", "--lambda", "L0+L1", "--mu", "L2", "--depth", "4"],
        vec!["wahl", "list", "--type", "G2~", "--max-level", "2"],
    ] {
        let run = |p: &str| {
            let mut a = args.clone();
            a.extend(["--format", "json", "--parallelism", p]);
            stdout(&rootcomp(&a))
        };
        let one = run("1");
        assert!(!one.is_empty());
        assert_eq!(one, run("4"), "{args:?}");
    }
}

#[test]
fn tsv_has_header() {
    let o = rootcomp(&["roots", "exceptional", "--type", "G2~", "--format", "tsv"]);
    assert_eq!(stdout(&o), "beta\tsimple\na0+3a1+a2\t1\na0+2a1+a2\t1\n");
}

#[test]
fn exit_codes() {
    let code = |a: &[&str]| rootcomp(a).status.code();
    assert_eq!(code(&["gko", "charge", "-l", "1", "-m", "1"]), Some(EXIT_USAGE));
    assert_eq!(code(&["mult", "--type", "Z3~", "--lambda", "L0"]), Some(EXIT_USAGE));
    assert_eq!(code(&["mult", "--type", "A1~", "--lambda", "L0+"]), Some(EXIT_USAGE));
    assert_eq!(code(&["frobnicate"]), Some(EXIT_USAGE));
    assert_eq!(
        code(&["tensor", "--type", "A1~", "--lambda", "L0", "--mu", "L0", "--depth", "6", "--max-table-depth", "2"]),
        Some(EXIT_INCONCLUSIVE)
    );
    assert_eq!(
        code(&["wahl", "check", "--type", "A1~", "--lambda", "L0", "--mu", "L0", "--beta", "a1"]),
        Some(EXIT_FAIL)
    );
    assert_eq!(
        code(&["verify", "prv", "--type", "G2~", "--lambda", "L0+L1", "--mu", "L0+L1", "--v", "s1", "--w", "s1"]),
        Some(EXIT_INCONCLUSIVE)
    );
    assert_eq!(code(&["verify", "prv", "--type", "G2~", "--witnesses", "--depth", "2"]), Some(EXIT_PASS));
}

#[test]
fn diagnostics_go_to_stderr() {
    let o = rootcomp(&["mult", "--type", "A1~", "--lambda", "L7"]);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("rootcomp-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("charge.txt");
    let o = rootcomp(&["gko", "charge", "--type", "A2~", "-l", "1", "-m", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "6/5\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn in_process_run() {
    assert_eq!(rootcomp_cli::run(["rootcomp", "roots", "fset", "--type", "A2~", "a1"]), EXIT_PASS);
    assert_eq!(rootcomp_cli::run(["rootcomp", "--help"]), EXIT_PASS);
    assert_eq!(rootcomp_cli::run(["rootcomp", "roots", "fset", "--type", "A2~", "d-a1"]), EXIT_PASS);
    assert_eq!(rootcomp_cli::run(["rootcomp", "roots", "fset", "--type", "A2~", "a1-d"]), EXIT_USAGE);
}
