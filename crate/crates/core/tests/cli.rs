use std::fs;
use std::process::{Command, Output};

use goedel_forge::transcript::load;
use goedel_forge::{encode, parse_term, print_nat};
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goedel-forge"))
        .args(args)
        .env_clear()
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn encode_decode_round_trip() {
    let term = "comp(succ,pair(id,const(4)))";
    let o = cli(&["encode", term]);
    assert!(o.status.success());
    let index = stdout(&o).trim().to_string();
    assert_eq!(index, print_nat(&encode(&parse_term(term).unwrap())));
    let o = cli(&["decode", &index]);
    assert_eq!(stdout(&o).trim(), term);
}

#[test]
fn eval_accepts_text_index_and_file() {
    let o = cli(&["eval", "comp(succ,succ)", "5"]);
    assert_eq!(stdout(&o).trim(), "7");

    let index = print_nat(&encode(&parse_term("comp(succ,succ)").unwrap()));
    let o = cli(&["eval", &format!("@{index}"), "5"]);
    assert_eq!(stdout(&o).trim(), "7");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.term");
    fs::write(&path, "comp(succ,succ)\n").unwrap();
    let o = cli(&["eval", &format!("@{}", path.display()), "5"]);
    assert_eq!(stdout(&o).trim(), "7");
}

#[test]
fn out_of_fuel_exits_2() {
    let o = cli(&["eval", "mu(const(1))", "0", "--fuel", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[inconclusive]"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn usage_errors_exit_1_with_one_line() {
    for args in [&["eval", "bogus", "1"][..], &["nope"], &["decode"], &["eval", "id", "x"]] {
        let o = cli(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("goedel-forge: error[usage]"), "{err}");
    }
    let o = cli(&["--structured", "eval", "bogus", "1"]);
    let v: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(v["error"]["kind"], "usage");
    assert_eq!(v["error"]["exit"], 1);
}

#[test]
fn structured_output_echoes_config() {
    let o = cli(&["--structured", "--fuel", "5000", "psi-tot", "25"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["config"]["fuel"], 5000);
    assert_eq!(v["config"]["psi"], "TOT");
    assert!(v["index"].is_string());
}

#[test]
fn environment_sets_config() {
    let o = Command::new(env!("CARGO_BIN_EXE_goedel-forge"))
        .args(["--structured", "psi-tot", "25"])
        .env_clear()
        .env("GOEDEL_FORGE_FUEL", "1234")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["config"]["fuel"], 1234);
}

#[test]
fn creative_run_then_audit_of_the_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    let p = path.to_str().unwrap();
    let o = cli(&["creative-run", "25", "3", "--transcript", p]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 5);

    let t = load(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(t.steps.len(), 3);
    assert!(t.incomplete.is_none());

    let o = cli(&["audit", "--transcript", p]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).lines().next().unwrap().ends_with("ESCAPED (5 checks)"));

    let o = cli(&["--structured", "creative-run", "25", "3"]);
    assert_eq!(stdout(&o), fs::read_to_string(&path).unwrap());
}

#[test]
fn incomplete_run_exits_2_and_keeps_a_trailer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    let seed = print_nat(&encode(&parse_term("const(86)").unwrap()));
    let o = cli(&[
        "creative-run", &seed, "2", "--fuel", "2000", "--transcript", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().last().unwrap().starts_with(r#"{"incomplete":"#));
}

#[test]
fn audit_of_several_candidates_in_parallel() {
    let o = cli(&["--jobs", "2", "--structured", "audit", "25", "31"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["candidate"], "25");
    assert_eq!(reports[1]["candidate"], "31");
}

#[test]
fn audit_refutation_exits_3() {
    // const(0) lists program 0, which halts on itself: not in K̄
    let c = print_nat(&encode(&parse_term("const(0)").unwrap()));
    let o = cli(&["--psi", "kbar", "audit", &c]);
    assert_eq!(o.status.code(), Some(3), "{}{}", stdout(&o), stderr(&o));
    assert!(stderr(&o).contains("refuted-precondition"));
}

#[test]
fn check_proof_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.proof");
    fs::write(
        &good,
        "1. ((0 = 0) -> ((0 = 0) -> (0 = 0))) ; AX L1\n2. (0 = 0) ; AX E1\n3. ((0 = 0) -> (0 = 0)) ; MP 2 1\n",
    )
    .unwrap();
    let o = cli(&["check-proof", "0", good.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));

    let bad = dir.path().join("bad.proof");
    fs::write(
        &bad,
        "1. ((0 = 0) -> ((0 = 0) -> (0 = 0))) ; AX L1\n2. ~(S(0) = 0) ; AX N1\n3. ((0 = 0) -> (0 = 0)) ; MP 2 1\n",
    )
    .unwrap();
    let o = cli(&["check-proof", "0", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 3: MP-MISMATCH"), "{}", stderr(&o));
}

#[test]
fn godel_sentence_and_tower() {
    let o = cli(&["godel-sentence", "0", "--bound", "100"]);
    let out = stdout(&o);
    assert!(out.contains("p' = 255504969"));
    assert!(out.contains("no proof code b <= 100"));

    let o = cli(&["--structured", "tower", "3"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    assert!(levels.iter().all(|l| l["accepted"] == true && l["admit_lines"] == 1));
}
