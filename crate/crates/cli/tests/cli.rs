use std::process::Command;

use mvpf::ReportTable;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mvpf")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["outcome", "-p", "1,2,3"]).0, 0);
    let (code, _, err) = run(&["outcome", "-p", "2,2"]);
    assert_eq!(code, 2);
    assert!(err.contains("not a parking function"));
    assert_eq!(run(&["fibre", "--perm", "87654321", "--method", "brute"]).0, 2);
    assert_eq!(run(&["table", "bounds", "--max-n", "10"]).0, 2);
    assert_eq!(run(&["sandpile", "minrec", "-c", "0,0"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "thm-2.8", "--n", "9"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "thm-5.5", "--n", "5"]).0, 0);
}

#[test]
fn force_lifts_guards() {
    let (code, out, _) = run(&["table", "bounds", "--max-n", "10", "--force", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("10,3628800,115975,2188,512\n"));
}

#[test]
fn csv_output_round_trips() {
    let (code, out, _) = run(&["table", "dec-vs-split", "--max-n", "8", "--format", "csv"]);
    assert_eq!(code, 0);
    let t = ReportTable::from_csv("dec-vs-split", &out).unwrap();
    assert_eq!(t.to_csv().unwrap(), out);
    assert_eq!(t.rows.len(), 6);
}

#[test]
fn json_output_parses() {
    let (_, out, _) = run(&["table", "bounds", "--max-n", "4", "--format", "json"]);
    let t: ReportTable = serde_json::from_str(&out).unwrap();
    assert_eq!(t.name, "bounds");
    assert_eq!(t.rows.len(), 4);
    let (_, out, _) = run(&["outcome", "-p", "3,1,1,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "3412");
    assert_eq!(v["bumps"].as_array().unwrap().len(), 2);
}

#[test]
fn writes_to_out_file() {
    let path = std::env::temp_dir().join(format!("mvpf-out-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, stdout, _) = run(&["table", "bounds", "--max-n", "3", "--format", "csv", "--out", p]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text, "n,one_subgraphs,p2_free,valid,hs\n1,1,1,1,1\n2,2,2,2,2\n3,6,5,4,4\n");
}

#[test]
fn traces() {
    let (_, out, _) = run(&["sandpile", "minrec", "-c", "11,9,5,8,1,9,4,8,4,9,10,0", "--trace"]);
    assert!(out.starts_with("j=6 i=2: 9 -> 8 -> 7 -> "));
    assert_eq!(out.lines().count(), 5);
    let (_, out, _) = run(&["motzkin", "rep", "-p", "1,1,2"]);
    assert_eq!(out, "1,2,1\n");
}
