use std::path::PathBuf;
use std::process::{Command, Output};

fn keyboards(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "keyboards", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn kbd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kbd"))
        .args(args)
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_sorted_with_completeness() {
    let o = kbd(&["enumerate", &keyboards("odd-a.kbd"), "--max-len", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a\naaa\naaaaa\naaaaaaa\n# complete: true\n");

    let o = kbd(&[
        "enumerate",
        &keyboards("figure.kbd"),
        "--max-len",
        "4",
        "--cap",
        "14",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["words"], serde_json::json!(["bb", "abb", "abc", "babb", "babc"]));
}

#[test]
fn member_exit_codes_and_witness() {
    let o = kbd(&["member", &keyboards("palindromes-centre.kbd"), "abcba", "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "yes (mirror pda)\nexecution: aa◄ bb◄ c\n");

    let o = kbd(&["member", &keyboards("dyck.kbd"), ")("]);
    assert_eq!(o.status.code(), Some(1));

    let o = kbd(&["member", &keyboards("figure.kbd"), "babababb", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["procedure"], "nfa");
}

#[test]
fn universal_verdicts() {
    assert_eq!(
        kbd(&["universal", &keyboards("universal-mk.kbd")]).status.code(),
        Some(0)
    );
    let o = kbd(&["universal", &keyboards("ab-bc.kbd")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: \"\""));
    assert_eq!(kbd(&["universal", &keyboards("dyck.kbd")]).status.code(), Some(2));
}

#[test]
fn input_errors() {
    assert_eq!(kbd(&["member", "no-such-file.kbd", "a"]).status.code(), Some(3));
    assert_eq!(kbd(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(kbd(&["mirror", &keyboards("figure.kbd")]).status.code(), Some(3));
    assert_eq!(kbd(&["compile-pda", &keyboards("ab-n-a.kbd")]).status.code(), Some(3));
    assert_eq!(kbd(&["--help"]).status.code(), Some(0));
}

#[test]
fn compile_exports() {
    let dir = std::env::temp_dir().join(format!("kbd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("figure.dot");
    let o = kbd(&["compile-nfa", &keyboards("figure.kbd"), "--out", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    let o = kbd(&["compile-nfa", &keyboards("figure.kbd")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["states"].as_array().unwrap().iter().any(|s| s == "0"));

    let o = kbd(&["compile-pda", &keyboards("palindromes-centre.kbd")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bottom"], "⊥");
    assert_eq!(v["states"].as_array().unwrap().len(), 10);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rewriting_commands() {
    let o = kbd(&["mirror", &keyboards("ab-bc.kbd")]);
    assert_eq!(stdout(&o), "alphabet: a b c\n[transient]\nb a\nc b\n");
    let o = kbd(&["mirror", &keyboards("palindromes.kbd")]);
    assert_eq!(stdout(&o), "alphabet: a b\n[transient]\na LA a LA RA\nb LA b LA RA\n");
    let o = kbd(&["morphism", &keyboards("palindromes.kbd"), "--map", "a=a,b=a"]);
    assert_eq!(stdout(&o), "alphabet: a\n[transient]\na a LA\n");
    let o = kbd(&["normalize", &keyboards("figure.kbd")]);
    assert_eq!(o.status.code(), Some(0));
    let o = kbd(&["normalize", &keyboards("dyck.kbd")]);
    assert_eq!(o.status.code(), Some(3));
    let o = kbd(&["classify", &keyboards("palindromes-centre.kbd")]);
    assert_eq!(stdout(&o), "LEK\n");
}

#[test]
fn pcp_reduce() {
    let o = kbd(&["pcp-reduce", &keyboards("pcp-unsolvable.txt"), "--search-len", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kbd(&[
        "pcp-reduce",
        &keyboards("pcp-solvable.txt"),
        "--search-len",
        "40",
        "--cap",
        "60",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let w: String = v["witness"]["word"].as_str().unwrap().into();
    assert_eq!(w, w.chars().rev().collect::<String>());
}

#[test]
fn corpus_and_props() {
    let o = kbd(&["corpus", "ab-bc-plus", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["name"], "ab-bc-plus");
    assert_eq!(kbd(&["corpus", "nope"]).status.code(), Some(3));

    let o = kbd(&["props", "--cases", "20", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("ok")).count(), 16);
}
