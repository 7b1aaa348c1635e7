use std::path::PathBuf;
use std::process::{Command, Output};

use wfcoalg_cli::demos::{document, NAMES};
use wfcoalg_cli::{parse_spec, render_spec};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(format!("{name}.wfc"))
}

fn wfcoalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wfcoalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn corpus_matches_the_built_in_documents() {
    for name in NAMES {
        let text = std::fs::read_to_string(corpus(name)).unwrap();
        let doc = document(name).unwrap();
        assert_eq!(text, render_spec(&doc), "{name}.wfc is stale");
        assert_eq!(parse_spec(&text).unwrap(), doc);
        let emitted = wfcoalg(&["demo", name, "--emit"]);
        assert_eq!(stdout(&emitted), text);
    }
}

#[test]
fn check_wf_on_graph_g() {
    let g = corpus("graph-g");
    let out = wfcoalg(&["check-wf", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("well-founded part = {a,b} ≠ A\n"));
}

#[test]
fn quicksort_demo_sorts_its_input() {
    let out = wfcoalg(&["demo", "quicksort", "--input", "2,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1,2,2\n");
}

#[test]
fn parametric_oracle_rejects_the_r_demo() {
    let r = corpus("r-coalgebra");
    let out = wfcoalg(&["oracle-parametric", r.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness algebra:\n"));
    let out = wfcoalg(&[
        "oracle-recursive",
        r.to_str().unwrap(),
        "--max-carrier",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let f = |n| corpus(n).to_str().unwrap().to_owned();
    let cases: [(Vec<String>, i32); 9] = [
        (vec!["hylo".into(), f("factorial")], 0),
        (vec!["para-hylo".into(), f("fibonacci")], 0),
        (vec!["check-wf".into(), f("quicksort")], 0),
        (vec!["check-wf".into(), f("automaton")], 1),
        (vec!["hylo".into(), f("graph-g")], 1),
        (vec!["check-wf".into(), "/does/not/exist.wfc".into()], 2),
        (vec!["demo".into(), "nope".into()], 2),
        (
            vec![
                "oracle-parametric".into(),
                f("fibonacci"),
                "--max-maps".into(),
                "100".into(),
            ],
            3,
        ),
        (vec!["initial-chain".into(), f("graph-g")], 3),
    ];
    for (args, code) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(wfcoalg(&args).status.code(), Some(code), "{args:?}");
    }
}

#[test]
fn parse_errors_go_to_stderr_with_a_location() {
    let dir = std::env::temp_dir().join(format!("wfcoalg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.wfc");
    std::fs::write(&bad, "carrier A = {a}\nfunctor = P(Y)\n").unwrap();
    let out = wfcoalg(&["check-wf", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2:13"), "{err}");
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    for (cmd, name) in [
        ("oracle-parametric", "r-coalgebra"),
        ("oracle-recursive", "graph-g"),
        ("oracle-recursive", "factorial"),
        ("find-homs", "r-coalgebra"),
    ] {
        let path = corpus(name);
        let runs: Vec<Output> = ["1", "2", "4"]
            .iter()
            .map(|j| wfcoalg(&["--jobs", j, cmd, path.to_str().unwrap()]))
            .collect();
        for r in &runs[1..] {
            assert_eq!(r.stdout, runs[0].stdout, "{cmd} {name}");
            assert_eq!(r.status.code(), runs[0].status.code());
        }
    }
}

#[test]
fn dot_output() {
    let g = corpus("graph-g");
    let out = wfcoalg(&["canonical-graph", g.to_str().unwrap(), "--dot"]);
    assert!(stdout(&out).starts_with("digraph canonical {"));
}
