use std::process::Command;

use regunify::cli::run;
use regunify::output::{render_diagnostics, render_human, OutputDocument};
use regunify::{default_env, parse_term, typed_unify, Subst, UnifyOutcome};

fn data(file: &str) -> String {
    format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn cli_with_input(args: &[&str], input: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("regunify").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli(args: &[&str]) -> (i32, String, String) {
    cli_with_input(args, "")
}

fn json(args: &[&str]) -> (i32, OutputDocument) {
    let mut with_flag = vec!["--json"];
    with_flag.extend_from_slice(args);
    let (code, out, _) = cli(&with_flag);
    (code, serde_json::from_str(&out).expect("valid JSON document"))
}

#[test]
fn unify_exit_codes_follow_the_outcome() {
    assert_eq!(cli(&["unify", "cons(X,[])", "cons(1,Y)"]).0, 0);
    assert_eq!(cli(&["unify", "f(1,a)", "f(2,a)"]).0, 1);
    assert_eq!(cli(&["unify", "cons(1,X)", "cons(Y,2)"]).0, 2);
}

#[test]
fn run_exit_codes_follow_the_outcome() {
    let append = data("append.pl");
    let seven = data("example7.pl");
    let length = data("length.pl");
    let sig = data("length.sig");
    assert_eq!(cli(&["run", &append, "-q", "append(X, Y, [1])"]).0, 0);
    assert_eq!(cli(&["run", &seven, "-q", "p(1)"]).0, 1);
    assert_eq!(cli(&["--sig", &sig, "run", &length, "-q", "length(3, [a])"]).0, 2);
    assert_eq!(cli(&["run", &seven, "-q", "p(1), p(a)"]).0, 3);
}

#[test]
fn budget_exhaustion_is_unknown() {
    let (code, out, _) = cli(&["run", &data("append.pl"), "-q", "append(X, Y, Z)", "--max-steps", "3"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = cli(&["run", &data("append.pl"), "-q", "append(X, [1], [2,2,2,2])", "--depth", "2"]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("budget exhausted"));
}

#[test]
fn usage_and_data_errors() {
    let (code, _, err) = cli(&["frobnicate"]);
    assert_eq!(code, 64);
    assert!(err.contains("unrecognized subcommand"));
    assert_eq!(cli(&["--help"]).0, 0);
    assert_eq!(cli(&["unify", "f(X"]).0, 64);
    assert_eq!(cli(&["unify", "f(X", "Y"]).0, 65);
    assert_eq!(cli(&["unify", "X = Y", "Z"]).0, 65);
    assert_eq!(cli(&["run", "/nonexistent.pl", "-q", "p"]).0, 65);
}

#[test]
fn validation_errors_carry_spans() {
    let (code, _, err) = cli(&["validate", &data("bad.types")]);
    assert_eq!(code, 65);
    assert!(err.contains("bad.types:2:1") && err.contains("constructor `f`"), "{err}");
    let (code, out, _) = cli(&["validate", &data("nat.types")]);
    assert_eq!(code, 0);
    assert!(out.contains("s : nat -> nat"), "{out}");
}

#[test]
fn types_file_feeds_unification() {
    let types = data("nat.types");
    let (code, out, _) = cli(&["--types", &types, "unify", "s(X)", "s(zero)"]);
    assert_eq!(code, 0);
    assert!(out.contains("types: {X: nat}"), "{out}");
    assert_eq!(cli(&["--types", &types, "unify", "s(X)", "s(1)"]).0, 2);
    assert_eq!(cli(&["--types", &types, "unify", "s(X)", "zero"]).0, 1);
}

#[test]
fn check_reports_the_failing_judgment() {
    let (code, out, _) = cli(&["check", "cons(X,[])", "list(int)", "--context", "X: atom"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness: X : int"), "{out}");
    let (code, _, _) = cli(&["check", "cons(X,[]) = cons(1,Y)", "--context", "X: int, Y: list(int)"]);
    assert_eq!(code, 0);
    let (code, _, _) = cli(&["check", "cons(X,[]) = cons(1,Y)", "bool", "--context", "X: A, Y: list(int)"]);
    assert_eq!(code, 1);
}

#[test]
fn check_reads_contexts_from_files() {
    let path = std::env::temp_dir().join(format!("regunify-ctx-{}.txt", std::process::id()));
    std::fs::write(&path, "X: int").unwrap();
    let (code, _, _) = cli(&["check", "[X]", "list(int)", "--context-file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0);
}

#[test]
fn infer_emits_constraints() {
    let (code, out, _) = cli(&["infer", "cons(X,Y)", "--emit-constraints"]);
    assert_eq!(code, 0);
    assert!(out.contains("C: {}"), "pure terms generate no term constraints: {out}");
    assert!(out.contains("typing: ({X: A, Y: list(A)}, list(A))"));
    let (_, doc) = json(&["infer", "f(1,a) = f(2,a)", "--emit-constraints"]);
    let p = doc.result.unwrap();
    assert_eq!(p.principal.unwrap().ty, "bool");
    assert_eq!(p.constraints.unwrap().terms, vec!["f(1,a) = f(2,a)"]);
}

#[test]
fn json_and_human_output_agree() {
    let seven = data("example7.pl");
    let cases: Vec<Vec<&str>> = vec![
        vec!["unify", "cons(X,[])", "cons(1,Y)", "--trace"],
        vec!["unify", "f(1,a)", "f(2,a)"],
        vec!["unify", "cons(1,X)", "cons(Y,2)"],
        vec!["infer", "[X|Y]", "--emit-constraints"],
        vec!["check", "[X]", "list(int)", "--context", "X: atom"],
        vec!["run", &seven, "-q", "p(X)", "--trace"],
        vec!["oracle", "--depth", "1"],
        vec!["validate", "bad.types"],
    ];
    for args in cases {
        let (code, human, err) = cli(&args);
        let (json_code, doc) = json(&args);
        assert_eq!(code, json_code, "{args:?}");
        assert_eq!(render_human(&doc), human, "{args:?}");
        assert_eq!(render_diagnostics(&doc), err, "{args:?}");
        assert_eq!(doc.schema_version, regunify::output::SCHEMA_VERSION);
        let mut echoed = vec!["--json"];
        echoed.extend_from_slice(&args);
        assert_eq!(doc.command, echoed);
    }
}

#[test]
fn printed_bindings_reparse_to_the_unifier() {
    for (a, b) in [("cons(X,[])", "cons(1,Y)"), ("f(X, g(Y))", "f(g(Z), X)"), ("[X, 'a b' | T]", "[Y, Z]")] {
        let (code, doc) = json(&["unify", a, b]);
        assert_eq!(code, 0);
        let printed = doc.result.unwrap().bindings;
        let reparsed =
            Subst::from_pairs(printed.iter().map(|(v, t)| (regunify::Name::new(v), parse_term(t).unwrap())));
        let report =
            typed_unify(&parse_term(a).unwrap(), &parse_term(b).unwrap(), &default_env(), false).unwrap();
        let UnifyOutcome::Solved { unifier, .. } = report.outcome else { panic!() };
        assert_eq!(reparsed, unifier);
    }
}

#[test]
fn oracle_subcommand() {
    let (code, out, _) = cli(&["oracle", "--depth", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("consistent") && out.contains("pairs: 576"), "{out}");
    let (code, out, _) = cli(&["oracle", "--depth", "2", "--seed", "7", "--samples", "500"]);
    assert_eq!(code, 0);
    assert!(out.contains("pairs: 500"));
    assert_eq!(
        cli(&["oracle", "--depth", "2", "--seed", "7", "--samples", "50"]).1,
        cli(&["oracle", "--depth", "2", "--seed", "7", "--samples", "50"]).1
    );
}

#[test]
fn repl_answers_each_line() {
    let input = "% comment\nX = f(Y)\n?- p(1).\n:type [X|Y]\nbroken(\nquit\nX = 1\n";
    let (code, out, err) = cli_with_input(&["repl", "--program", &data("example7.pl")], input);
    assert_eq!(code, 0);
    let outcomes: Vec<&str> = out.lines().filter(|l| !l.contains(':') && !l.starts_with('{')).collect();
    assert_eq!(outcomes, vec!["solved", "no(false)", "typed"], "{out}");
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn binary_reads_types_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_regunify"))
        .args(["unify", "s(X)", "s(zero)"])
        .env("REGUNIFY_TYPES", data("nat.types"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("X: nat"));
    let out = Command::new(env!("CARGO_BIN_EXE_regunify"))
        .args(["unify", "cons(1,X)", "cons(Y,2)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
