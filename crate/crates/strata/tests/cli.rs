use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use strata::corpus;

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("corpus/{name}.slt"))
}

fn strata(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_strata"));
    cmd.args(args).env_remove("STRATA_BUDGET_STEPS");
    cmd
}

fn run(args: &[&str]) -> Output {
    strata(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

#[test]
fn models_prints_the_optimistic_schema() {
    let out = run(&["models", corpus_path("tweety").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "1. {bird^u(T), ¬penguin^u(T)} ∪ {flies^d(T)}\n"
    );
}

#[test]
fn models_all_prints_every_schema_in_order() {
    let out = run(&["models", corpus_path("tweety").to_str().unwrap(), "--all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "1. {bird^u(T), ¬penguin^u(T)} ∪ {flies^d(T)}\n\
         2. {bird^u(T), ¬flies^u(T), ¬penguin^u(T)} ∪ {flies^d(T)}\n\
         3. {bird^u(T), ¬flies^u(T)} ∪ {flies^d(T)}\n"
    );
}

#[test]
fn presup_machine_output_matches_the_goldens() {
    for fixture in corpus::FIXTURES {
        let out = run(&[
            "presup",
            corpus_path(fixture.name).to_str().unwrap(),
            "--format",
            "machine",
        ]);
        assert_eq!(stdout_of(&out), fixture.golden_report, "{}", fixture.name);
    }
}

#[test]
fn machine_output_is_byte_stable_across_runs() {
    let path = corpus_path("sherlock");
    let args = ["presup", path.to_str().unwrap(), "--format", "machine"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn unsatisfiable_theory_exits_two_with_the_no_model_line() {
    let path = corpus_path("buganda_exists_contradicted");
    let out = run(&["models", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stdout_of(&out),
        "theory has no model (utterance interpreted as false)\n"
    );

    let machine = run(&["presup", path.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(machine.status.code(), Some(2));
    assert!(stdout_of(&machine).contains("\"unsatisfiable\": true"));
}

#[test]
fn parse_errors_point_at_file_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.slt");
    std::fs::write(&path, "(axiom a :core (p c))\n").unwrap();
    let out = run(&["models", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("broken.slt:1:17"), "stderr was: {err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = run(&["models", "/nonexistent/theory.slt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("/nonexistent/theory.slt"));
}

#[test]
fn check_reports_axiom_count() {
    let out = run(&["check", corpus_path("tweety").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "ok: 4 axioms\n");
}

#[test]
fn no_arguments_is_a_usage_error_and_help_is_not() {
    let none = run(&[]);
    assert_eq!(none.status.code(), Some(1));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout_of(&help).contains("presup"));
}

#[test]
fn step_budget_flag_aborts_runaway_expansion() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("runaway.slt");
    std::fs::write(
        &path,
        "(axiom a :core (forall (x) (exists (y) (r^u x y))))\n",
    )
    .unwrap();
    let out = run(&["models", path.to_str().unwrap(), "--budget-universe", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("budget"));
}

#[test]
fn step_budget_env_var_is_a_fallback_for_the_flag() {
    let path = corpus_path("regret");
    let out = strata(&["models", path.to_str().unwrap()])
        .env("STRATA_BUDGET_STEPS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("budget"));

    let overridden = strata(&["models", path.to_str().unwrap(), "--budget-steps", "100000"])
        .env("STRATA_BUDGET_STEPS", "3")
        .output()
        .unwrap();
    assert_eq!(overridden.status.code(), Some(0));

    let invalid = strata(&["models", path.to_str().unwrap()])
        .env("STRATA_BUDGET_STEPS", "lots")
        .output()
        .unwrap();
    assert_eq!(invalid.status.code(), Some(1));
    assert!(stderr_of(&invalid).contains("invalid STRATA_BUDGET_STEPS"));
}

#[test]
fn repl_reports_cancellation_and_supports_undo() {
    let mut child = strata(&["repl", corpus_path("regret").to_str().unwrap()])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("repl starts");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(
            b"add (not (come^u mary party))\n\
              report\n\
              undo\n\
              report\n\
              quit\n",
        )
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_of(&out);
    assert!(
        stdout.contains("come^d(mary, party): Presupposed → Cancelled"),
        "stdout was: {stdout}"
    );
    assert!(stdout.contains("retracted; 0 utterance(s) remain"));
    let reports: Vec<_> = stdout.match_indices("cancelled:").collect();
    assert_eq!(reports.len(), 1, "undo should restore the presupposition");
}

#[test]
fn repl_rejects_an_utterance_that_destroys_all_models() {
    let mut child = strata(&["repl", corpus_path("buganda_bald").to_str().unwrap()])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("repl starts");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(
            b"add (forall (x) (not (king_of_buganda^u x)))\n\
              report\n\
              quit\n",
        )
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_of(&out);
    assert!(stdout.contains("theory has no model (utterance interpreted as false)"));
    assert!(stdout.contains("utterance rejected"));
    assert!(
        stdout.contains("E!^d(ξ₀)  [lu]"),
        "session should keep its pre-utterance state, stdout was: {stdout}"
    );
}
