//! End-to-end tests of the binary: exit codes, golden output bytes, and
//! determinism across runs and worker counts.

use std::process::{Command, Output};

fn stallings(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stallings"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn core_records_golden() {
    let out = stallings(&["core", "aBa", "AAb", "--format", "records"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "4 0\n0 a 1\n2 a 0\n2 b 1\n3 a 2\n3 b 0\n");
}

#[test]
fn core_accepts_comma_lists_and_human_format() {
    let out = stallings(&["core", "aBa,AAb"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("vertices 4, edges 5, basepoint 0, subgroup rank 2\n"));
}

#[test]
fn appears_exit_codes() {
    let out = stallings(&["appears", "aabb", "--in", "aBa,AAb"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "does not appear\n");

    let out = stallings(&["appears", "aaa", "--in", "aBa,AAb", "--format", "records"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("split 1\n"), "{text}");

    let out = stallings(&["appears", "aabA", "--in", "aBa,AAb"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn member_exit_codes() {
    assert_eq!(code(&stallings(&["member", "aBa", "--in", "aBa,AAb"])), 0);
    assert_eq!(code(&stallings(&["member", "a", "--in", "aabb"])), 1);
    assert_eq!(code(&stallings(&["member", "aabb", "--in", "aabb"])), 0);
}

#[test]
fn covers_verdicts() {
    let out = stallings(&["covers", "aabb", "aabb,ab"]);
    assert_eq!((code(&out), stdout(&out)), (0, "covers\n".into()));

    let out = stallings(&["covers", "aaBccb", "aaBccb,aBcb"]);
    assert_eq!((code(&out), stdout(&out)), (1, "not-covers\n".into()));

    let out = stallings(&["covers", "a", "b"]);
    assert_eq!((code(&out), stdout(&out)), (1, "not-subgroup\n".into()));
}

#[test]
fn covers_with_xyz_alphabet() {
    // the rank-3 pair in its natural letters
    let out = stallings(&["covers", "xxYzzy", "xxYzzy,xYzy", "--alphabet", "xyz"]);
    assert_eq!((code(&out), stdout(&out)), (1, "not-covers\n".into()));
}

#[test]
fn basis_and_primitive_exit_codes() {
    assert_eq!(code(&stallings(&["basis", "aba", "ba"])), 0);
    assert_eq!(code(&stallings(&["basis", "aa", "b"])), 1);
    assert_eq!(code(&stallings(&["primitive", "ab"])), 0);
    assert_eq!(code(&stallings(&["primitive", "abaB"])), 1);
    assert_eq!(code(&stallings(&["primitive", "aabb"])), 1);
}

#[test]
fn gen_basis_golden() {
    let out = stallings(&["gen-basis", "3", "2"]);
    assert_eq!((code(&out), stdout(&out)), (0, "aba ba\n".into()));
    let out = stallings(&["gen-basis", "2", "1", "--seed", "A,b"]);
    assert_eq!((code(&out), stdout(&out)), (0, "Ab b\n".into()));
    let out = stallings(&["gen-basis", "2", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enum_bases_at_two_lists_the_seeds() {
    let out = stallings(&["enum-bases", "--max-len", "2", "--format", "records"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "a b\na B\nA b\nA B\n");
}

#[test]
fn enum_bases_modes_agree() {
    let brute = stallings(&["enum-bases", "--max-len", "5", "--format", "records"]);
    let structural = stallings(&[
        "enum-bases",
        "--max-len",
        "5",
        "--mode",
        "structural",
        "--format",
        "records",
    ]);
    assert_eq!(stdout(&brute), stdout(&structural));
    let cr = stallings(&["enum-bases", "--max-len", "5", "--cr-only", "--format", "records"]);
    assert!(stdout(&cr).lines().count() < stdout(&brute).lines().count());
}

#[test]
fn overgroups_of_single_relator() {
    let out = stallings(&["overgroups", "aabb"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("7 principal overgroups\n"));
    let capped = stallings(&["overgroups", "aabb", "--max-vertices", "3"]);
    assert_eq!(code(&capped), 2);
}

#[test]
fn verify_counterexample_small_sweep() {
    let out = stallings(&["verify-counterexample", "--max-len", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("result: PASS"), "{text}");
    assert!(text.contains("bases checked: 100 unordered"), "{text}");
    assert!(!text.contains("wall time"), "timings must be opt-in: {text}");
}

#[test]
fn verify_counterexample_is_deterministic_across_jobs() {
    let one = stallings(&[
        "verify-counterexample",
        "--max-len",
        "4",
        "--per-basis",
        "--format",
        "records",
    ]);
    let four = stallings(&[
        "verify-counterexample",
        "--max-len",
        "4",
        "--per-basis",
        "--format",
        "records",
        "--jobs",
        "4",
    ]);
    assert_eq!(stdout(&one), stdout(&four));
    assert_eq!(code(&one), 0);
    let timed = stallings(&["verify-counterexample", "--max-len", "2", "--timings"]);
    assert!(stdout(&timed).contains("wall time:"));
}

#[test]
fn verify_f3_passes() {
    let out = stallings(&["verify-f3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("appears: false"), "{text}");
    assert!(text.contains("result: PASS"), "{text}");
}

#[test]
fn export_dot_and_records() {
    let dot = stallings(&["export", "aabb", "--format", "dot"]);
    assert_eq!(code(&dot), 0);
    assert!(stdout(&dot).contains("0 [shape=doublecircle];"));
    assert!(stdout(&dot).contains("-> "));
    let records = stallings(&["export", "aabb", "--format", "records"]);
    assert_eq!(stdout(&records), "4 0\n0 a 1\n1 a 3\n2 b 0\n3 b 2\n");
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("stallings-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("graph.records");
    let out = stallings(&["export", "aabb", "--format", "records", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("4 0\n"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["core", "aBa,AAb", "--format", "records"],
        vec!["enum-bases", "--max-len", "4", "--format", "records"],
        vec!["overgroups", "aabb", "--format", "records"],
        vec!["verify-counterexample", "--max-len", "3", "--per-basis", "--format", "records"],
    ] {
        let first = stallings(&args);
        let second = stallings(&args);
        assert_eq!(stdout(&first), stdout(&second), "args {args:?}");
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let out = stallings(&["no-such-verb"]);
    assert_eq!(code(&out), 2);

    let out = stallings(&["member", "ab?c", "--in", "a"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("column 3"), "{err}");

    let out = stallings(&["member", "abc", "--in", "a", "--rank", "2"]);
    assert_eq!(code(&out), 2);

    let out = stallings(&["basis", "abc", "abc"]);
    assert_eq!(code(&out), 2, "rank-3 letters rejected for F2 verbs");
}
