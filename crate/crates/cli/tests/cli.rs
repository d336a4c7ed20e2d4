use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn superll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superll"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn check_valid_ell_proof() {
    let o = superll(&["check", "--instance", "preset:ell", &path("ell.sp")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid\n"));
    assert!(stdout(&o).contains("conclusion: |- !dot X, ?dot X^"));
}

#[test]
fn check_reports_the_failing_node() {
    let o = superll(&["check", "--instance", "preset:ell", &path("dereliction.sp")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid"));
    assert!(
        stderr(&o).contains("dereliction.sp:/: side condition de(dot)"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let o = superll(&["check", "--instance", "preset:ell", &path("bad.sp")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.sp:line 2"));
    assert_eq!(superll(&["check", &path("ell.sp")]).status.code(), Some(2));
    assert_eq!(
        superll(&["check", "--instance", "preset:nope", &path("ell.sp")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(superll(&["frobnicate"]).status.code(), Some(2));
    let o = superll(&[
        "verify-axioms",
        "--instance",
        "preset:ell",
        "--table",
        "cut",
        "--bounds",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn broken_instance_cut_table() {
    let o = superll(&[
        "verify-axioms",
        "--instance",
        &path("broken.inst"),
        "--table",
        "cut",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(
        out.contains("counterexample: ce2 k=1 e1=e' e=e n=2"),
        "{out}"
    );
    assert!(out.contains("result: fail"));
}

#[test]
fn preset_tables_pass() {
    for table in ["cut", "expansion", "girard"] {
        let o = superll(&[
            "verify-axioms",
            "--instance",
            "preset:ll-full",
            "--table",
            table,
            "--bounds",
            "4,4",
        ]);
        assert_eq!(o.status.code(), Some(0), "{table}: {}", stdout(&o));
        assert!(stdout(&o).contains("bounds: 4,4") || table == "expansion");
    }
}

#[test]
fn cut_elim_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.sp");
    let out = out.to_str().unwrap();
    let o = superll(&[
        "cut-elim",
        "--instance",
        "preset:ll-full",
        &path("cut.sp"),
        "-o",
        out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("cut-free: true"));
    let o = superll(&["check", "--instance", "preset:ll-full", "--strict", out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cut-free: true"));
}

#[test]
fn search_outcomes() {
    let o = superll(&[
        "search",
        "--instance",
        &path("broken.inst"),
        "--goal",
        "|- !e' X^, ?e (X * X), ?e X^",
        "--depth",
        "12",
        "--nodes",
        "100000",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("result: not-provable-within-budget"));
    let o = superll(&["search", "--instance", "preset:ell", "--goal", "|- X^ | X"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: found"));
    assert!(stdout(&o).contains("(parr"));
}

#[test]
fn translate_both_ways() {
    let dir = tempfile::tempdir().unwrap();
    let enc = dir.path().join("enc.sp");
    let enc = enc.to_str().unwrap();
    let o = superll(&[
        "translate",
        "encode",
        "--instance",
        "preset:sll",
        &path("mpx.nsp"),
        "-o",
        enc,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = superll(&["check", "--instance", "preset:sll", enc]);
    assert_eq!(o.status.code(), Some(0));
    let o = superll(&["translate", "decode", "--preset", "sll", enc]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("mpx"));
}

#[test]
fn forget_and_latex() {
    let o = superll(&[
        "forget",
        "--instance",
        &path("broken.inst"),
        &path("broken.sp"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("conclusion: |- !dot X^, ?dot (X * X), ?dot X^"));
    let o = superll(&["export-latex", &path("broken.sp")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("\\begin{prooftree}"));
}
