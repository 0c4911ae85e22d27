//! End-to-end tests for the `luka` binary: exit-code contract, report
//! shapes, determinism, and the state-session workflow.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn luka() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_luka"));
    // Isolate from the ambient environment: the variable overrides flags.
    cmd.env_remove("LUKA_MAX_DIM");
    cmd
}

fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

const STRICT_BOOK: &str = "x1 ; 1/2\nx2 ; 1/2\nx1 + x2 ; 3/4\n";
const BOUNDARY_BOOK: &str = "x1 ; 1/2\nx2 ; 1/2\nx1 + x2 ; 1\n";
const INCOHERENT_BOOK: &str = "x1 ; 1\nx2 ; 1\nx1 + x2 ; 1/2\n";

#[test]
fn coherence_trichotomy_exit_codes_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (STRICT_BOOK, "strict", 0, 0),
        (BOUNDARY_BOOK, "coherent", 0, 1),
        (INCOHERENT_BOOK, "incoherent", 1, 1),
    ];
    for (text, verdict, plain_exit, strict_exit) in cases {
        let book = write_file(dir.path(), "case.book", text);
        let plain = luka().arg("coherence").arg(&book).output().unwrap();
        assert_eq!(code(&plain), plain_exit, "plain run on {verdict}");
        let doc = report(&plain);
        assert_eq!(doc["certificate"]["verdict"], verdict);
        assert_eq!(doc["certificate_verified"], true);

        let strict = luka()
            .arg("coherence")
            .arg(&book)
            .arg("--strict")
            .output()
            .unwrap();
        assert_eq!(code(&strict), strict_exit, "strict run on {verdict}");
        assert_eq!(report(&strict)["strict_required"], true);
    }
}

#[test]
fn coherence_writes_certificate_and_complex_files() {
    let dir = tempfile::tempdir().unwrap();
    let book = write_file(dir.path(), "strict.book", STRICT_BOOK);
    let cert = dir.path().join("cert.json");
    let complex = dir.path().join("complex.json");
    let out = luka()
        .arg("coherence")
        .arg(&book)
        .arg("--certificate")
        .arg(&cert)
        .arg("--complex")
        .arg(&complex)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);

    let cert_doc: Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(cert_doc["verdict"], "strict");
    assert_eq!(cert_doc, report(&out)["certificate"]);

    let complex_doc: Value =
        serde_json::from_str(&std::fs::read_to_string(&complex).unwrap()).unwrap();
    assert_eq!(complex_doc["n"], 2);
}

#[test]
fn reports_are_byte_identical_across_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let book = write_file(dir.path(), "strict.book", STRICT_BOOK);
    let first = luka().arg("coherence").arg(&book).output().unwrap();
    let second = luka().arg("coherence").arg(&book).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());

    // The timestamps flag adds exactly one extra top-level field.
    let stamped = luka()
        .arg("coherence")
        .arg(&book)
        .arg("--timestamps")
        .output()
        .unwrap();
    let doc = report(&stamped);
    assert!(doc["timestamps"]["unix_ms"].is_u64());
    let mut plain = report(&first);
    plain
        .as_object_mut()
        .unwrap()
        .insert("timestamps".into(), doc["timestamps"].clone());
    assert_eq!(plain, doc);
}

#[test]
fn book_file_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for text in [
        "x1 1/2\n",        // missing separator
        "x1 ; 3/2\n",      // odds out of range
        "x1 ; \n",         // missing value
        "x? ; 1/2\n",      // bad formula
        "# only a comment\n", // empty book
    ] {
        let book = write_file(dir.path(), "bad.book", text);
        let out = luka().arg("coherence").arg(&book).output().unwrap();
        assert_eq!(code(&out), 2, "book {text:?}");
        assert!(out.stdout.is_empty(), "no report on input errors");
        assert!(!out.stderr.is_empty(), "diagnostic expected for {text:?}");
    }

    let missing = dir.path().join("does-not-exist.book");
    let out = luka().arg("coherence").arg(&missing).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let book = write_file(
        dir.path(),
        "commented.book",
        "# base odds\n\nx1 ; 1/2   # even money\n\n  # done\n",
    );
    let out = luka().arg("coherence").arg(&book).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["book"][0][0], "x1");
}

#[test]
fn state_session_open_eval_extend_replay() {
    let dir = tempfile::tempdir().unwrap();
    let book = write_file(dir.path(), "half.book", "x1 ; 1/2\n");
    let session = dir.path().join("half.session");

    let open = luka()
        .args(["state", "open", "--book"])
        .arg(&book)
        .arg("--session")
        .arg(&session)
        .output()
        .unwrap();
    assert_eq!(code(&open), 0);
    let open_doc = report(&open);
    assert_eq!(open_doc["opened"], true);
    assert_eq!(open_doc["state"]["faithful"], true);

    let eval = |formula: &str| {
        let out = luka()
            .args(["state", "eval", "--session"])
            .arg(&session)
            .arg(formula)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "eval {formula}");
        report(&out)["value"].as_str().unwrap().to_string()
    };
    assert_eq!(eval("x1"), "1/2");
    assert_eq!(eval("1"), "1");
    assert_eq!(eval("0"), "0");

    let extend = luka()
        .args(["state", "extend", "--session"])
        .arg(&session)
        .arg("x1 + x1")
        .output()
        .unwrap();
    assert_eq!(code(&extend), 0);
    let extend_doc = report(&extend);
    let assigned = extend_doc["value"].as_str().unwrap().to_string();
    assert_eq!(extend_doc["history"][0][1], assigned.as_str());

    // Strictly between the base value and 1: numerator/denominator check
    // via the replayed evaluation, which must agree exactly.
    assert_eq!(eval("x1 + x1"), assigned);
    assert_eq!(eval("x1"), "1/2", "history preserved");
    let parts: Vec<i64> = assigned.split('/').map(|p| p.parse().unwrap()).collect();
    let (num, den) = (parts[0], parts[1]);
    assert!(2 * num > den && num < den, "{assigned} not in (1/2, 1)");
}

#[test]
fn state_open_rejects_non_strict_book_with_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let book = write_file(dir.path(), "boundary.book", BOUNDARY_BOOK);
    let session = dir.path().join("never.session");
    let out = luka()
        .args(["state", "open", "--book"])
        .arg(&book)
        .arg("--session")
        .arg(&session)
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let doc = report(&out);
    assert_eq!(doc["opened"], false);
    assert_eq!(doc["verdict"]["verdict"], "coherent");
    assert!(doc["verdict"]["sigma"].is_array(), "embedded certificate");
    assert!(!session.exists(), "no session file on rejection");
}

#[test]
fn state_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.session");
    let out = luka()
        .args(["state", "eval", "--session"])
        .arg(&missing)
        .arg("x1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);

    let mangled = write_file(dir.path(), "mangled.session", "{\"book\": 3}");
    let out = luka()
        .args(["state", "eval", "--session"])
        .arg(&mangled)
        .arg("x1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn prove_examples_and_exit_codes() {
    let cases = [
        ("~x1", "~(x1+x1)", Some(2), 0),
        ("x1", "x1", Some(1), 0),
        ("x1+x1", "x1", None, 1),
    ];
    for (phi, psi, expected, exit) in cases {
        let out = luka()
            .args(["prove", "--phi", phi, "--psi", psi])
            .output()
            .unwrap();
        assert_eq!(code(&out), exit, "prove {phi} -> {psi}");
        let doc = report(&out);
        match expected {
            Some(n) => assert_eq!(doc["exponent"], n),
            None => assert!(doc["exponent"].is_null()),
        }
    }
}

#[test]
fn theory_reports_formulas_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    let book = write_file(dir.path(), "half.book", "x1 ; 1/2\n");
    let out = luka()
        .args(["theory", "--book"])
        .arg(&book)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let doc = report(&out);
    assert_eq!(doc["coherent"], true);
    assert_eq!(doc["strict"], true);
    assert_eq!(doc["theory_exponent"], 1);
    assert!(doc["boundary_exponent"].is_null());
    assert_eq!(doc["verification"]["point_models_point"], true);
    assert_eq!(doc["verification"]["theory_models_polytope"], true);
    assert_eq!(doc["verification"]["boundary_models_boundary"], true);
    // The synthesized formulas parse back under the grammar.
    for key in ["point_formula", "theory_formula", "boundary_formula"] {
        let src = doc[key].as_str().unwrap();
        let out = luka().args(["validity", src]).output().unwrap();
        assert!(code(&out) == 0 || code(&out) == 1, "reparse {key}");
    }

    // A book whose risk polytope fills the whole square: the theory formula
    // degenerates to the tautology, and verification must still compare
    // model sets in the book's own dimension.
    let square = write_file(dir.path(), "square.book", "x1 ; 1/2\nx2 ; 1/2\n");
    let out = luka().args(["theory", "--book"]).arg(&square).output().unwrap();
    assert_eq!(code(&out), 0);
    let doc = report(&out);
    assert_eq!(doc["theory_formula"], "1");
    assert_eq!(doc["verification"]["theory_models_polytope"], true);
    assert_eq!(doc["verification"]["boundary_models_boundary"], true);
}

#[test]
fn theory_reports_incoherent_books() {
    let dir = tempfile::tempdir().unwrap();
    let book = write_file(dir.path(), "incoherent.book", INCOHERENT_BOOK);
    let out = luka().args(["theory", "--book"]).arg(&book).output().unwrap();
    assert_eq!(code(&out), 0, "verification still passes");
    let doc = report(&out);
    assert_eq!(doc["coherent"], false);
    assert_eq!(doc["strict"], false);
    assert!(doc["theory_exponent"].is_null());
}

#[test]
fn triangulate_emits_complex_and_writes_output() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("complex.json");
    let out = luka()
        .args(["triangulate", "x1 + x2", "--output"])
        .arg(&output)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let doc = report(&out);
    assert_eq!(doc["statistics"]["dimension"], 2);
    assert_eq!(doc["formulas"][0], "x1 + x2");
    let file_doc: Value =
        serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(file_doc, doc["complex"]);
}

#[test]
fn validity_exit_codes() {
    let valid = luka().args(["validity", "x1 -> x1"]).output().unwrap();
    assert_eq!(code(&valid), 0);
    assert_eq!(report(&valid)["valid"], true);

    let invalid = luka().args(["validity", "x1 -> x1 * x1"]).output().unwrap();
    assert_eq!(code(&invalid), 1);
    assert_eq!(report(&invalid)["valid"], false);

    let broken = luka().args(["validity", "x1 +"]).output().unwrap();
    assert_eq!(code(&broken), 2);

    let unknown = luka().args(["frobnicate"]).output().unwrap();
    assert_eq!(code(&unknown), 2, "clap errors use the input-error code");
}

#[test]
fn max_dim_env_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let book = write_file(dir.path(), "strict.book", STRICT_BOOK);

    let capped = luka()
        .arg("coherence")
        .arg(&book)
        .env("LUKA_MAX_DIM", "1")
        .output()
        .unwrap();
    assert_eq!(code(&capped), 2);
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));

    // The environment variable wins over the flag.
    let still_capped = luka()
        .arg("coherence")
        .arg(&book)
        .args(["--max-dim", "4"])
        .env("LUKA_MAX_DIM", "1")
        .output()
        .unwrap();
    assert_eq!(code(&still_capped), 2);

    let bad = luka()
        .args(["validity", "x1"])
        .env("LUKA_MAX_DIM", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn extend_serializes_concurrent_writers() {
    let dir = tempfile::tempdir().unwrap();
    let book = write_file(dir.path(), "half.book", "x1 ; 1/2\n");
    let session = dir.path().join("half.session");
    let open = luka()
        .args(["state", "open", "--book"])
        .arg(&book)
        .arg("--session")
        .arg(&session)
        .output()
        .unwrap();
    assert_eq!(code(&open), 0);

    // Two concurrent extends: both must succeed, and the surviving session
    // must contain both events in some order, replaying cleanly.
    let spawn = |formula: &str| {
        luka()
            .args(["state", "extend", "--session"])
            .arg(&session)
            .arg(formula)
            .stdout(std::process::Stdio::null())
            .spawn()
            .unwrap()
    };
    let mut a = spawn("x1 + x1");
    let mut b = spawn("x1 * x1");
    assert!(a.wait().unwrap().success());
    assert!(b.wait().unwrap().success());

    let eval = luka()
        .args(["state", "eval", "--session"])
        .arg(&session)
        .arg("x1")
        .output()
        .unwrap();
    assert_eq!(code(&eval), 0, "session still loads and re-verifies");
    assert_eq!(report(&eval)["value"], "1/2");

    let text = std::fs::read_to_string(&session).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["history"].as_array().unwrap().len(), 2);
}
