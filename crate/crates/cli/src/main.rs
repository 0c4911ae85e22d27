//! Command-line front end for the luka coherence toolkit.
//!
//! Every command reads its inputs, runs one decision or construction from
//! `luka_core`, and prints a single JSON report to stdout.  Reports are
//! deterministic: the same command on the same inputs produces the same
//! bytes.  The optional `--timestamps` flag adds a `timestamps` field with
//! wall-clock data; that field is the only part of a report allowed to vary
//! between runs and sits outside the deterministic payload.
//!
//! Exit codes follow one contract across commands: `0` for a positive
//! decision (coherent, strictly coherent under `--strict`, valid, exponent
//! found, state operation completed), `1` for a negative decision, and `2`
//! for anything that prevented a decision (unreadable files, parse errors,
//! resource caps).

use std::fs;
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use luka_core::coherence::{
    decide_strict, risk_polytope, verdict_json, verify_certificate, Book, Verdict,
};
use luka_core::complex::{linearize, ComplexConfig, RegularComplex};
use luka_core::formula::{parse, Formula};
use luka_core::geometry::polytope::Polytope;
use luka_core::geometry::Point;
use luka_core::logic::{
    deduction_exponent, is_valid, logic_coherence_check, mod_of_in, Polyhedron,
};
use luka_core::rat::{fmt_rat, parse_rat};
use luka_core::states::{open_session, ExtensionSession};

/// Exact coherence checking for rational books on many-valued events.
#[derive(Parser)]
#[command(name = "luka", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Add wall-clock timestamps to the report, outside the deterministic
    /// payload.
    #[arg(long, global = true)]
    timestamps: bool,

    /// Ambient dimension cap; the LUKA_MAX_DIM environment variable
    /// overrides this flag.
    #[arg(long, global = true, value_name = "N")]
    max_dim: Option<usize>,

    /// Cap on the number of formulas handled per linearization.
    #[arg(long, global = true, value_name = "N")]
    max_formulas: Option<usize>,

    /// Cap on the number of cells produced by subdivision.
    #[arg(long, global = true, value_name = "N")]
    max_subdivisions: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide coherence of a book and emit a verifiable certificate.
    Coherence {
        /// Book file: one `<formula> ; <rational>` entry per line.
        book: PathBuf,

        /// Require strict coherence for exit code 0.
        #[arg(long)]
        strict: bool,

        /// Also write the certificate to this file.
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,

        /// Also write the linearizing complex to this file.
        #[arg(long, value_name = "PATH")]
        complex: Option<PathBuf>,
    },

    /// Work with faithful-state sessions over a strictly coherent book.
    State {
        #[command(subcommand)]
        action: StateCommand,
    },

    /// Find the least n making `phi^n -> psi` valid.
    Prove {
        /// Antecedent formula.
        #[arg(long, value_name = "FORMULA")]
        phi: String,

        /// Consequent formula.
        #[arg(long, value_name = "FORMULA")]
        psi: String,
    },

    /// Synthesize the point, risk-polytope, and boundary formulas of a book.
    Theory {
        /// Book file: one `<formula> ; <rational>` entry per line.
        #[arg(long, value_name = "PATH")]
        book: PathBuf,
    },

    /// Build a unimodular complex on which the given formulas are linear.
    Triangulate {
        /// Formulas to linearize together.
        #[arg(required = true, value_name = "FORMULA")]
        formulas: Vec<String>,

        /// Also write the complex to this file.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },

    /// Decide whether a formula is a tautology.
    Validity {
        /// Formula to check.
        formula: String,
    },
}

#[derive(Subcommand)]
enum StateCommand {
    /// Open a session: reject books that are not strictly coherent.
    Open {
        /// Book file for the base book.
        #[arg(long, value_name = "PATH")]
        book: PathBuf,

        /// Session file to create.
        #[arg(long, value_name = "PATH")]
        session: PathBuf,
    },

    /// Assign a value to a new event and rewrite the session.
    Extend {
        /// Session file to extend; locked exclusively while rewriting.
        #[arg(long, value_name = "PATH")]
        session: PathBuf,

        /// Event to assign a value to.
        formula: String,
    },

    /// Evaluate the session's state on a formula.
    Eval {
        /// Session file to read.
        #[arg(long, value_name = "PATH")]
        session: PathBuf,

        /// Formula to evaluate.
        formula: String,
    },
}

/// A run that ended without producing a report.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn core_error(e: luka_core::Error) -> Failure {
    input_error(e.to_string())
}

type CmdResult = Result<(Value, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((mut report, code)) => {
            if cli.global.timestamps {
                if let Value::Object(map) = &mut report {
                    let ms = SystemTime::now()
                        .duration_since(UNIX_EPOCH)
                        .map(|d| d.as_millis() as u64)
                        .unwrap_or(0);
                    map.insert("timestamps".into(), json!({ "unix_ms": ms }));
                }
            }
            match serde_json::to_string_pretty(&report) {
                Ok(text) => {
                    println!("{text}");
                    ExitCode::from(code)
                }
                Err(e) => {
                    eprintln!("error: cannot serialize report: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let cfg = build_config(&cli.global)?;
    match &cli.command {
        Command::Coherence {
            book,
            strict,
            certificate,
            complex,
        } => cmd_coherence(&cfg, book, *strict, certificate.as_deref(), complex.as_deref()),
        Command::State { action } => match action {
            StateCommand::Open { book, session } => cmd_state_open(&cfg, book, session),
            StateCommand::Extend { session, formula } => cmd_state_extend(&cfg, session, formula),
            StateCommand::Eval { session, formula } => cmd_state_eval(session, formula),
        },
        Command::Prove { phi, psi } => cmd_prove(&cfg, phi, psi),
        Command::Theory { book } => cmd_theory(&cfg, book),
        Command::Triangulate { formulas, output } => {
            cmd_triangulate(&cfg, formulas, output.as_deref())
        }
        Command::Validity { formula } => cmd_validity(&cfg, formula),
    }
}

/// Resolve resource limits: defaults, then flags, then LUKA_MAX_DIM.
fn build_config(global: &GlobalOpts) -> Result<ComplexConfig, Failure> {
    let mut cfg = ComplexConfig::default();
    if let Some(d) = global.max_dim {
        cfg.max_dim = d;
    }
    if let Some(f) = global.max_formulas {
        cfg.max_formulas = f;
    }
    if let Some(s) = global.max_subdivisions {
        cfg.max_subdivisions = s;
    }
    if let Ok(raw) = std::env::var("LUKA_MAX_DIM") {
        cfg.max_dim = raw
            .trim()
            .parse()
            .map_err(|_| input_error(format!("LUKA_MAX_DIM must be an integer, got `{raw}`")))?;
    }
    Ok(cfg)
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

/// Parse a book file: one `<formula> ; <rational>` per line, `#` comments.
///
/// Returns the book together with its echo for reports: the parsed entries
/// printed back in canonical form.
fn read_book(path: &Path) -> Result<(Book, Value), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    let mut entries = Vec::new();
    let mut echo = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let Some((formula_src, value_src)) = line.split_once(';') else {
            return Err(input_error(format!(
                "{}:{lineno}: expected `<formula> ; <rational>`",
                path.display()
            )));
        };
        let formula = parse(formula_src.trim())
            .map_err(|e| input_error(format!("{}:{lineno}: {e}", path.display())))?;
        let value = parse_rat(value_src.trim())
            .map_err(|e| input_error(format!("{}:{lineno}: {e}", path.display())))?;
        echo.push(json!([formula.to_string(), fmt_rat(&value)]));
        entries.push((formula, value));
    }
    let book = Book::new(entries)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok((book, Value::Array(echo)))
}

fn parse_formula(src: &str) -> Result<Formula, Failure> {
    parse(src).map_err(|e| input_error(format!("formula `{src}`: {e}")))
}

fn complex_stats(c: &RegularComplex) -> Value {
    json!({
        "dimension": c.dim(),
        "simplexes": c.simplexes().len(),
        "vertices": c.vertices().len(),
    })
}

fn write_json(path: &Path, doc: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc)
        .map_err(|e| input_error(format!("cannot serialize {}: {e}", path.display())))?;
    fs::write(path, text + "\n")
        .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))
}

fn read_session(path: &Path, text: &str) -> Result<ExtensionSession, Failure> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| input_error(format!("{}: not valid JSON: {e}", path.display())))?;
    ExtensionSession::from_json(&doc)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn history_json(session: &ExtensionSession) -> Value {
    Value::Array(
        session
            .history()
            .iter()
            .map(|(f, v)| json!([f.to_string(), fmt_rat(v)]))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_coherence(
    cfg: &ComplexConfig,
    book_path: &Path,
    strict: bool,
    certificate_out: Option<&Path>,
    complex_out: Option<&Path>,
) -> CmdResult {
    let (book, echo) = read_book(book_path)?;
    let rp = risk_polytope(book, cfg).map_err(core_error)?;
    let verdict = decide_strict(&rp).map_err(core_error)?;
    if !verify_certificate(&rp, &verdict) {
        return Err(Failure {
            code: 2,
            message: "certificate failed re-verification".into(),
        });
    }

    let (coherent, strictly_coherent) = match &verdict {
        Verdict::StrictlyCoherent { .. } => (true, true),
        Verdict::CoherentNotStrict { .. } => (true, false),
        Verdict::Incoherent { .. } => (false, false),
    };
    let positive = if strict { strictly_coherent } else { coherent };

    let certificate = verdict_json(&rp, &verdict);
    if let Some(path) = certificate_out {
        write_json(path, &certificate)?;
    }
    if let Some(path) = complex_out {
        write_json(path, &rp.complex().to_json())?;
    }

    let report = json!({
        "book": echo,
        "certificate": certificate,
        "certificate_verified": true,
        "coherent": coherent,
        "command": "coherence",
        "complex": complex_stats(rp.complex()),
        "strict_required": strict,
        "strictly_coherent": strictly_coherent,
    });
    Ok((report, if positive { 0 } else { 1 }))
}

fn cmd_state_open(cfg: &ComplexConfig, book_path: &Path, session_path: &Path) -> CmdResult {
    let (book, echo) = read_book(book_path)?;
    let rp = risk_polytope(book.clone(), cfg).map_err(core_error)?;
    let verdict = decide_strict(&rp).map_err(core_error)?;
    let certificate = verdict_json(&rp, &verdict);

    if !matches!(verdict, Verdict::StrictlyCoherent { .. }) {
        let report = json!({
            "book": echo,
            "command": "state-open",
            "complex": complex_stats(rp.complex()),
            "opened": false,
            "verdict": certificate,
        });
        return Ok((report, 1));
    }

    let session = open_session(book, cfg).map_err(core_error)?;
    write_json(session_path, &session.to_json())?;
    let lambda: Vec<Value> = session
        .state()
        .lambda()
        .iter()
        .map(|w| Value::String(fmt_rat(w)))
        .collect();
    let report = json!({
        "book": echo,
        "command": "state-open",
        "complex": complex_stats(session.state().complex()),
        "opened": true,
        "session": session_path.display().to_string(),
        "state": { "faithful": session.state().is_faithful(), "lambda": lambda },
        "verdict": certificate,
    });
    Ok((report, 0))
}

fn cmd_state_extend(cfg: &ComplexConfig, session_path: &Path, formula_src: &str) -> CmdResult {
    let formula = parse_formula(formula_src)?;
    let mut file = fs::OpenOptions::new()
        .read(true)
        .write(true)
        .open(session_path)
        .map_err(|e| input_error(format!("cannot open {}: {e}", session_path.display())))?;
    file.lock()
        .map_err(|e| input_error(format!("cannot lock {}: {e}", session_path.display())))?;

    let mut text = String::new();
    file.read_to_string(&mut text)
        .map_err(|e| input_error(format!("cannot read {}: {e}", session_path.display())))?;
    let mut session = read_session(session_path, &text)?;

    let value = session.extend(formula.clone(), cfg).map_err(core_error)?;

    let out = serde_json::to_string_pretty(&session.to_json())
        .map_err(|e| input_error(format!("cannot serialize session: {e}")))?
        + "\n";
    file.seek(SeekFrom::Start(0))
        .and_then(|_| file.set_len(0))
        .and_then(|_| file.write_all(out.as_bytes()))
        .map_err(|e| input_error(format!("cannot rewrite {}: {e}", session_path.display())))?;

    let report = json!({
        "command": "state-extend",
        "complex": complex_stats(session.state().complex()),
        "formula": formula.to_string(),
        "history": history_json(&session),
        "session": session_path.display().to_string(),
        "value": fmt_rat(&value),
    });
    Ok((report, 0))
}

fn cmd_state_eval(session_path: &Path, formula_src: &str) -> CmdResult {
    let formula = parse_formula(formula_src)?;
    let text = fs::read_to_string(session_path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", session_path.display())))?;
    let session = read_session(session_path, &text)?;
    let value = session.eval(&formula).map_err(core_error)?;
    let report = json!({
        "command": "state-eval",
        "formula": formula.to_string(),
        "session": session_path.display().to_string(),
        "value": fmt_rat(&value),
    });
    Ok((report, 0))
}

fn cmd_prove(cfg: &ComplexConfig, phi_src: &str, psi_src: &str) -> CmdResult {
    let phi = parse_formula(phi_src)?;
    let psi = parse_formula(psi_src)?;
    let exponent = deduction_exponent(&phi, &psi, cfg).map_err(core_error)?;
    let report = json!({
        "command": "prove",
        "exponent": exponent,
        "phi": phi.to_string(),
        "psi": psi.to_string(),
    });
    Ok((report, if exponent.is_some() { 0 } else { 1 }))
}

fn cmd_theory(cfg: &ComplexConfig, book_path: &Path) -> CmdResult {
    let (book, echo) = read_book(book_path)?;
    let pr = logic_coherence_check(&book, cfg).map_err(core_error)?;

    // Re-verify each synthesized formula's model set against its target,
    // independently of the checks inside the decision itself.  Model sets
    // are taken inside the cube of the book's dimension: a formula may
    // mention fewer variables than the polytope it axiomatizes.
    let k = book.len().max(1);
    let rp = risk_polytope(book.clone(), cfg).map_err(core_error)?;
    let beta = Point::new(book.values()).map_err(core_error)?;
    let beta_poly = Polytope::convex_hull(std::slice::from_ref(&beta)).map_err(core_error)?;
    let point_ok = mod_of_in(&pr.point_formula, k, cfg)
        .map_err(core_error)?
        .equals_polytope(&beta_poly)
        .map_err(core_error)?;
    let theory_ok = mod_of_in(&pr.theory_formula, k, cfg)
        .map_err(core_error)?
        .equals_polytope(rp.polytope())
        .map_err(core_error)?;
    let boundary_models = if pr.boundary_formula == Formula::Zero {
        Polyhedron::empty()
    } else {
        mod_of_in(&pr.boundary_formula, k, cfg).map_err(core_error)?
    };
    let boundary_ok = boundary_models
        .equals_boundary(rp.polytope())
        .map_err(core_error)?;
    let verified = point_ok && theory_ok && boundary_ok;

    let report = json!({
        "book": echo,
        "boundary_exponent": pr.boundary_exponent,
        "boundary_formula": pr.boundary_formula.to_string(),
        "coherent": pr.coherent,
        "command": "theory",
        "point_formula": pr.point_formula.to_string(),
        "strict": pr.strict,
        "theory_exponent": pr.theory_exponent,
        "theory_formula": pr.theory_formula.to_string(),
        "verification": {
            "boundary_models_boundary": boundary_ok,
            "point_models_point": point_ok,
            "theory_models_polytope": theory_ok,
        },
    });
    Ok((report, if verified { 0 } else { 2 }))
}

fn cmd_triangulate(cfg: &ComplexConfig, sources: &[String], output: Option<&Path>) -> CmdResult {
    let mut formulas = Vec::with_capacity(sources.len());
    for src in sources {
        formulas.push(parse_formula(src)?);
    }
    let complex = linearize(&formulas, cfg).map_err(core_error)?;
    let doc = complex.to_json();
    if let Some(path) = output {
        write_json(path, &doc)?;
    }
    let report = json!({
        "command": "triangulate",
        "complex": doc,
        "formulas": formulas.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "statistics": complex_stats(&complex),
    });
    Ok((report, 0))
}

fn cmd_validity(cfg: &ComplexConfig, formula_src: &str) -> CmdResult {
    let formula = parse_formula(formula_src)?;
    let valid = is_valid(&formula, cfg).map_err(core_error)?;
    let report = json!({
        "command": "validity",
        "formula": formula.to_string(),
        "valid": valid,
    });
    Ok((report, if valid { 0 } else { 1 }))
}
