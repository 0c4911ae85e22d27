//! Acceptance suite: ten end-to-end criteria covering the worked example,
//! decision invariance, the coherence trichotomy, oracle agreement, hat
//! laws, faithful extension, the Lebesgue state, the provability route,
//! synthesis soundness, and the classical specialization.
//!
//! Each criterion is one test; the harness line doubles as its pass/fail
//! line, and every test also prints a `criterion N: pass` summary visible
//! under `--nocapture`.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use luka_core::coherence::{
    decide_coherent, decide_strict, ri_membership_crosscheck, risk_polytope, risk_polytope_on,
    verify_certificate, Book, CoherenceOutcome, RiskPolytope, Verdict,
};
use luka_core::complex::{hats, linearize, ComplexConfig, RegularComplex};
use luka_core::formula::{implies, join, meet, neg, oplus, odot, parse, var, Formula};
use luka_core::geometry::polytope::Polytope;
use luka_core::geometry::{cube_corners, AffineForm, Point};
use luka_core::logic::{
    deduction_exponent, is_valid, logic_coherence_check, mod_of_in, synth_affine_term,
    synth_boundary_formula, synth_polytope_formula,
};
use luka_core::rat::{rat, rat_int, Rat};
use luka_core::states::{lebesgue_state, open_session, restrict};

fn cfg() -> ComplexConfig {
    ComplexConfig::default()
}

fn f(src: &str) -> Formula {
    parse(src).unwrap()
}

fn pt(pairs: &[(i64, i64)]) -> Point {
    Point::from_pairs(pairs)
}

fn book(entries: &[(&str, (i64, i64))]) -> Book {
    Book::new(
        entries
            .iter()
            .map(|(src, (n, d))| (f(src), rat(*n, *d)))
            .collect(),
    )
    .unwrap()
}

fn rats(pairs: &[(i64, i64)]) -> Vec<Rat> {
    pairs.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn extremal_set(p: &Polytope) -> BTreeSet<Vec<Rat>> {
    p.extremals().iter().map(|e| e.coords().to_vec()).collect()
}

fn verdict_kind(v: &Verdict) -> &'static str {
    match v {
        Verdict::Incoherent { .. } => "incoherent",
        Verdict::CoherentNotStrict { .. } => "coherent",
        Verdict::StrictlyCoherent { .. } => "strict",
    }
}

// --- random fixtures ------------------------------------------------------

fn random_formula(rng: &mut ChaCha8Rng, nvars: u32, depth: u32) -> Formula {
    if depth == 0 || rng.gen_range(0..4) == 0 {
        return var(rng.gen_range(1..=nvars));
    }
    let a = random_formula(rng, nvars, depth - 1);
    match rng.gen_range(0..6) {
        0 => neg(a),
        1 => oplus(a, random_formula(rng, nvars, depth - 1)),
        2 => odot(a, random_formula(rng, nvars, depth - 1)),
        3 => meet(a, random_formula(rng, nvars, depth - 1)),
        4 => join(a, random_formula(rng, nvars, depth - 1)),
        _ => implies(a, random_formula(rng, nvars, depth - 1)),
    }
}

fn random_value(rng: &mut ChaCha8Rng, max_den: i64) -> Rat {
    let den = rng.gen_range(1..=max_den);
    rat(rng.gen_range(0..=den), den)
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize, max_den: i64) -> Vec<Rat> {
    (0..dim).map(|_| random_value(rng, max_den)).collect()
}

// --- criteria -------------------------------------------------------------

/// The three-event worked example: profiles of the five-vertex complex and
/// the extremals of the risk polytope.
#[test]
fn criterion_01_worked_example_profiles() {
    let start = Instant::now();
    let events = [f("x1"), f("x2"), f("x1 + x2")];

    // The square fanned around its center: vertices in lexicographic
    // order, every triangle unimodular.
    let vertices = vec![
        pt(&[(0, 1), (0, 1)]),
        pt(&[(0, 1), (1, 1)]),
        pt(&[(1, 2), (1, 2)]),
        pt(&[(1, 1), (0, 1)]),
        pt(&[(1, 1), (1, 1)]),
    ];
    let simplexes = vec![vec![0, 1, 2], vec![0, 2, 3], vec![1, 2, 4], vec![2, 3, 4]];
    let fan = RegularComplex::from_parts(2, vertices, simplexes).unwrap();

    let profiles = fan.vertex_profile(&events).unwrap();
    let expected = vec![
        rats(&[(0, 1), (0, 1), (0, 1)]),
        rats(&[(0, 1), (1, 1), (1, 1)]),
        rats(&[(1, 2), (1, 2), (1, 1)]),
        rats(&[(1, 1), (0, 1), (1, 1)]),
        rats(&[(1, 1), (1, 1), (1, 1)]),
    ];
    assert_eq!(profiles, expected, "vertex profiles over the fan");

    // The center profile is a mixture of the others, so the risk polytope
    // keeps exactly the four classical profiles as extremals.
    let rp = risk_polytope(
        book(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (3, 4))]),
        &cfg(),
    )
    .unwrap();
    let got = extremal_set(rp.polytope());
    let want: BTreeSet<Vec<Rat>> = expected[..2]
        .iter()
        .chain(&expected[3..])
        .cloned()
        .collect();
    assert_eq!(got, want, "risk polytope extremals");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 1: pass — profiles and extremals exact in {elapsed:?}");
}

/// Decisions and risk-polytope extremals do not depend on the choice of
/// linearizing complex: three random refinements per fixture book.
#[test]
fn criterion_02_complex_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let fixtures: Vec<Book> = vec![
        book(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (3, 4))]),
        book(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (1, 1))]),
        book(&[("x1", (1, 1)), ("x2", (1, 1)), ("x1 + x2", (1, 2))]),
        book(&[("x1", (1, 3)), ("x1 + x1", (2, 3))]),
        book(&[("x1 * x2", (1, 4)), ("x1", (1, 2))]),
        book(&[("~x1", (1, 2)), ("x1 & x2", (1, 4)), ("x1 | x2", (3, 4))]),
        book(&[("x1 -> x2", (1, 1)), ("x1", (1, 2)), ("x2", (1, 2))]),
        book(&[("x1", (1, 2)), ("x2 + x3", (1, 1)), ("x1 * x3", (1, 4))]),
        book(&[("x1", (0, 1)), ("x2", (1, 1))]),
        book(&[("x1 + x1", (1, 2))]),
    ];
    assert_eq!(fixtures.len(), 10);

    for b in fixtures {
        let base = risk_polytope(b.clone(), &cfg()).unwrap();
        let base_extremals = extremal_set(base.polytope());
        let base_verdict = verdict_kind(&decide_strict(&base).unwrap());

        for _ in 0..3 {
            let extra = random_formula(&mut rng, base.complex().dim() as u32, 2);
            let refined = Arc::new(base.complex().refine(&[extra.clone()], &cfg()).unwrap());
            let over = risk_polytope_on(b.clone(), refined, &cfg()).unwrap();
            assert_eq!(
                extremal_set(over.polytope()),
                base_extremals,
                "extremals changed under refinement by `{extra}` for {b:?}"
            );
            assert_eq!(
                verdict_kind(&decide_strict(&over).unwrap()),
                base_verdict,
                "verdict changed under refinement by `{extra}` for {b:?}"
            );
        }
    }
    println!("criterion 2: pass — 10 books invariant under 3 refinements each");
}

/// The trichotomy on the three-event example: one verdict arm per book,
/// every certificate re-verified, and the textbook stake vectors accepted.
#[test]
fn criterion_03_trichotomy_fixtures() {
    let strict = risk_polytope(
        book(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (3, 4))]),
        &cfg(),
    )
    .unwrap();
    let v = decide_strict(&strict).unwrap();
    assert!(matches!(v, Verdict::StrictlyCoherent { .. }));
    assert!(verify_certificate(&strict, &v));

    let boundary = risk_polytope(
        book(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (1, 1))]),
        &cfg(),
    )
    .unwrap();
    let v = decide_strict(&boundary).unwrap();
    let Verdict::CoherentNotStrict { lambda, sigma } = &v else {
        panic!("expected coherent-not-strict, got {v:?}");
    };
    assert!(!sigma.is_empty());
    assert!(verify_certificate(&boundary, &v));
    // The textbook stakes (0, 0, -1) certify the same failure of
    // strictness alongside our own mixture.
    let textbook = Verdict::CoherentNotStrict {
        lambda: lambda.clone(),
        sigma: rats(&[(0, 1), (0, 1), (-1, 1)]),
    };
    assert!(verify_certificate(&boundary, &textbook));

    let incoherent = risk_polytope(
        book(&[("x1", (1, 1)), ("x2", (1, 1)), ("x1 + x2", (1, 2))]),
        &cfg(),
    )
    .unwrap();
    let v = decide_strict(&incoherent).unwrap();
    assert!(matches!(v, Verdict::Incoherent { .. }));
    assert!(verify_certificate(&incoherent, &v));
    // The textbook sure-loss stakes (-1, -1, 1).
    let textbook = Verdict::Incoherent {
        sigma: rats(&[(-1, 1), (-1, 1), (1, 1)]),
    };
    assert!(verify_certificate(&incoherent, &textbook));

    println!("criterion 3: pass — trichotomy verdicts and certificates verified");
}

/// The LP decision and the geometry-only relative-interior oracle agree on
/// 200 random books across 5 random event fixtures.
#[test]
fn criterion_04_oracle_agreement() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut runs = 0usize;
    for fixture in 0..5 {
        let nvars = 1 + (fixture as u32 % 3);
        let events: Vec<Formula> = (0..3).map(|_| random_formula(&mut rng, nvars, 2)).collect();
        for _ in 0..40 {
            let entries: Vec<(Formula, Rat)> = events
                .iter()
                .map(|e| (e.clone(), random_value(&mut rng, 6)))
                .collect();
            let b = Book::new(entries).unwrap();
            let rp = risk_polytope(b.clone(), &cfg()).unwrap();
            let verdict = decide_strict(&rp).unwrap();
            assert!(verify_certificate(&rp, &verdict));
            let lp_strict = matches!(verdict, Verdict::StrictlyCoherent { .. });
            let oracle = ri_membership_crosscheck(&b.values(), &rp);
            assert_eq!(lp_strict, oracle, "disagreement on {b:?}");
            runs += 1;
        }
    }
    assert_eq!(runs, 200);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("criterion 4: pass — 200 books, zero disagreements, {elapsed:?}");
}

/// Hat laws on fixture complexes: partition of unity, pairwise truncated
/// disjointness, and linear interpolation, exactly at 50 random points each.
#[test]
fn criterion_05_hat_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fixtures: Vec<Vec<Formula>> = vec![
        vec![f("x1 + x1")],
        vec![f("x1 + x2")],
        vec![f("x1 * x2"), f("x1 + x2")],
        vec![f("(x1 -> x2) & (x2 -> x1)")],
        vec![f("x1 + x2 + x3")],
    ];
    for events in fixtures {
        let complex = Arc::new(linearize(&events, &cfg()).unwrap());
        let hat_list = hats(&complex).unwrap();
        let profiles = complex.vertex_profile(&events).unwrap();
        for _ in 0..50 {
            let x = random_point(&mut rng, complex.dim(), 12);
            let values: Vec<Rat> = hat_list
                .iter()
                .map(|h| h.pl.eval(&x).unwrap())
                .collect();

            let total: Rat = values.iter().cloned().sum();
            assert!(total.is_one(), "partition of unity at {x:?}");

            for i in 0..values.len() {
                for j in 0..i {
                    assert!(
                        &values[i] + &values[j] <= Rat::one(),
                        "hats {i} and {j} overlap beyond truncation at {x:?}"
                    );
                }
            }

            for (j, event) in events.iter().enumerate() {
                let interp: Rat = values
                    .iter()
                    .zip(&profiles)
                    .map(|(h, row)| h * &row[j])
                    .sum();
                assert_eq!(interp, event.eval(&x).unwrap(), "interpolating {event}");
            }
        }
    }
    println!("criterion 5: pass — hat laws exact at 50 points per fixture");
}

/// A five-step faithful extension chain: history preserved exactly, fresh
/// values interior, serialization replays identically.
#[test]
fn criterion_06_faithful_extension_chain() {
    let base = book(&[("x1", (1, 2))]);
    let mut session = open_session(base, &cfg()).unwrap();
    let chain = [
        "x1 + x1",
        "x1 * x1",
        "~x1",
        "(x1 + x1) * x1",
        "x1 -> x1 * x1",
    ];
    for (step, src) in chain.iter().enumerate() {
        let g = f(src);
        let value = session.extend(g, &cfg()).unwrap();
        assert!(
            value.is_positive() && value < Rat::one(),
            "step {step}: `{src}` valued {value} is not interior"
        );
        // The whole history — including the base book — replays exactly.
        assert_eq!(session.eval(&f("x1")).unwrap(), rat(1, 2));
        for (h, v) in session.history() {
            assert_eq!(session.eval(h).unwrap(), *v, "history `{h}` drifted");
        }
    }
    assert_eq!(session.history().len(), 5);

    let doc = session.to_json();
    let reloaded = luka_core::states::ExtensionSession::from_json(&doc).unwrap();
    assert_eq!(reloaded.to_json(), doc, "serialization round-trip");
    for (h, v) in session.history() {
        assert_eq!(reloaded.eval(h).unwrap(), *v);
    }
    println!("criterion 6: pass — 5-step chain interior, history exact, replay identical");
}

/// The Lebesgue state: textbook values and strict positivity on nonzero
/// events.
#[test]
fn criterion_07_lebesgue_state() {
    assert_eq!(lebesgue_state(&f("x1"), &cfg()).unwrap(), rat(1, 2));
    assert_eq!(lebesgue_state(&f("x1 + x1"), &cfg()).unwrap(), rat(3, 4));
    assert_eq!(lebesgue_state(&f("x1 + x2"), &cfg()).unwrap(), rat(5, 6));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nonzero = 0usize;
    while nonzero < 50 {
        let g = random_formula(&mut rng, 2, 2);
        let complex = Arc::new(linearize(std::slice::from_ref(&g), &cfg()).unwrap());
        let vertex_values = restrict(&g, &complex).unwrap();
        if vertex_values.iter().all(Rat::is_zero) {
            continue; // identically zero: the state must vanish, skip
        }
        let mass = lebesgue_state(&g, &cfg()).unwrap();
        assert!(mass.is_positive(), "`{g}` is nonzero but has mass {mass}");
        nonzero += 1;
    }
    println!("criterion 7: pass — textbook values exact, 50 nonzero fixtures positive");
}

/// The provability route agrees with the geometric decisions on 100 random
/// books, and the pinned deduction exponent behaves as stated.
#[test]
fn criterion_08_provability_equivalence() {
    let start = Instant::now();
    let phi = f("~x1");
    let psi = f("~(x1 + x1)");
    assert_eq!(deduction_exponent(&phi, &psi, &cfg()).unwrap(), Some(2));
    assert!(!is_valid(&implies(phi.power(1), psi.clone()), &cfg()).unwrap());
    assert!(is_valid(&implies(phi.power(2), psi), &cfg()).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for round in 0..100 {
        let k = 1 + round % 3;
        let entries: Vec<(Formula, Rat)> = (0..k)
            .map(|_| (random_formula(&mut rng, 2, 2), random_value(&mut rng, 4)))
            .collect();
        let b = Book::new(entries).unwrap();

        let rp = risk_polytope(b.clone(), &cfg()).unwrap();
        let coherent = matches!(
            decide_coherent(&rp).unwrap(),
            CoherenceOutcome::Coherent { .. }
        );
        let strict = matches!(
            decide_strict(&rp).unwrap(),
            Verdict::StrictlyCoherent { .. }
        );

        let report = logic_coherence_check(&b, &cfg()).unwrap();
        assert_eq!(report.coherent, coherent, "coherence split on {b:?}");
        assert_eq!(report.strict, strict, "strictness split on {b:?}");
        assert_eq!(report.theory_exponent.is_some(), coherent);
        assert_eq!(
            report.boundary_exponent.is_some(),
            coherent && !strict,
            "boundary exponent exists exactly on the relative boundary"
        );
    }
    let elapsed = start.elapsed();
    println!("criterion 8: pass — 100 books agree across both routes, {elapsed:?}");
}

/// Synthesis soundness: every synthesized formula in the suite has exactly
/// its target model set, and affine term synthesis is exhaustively exact
/// for small coefficients.
#[test]
fn criterion_09_synthesis_soundness() {
    let hull = |pts: &[Point]| Polytope::convex_hull(pts).unwrap();
    let suite: Vec<Polytope> = vec![
        hull(&[pt(&[(0, 1)])]),
        hull(&[pt(&[(1, 2)])]),
        hull(&[pt(&[(2, 3)])]),
        hull(&[pt(&[(1, 3), (2, 3)])]),
        hull(&[pt(&[(1, 5), (2, 5)])]),
        hull(&[pt(&[(1, 2), (1, 2), (1, 2)])]),
        hull(&[pt(&[(1, 3)]), pt(&[(1, 2)])]),
        hull(&[pt(&[(0, 1), (0, 1)]), pt(&[(1, 2), (1, 2)])]),
        hull(&cube_corners(2)),
        hull(&[pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (0, 1)]), pt(&[(1, 3), (2, 3)])]),
        hull(&[
            pt(&[(0, 1), (0, 1)]),
            pt(&[(1, 1), (0, 1)]),
            pt(&[(1, 1), (1, 2)]),
            pt(&[(0, 1), (1, 1)]),
        ]),
        hull(&[
            pt(&[(0, 1), (0, 1), (0, 1)]),
            pt(&[(1, 1), (0, 1), (0, 1)]),
            pt(&[(0, 1), (1, 1), (0, 1)]),
            pt(&[(0, 1), (0, 1), (1, 2)]),
        ]),
        hull(&[
            pt(&[(0, 1), (0, 1), (0, 1)]),
            pt(&[(1, 1), (0, 1), (0, 1)]),
            pt(&[(1, 1), (1, 1), (0, 1)]),
            pt(&[(1, 1), (1, 1), (1, 1)]),
        ]),
        hull(&cube_corners(3)),
        // The worked example's risk polytope.
        risk_polytope(
            book(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (3, 4))]),
            &cfg(),
        )
        .unwrap()
        .polytope()
        .clone(),
    ];

    for (idx, p) in suite.iter().enumerate() {
        eprintln!("suite entry {idx}: ambient dim {}", p.ambient_dim());
        let n = p.ambient_dim();
        let formula = synth_polytope_formula(p, &cfg()).unwrap();
        eprintln!("  synthesized, length {}", formula.to_string().len());
        assert!(
            mod_of_in(&formula, n, &cfg())
                .unwrap()
                .equals_polytope(p)
                .unwrap(),
            "model set of `{formula}` differs from its target"
        );

        let boundary = synth_boundary_formula(p, &cfg()).unwrap();
        let models = if boundary == Formula::Zero {
            luka_core::logic::Polyhedron::empty()
        } else {
            mod_of_in(&boundary, n, &cfg()).unwrap()
        };
        assert!(
            models.equals_boundary(p).unwrap(),
            "boundary model set of `{boundary}` differs from its target"
        );
    }

    // Exhaustive small affine terms: synthesis verifies internally, and the
    // returned formula matches the clamped form on a grid.
    let grid = |dim: usize| -> Vec<Vec<Rat>> {
        let line: Vec<Rat> = (0..=3).map(|i| rat(i, 3)).collect();
        match dim {
            1 => line.iter().map(|a| vec![a.clone()]).collect(),
            _ => line
                .iter()
                .flat_map(|a| line.iter().map(move |b| vec![a.clone(), b.clone()]))
                .collect(),
        }
    };
    let mut checked = 0usize;
    for dim in 1..=2usize {
        let mut coefs: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..dim {
            coefs = coefs
                .into_iter()
                .flat_map(|c| {
                    (-3..=3).map(move |v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        for coef in coefs {
            for cst in -3..=3 {
                let form = AffineForm {
                    coef: coef.iter().map(|&c| rat_int(c)).collect(),
                    cst: rat_int(cst),
                };
                let term = synth_affine_term(&form).unwrap();
                for x in grid(dim) {
                    let raw = form.eval(&x);
                    let clamped = raw.max(Rat::zero()).min(Rat::one());
                    assert_eq!(term.eval(&x).unwrap(), clamped, "term for {form:?} at {x:?}");
                }
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 7 * 7 + 7 * 7 * 7);
    println!("criterion 9: pass — suite model sets exact, {checked} affine terms exhaustive");
}

/// Classical specialization: 0/1 books on negation/meet/join events decide
/// exactly like a brute-force check over classical valuations.
#[test]
fn criterion_10_boolean_specialization() {
    // All sixteen Boolean functions of two variables, as join/meet/neg
    // formulas read off their truth tables.
    let minterm = |a: bool, b: bool| {
        meet(
            if a { var(1) } else { neg(var(1)) },
            if b { var(2) } else { neg(var(2)) },
        )
    };
    let valuations = [(false, false), (false, true), (true, false), (true, true)];
    let reps: Vec<Formula> = (0u8..16)
        .map(|table| {
            let mut terms: Vec<Formula> = valuations
                .iter()
                .enumerate()
                .filter(|(i, _)| table & (1 << i) != 0)
                .map(|(_, &(a, b))| minterm(a, b))
                .collect();
            match terms.len() {
                0 => meet(var(1), neg(var(1))), // contradiction
                _ => {
                    let mut acc = terms.remove(0);
                    for t in terms {
                        acc = join(acc, t);
                    }
                    acc
                }
            }
        })
        .collect();

    let classical = |events: &[&Formula], bits: &[bool]| -> bool {
        valuations.iter().any(|&(a, b)| {
            let x = vec![rat_int(a as i64), rat_int(b as i64)];
            events
                .iter()
                .zip(bits)
                .all(|(e, &bit)| e.eval(&x).unwrap().is_one() == bit)
        })
    };

    let mut agreements = 0usize;
    let mut check = |events: &[&Formula]| {
        for mask in 0..(1u32 << events.len()) {
            let bits: Vec<bool> = (0..events.len()).map(|i| mask & (1 << i) != 0).collect();
            let entries: Vec<(Formula, Rat)> = events
                .iter()
                .zip(&bits)
                .map(|(e, &bit)| ((*e).clone(), rat_int(bit as i64)))
                .collect();
            let rp = risk_polytope(Book::new(entries).unwrap(), &cfg()).unwrap();
            let decided = matches!(
                decide_coherent(&rp).unwrap(),
                CoherenceOutcome::Coherent { .. }
            );
            assert_eq!(
                decided,
                classical(events, &bits),
                "classical split on {events:?} with {bits:?}"
            );
            agreements += 1;
        }
    };

    for rep in &reps {
        check(&[rep]);
    }
    for i in 0..reps.len() {
        for j in 0..i {
            check(&[&reps[i], &reps[j]]);
        }
    }
    // A deterministic spread of triples.
    for i in 0..reps.len() {
        let j = (i * 5 + 3) % 16;
        let k = (i * 11 + 7) % 16;
        if j != i && k != i && k != j {
            check(&[&reps[i], &reps[j], &reps[k]]);
        }
    }

    println!("criterion 10: pass — {agreements} classical decisions coincide");
}

// Keep `RiskPolytope` in the public-surface imports honest: the helper
// below is exercised by several criteria through `risk_polytope`.
#[allow(dead_code)]
fn _surface(rp: &RiskPolytope) -> usize {
    rp.profiles().len()
}
