//! Coherence of rational books.
//!
//! A book assigns a rational betting value to each of finitely many
//! formulas. Linearizing the formulas turns every valuation of interest
//! into a finite profile vector; the book is coherent exactly when its
//! value vector is a convex combination of those profiles, and strictly
//! coherent when the combination can take every profile with positive
//! weight. Both directions come with checkable certificates: a mixture
//! `lambda` over profiles, or stakes `sigma` whose balance is negative at
//! every profile (a sure loss for the bookmaker).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::complex::{linearize, ComplexConfig, RegularComplex};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::geometry::lp::{lp_solve, Constraint, LinearProgram, LpOutcome, Sense, VarBound};
use crate::geometry::polytope::Polytope;
use crate::geometry::Point;
use crate::rat::{fmt_rat, Rat};

/// A finite list of (event, betting value) pairs with values in `[0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Book {
    entries: Vec<(Formula, Rat)>,
}

impl Book {
    pub fn new(entries: Vec<(Formula, Rat)>) -> Result<Book> {
        if entries.is_empty() {
            return Err(Error::EmptyBook);
        }
        for (_, value) in &entries {
            if !crate::rat::in_unit_interval(value) {
                return Err(Error::OddsRange(fmt_rat(value)));
            }
        }
        Ok(Book { entries })
    }

    pub fn entries(&self) -> &[(Formula, Rat)] {
        &self.entries
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.entries.iter().map(|(f, _)| f.clone()).collect()
    }

    /// The book's value vector beta.
    pub fn values(&self) -> Vec<Rat> {
        self.entries.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of propositional variables the book mentions (at least 1).
    pub fn dimension(&self) -> usize {
        self.entries
            .iter()
            .map(|(f, _)| f.arity())
            .max()
            .unwrap_or(0)
            .max(1)
    }
}

/// The book's geometry: a linearizing complex, the profile of every
/// complex vertex in `R^k`, and their convex hull.
#[derive(Clone, Debug)]
pub struct RiskPolytope {
    book: Book,
    complex: Arc<RegularComplex>,
    profiles: Vec<Vec<Rat>>,
    polytope: Polytope,
}

/// Builds the risk polytope of a book: linearize the events, profile the
/// complex vertices, take the convex hull in `R^k`.
pub fn risk_polytope(book: Book, cfg: &ComplexConfig) -> Result<RiskPolytope> {
    let complex = Arc::new(linearize(&book.formulas(), cfg)?);
    assemble_risk_polytope(book, complex)
}

/// Builds the risk polytope of a book over a caller-supplied complex,
/// which must linearize every event of the book (checked).
///
/// Decisions do not depend on the choice of linearizing complex: any
/// refinement yields the same polytope and hence the same verdicts, only
/// with more profile rows.
pub fn risk_polytope_on(
    book: Book,
    complex: Arc<RegularComplex>,
    cfg: &ComplexConfig,
) -> Result<RiskPolytope> {
    for f in book.formulas() {
        if !complex.check_linear(&f, cfg)? {
            return Err(Error::Linearization(format!(
                "event `{f}` is not linear on the supplied complex"
            )));
        }
    }
    assemble_risk_polytope(book, complex)
}

fn assemble_risk_polytope(book: Book, complex: Arc<RegularComplex>) -> Result<RiskPolytope> {
    let profiles = complex.vertex_profile(&book.formulas())?;
    let points: Vec<Point> = profiles
        .iter()
        .map(|row| Point::new(row.clone()))
        .collect::<Result<_>>()?;
    let polytope = Polytope::convex_hull(&points)?;
    Ok(RiskPolytope {
        book,
        complex,
        profiles,
        polytope,
    })
}

/// Geometry-only strict-coherence oracle: is `beta` in the relative
/// interior of the risk polytope?
///
/// Checks affine-hull membership and strict satisfaction of every facet
/// inequality directly, with no linear programming involved, so it can
/// cross-check the LP-based [`decide_strict`].
pub fn ri_membership_crosscheck(beta: &[Rat], rp: &RiskPolytope) -> bool {
    rp.polytope().in_relative_interior(beta)
}

impl RiskPolytope {
    pub fn book(&self) -> &Book {
        &self.book
    }

    pub fn complex(&self) -> &Arc<RegularComplex> {
        &self.complex
    }

    /// One profile row per complex vertex, in vertex order.
    pub fn profiles(&self) -> &[Vec<Rat>] {
        &self.profiles
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    /// Bookmaker balance of stakes `sigma` at profile row `v`:
    /// `sum_j sigma_j (beta_j - profile_j)`.
    pub fn balance(&self, sigma: &[Rat], v: usize) -> Rat {
        let beta = self.book.values();
        sigma
            .iter()
            .zip(beta.iter().zip(&self.profiles[v]))
            .map(|(s, (b, p))| s * &(b - p))
            .fold(Rat::zero(), |a, t| a + t)
    }
}

/// Coherence decision with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub enum CoherenceOutcome {
    /// Stakes with strictly negative balance at every profile.
    Incoherent { sigma: Vec<Rat> },
    /// A mixture of profiles reproducing the book's values.
    Coherent { lambda: BTreeMap<usize, Rat> },
}

/// Three-way verdict for the strict question.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// `sigma` loses at every profile.
    Incoherent { sigma: Vec<Rat> },
    /// `lambda` reproduces the values, but `sigma` never wins and loses at
    /// some profile: the book is on the risk polytope's relative boundary.
    CoherentNotStrict {
        lambda: BTreeMap<usize, Rat>,
        sigma: Vec<Rat>,
    },
    /// `lambda` reproduces the values with every profile weighted
    /// positively.
    StrictlyCoherent { lambda: BTreeMap<usize, Rat> },
}

fn mixture_lp(rp: &RiskPolytope, with_slack: bool) -> LinearProgram {
    let nverts = rp.profiles.len();
    let k = rp.book.len();
    let beta = rp.book.values();
    let nvars = if with_slack { nverts + 1 } else { nverts };

    let mut rows = Vec::with_capacity(k + 1 + if with_slack { nverts } else { 0 });
    for j in 0..k {
        let mut coeffs: Vec<Rat> = (0..nverts).map(|v| rp.profiles[v][j].clone()).collect();
        coeffs.resize(nvars, Rat::zero());
        rows.push(Constraint {
            coeffs,
            sense: Sense::Eq,
            rhs: beta[j].clone(),
        });
    }
    let mut coeffs = vec![Rat::one(); nverts];
    coeffs.resize(nvars, Rat::zero());
    rows.push(Constraint {
        coeffs,
        sense: Sense::Eq,
        rhs: Rat::one(),
    });

    let mut objective = vec![Rat::zero(); nvars];
    if with_slack {
        // lambda_v - t >= 0 for every vertex; maximize t
        for v in 0..nverts {
            let mut coeffs = vec![Rat::zero(); nvars];
            coeffs[v] = Rat::one();
            coeffs[nverts] = -Rat::one();
            rows.push(Constraint {
                coeffs,
                sense: Sense::Ge,
                rhs: Rat::zero(),
            });
        }
        objective[nverts] = Rat::one();
    }

    LinearProgram {
        objective,
        rows,
        bounds: vec![VarBound::NonNegative; nvars],
    }
}

fn lambda_map(rp: &RiskPolytope, primal: &[Rat]) -> BTreeMap<usize, Rat> {
    let mut lambda = BTreeMap::new();
    for (v, weight) in primal.iter().enumerate().take(rp.profiles.len()) {
        if !weight.is_zero() {
            lambda.insert(v, weight.clone());
        }
    }
    lambda
}

/// Checks that `lambda` is a convex mixture of profiles reproducing the
/// book's values (and positive on every profile when `everywhere`).
fn lambda_valid(rp: &RiskPolytope, lambda: &BTreeMap<usize, Rat>, everywhere: bool) -> bool {
    let nverts = rp.profiles.len();
    let k = rp.book.len();
    if lambda.keys().any(|&v| v >= nverts) {
        return false;
    }
    if lambda.values().any(|w| w.is_negative()) {
        return false;
    }
    if everywhere && (lambda.len() != nverts || lambda.values().any(|w| !w.is_positive())) {
        return false;
    }
    let total: Rat = lambda.values().fold(Rat::zero(), |a, w| a + w);
    if !total.is_one() {
        return false;
    }
    let beta = rp.book.values();
    for j in 0..k {
        let mixed: Rat = lambda
            .iter()
            .map(|(&v, w)| &rp.profiles[v][j] * w)
            .fold(Rat::zero(), |a, t| a + t);
        if mixed != beta[j] {
            return false;
        }
    }
    true
}

/// `sigma` certifies incoherence when its balance is strictly negative at
/// every profile; it certifies non-strictness when no balance is positive
/// and at least one is strictly negative.
fn sigma_valid(rp: &RiskPolytope, sigma: &[Rat], strict_everywhere: bool) -> bool {
    if sigma.len() != rp.book.len() || sigma.iter().all(|s| s.is_zero()) {
        return false;
    }
    let balances: Vec<Rat> = (0..rp.profiles.len()).map(|v| rp.balance(sigma, v)).collect();
    if strict_everywhere {
        balances.iter().all(|b| b.is_negative())
    } else {
        balances.iter().all(|b| !b.is_positive()) && balances.iter().any(|b| b.is_negative())
    }
}

/// Decides coherence: either a witnessing mixture or sure-loss stakes.
pub fn decide_coherent(rp: &RiskPolytope) -> Result<CoherenceOutcome> {
    let lp = mixture_lp(rp, false);
    match lp_solve(&lp)? {
        LpOutcome::Optimal { primal, .. } => {
            let lambda = lambda_map(rp, &primal);
            if !lambda_valid(rp, &lambda, false) {
                return Err(Error::Internal("mixture certificate failed its check".into()));
            }
            Ok(CoherenceOutcome::Coherent { lambda })
        }
        LpOutcome::Infeasible(cert) => {
            let k = rp.book.len();
            let sigma: Vec<Rat> = cert.row_multipliers[..k].iter().map(|w| -w).collect();
            if !sigma_valid(rp, &sigma, true) {
                return Err(Error::Internal("sure-loss stakes failed their check".into()));
            }
            Ok(CoherenceOutcome::Incoherent { sigma })
        }
        LpOutcome::Unbounded { .. } => Err(Error::Internal(
            "feasibility program reported unbounded".into(),
        )),
    }
}

/// Decides strict coherence with the three-way verdict.
pub fn decide_strict(rp: &RiskPolytope) -> Result<Verdict> {
    match decide_coherent(rp)? {
        CoherenceOutcome::Incoherent { sigma } => Ok(Verdict::Incoherent { sigma }),
        CoherenceOutcome::Coherent { .. } => {
            let lp = mixture_lp(rp, true);
            let (value, primal) = match lp_solve(&lp)? {
                LpOutcome::Optimal { value, primal, .. } => (value, primal),
                _ => {
                    return Err(Error::Internal(
                        "slack program must be feasible and bounded for a coherent book".into(),
                    ))
                }
            };
            if value.is_positive() {
                let lambda = lambda_map(rp, &primal);
                if !lambda_valid(rp, &lambda, true) {
                    return Err(Error::Internal(
                        "positive mixture certificate failed its check".into(),
                    ));
                }
                Ok(Verdict::StrictlyCoherent { lambda })
            } else {
                let lambda = lambda_map(rp, &primal);
                let sigma = boundary_sigma(rp)?;
                if !lambda_valid(rp, &lambda, false) || !sigma_valid(rp, &sigma, false) {
                    return Err(Error::Internal(
                        "boundary certificate failed its check".into(),
                    ));
                }
                Ok(Verdict::CoherentNotStrict { lambda, sigma })
            }
        }
    }
}

/// Stakes tight on the book but losing at some profile: the negated
/// normal of a risk-polytope facet through beta.
fn boundary_sigma(rp: &RiskPolytope) -> Result<Vec<Rat>> {
    let beta = rp.book.values();
    for facet in rp.polytope.facets() {
        let at_beta: Rat = facet
            .normal
            .iter()
            .zip(&beta)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, t| acc + t);
        if at_beta != facet.offset {
            continue;
        }
        let sigma: Vec<Rat> = facet.normal.iter().map(|a| -a).collect();
        if sigma_valid(rp, &sigma, false) {
            return Ok(sigma);
        }
    }
    Err(Error::Internal(
        "no facet certificate for a boundary book".into(),
    ))
}

/// Re-checks a verdict's certificate arithmetic against the risk
/// polytope. Tampered certificates return false.
pub fn verify_certificate(rp: &RiskPolytope, verdict: &Verdict) -> bool {
    match verdict {
        Verdict::Incoherent { sigma } => sigma_valid(rp, sigma, true),
        Verdict::CoherentNotStrict { lambda, sigma } => {
            lambda_valid(rp, lambda, false) && sigma_valid(rp, sigma, false)
        }
        Verdict::StrictlyCoherent { lambda } => lambda_valid(rp, lambda, true),
    }
}

/// JSON for a verdict, including the vertex order that indexes `lambda`.
pub fn verdict_json(rp: &RiskPolytope, verdict: &Verdict) -> Value {
    let vertex_order: Vec<Vec<String>> = rp
        .complex
        .vertices()
        .iter()
        .map(|v| v.coords().iter().map(fmt_rat).collect())
        .collect();
    let lambda_json = |lambda: &BTreeMap<usize, Rat>| {
        let map: serde_json::Map<String, Value> = lambda
            .iter()
            .map(|(v, w)| (v.to_string(), Value::String(fmt_rat(w))))
            .collect();
        Value::Object(map)
    };
    let sigma_json =
        |sigma: &[Rat]| Value::Array(sigma.iter().map(|s| Value::String(fmt_rat(s))).collect());
    match verdict {
        Verdict::Incoherent { sigma } => json!({
            "verdict": "incoherent",
            "sigma": sigma_json(sigma),
            "vertex_order": vertex_order,
        }),
        Verdict::CoherentNotStrict { lambda, sigma } => json!({
            "verdict": "coherent",
            "lambda": lambda_json(lambda),
            "sigma": sigma_json(sigma),
            "vertex_order": vertex_order,
        }),
        Verdict::StrictlyCoherent { lambda } => json!({
            "verdict": "strict",
            "lambda": lambda_json(lambda),
            "vertex_order": vertex_order,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::rat::rat;

    fn cfg() -> ComplexConfig {
        ComplexConfig::default()
    }

    fn book(entries: &[(&str, (i64, i64))]) -> Book {
        Book::new(
            entries
                .iter()
                .map(|(src, (n, d))| (parse(src).unwrap(), rat(*n, *d)))
                .collect(),
        )
        .unwrap()
    }

    fn rp(entries: &[(&str, (i64, i64))]) -> RiskPolytope {
        risk_polytope(book(entries), &cfg()).unwrap()
    }

    #[test]
    fn book_validation() {
        assert!(matches!(Book::new(vec![]), Err(Error::EmptyBook)));
        assert!(matches!(
            Book::new(vec![(parse("x1").unwrap(), rat(3, 2))]),
            Err(Error::OddsRange(_))
        ));
        let b = book(&[("x1", (1, 2)), ("x2 + x3", (1, 3))]);
        assert_eq!(b.len(), 2);
        assert_eq!(b.dimension(), 3);
    }

    #[test]
    fn risk_polytope_of_single_event_is_a_segment() {
        let r = rp(&[("x1", (1, 2))]);
        assert_eq!(r.profiles(), &[vec![rat(0, 1)], vec![rat(1, 1)]]);
        assert_eq!(r.polytope().extremals().len(), 2);
        assert_eq!(r.polytope().dim(), 1);
    }

    #[test]
    fn risk_polytope_of_event_and_negation() {
        let r = rp(&[("x1", (1, 2)), ("~x1", (1, 2))]);
        // segment from (0,1) to (1,0)
        let ext = r.polytope().extremals();
        assert_eq!(ext.len(), 2);
        assert_eq!(ext[0], Point::from_pairs(&[(0, 1), (1, 1)]));
        assert_eq!(ext[1], Point::from_pairs(&[(1, 1), (0, 1)]));
        assert_eq!(r.polytope().dim(), 1);
    }

    #[test]
    fn risk_polytope_of_the_sum_book_is_a_tetrahedron() {
        let r = rp(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (3, 4))]);
        // profiles of the four corner valuations
        assert_eq!(
            r.profiles(),
            &[
                vec![rat(0, 1), rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 1), rat(1, 1)],
                vec![rat(1, 1), rat(0, 1), rat(1, 1)],
                vec![rat(1, 1), rat(1, 1), rat(1, 1)],
            ]
        );
        assert_eq!(r.polytope().extremals().len(), 4);
        assert_eq!(r.polytope().dim(), 3);
        // the midpoint valuation's profile lands inside the hull, on the
        // boundary: it is a convex combination, not a new extremal
        assert!(r
            .polytope()
            .contains(&[rat(1, 2), rat(1, 2), rat(1, 1)]));
    }

    #[test]
    fn strictly_coherent_book() {
        let r = rp(&[("x1", (1, 2))]);
        match decide_strict(&r).unwrap() {
            Verdict::StrictlyCoherent { lambda } => {
                assert_eq!(lambda.get(&0), Some(&rat(1, 2)));
                assert_eq!(lambda.get(&1), Some(&rat(1, 2)));
            }
            v => panic!("expected strict coherence, got {v:?}"),
        }
    }

    #[test]
    fn interior_sum_book_is_strict() {
        let r = rp(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (3, 4))]);
        let verdict = decide_strict(&r).unwrap();
        assert!(matches!(verdict, Verdict::StrictlyCoherent { .. }));
        assert!(verify_certificate(&r, &verdict));
        // agrees with relative-interior membership of beta
        let beta = r.book().values();
        assert!(r.polytope().in_relative_interior(&beta));
    }

    #[test]
    fn boundary_sum_book_is_coherent_not_strict() {
        let r = rp(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (1, 1))]);
        let verdict = decide_strict(&r).unwrap();
        match &verdict {
            Verdict::CoherentNotStrict { lambda, sigma } => {
                assert!(!lambda.is_empty());
                assert!(!sigma.is_empty());
            }
            v => panic!("expected coherent-not-strict, got {v:?}"),
        }
        assert!(verify_certificate(&r, &verdict));
        let beta = r.book().values();
        assert!(r.polytope().contains(&beta));
        assert!(!r.polytope().in_relative_interior(&beta));
    }

    #[test]
    fn incoherent_sum_book() {
        let r = rp(&[("x1", (1, 1)), ("x2", (1, 1)), ("x1 + x2", (1, 2))]);
        let verdict = decide_strict(&r).unwrap();
        match &verdict {
            Verdict::Incoherent { sigma } => {
                // every profile loses strictly
                for v in 0..r.profiles().len() {
                    assert!(r.balance(sigma, v).is_negative());
                }
            }
            v => panic!("expected incoherence, got {v:?}"),
        }
        assert!(verify_certificate(&r, &verdict));
        let beta = r.book().values();
        assert!(!r.polytope().contains(&beta));
    }

    #[test]
    fn ri_oracle_matches_the_trichotomy() {
        let cases = [
            ((3, 4), true),  // interior point
            ((1, 1), false), // on the facet where the sum saturates
        ];
        for ((n, d), expect) in cases {
            let r = rp(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (n, d))]);
            let beta = r.book().values();
            assert_eq!(ri_membership_crosscheck(&beta, &r), expect);
            let strict = matches!(decide_strict(&r).unwrap(), Verdict::StrictlyCoherent { .. });
            assert_eq!(strict, expect);
        }
        // A vertex of the polytope is never in the relative interior.
        let r = rp(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (3, 4))]);
        let zero = vec![Rat::zero(); 3];
        assert!(!ri_membership_crosscheck(&zero, &r));
    }

    #[test]
    fn refined_complexes_reproduce_the_polytope() {
        let b = book(&[("x1", (1, 2)), ("x2", (1, 2)), ("x1 + x2", (3, 4))]);
        let base = risk_polytope(b.clone(), &cfg()).unwrap();
        let refined = Arc::new(
            base.complex()
                .refine(&[parse("x1 + x1").unwrap()], &cfg())
                .unwrap(),
        );
        let over = risk_polytope_on(b.clone(), refined, &cfg()).unwrap();
        assert!(over.profiles().len() > base.profiles().len());
        assert!(base.polytope().same_set(over.polytope()));
        let strict = |r: &RiskPolytope| {
            matches!(decide_strict(r).unwrap(), Verdict::StrictlyCoherent { .. })
        };
        assert_eq!(strict(&base), strict(&over));

        // A complex that does not linearize the book is rejected: the plain
        // square triangulation has no crease along the sum's saturation line.
        let coarse = Arc::new(linearize(&[parse("x1").unwrap(), parse("x2").unwrap()], &cfg()).unwrap());
        assert!(matches!(
            risk_polytope_on(b, coarse, &cfg()),
            Err(Error::Linearization(_))
        ));
    }

    /// Balance of `sigma` against `book` at an explicit valuation,
    /// computed straight from formula evaluation (no complex machinery).
    fn balance_at(b: &Book, sigma: &[Rat], x: &[Rat]) -> Rat {
        sigma
            .iter()
            .zip(b.entries())
            .map(|(s, (f, beta))| s * &(beta - &f.eval(x).unwrap()))
            .fold(Rat::zero(), |a, t| a + t)
    }

    #[test]
    fn reference_sigma_balances() {
        // the incoherent book (x1:1, x2:1, x1+x2:1/2) admits sigma =
        // (-1,-1,1): balances -3/2 at every valuation of the fan except
        // -1/2 at the all-ones corner
        let b = book(&[("x1", (1, 1)), ("x2", (1, 1)), ("x1 + x2", (1, 2))]);
        let sigma = vec![rat(-1, 1), rat(-1, 1), rat(1, 1)];
        let expected = [
            (vec![rat(0, 1), rat(0, 1)], rat(-3, 2)),
            (vec![rat(0, 1), rat(1, 1)], rat(-3, 2)),
            (vec![rat(1, 2), rat(1, 2)], rat(-3, 2)),
            (vec![rat(1, 1), rat(0, 1)], rat(-3, 2)),
            (vec![rat(1, 1), rat(1, 1)], rat(-1, 2)),
        ];
        for (x, want) in &expected {
            assert_eq!(&balance_at(&b, &sigma, x), want, "balance at {x:?}");
        }
        let r = risk_polytope(b, &cfg()).unwrap();
        let balances: Vec<Rat> =
            (0..r.profiles().len()).map(|v| r.balance(&sigma, v)).collect();
        // vertex order (0,0),(0,1),(1,0),(1,1)
        assert_eq!(
            balances,
            vec![rat(-3, 2), rat(-3, 2), rat(-3, 2), rat(-1, 2)]
        );
        let verdict = Verdict::Incoherent { sigma };
        assert!(verify_certificate(&r, &verdict));
    }

    #[test]
    fn reference_boundary_sigma() {
        // the all-ones sum book is coherent but not strict; sigma =
        // (0,0,-1) never wins and loses at the origin valuation
        let b = book(&[("x1", (1, 1)), ("x2", (1, 1)), ("x1 + x2", (1, 1))]);
        let sigma = vec![rat(0, 1), rat(0, 1), rat(-1, 1)];
        let expected = [
            (vec![rat(0, 1), rat(0, 1)], rat(-1, 1)),
            (vec![rat(0, 1), rat(1, 1)], rat(0, 1)),
            (vec![rat(1, 2), rat(1, 2)], rat(0, 1)),
            (vec![rat(1, 1), rat(0, 1)], rat(0, 1)),
            (vec![rat(1, 1), rat(1, 1)], rat(0, 1)),
        ];
        for (x, want) in &expected {
            assert_eq!(&balance_at(&b, &sigma, x), want, "balance at {x:?}");
        }
        let r = risk_polytope(b, &cfg()).unwrap();
        let all_ones = r
            .profiles()
            .iter()
            .position(|row| row.iter().all(|v| v.is_one()))
            .unwrap();
        let mut lambda = BTreeMap::new();
        lambda.insert(all_ones, rat(1, 1));
        let verdict = Verdict::CoherentNotStrict { lambda, sigma };
        assert!(verify_certificate(&r, &verdict));
    }

    #[test]
    fn tampered_certificates_fail() {
        let r = rp(&[("x1", (1, 2))]);
        // lambda summing to 1 but missing a vertex cannot be "everywhere"
        let mut lambda = BTreeMap::new();
        lambda.insert(0usize, rat(1, 1));
        assert!(!verify_certificate(
            &r,
            &Verdict::StrictlyCoherent { lambda: lambda.clone() }
        ));
        // wrong mixture target
        let mut wrong = BTreeMap::new();
        wrong.insert(0usize, rat(1, 4));
        wrong.insert(1usize, rat(3, 4));
        assert!(!verify_certificate(&r, &Verdict::StrictlyCoherent { lambda: wrong }));
        // sigma that sometimes wins is no sure loss
        let r2 = rp(&[("x1", (1, 1)), ("x2", (1, 1)), ("x1 + x2", (1, 2))]);
        let sigma = vec![rat(1, 1), rat(0, 1), rat(0, 1)];
        assert!(!verify_certificate(&r2, &Verdict::Incoherent { sigma }));
        // zero stakes are no certificate at all
        let sigma = vec![rat(0, 1), rat(0, 1), rat(0, 1)];
        assert!(!verify_certificate(&r2, &Verdict::Incoherent { sigma }));
    }

    #[test]
    fn zero_one_books_on_classical_valuations() {
        // beta matching one valuation exactly: coherent, and strict only
        // if every valuation matches
        let r = rp(&[("x1", (1, 1)), ("~x1", (0, 1))]);
        let verdict = decide_strict(&r).unwrap();
        assert!(matches!(verdict, Verdict::CoherentNotStrict { .. }));
        assert!(verify_certificate(&r, &verdict));

        // a 0/1 book matched by no single valuation is incoherent
        let r = rp(&[("x1", (1, 1)), ("x1 & x2", (1, 1)), ("x2", (0, 1))]);
        assert!(matches!(decide_strict(&r).unwrap(), Verdict::Incoherent { .. }));
    }

    #[test]
    fn restriction_of_coherent_book_stays_coherent() {
        let full = [("x1", (1, 2)), ("x2", (1, 3)), ("x1 + x2", (2, 3))];
        let r_full = rp(&full);
        if matches!(decide_coherent(&r_full).unwrap(), CoherenceOutcome::Coherent { .. }) {
            for drop in 0..full.len() {
                let sub: Vec<(&str, (i64, i64))> = full
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, e)| *e)
                    .collect();
                let r_sub = rp(&sub);
                assert!(matches!(
                    decide_coherent(&r_sub).unwrap(),
                    CoherenceOutcome::Coherent { .. }
                ));
            }
        } else {
            panic!("base book should be coherent");
        }
    }

    #[test]
    fn sure_loss_holds_off_the_vertices_too() {
        // balances are piecewise linear in the valuation, so a certificate
        // that loses at every complex vertex loses everywhere; sample the
        // cube to witness it
        let r = rp(&[("x1", (1, 1)), ("x2", (1, 1)), ("x1 + x2", (1, 2))]);
        let sigma = match decide_strict(&r).unwrap() {
            Verdict::Incoherent { sigma } => sigma,
            v => panic!("expected incoherence, got {v:?}"),
        };
        let beta = r.book().values();
        let formulas = r.book().formulas();
        let mut state = 0x2545F4914F6CDD1Du64;
        for _ in 0..100 {
            let mut x = Vec::new();
            for _ in 0..2 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let num = (state >> 33) % 101;
                x.push(rat(num as i64, 100));
            }
            let balance: Rat = sigma
                .iter()
                .zip(beta.iter().zip(&formulas))
                .map(|(s, (b, f))| s * &(b - &f.eval(&x).unwrap()))
                .fold(Rat::zero(), |a, t| a + t);
            assert!(balance.is_negative(), "balance at {x:?}");
        }
    }

    #[test]
    fn verdict_json_shape() {
        let r = rp(&[("x1", (1, 2))]);
        let verdict = decide_strict(&r).unwrap();
        let j = verdict_json(&r, &verdict);
        assert_eq!(j["verdict"], "strict");
        assert_eq!(j["lambda"]["0"], "1/2");
        assert_eq!(j["vertex_order"][0][0], "0");
        assert!(j.get("sigma").is_none());

        let r = rp(&[("x1", (1, 1)), ("x2", (1, 1)), ("x1 + x2", (1, 2))]);
        let verdict = decide_strict(&r).unwrap();
        let j = verdict_json(&r, &verdict);
        assert_eq!(j["verdict"], "incoherent");
        assert!(j.get("lambda").is_none());
        assert_eq!(j["sigma"].as_array().unwrap().len(), 3);
    }
}
