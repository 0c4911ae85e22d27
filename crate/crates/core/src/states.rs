//! States over regular complexes and the faithful-extension construction.
//!
//! Evaluating an event at a point of the cube is a homomorphism of the event
//! algebra onto `[0,1]`, so a convex combination of vertex evaluations — a
//! [`DiscreteState`] — is a *state*: normalized (`s(1) = 1`) and additive on
//! pairs whose strong conjunction vanishes (`s(f ⊕ g) = s(f) + s(g)` whenever
//! `f ⊙ g ≡ 0`). A state is *faithful on its complex* when every vertex
//! carries positive weight, equivalently when it is strictly positive on
//! every Schauder hat of the complex.
//!
//! [`lebesgue_state`] is the exact uniform-measure state: each event is
//! affine on every simplex of a linearizing complex, and the integral of an
//! affine function over a simplex is its volume times the mean of its vertex
//! values.
//!
//! An [`ExtensionSession`] grows a strictly coherent book one event at a
//! time while staying faithful. Each step refines the working complex so the
//! new event becomes linear on it, then re-solves for vertex weights that
//! keep every previously assigned value intact (as exact equality
//! constraints) and stay positive everywhere, maximizing the least weight.
//! Strict coherence of the base book keeps every step feasible, which is why
//! each non-constant event receives a value strictly between 0 and 1.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::coherence::{decide_strict, risk_polytope, Book, Verdict};
use crate::complex::{linearize, ComplexConfig, PLFunction, RegularComplex};
use crate::error::{Error, Result};
use crate::formula::{parse, Formula};
use crate::geometry::lp::{lp_solve, Constraint, LinearProgram, LpOutcome, Sense, VarBound};
use crate::rat::{fmt_rat, parse_rat, rat_int, Rat};

/// Rational weights on the vertices of a regular complex, acting on events
/// by expectation: `s(f) = Σ_v f(v)·λ_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteState {
    complex: Arc<RegularComplex>,
    lambda: Vec<Rat>,
}

impl DiscreteState {
    /// Wraps the weights after checking they form a probability vector over
    /// the complex's vertices.
    pub fn new(complex: Arc<RegularComplex>, lambda: Vec<Rat>) -> Result<DiscreteState> {
        if lambda.len() != complex.vertices().len() {
            return Err(Error::Dimension {
                need: complex.vertices().len(),
                got: lambda.len(),
            });
        }
        if let Some(w) = lambda.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidState(format!(
                "negative weight {}",
                fmt_rat(w)
            )));
        }
        let total: Rat = lambda.iter().fold(Rat::zero(), |a, w| a + w);
        if !total.is_one() {
            return Err(Error::InvalidState(format!(
                "weights sum to {}, not 1",
                fmt_rat(&total)
            )));
        }
        Ok(DiscreteState { complex, lambda })
    }

    pub fn complex(&self) -> &Arc<RegularComplex> {
        &self.complex
    }

    /// Weights in vertex order.
    pub fn lambda(&self) -> &[Rat] {
        &self.lambda
    }

    /// True when every vertex carries strictly positive weight.
    pub fn is_faithful(&self) -> bool {
        self.lambda.iter().all(|w| w.is_positive())
    }

    /// The state's value on an event: `Σ_v f(v)·λ_v`. Exact for every
    /// formula of arity at most the complex's dimension; linearity over the
    /// complex is not required.
    pub fn eval(&self, f: &Formula) -> Result<Rat> {
        let mut total = Rat::zero();
        for (v, w) in self.complex.vertices().iter().zip(&self.lambda) {
            total += f.eval(v.coords())? * w;
        }
        Ok(total)
    }

    /// The state's value on an explicit piecewise-linear event. Evaluating a
    /// Schauder hat of the state's own complex returns that vertex's weight.
    pub fn eval_pl(&self, f: &PLFunction) -> Result<Rat> {
        let mut total = Rat::zero();
        for (v, w) in self.complex.vertices().iter().zip(&self.lambda) {
            total += f.eval(v.coords())? * w;
        }
        Ok(total)
    }
}

/// Exact integral of the formula's function over the unit cube: the state of
/// the uniform measure, strictly positive on every nonzero event.
///
/// The formula is linearized, and the integral over each maximal simplex of
/// an affine function is its volume times the mean of its vertex values.
pub fn lebesgue_state(f: &Formula, cfg: &ComplexConfig) -> Result<Rat> {
    let complex = linearize(std::slice::from_ref(f), cfg)?;
    let values: Vec<Rat> = complex
        .vertices()
        .iter()
        .map(|v| f.eval(v.coords()))
        .collect::<Result<_>>()?;
    let mut total = Rat::zero();
    for (i, simplex) in complex.simplexes().iter().enumerate() {
        let vol = complex.simplex(i)?.volume()?;
        let sum: Rat = simplex
            .iter()
            .map(|&v| values[v].clone())
            .fold(Rat::zero(), |a, t| a + t);
        total += vol * sum / rat_int(simplex.len() as i64);
    }
    Ok(total)
}

/// The tuple `(f(v))_v` over the complex's vertices, in vertex order — the
/// image of the event in the finite quotient algebra determined by the
/// vertex set.
pub fn restrict(f: &Formula, complex: &RegularComplex) -> Result<Vec<Rat>> {
    complex.vertices().iter().map(|v| f.eval(v.coords())).collect()
}

/// A faithful-extension run: a strictly coherent base book, the events
/// assigned so far, and a state on the current complex reproducing all of
/// them with positive weight on every vertex.
#[derive(Clone, Debug)]
pub struct ExtensionSession {
    book: Book,
    history: Vec<(Formula, Rat)>,
    state: DiscreteState,
}

/// Opens a session on a strictly coherent book: the working complex
/// linearizes the book's events and the initial state is the
/// maximal-least-weight mixture reproducing the book.
///
/// Books that are not strictly coherent are rejected with
/// [`Error::NotStrictlyCoherent`] describing the verdict.
pub fn open_session(book: Book, cfg: &ComplexConfig) -> Result<ExtensionSession> {
    let rp = risk_polytope(book.clone(), cfg)?;
    match decide_strict(&rp)? {
        Verdict::StrictlyCoherent { lambda } => {
            let nverts = rp.complex().vertices().len();
            let dense: Vec<Rat> = (0..nverts)
                .map(|v| lambda.get(&v).cloned().unwrap_or_else(Rat::zero))
                .collect();
            let state = DiscreteState::new(rp.complex().clone(), dense)?;
            if !state.is_faithful() {
                return Err(Error::Internal(
                    "strict verdict carried a zero vertex weight".into(),
                ));
            }
            Ok(ExtensionSession {
                book,
                history: Vec::new(),
                state,
            })
        }
        Verdict::CoherentNotStrict { sigma, .. } => Err(Error::NotStrictlyCoherent(format!(
            "coherent but not strict; stakes ({}) never balance positive",
            sigma.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
        ))),
        Verdict::Incoherent { sigma } => Err(Error::NotStrictlyCoherent(format!(
            "incoherent; stakes ({}) balance negative at every vertex",
            sigma.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
        ))),
    }
}

impl ExtensionSession {
    pub fn book(&self) -> &Book {
        &self.book
    }

    /// Events assigned so far, oldest first, with their assigned values.
    pub fn history(&self) -> &[(Formula, Rat)] {
        &self.history
    }

    pub fn state(&self) -> &DiscreteState {
        &self.state
    }

    /// The current state's value on an event.
    pub fn eval(&self, f: &Formula) -> Result<Rat> {
        self.state.eval(f)
    }

    /// Assigns a value to a new event.
    ///
    /// The working complex is refined so `g` becomes linear on it, and new
    /// vertex weights are solved for that reproduce the book and every
    /// historical value exactly while maximizing the least weight. The
    /// assigned value is the new state's value on `g`; it lies strictly in
    /// `(0,1)` unless `g` is constant as a function. Feasibility is
    /// guaranteed by strict coherence of the base book, so an infeasible
    /// solve reports an internal error.
    pub fn extend(&mut self, g: Formula, cfg: &ComplexConfig) -> Result<Rat> {
        let dim = self.state.complex().dim();
        if g.arity() as usize > dim {
            return Err(Error::Dimension {
                need: g.arity() as usize,
                got: dim,
            });
        }
        let refined = Arc::new(self.state.complex().refine(std::slice::from_ref(&g), cfg)?);

        let mut targets: Vec<(&Formula, &Rat)> = Vec::new();
        for (f, v) in self.book.entries() {
            targets.push((f, v));
        }
        for (f, v) in &self.history {
            targets.push((f, v));
        }
        let lambda = faithful_weights(&refined, &targets)?;
        let state = DiscreteState::new(refined, lambda)?;

        let value = state.eval(&g)?;
        let vertex_values = restrict(&g, state.complex())?;
        let constant = vertex_values.iter().all(|v| *v == vertex_values[0]);
        if !constant && (!value.is_positive() || value >= Rat::one()) {
            return Err(Error::Internal(format!(
                "assigned value {} for a non-constant event is not interior",
                fmt_rat(&value)
            )));
        }

        self.history.push((g, value.clone()));
        self.state = state;
        Ok(value)
    }

    /// Serializes the session: the book and history as (formula, value)
    /// pairs, the working complex, and the weights by vertex index.
    pub fn to_json(&self) -> Value {
        let pairs = |entries: &[(Formula, Rat)]| -> Value {
            Value::Array(
                entries
                    .iter()
                    .map(|(f, v)| json!([f.to_string(), fmt_rat(v)]))
                    .collect(),
            )
        };
        let lambda: serde_json::Map<String, Value> = self
            .state
            .lambda()
            .iter()
            .enumerate()
            .map(|(v, w)| (v.to_string(), Value::String(fmt_rat(w))))
            .collect();
        json!({
            "book": pairs(self.book.entries()),
            "history": pairs(&self.history),
            "complex": self.state.complex().to_json(),
            "lambda": lambda,
        })
    }

    /// Reloads a serialized session and re-verifies it: the complex must be
    /// regular, the weights a faithful probability vector, and every stored
    /// book and history value must be reproduced exactly by the state.
    pub fn from_json(v: &Value) -> Result<ExtensionSession> {
        let bad = |msg: String| Error::Session(msg);
        let obj = v
            .as_object()
            .ok_or_else(|| bad("expected an object".into()))?;

        let pairs = |field: &str| -> Result<Vec<(Formula, Rat)>> {
            let arr = obj
                .get(field)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(format!("missing array field `{field}`")))?;
            arr.iter()
                .map(|entry| {
                    let pair = entry
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| bad(format!("`{field}` entries must be pairs")))?;
                    let f = pair[0]
                        .as_str()
                        .ok_or_else(|| bad(format!("`{field}` formula must be a string")))?;
                    let val = pair[1]
                        .as_str()
                        .ok_or_else(|| bad(format!("`{field}` value must be a string")))?;
                    Ok((parse(f)?, parse_rat(val)?))
                })
                .collect()
        };

        let book = Book::new(pairs("book")?)?;
        let history = pairs("history")?;
        let complex = RegularComplex::from_json(
            obj.get("complex")
                .ok_or_else(|| bad("missing field `complex`".into()))?,
        )?;

        let lambda_obj = obj
            .get("lambda")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing object field `lambda`".into()))?;
        let nverts = complex.vertices().len();
        if lambda_obj.len() != nverts {
            return Err(bad(format!(
                "lambda has {} entries for {} vertices",
                lambda_obj.len(),
                nverts
            )));
        }
        let mut lambda = Vec::with_capacity(nverts);
        for v in 0..nverts {
            let w = lambda_obj
                .get(&v.to_string())
                .and_then(Value::as_str)
                .ok_or_else(|| bad(format!("lambda is missing vertex {v}")))?;
            lambda.push(parse_rat(w)?);
        }

        let state = DiscreteState::new(Arc::new(complex), lambda)?;
        if !state.is_faithful() {
            return Err(bad("stored state is not faithful".into()));
        }
        for (f, val) in book.entries().iter().chain(&history) {
            if state.eval(f)? != *val {
                return Err(bad(format!(
                    "stored value {} for `{f}` is not reproduced by the state",
                    fmt_rat(val)
                )));
            }
        }
        Ok(ExtensionSession {
            book,
            history,
            state,
        })
    }
}

/// Solves for vertex weights that hit every `(event, value)` target exactly,
/// maximizing the least weight; errors unless the optimum is strictly
/// positive (a faithful solution must exist for the callers' inputs).
fn faithful_weights(complex: &RegularComplex, targets: &[(&Formula, &Rat)]) -> Result<Vec<Rat>> {
    let nverts = complex.vertices().len();
    let nvars = nverts + 1; // weights, then the least-weight bound t

    let mut rows = Vec::with_capacity(targets.len() + 1 + nverts);
    for (f, val) in targets {
        let mut coeffs = restrict(f, complex)?;
        coeffs.push(Rat::zero());
        rows.push(Constraint {
            coeffs,
            sense: Sense::Eq,
            rhs: (*val).clone(),
        });
    }
    let mut ones = vec![Rat::one(); nverts];
    ones.push(Rat::zero());
    rows.push(Constraint {
        coeffs: ones,
        sense: Sense::Eq,
        rhs: Rat::one(),
    });
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
    let mut objective = vec![Rat::zero(); nvars];
    objective[nverts] = Rat::one();
    let lp = LinearProgram {
        objective,
        rows,
        bounds: vec![VarBound::NonNegative; nvars],
    };

    let lambda = match lp_solve(&lp)? {
        LpOutcome::Optimal { value, primal, .. } if value.is_positive() => {
            primal[..nverts].to_vec()
        }
        outcome => {
            return Err(Error::Internal(format!(
                "faithful reweighting must be solvable with positive least weight, got {}",
                match outcome {
                    LpOutcome::Optimal { .. } => "a zero optimum".to_string(),
                    LpOutcome::Infeasible(_) => "an infeasible program".to_string(),
                    LpOutcome::Unbounded { .. } => "an unbounded program".to_string(),
                }
            )))
        }
    };

    // Never trust the solver: recheck positivity, normalization, and every
    // target equality.
    let total: Rat = lambda.iter().fold(Rat::zero(), |a, w| a + w);
    let mut ok = total.is_one() && lambda.iter().all(|w| w.is_positive());
    if ok {
        for (f, val) in targets {
            let mut s = Rat::zero();
            for (vert, w) in complex.vertices().iter().zip(&lambda) {
                s += f.eval(vert.coords())? * w;
            }
            if s != **val {
                ok = false;
                break;
            }
        }
    }
    if !ok {
        return Err(Error::Internal(
            "faithful reweighting failed its certificate check".into(),
        ));
    }
    Ok(lambda)
}
