//! The proof-theoretic side of coherence.
//!
//! Coherence of a book is a statement about a rational polytope: the betting
//! values must lie in the convex hull of the event valuations.  This module
//! walks the same ground from the logic side.  It computes model sets of
//! formulas (`mod_of`), synthesizes formulas whose model set is a prescribed
//! rational polytope (`synth_polytope_formula`), decides semantic validity
//! (`is_valid`), and computes deduction exponents: the least power `n` such
//! that `phi^n -> psi` is valid, which exists exactly when every model of
//! `phi` is a model of `psi`.
//!
//! Putting those together, [`logic_coherence_check`] reproves the coherence
//! verdict for a book purely in terms of provability between synthesized
//! formulas, and cross-checks the answer against the geometric test.  The
//! synthesis pipeline is verification-gated at every level: affine pieces are
//! checked exactly against their clamped targets, and assembled formulas are
//! re-evaluated over their supporting complex before being returned.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coherence::{risk_polytope, Book};
use crate::complex::{
    decompose, linearize, pulling_triangulation, split_cells_by_hyperplanes, Cell, ComplexConfig,
    Dag, RegularComplex,
};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::geometry::polytope::{intersection_vertices, Polytope};
use crate::geometry::{cube_corners, linalg, AffineForm, Point};
use crate::rat::{cap_one, floor_zero, fmt_rat, Rat};

/// Cell budget for the internal verification passes of term synthesis.
/// These run over a single formula on a low-dimensional cube, so the bound
/// is never approached in practice; it exists to guarantee termination.
const TERM_VERIFY_CELLS: usize = 200_000;

// ---------------------------------------------------------------------------
// Finite unions of rational polytopes
// ---------------------------------------------------------------------------

/// A finite union of rational polytopes of the unit cube.
///
/// Model sets of formulas are of this shape: the points where a piecewise
/// linear function reaches 1 form a union of faces of any complex that
/// linearizes the formula.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    pieces: Vec<Polytope>,
}

impl Polyhedron {
    pub fn new(pieces: Vec<Polytope>) -> Polyhedron {
        Polyhedron { pieces }
    }

    pub fn empty() -> Polyhedron {
        Polyhedron { pieces: Vec::new() }
    }

    pub fn pieces(&self) -> &[Polytope] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    /// Does the union equal the single polytope `p`?
    ///
    /// Inclusion of each piece in `p` is certified through extremal points.
    /// The reverse inclusion is certified by volume: the pieces of full
    /// dimension inside the affine hull of `p` must sum to the volume of
    /// `p` itself.  That count is exact provided distinct pieces meet in
    /// dimension below their own, which holds for the unions produced by
    /// this module (families of faces of a simplicial complex).
    pub fn equals_polytope(&self, p: &Polytope) -> Result<bool> {
        if self.pieces.is_empty() {
            return Ok(false);
        }
        for piece in &self.pieces {
            for e in piece.extremals() {
                if !p.contains(e.coords()) {
                    return Ok(false);
                }
            }
        }
        let d = p.dim();
        if d == 0 {
            // A nonempty union inside a point is that point.
            return Ok(true);
        }
        let mut covered = Rat::zero();
        for piece in &self.pieces {
            if piece.dim() == d {
                covered += relative_volume(piece, p)?;
            }
        }
        Ok(covered == relative_volume(p, p)?)
    }

    /// Does the union equal the relative boundary of `d`?
    ///
    /// A convex subset of the boundary of a convex set lies in a single
    /// proper face, so each piece must sit inside one facet — certified
    /// through extremal points.  Conversely every facet must be covered:
    /// the pieces' intersections with the facet of full facet dimension
    /// must reach the facet's own volume, which is exact for the same
    /// reason as in [`Polyhedron::equals_polytope`].
    pub fn equals_boundary(&self, d: &Polytope) -> Result<bool> {
        let facets = d.facet_subpolytopes()?;
        if facets.is_empty() || self.pieces.is_empty() {
            return Ok(facets.is_empty() && self.pieces.is_empty());
        }
        for piece in &self.pieces {
            let inside_one = facets.iter().any(|f| {
                piece
                    .extremals()
                    .iter()
                    .all(|e| f.contains(e.coords()))
            });
            if !inside_one {
                return Ok(false);
            }
        }
        for f in &facets {
            let fd = f.dim();
            if fd == 0 {
                if !self.contains(f.extremals()[0].coords()) {
                    return Ok(false);
                }
                continue;
            }
            let mut covered = Rat::zero();
            for piece in &self.pieces {
                let verts = intersection_vertices(piece, f)?;
                if verts.is_empty() {
                    continue;
                }
                let cap = Polytope::convex_hull(&verts)?;
                if cap.dim() == fd {
                    covered += relative_volume(&cap, f)?;
                }
            }
            if covered != relative_volume(f, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Volume of `piece` measured in coordinates of the affine hull of `frame`.
///
/// All volumes compared by `equals_polytope` are taken in the same frame, so
/// the common scale factor of the coordinate chart cancels and no normalizing
/// division is needed.
fn relative_volume(piece: &Polytope, frame: &Polytope) -> Result<Rat> {
    let hull = frame.affine_hull();
    let chart = |p: &Point| {
        hull.coords(p.coords())
            .ok_or_else(|| Error::Internal("union piece leaves the hull of its frame".into()))
    };
    let mut total = Rat::zero();
    for tri in pulling_triangulation(piece)? {
        let base = chart(&tri[0])?;
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(tri.len() - 1);
        for v in &tri[1..] {
            let c = chart(v)?;
            rows.push(c.iter().zip(&base).map(|(a, b)| a - b).collect());
        }
        total += linalg::det(&rows).abs();
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Model sets
// ---------------------------------------------------------------------------

/// The model set of `f`: all points of the cube where `f` evaluates to 1,
/// returned as a union of faces of a complex that linearizes `f`.
pub fn mod_of(f: &Formula, cfg: &ComplexConfig) -> Result<Polyhedron> {
    let complex = linearize(std::slice::from_ref(f), cfg)?;
    mod_of_on(f, &complex)
}

/// The model set of `f` inside the cube of dimension `n`, which must be at
/// least the arity of `f`.
///
/// Variables beyond the arity are unconstrained, so the result is the
/// cylinder over [`mod_of`] — needed whenever a formula is compared against
/// a polytope of higher ambient dimension than the variables it happens to
/// mention.
pub fn mod_of_in(f: &Formula, n: usize, cfg: &ComplexConfig) -> Result<Polyhedron> {
    if f.arity() > n {
        return Err(Error::Dimension {
            need: f.arity(),
            got: n,
        });
    }
    if n == f.arity().max(1) {
        return mod_of(f, cfg);
    }
    let pad = crate::formula::var(n as u32);
    let complex = linearize(&[f.clone(), pad], cfg)?;
    mod_of_on(f, &complex)
}

/// The model set of `f` read off a complex on which `f` is already linear.
///
/// Fails with a linearization error if `f` is not affine on every simplex of
/// `complex`.  On each maximal simplex the oneset of an affine function with
/// values in [0, 1] is the face spanned by the vertices where it reaches 1;
/// faces contained in other faces are dropped.
pub fn mod_of_on(f: &Formula, complex: &RegularComplex) -> Result<Polyhedron> {
    if f.arity() > complex.dim() {
        return Err(Error::Dimension {
            need: f.arity(),
            got: complex.dim(),
        });
    }
    let dag = Dag::build(&[f]);
    let values = complex.pl_values(&mut |x| dag.eval_root(0, x))?;
    let mut faces: Vec<BTreeSet<usize>> = Vec::new();
    for s in complex.simplexes() {
        let face: BTreeSet<usize> = s.iter().copied().filter(|&v| values[v].is_one()).collect();
        if !face.is_empty() {
            faces.push(face);
        }
    }
    faces.sort();
    faces.dedup();
    let mut pieces = Vec::new();
    for (i, face) in faces.iter().enumerate() {
        let shadowed = faces
            .iter()
            .enumerate()
            .any(|(j, other)| i != j && face.is_subset(other));
        if shadowed {
            continue;
        }
        let verts: Vec<Point> = face.iter().map(|&v| complex.vertices()[v].clone()).collect();
        pieces.push(Polytope::convex_hull(&verts)?);
    }
    Ok(Polyhedron::new(pieces))
}

/// Is `f` a tautology?  Decided by linearizing `f` and checking that every
/// vertex of the resulting complex evaluates to 1; linearity between the
/// vertices then forces the value 1 everywhere.
pub fn is_valid(f: &Formula, cfg: &ComplexConfig) -> Result<bool> {
    let complex = linearize(std::slice::from_ref(f), cfg)?;
    let dag = Dag::build(&[f]);
    let values = complex.pl_values(&mut |x| dag.eval_root(0, x))?;
    Ok(values.iter().all(|v| v.is_one()))
}

// ---------------------------------------------------------------------------
// Formula constructors
// ---------------------------------------------------------------------------

fn neg(a: Formula) -> Formula {
    Formula::Neg(Box::new(a))
}

fn oplus(a: Formula, b: Formula) -> Formula {
    Formula::Oplus(Box::new(a), Box::new(b))
}

fn odot(a: Formula, b: Formula) -> Formula {
    Formula::Odot(Box::new(a), Box::new(b))
}

fn meet(a: Formula, b: Formula) -> Formula {
    Formula::Meet(Box::new(a), Box::new(b))
}

fn join(a: Formula, b: Formula) -> Formula {
    Formula::Join(Box::new(a), Box::new(b))
}

/// Combine a nonempty list with a binary connective, pairing neighbours to
/// keep the tree depth logarithmic.
fn fold_balanced(mut parts: Vec<Formula>, op: fn(Formula, Formula) -> Formula) -> Formula {
    assert!(!parts.is_empty(), "fold of an empty formula list");
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len() / 2 + 1);
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(op(a, b)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap()
}

// ---------------------------------------------------------------------------
// Terms for clamped affine functions
// ---------------------------------------------------------------------------

/// Synthesize a formula computing `min(1, max(0, l))` for an affine `l` with
/// integer coefficients.
///
/// The recursion peels off literals: writing `l = L + t` with `L` a literal
/// (`x_i` or its negation), a nonnegative tail gives `clamp(l) = t' + L` with
/// `t' = clamp(t)`, a range inside `(-inf, 1]` reduces to the complement, and
/// the remaining wide-range case splits through the identity
/// `clamp(t + L) = clamp(t + 1) * (clamp(t) + L)` (truncated product and sum),
/// which holds pointwise for every real `t` and every `L` in [0, 1].  The
/// result is verified exactly against the clamp before being returned.
pub fn synth_affine_term(form: &AffineForm) -> Result<Formula> {
    TermSynth::new().term(form)
}

/// Shared synthesis state: memoized subproblems keyed by integer coefficient
/// vectors, plus the set of already-verified top-level targets.
struct TermSynth {
    memo: BTreeMap<Vec<BigInt>, Formula>,
    verified: BTreeSet<Vec<BigInt>>,
}

fn form_key(coef: &[BigInt], cst: &BigInt) -> Vec<BigInt> {
    let mut key = coef.to_vec();
    key.push(cst.clone());
    key
}

fn integer_parts(form: &AffineForm) -> Result<(Vec<BigInt>, BigInt)> {
    if !form.is_integral() {
        return Err(Error::Internal(
            "affine term synthesis needs integer coefficients".into(),
        ));
    }
    let coef: Vec<BigInt> = form.coef.iter().map(|c| c.to_integer()).collect();
    Ok((coef, form.cst.to_integer()))
}

impl TermSynth {
    fn new() -> TermSynth {
        TermSynth {
            memo: BTreeMap::new(),
            verified: BTreeSet::new(),
        }
    }

    fn term(&mut self, form: &AffineForm) -> Result<Formula> {
        let (coef, cst) = integer_parts(form)?;
        let formula = self.clamp(&coef, &cst);
        if coef.iter().all(|c| c.is_zero()) {
            // Constant forms are pruned to 0 or 1 directly; nothing to verify.
            return Ok(formula);
        }
        if self.verified.insert(form_key(&coef, &cst)) {
            verify_term(&formula, form)?;
        }
        Ok(formula)
    }

    fn clamp(&mut self, coef: &[BigInt], cst: &BigInt) -> Formula {
        let lo: BigInt = cst + coef.iter().filter(|c| c.is_negative()).sum::<BigInt>();
        let hi: BigInt = cst + coef.iter().filter(|c| c.is_positive()).sum::<BigInt>();
        if hi <= BigInt::zero() {
            return Formula::Zero;
        }
        if lo >= BigInt::one() {
            return Formula::One;
        }
        let key = form_key(coef, cst);
        if let Some(f) = self.memo.get(&key) {
            return f.clone();
        }
        let f = if lo >= BigInt::zero() {
            // l >= 0 on the cube: peeling keeps the tail nonnegative, and
            // clamp(t + L) = clamp(t) + L truncated when t >= 0.
            let (lit, tail_coef, tail_cst) = peel(coef, cst);
            match self.clamp(&tail_coef, &tail_cst) {
                Formula::Zero => lit,
                tail => oplus(lit, tail),
            }
        } else if hi <= BigInt::one() {
            // l <= 1 on the cube: clamp(l) = 1 - clamp(1 - l).
            let flip_coef: Vec<BigInt> = coef.iter().map(|c| -c).collect();
            let flip_cst = BigInt::one() - cst;
            neg(self.clamp(&flip_coef, &flip_cst))
        } else {
            // Range reaches below 0 and above 1: shift-split identity
            // clamp(t + L) = clamp(t + 1) * (clamp(t) + L).
            let (lit, tail_coef, tail_cst) = peel(coef, cst);
            let shifted = self.clamp(&tail_coef, &(&tail_cst + 1));
            let grounded = self.clamp(&tail_coef, &tail_cst);
            let right = match grounded {
                Formula::Zero => lit,
                g => oplus(g, lit),
            };
            match shifted {
                Formula::One => right,
                s => odot(s, right),
            }
        };
        self.memo.insert(key, f.clone());
        f
    }
}

/// Split one literal unit off a non-constant integer affine form, returning
/// `(L, t)` with `l = L + t`.  Positive coefficients shed `x_i`, negative
/// ones shed `~x_i`; either way the total coefficient mass drops by one and
/// the minimum of the tail over the cube equals the minimum of `l`.
fn peel(coef: &[BigInt], cst: &BigInt) -> (Formula, Vec<BigInt>, BigInt) {
    let i = coef
        .iter()
        .position(|c| !c.is_zero())
        .expect("peel of a constant form");
    let mut tail = coef.to_vec();
    if coef[i].is_positive() {
        tail[i] -= 1;
        (Formula::Var(i as u32 + 1), tail, cst.clone())
    } else {
        tail[i] += 1;
        (neg(Formula::Var(i as u32 + 1)), tail, cst - 1)
    }
}

/// Exact check that `f` computes `min(1, max(0, form))` on the whole cube of
/// the form's ambient dimension.
///
/// The cube is decomposed into cells on which `f` is affine; each cell is
/// further split along `form = 0` and `form = 1` so the clamp is affine too.
/// Two affine functions agreeing on the vertices of a cell agree on it, so
/// vertex equality over all subcells proves the identity everywhere.
fn verify_term(f: &Formula, form: &AffineForm) -> Result<()> {
    let n = form.dim();
    let cube = Cell::from_points(&cube_corners(n))?;
    let dec = decompose(vec![cube], &[f], n, TERM_VERIFY_CELLS)?;
    let floor_plane = form.clone();
    let cap_plane = AffineForm {
        coef: form.coef.clone(),
        cst: &form.cst - Rat::one(),
    };
    for (cell, forms) in dec.cells.iter().zip(dec.root_forms.iter()) {
        let sub = split_cells_by_hyperplanes(
            vec![cell.clone()],
            &[floor_plane.clone(), cap_plane.clone()],
            TERM_VERIFY_CELLS,
        )?;
        for piece in &sub {
            for u in &piece.verts {
                let want = cap_one(floor_zero(form.eval_point(u)));
                if forms[0].eval_point(u) != want {
                    return Err(Error::SynthesisVerification(format!(
                        "term for {:?} takes value {} at {:?}, expected {}",
                        form,
                        fmt_rat(&forms[0].eval_point(u)),
                        u,
                        fmt_rat(&want),
                    )));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Piecewise linear expressions
// ---------------------------------------------------------------------------

/// Exact piecewise linear semantics of a synthesized formula: affine forms
/// combined by pointwise minima and maxima.  Synthesis hands one of these
/// back along with each formula, so later stages (deduction exponents, model
/// membership) can work with the function directly instead of re-linearizing
/// the formula tree.
#[derive(Clone, Debug)]
enum PLExpr {
    Affine(AffineForm),
    Min(Vec<PLExpr>),
    Max(Vec<PLExpr>),
}

impl PLExpr {
    fn constant(n: usize, c: Rat) -> PLExpr {
        PLExpr::Affine(AffineForm::constant(n, c))
    }

    fn eval(&self, x: &[Rat]) -> Rat {
        match self {
            PLExpr::Affine(f) => f.eval(x),
            PLExpr::Min(cs) => cs
                .iter()
                .map(|c| c.eval(x))
                .min()
                .expect("empty minimum in a piecewise linear expression"),
            PLExpr::Max(cs) => cs
                .iter()
                .map(|c| c.eval(x))
                .max()
                .expect("empty maximum in a piecewise linear expression"),
        }
    }

    /// Collect the affine leaves, deduplicated by exact equality.
    fn leaves(&self, out: &mut Vec<AffineForm>) {
        match self {
            PLExpr::Affine(f) => {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
            PLExpr::Min(cs) | PLExpr::Max(cs) => {
                for c in cs {
                    c.leaves(out);
                }
            }
        }
    }

    /// A sound lower bound for the expression over the unit cube, from
    /// interval arithmetic on the leaves.
    fn cube_lower_bound(&self) -> Rat {
        match self {
            PLExpr::Affine(f) => f
                .coef
                .iter()
                .filter(|c| c.is_negative())
                .fold(f.cst.clone(), |acc, c| acc + c),
            PLExpr::Min(cs) => cs
                .iter()
                .map(|c| c.cube_lower_bound())
                .min()
                .expect("empty minimum in a piecewise linear expression"),
            PLExpr::Max(cs) => cs
                .iter()
                .map(|c| c.cube_lower_bound())
                .max()
                .expect("empty maximum in a piecewise linear expression"),
        }
    }

    /// The affine form the expression restricts to around `probe`.
    ///
    /// Valid on the closure of any connected region whose interior contains
    /// `probe` and avoids every hyperplane on which two distinct leaves
    /// agree: inside such a region no minimum or maximum ever changes which
    /// child realizes it, so the form chosen at `probe` represents the whole
    /// expression there, and by continuity also on the region's boundary.
    fn resolve(&self, probe: &[Rat]) -> AffineForm {
        match self {
            PLExpr::Affine(f) => f.clone(),
            PLExpr::Min(cs) => {
                let mut best: Option<(AffineForm, Rat)> = None;
                for c in cs {
                    let form = c.resolve(probe);
                    let val = form.eval(probe);
                    if best.as_ref().is_none_or(|(_, b)| val < *b) {
                        best = Some((form, val));
                    }
                }
                best.expect("empty minimum in a piecewise linear expression").0
            }
            PLExpr::Max(cs) => {
                let mut best: Option<(AffineForm, Rat)> = None;
                for c in cs {
                    let form = c.resolve(probe);
                    let val = form.eval(probe);
                    if best.as_ref().is_none_or(|(_, b)| val > *b) {
                        best = Some((form, val));
                    }
                }
                best.expect("empty maximum in a piecewise linear expression").0
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Polytope synthesis
// ---------------------------------------------------------------------------

/// Rescale a rational constraint form by a positive rational so that its
/// coefficients and constant become coprime integers.  The zero set and both
/// strict sides are unchanged, so `form >= 0` keeps its meaning; constant
/// zero forms pass through untouched.
fn integral_constraint(form: &AffineForm) -> AffineForm {
    let mut v = form.coef.clone();
    v.push(form.cst.clone());
    let Some(mut ints) = crate::geometry::polytope::primitive(&v) else {
        return form.clone();
    };
    // `primitive` normalizes the leading sign; restore the original one.
    let flipped = v
        .iter()
        .zip(&ints)
        .find(|(orig, _)| !orig.is_zero())
        .is_some_and(|(orig, scaled)| orig.is_negative() != scaled.is_negative());
    if flipped {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    let cst = Rat::from_integer(ints.pop().expect("constraint form with no constant"));
    AffineForm {
        coef: ints.into_iter().map(Rat::from_integer).collect(),
        cst,
    }
}

/// Inward integer constraint forms carving `p` out of the cube: a point of
/// the cube lies in `p` exactly when every returned form is nonnegative at
/// it.  Each affine hull equation contributes both of its directions, each
/// facet one inequality; all forms are rescaled to coprime integers and
/// deduplicated.
fn halfspace_forms(p: &Polytope) -> Vec<AffineForm> {
    let mut forms = Vec::new();
    for (normal, offset) in p.affine_hull().equations() {
        let h = AffineForm {
            coef: normal,
            cst: -offset,
        };
        forms.push(integral_constraint(&h));
        forms.push(integral_constraint(&AffineForm {
            coef: h.coef.iter().map(|c| -c).collect(),
            cst: -&h.cst,
        }));
    }
    for facet in p.facets() {
        // facet: normal . x <= offset, inward form offset - normal . x.
        forms.push(integral_constraint(&AffineForm {
            coef: facet.normal.iter().map(|c| -c).collect(),
            cst: facet.offset.clone(),
        }));
    }
    let mut seen = BTreeSet::new();
    forms.retain(|g| {
        let mut key = g.coef.clone();
        key.push(g.cst.clone());
        seen.insert(key)
    });
    forms
}

/// Formula and description of the unit ramp `min(1, max(0, g + 1))` of an
/// integer constraint form `g`.  The ramp takes value 1 exactly where
/// `g >= 0`, so it axiomatizes one half-space; the term synthesis inside is
/// verification-gated.
fn synth_slab(g: &AffineForm, synth: &mut TermSynth) -> Result<(Formula, PLExpr)> {
    let n = g.dim();
    let shifted = g.add_const(&Rat::one());
    let formula = synth.term(&shifted)?;
    let expr = PLExpr::Min(vec![
        PLExpr::constant(n, Rat::one()),
        PLExpr::Max(vec![
            PLExpr::constant(n, Rat::zero()),
            PLExpr::Affine(shifted),
        ]),
    ]);
    Ok((formula, expr))
}

/// Formula whose model set is exactly `p`, together with its piecewise
/// linear description: the meet of the half-space ramps of `p`.
///
/// Soundness rests on the H-representation: a cube point satisfies every
/// hull equation and facet inequality exactly when it lies in `p`, each ramp
/// takes value 1 exactly on its half-space, and `Meet` is pointwise minimum.
/// Ramps of half-spaces that contain the whole cube synthesize to the
/// constant `One` and are dropped; an empty meet therefore means `p` is the
/// cube itself.  Every ramp term is verified during synthesis, and the
/// assembled description is re-checked against the extremals of `p`.
fn synth_polytope(p: &Polytope, synth: &mut TermSynth) -> Result<(Formula, PLExpr)> {
    let n = p.ambient_dim();
    let mut formulas = Vec::new();
    let mut exprs = Vec::new();
    for g in halfspace_forms(p) {
        let (formula, expr) = synth_slab(&g, synth)?;
        if formula == Formula::One {
            continue;
        }
        formulas.push(formula);
        exprs.push(expr);
    }
    if formulas.is_empty() {
        return Ok((Formula::One, PLExpr::constant(n, Rat::one())));
    }
    let expr = PLExpr::Min(exprs);
    for v in p.extremals() {
        if !expr.eval(v.coords()).is_one() {
            return Err(Error::SynthesisVerification(
                "polytope formula rejects an extremal point of its target".into(),
            ));
        }
    }
    Ok((fold_balanced(formulas, meet), expr))
}

/// Formula and description for the relative boundary of `d`: the join over
/// its facets of their polytope formulas.  A zero-dimensional `d` has no
/// facets and yields the unsatisfiable theory.
fn synth_boundary(
    d: &Polytope,
    synth: &mut TermSynth,
) -> Result<(Formula, PLExpr, Vec<Polytope>)> {
    let n = d.ambient_dim();
    let facets = d.facet_subpolytopes()?;
    let mut formulas = Vec::new();
    let mut exprs = Vec::new();
    for facet in &facets {
        let (formula, expr) = synth_polytope(facet, synth)?;
        formulas.push(formula);
        exprs.push(expr);
    }
    if formulas.is_empty() {
        return Ok((Formula::Zero, PLExpr::constant(n, Rat::zero()), facets));
    }
    Ok((fold_balanced(formulas, join), PLExpr::Max(exprs), facets))
}

/// A synthesized theory: a formula together with its model set.
#[derive(Clone, Debug)]
pub struct TheoryAxioms {
    pub formula: Formula,
    pub models: Polyhedron,
}

impl TheoryAxioms {
    /// The theory of a single rational polytope.
    pub fn of_polytope(p: &Polytope, cfg: &ComplexConfig) -> Result<TheoryAxioms> {
        check_dim(p.ambient_dim(), cfg)?;
        let mut synth = TermSynth::new();
        let (formula, _) = synth_polytope(p, &mut synth)?;
        Ok(TheoryAxioms {
            formula,
            models: Polyhedron::new(vec![p.clone()]),
        })
    }

    /// The theory of the relative boundary of `d`: the join of the formulas
    /// of its facets.  A zero-dimensional `d` has no facets and yields the
    /// unsatisfiable theory.
    pub fn of_boundary(d: &Polytope, cfg: &ComplexConfig) -> Result<TheoryAxioms> {
        check_dim(d.ambient_dim(), cfg)?;
        let mut synth = TermSynth::new();
        let (formula, _, facets) = synth_boundary(d, &mut synth)?;
        Ok(TheoryAxioms {
            formula,
            models: Polyhedron::new(facets),
        })
    }
}

/// Enforce the configured ambient dimension cap.
fn check_dim(n: usize, cfg: &ComplexConfig) -> Result<()> {
    if n > cfg.max_dim {
        return Err(Error::DimensionCap {
            got: n,
            cap: cfg.max_dim,
        });
    }
    Ok(())
}

/// Synthesize a formula whose model set is exactly the rational polytope `p`.
pub fn synth_polytope_formula(p: &Polytope, cfg: &ComplexConfig) -> Result<Formula> {
    Ok(TheoryAxioms::of_polytope(p, cfg)?.formula)
}

/// Synthesize a formula whose model set is the relative boundary of `d`.
pub fn synth_boundary_formula(d: &Polytope, cfg: &ComplexConfig) -> Result<Formula> {
    Ok(TheoryAxioms::of_boundary(d, cfg)?.formula)
}

// ---------------------------------------------------------------------------
// Deduction exponents
// ---------------------------------------------------------------------------

/// The least `n >= 1` such that `phi^n -> psi` is valid, or `None` when no
/// power works — equivalently, when some model of `phi` fails `psi`.
///
/// `phi^n` is the truncated product of `n` copies of `phi`, pointwise
/// `max(0, 1 - n(1 - phi))`, so `phi^n <= psi` everywhere is decidable per
/// affine cell: on a cell where both functions are affine the power is convex
/// and the comparison reduces to the cell's vertices, and any vertex with
/// `phi = 1` but `psi < 1` rules out every power.
pub fn deduction_exponent(
    phi: &Formula,
    psi: &Formula,
    cfg: &ComplexConfig,
) -> Result<Option<u64>> {
    let n = phi.arity().max(psi.arity()).max(1);
    check_dim(n, cfg)?;
    let cube = Cell::from_points(&cube_corners(n))?;
    exponent_on_cells(phi, psi, vec![cube], n, cfg)
}

/// Deduction exponent computed over a given covering of the cube by cells.
/// The cells are decomposed further until both formulas are affine on each
/// piece, then the vertex criterion applies exactly.
fn exponent_on_cells(
    phi: &Formula,
    psi: &Formula,
    cells: Vec<Cell>,
    n: usize,
    cfg: &ComplexConfig,
) -> Result<Option<u64>> {
    let dec = decompose(cells, &[phi, psi], n, cfg.max_subdivisions)?;
    let mut best = BigInt::one();
    for (cell, forms) in dec.cells.iter().zip(dec.root_forms.iter()) {
        let phi_form = &forms[0];
        let psi_form = &forms[1];
        for u in &cell.verts {
            let a = phi_form.eval_point(u);
            let b = psi_form.eval_point(u);
            if a.is_one() {
                if !b.is_one() {
                    return Ok(None);
                }
            } else {
                // Smallest n with n(1 - a) >= 1 - b.
                let need = ((Rat::one() - b) / (Rat::one() - a)).ceil().to_integer();
                if need > best {
                    best = need;
                }
            }
        }
    }
    let k = best
        .to_u64()
        .ok_or_else(|| Error::Internal("deduction exponent exceeds u64".into()))?;
    Ok(Some(k))
}

/// Hyperplanes on which two distinct forms of `leaves` agree, deduplicated.
fn comparison_planes(leaves: &[AffineForm]) -> Vec<AffineForm> {
    let mut seen = BTreeSet::new();
    let mut planes = Vec::new();
    for i in 0..leaves.len() {
        for j in i + 1..leaves.len() {
            let d = leaves[i].sub(&leaves[j]);
            if let Some(key) = d.hyperplane_key() {
                if seen.insert(key) {
                    planes.push(d);
                }
            }
        }
    }
    planes
}

/// Interior probe point of a full-dimensional cell: the average of its
/// vertices.
fn cell_barycenter(cell: &Cell) -> Vec<Rat> {
    let n = cell.verts[0].dim();
    let count = crate::rat::rat_int(cell.verts.len() as i64);
    (0..n)
        .map(|i| {
            cell.verts
                .iter()
                .map(|v| v.coords()[i].clone())
                .fold(Rat::zero(), |a, c| a + c)
                / &count
        })
        .collect()
}

/// Least `n >= 1` making `phi^n <= psi` everywhere on the cube, or `None`
/// when no power works.  Both functions are given as piecewise linear
/// expressions over affine leaves.
///
/// The cube is split along every hyperplane on which two distinct leaves of
/// the same expression agree.  The interior of a resulting cell meets none
/// of those hyperplanes, so each expression resolves to one affine form
/// valid on the whole closed cell, and the criterion is exact on the cell's
/// vertices: `phi^n` is the convex function `max(0, 1 - n(1 - phi))` and
/// `psi` is affine, so their comparison on a polytope reduces to its
/// vertices.  A vertex with `phi = 1` forces `psi >= 1` there for every
/// power; elsewhere the least admissible power is `ceil((1 - psi)/(1 - phi))`.
///
/// Splitting happens in two stages so the expensive one stays local: cells
/// are first carved along the comparison planes of `phi`, and cells where
/// `phi` resolves to the zero form are dropped before the `psi` planes are
/// applied, provided interval bounds certify `psi >= 0` (then `phi^n = 0`
/// makes the comparison void there).
fn least_exponent_expr(
    phi: &PLExpr,
    psi: &PLExpr,
    n: usize,
    cfg: &ComplexConfig,
) -> Result<Option<u64>> {
    let mut phi_leaves = Vec::new();
    phi.leaves(&mut phi_leaves);
    let mut psi_leaves = Vec::new();
    psi.leaves(&mut psi_leaves);
    let phi_planes = comparison_planes(&phi_leaves);
    let psi_planes = comparison_planes(&psi_leaves);
    let psi_nonneg = !psi.cube_lower_bound().is_negative();

    let cube = Cell::from_points(&cube_corners(n))?;
    let coarse = split_cells_by_hyperplanes(vec![cube], &phi_planes, cfg.max_subdivisions)?;
    let mut best = BigInt::one();
    for cell in coarse {
        let probe = cell_barycenter(&cell);
        let a = phi.resolve(&probe);
        if psi_nonneg && a.is_constant() && a.cst.is_zero() {
            continue;
        }
        for sub in split_cells_by_hyperplanes(vec![cell], &psi_planes, cfg.max_subdivisions)? {
            let b = psi.resolve(&cell_barycenter(&sub));
            for u in &sub.verts {
                let av = a.eval_point(u);
                let bv = b.eval_point(u);
                if av >= Rat::one() {
                    if bv < Rat::one() {
                        return Ok(None);
                    }
                } else {
                    let need = ((Rat::one() - bv) / (Rat::one() - av)).ceil().to_integer();
                    if need > best {
                        best = need;
                    }
                }
            }
        }
    }
    let k = best
        .to_u64()
        .ok_or_else(|| Error::Internal("deduction exponent exceeds u64".into()))?;
    Ok(Some(k))
}

// ---------------------------------------------------------------------------
// Coherence through provability
// ---------------------------------------------------------------------------

/// Outcome of the logic-side coherence test for a book.
#[derive(Clone, Debug)]
pub struct ProvabilityReport {
    pub coherent: bool,
    pub strict: bool,
    /// Formula whose only model is the book's betting vector.
    pub point_formula: Formula,
    /// Formula whose model set is the book's risk polytope.
    pub theory_formula: Formula,
    /// Formula whose model set is the relative boundary of the risk polytope.
    pub boundary_formula: Formula,
    /// Least `n` with `point^n -> theory` valid; present iff coherent.
    pub theory_exponent: Option<u64>,
    /// Least `n` with `point^n -> boundary` valid; present iff the book is
    /// coherent without being strictly so (or incoherent through a boundary
    /// point, which cannot happen).
    pub boundary_exponent: Option<u64>,
}

/// Decide coherence of a book through provability alone.
///
/// The betting vector, the risk polytope and its relative boundary are each
/// turned into formulas with exactly those model sets.  Coherence of the book
/// is then equivalent to the existence of a deduction exponent from the point
/// formula to the theory formula, and failure of strictness to one reaching
/// the boundary formula.  Both exponents are computed unconditionally and
/// cross-checked against direct membership tests; any disagreement is
/// reported as an internal error rather than silently resolved.
pub fn logic_coherence_check(book: &Book, cfg: &ComplexConfig) -> Result<ProvabilityReport> {
    let k = book.len().max(1);
    check_dim(k, cfg)?;
    let rp = risk_polytope(book.clone(), cfg)?;
    let d_poly = rp.polytope();
    let beta = book.values();
    let beta_point = Point::new(beta.clone())?;
    let beta_poly = Polytope::convex_hull(std::slice::from_ref(&beta_point))?;

    let mut synth = TermSynth::new();
    let (point_formula, point_expr) = synth_polytope(&beta_poly, &mut synth)?;
    let (theory_formula, theory_expr) = synth_polytope(d_poly, &mut synth)?;
    let (boundary_formula, boundary_expr, facets) = synth_boundary(d_poly, &mut synth)?;

    let coherent = d_poly.contains(&beta);
    let on_boundary = facets.iter().any(|f| f.contains(&beta));

    // The point formula's only model is the betting vector, so an exponent
    // exists exactly when the vector models the target — membership settles
    // every power at once, and all three views must agree.
    let theory_exponent = least_exponent_expr(&point_expr, &theory_expr, k, cfg)?;
    if theory_exponent.is_some() != coherent
        || coherent != theory_expr.eval(&beta).is_one()
    {
        return Err(Error::Internal(
            "deduction exponent disagrees with risk polytope membership".into(),
        ));
    }

    let boundary_exponent = if facets.is_empty() {
        None
    } else {
        least_exponent_expr(&point_expr, &boundary_expr, k, cfg)?
    };
    if boundary_exponent.is_some() != on_boundary
        || (!facets.is_empty() && on_boundary != boundary_expr.eval(&beta).is_one())
    {
        return Err(Error::Internal(
            "boundary exponent disagrees with boundary membership".into(),
        ));
    }

    Ok(ProvabilityReport {
        coherent,
        strict: coherent && !on_boundary,
        point_formula,
        theory_formula,
        boundary_formula,
        theory_exponent,
        boundary_exponent,
    })
}
