//! Regular complexes: unimodular rational triangulations of the unit cube.
//!
//! A [`RegularComplex`] triangulates `[0,1]^n` into simplexes whose vertex
//! correspondents span the integer lattice. Formulas linearized over such
//! a complex restrict to affine pieces on each simplex, so their behaviour
//! is captured exactly by finitely many vertex values — the bridge between
//! formulas and polyhedral geometry that the rest of the crate relies on.

mod cells;
mod dag;
mod desing;
mod triangulate;

pub(crate) use cells::{decompose, split_cells_by_hyperplanes, Cell};
pub(crate) use dag::Dag;
pub(crate) use triangulate::pulling_triangulation;

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::geometry::lp::{lp_solve, Constraint, LinearProgram, LpOutcome, Sense, VarBound};
use crate::geometry::polytope::Polytope;
use crate::geometry::{cube_corners, fit_affine, linalg, AffineForm, Point, Simplex};
use crate::rat::{fmt_rat, parse_rat, Rat};

/// Resource limits for complex construction.
#[derive(Clone, Debug)]
pub struct ComplexConfig {
    /// Largest allowed ambient dimension (variables per formula set).
    pub max_dim: usize,
    /// Largest allowed formula batch.
    pub max_formulas: usize,
    /// Ceiling on cells/simplexes produced by subdivision.
    pub max_subdivisions: usize,
}

impl Default for ComplexConfig {
    fn default() -> Self {
        ComplexConfig {
            max_dim: 4,
            max_formulas: 8,
            max_subdivisions: 100_000,
        }
    }
}

/// A unimodular rational triangulation of `[0,1]^n`.
///
/// Vertices are sorted lexicographically; maximal simplexes are sorted
/// index lists. Construction validates regularity of every maximal
/// simplex, total volume 1, and facet matching (every inner facet shared
/// by exactly two maximal simplexes, boundary facets lying in a cube
/// facet).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularComplex {
    n: usize,
    vertices: Vec<Point>,
    simplexes: Vec<Vec<usize>>,
}

impl RegularComplex {
    pub fn from_parts(n: usize, vertices: Vec<Point>, simplexes: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidComplex("dimension must be at least 1".into()));
        }
        for v in &vertices {
            if v.dim() != n {
                return Err(Error::InvalidComplex(format!(
                    "vertex {v} has dimension {}, complex has {n}",
                    v.dim()
                )));
            }
        }

        // canonical order: vertices lexicographic, then remap indices
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut sorted = Vec::with_capacity(vertices.len());
        let mut remap = vec![0usize; vertices.len()];
        for (new_idx, &old_idx) in order.iter().enumerate() {
            if new_idx > 0 && vertices[old_idx] == sorted[new_idx - 1] {
                return Err(Error::InvalidComplex(format!(
                    "duplicate vertex {}",
                    vertices[old_idx]
                )));
            }
            remap[old_idx] = new_idx;
            sorted.push(vertices[old_idx].clone());
        }
        let vertices = sorted;

        let mut used = vec![false; vertices.len()];
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(simplexes.len());
        for s in &simplexes {
            if s.len() != n + 1 {
                return Err(Error::InvalidComplex(format!(
                    "maximal simplex needs {} vertices, got {}",
                    n + 1,
                    s.len()
                )));
            }
            let mut t: Vec<usize> = Vec::with_capacity(s.len());
            for &i in s {
                if i >= vertices.len() {
                    return Err(Error::InvalidComplex(format!(
                        "vertex index {i} out of range"
                    )));
                }
                t.push(remap[i]);
                used[remap[i]] = true;
            }
            t.sort_unstable();
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(
                    "maximal simplex repeats a vertex".into(),
                ));
            }
            out.push(t);
        }
        out.sort();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidComplex("duplicate maximal simplex".into()));
        }
        if out.is_empty() {
            return Err(Error::InvalidComplex("no maximal simplexes".into()));
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::InvalidComplex(format!(
                "vertex {} is in no maximal simplex",
                vertices[i]
            )));
        }

        let complex = RegularComplex {
            n,
            vertices,
            simplexes: out,
        };

        // regularity and volume
        let mut total = Rat::zero();
        for (i, _) in complex.simplexes.iter().enumerate() {
            let s = complex.simplex(i)?;
            let index = s.lattice_index();
            if !index.is_one() {
                return Err(Error::InvalidComplex(format!(
                    "maximal simplex {i} has lattice index {index}"
                )));
            }
            total += s.volume()?;
        }
        if !total.is_one() {
            return Err(Error::InvalidComplex(format!(
                "simplex volumes sum to {}, expected 1",
                fmt_rat(&total)
            )));
        }

        // facet matching
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for s in &complex.simplexes {
            for drop in 0..s.len() {
                let facet: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != drop)
                    .map(|(_, &v)| v)
                    .collect();
                *counts.entry(facet).or_insert(0) += 1;
            }
        }
        for (facet, count) in counts {
            match count {
                2 => {}
                1 => {
                    let on_boundary = (0..n).any(|j| {
                        let first = &complex.vertices[facet[0]].coords()[j];
                        (first.is_zero() || first.is_one())
                            && facet
                                .iter()
                                .all(|&v| &complex.vertices[v].coords()[j] == first)
                    });
                    if !on_boundary {
                        return Err(Error::InvalidComplex(
                            "interior facet belongs to only one maximal simplex".into(),
                        ));
                    }
                }
                _ => {
                    return Err(Error::InvalidComplex(format!(
                        "facet shared by {count} maximal simplexes"
                    )));
                }
            }
        }

        Ok(complex)
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// All vertices, sorted lexicographically.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Maximal simplexes as sorted lists of vertex indices.
    pub fn simplexes(&self) -> &[Vec<usize>] {
        &self.simplexes
    }

    pub fn simplex(&self, i: usize) -> Result<Simplex> {
        Simplex::new(
            self.simplexes[i]
                .iter()
                .map(|&v| self.vertices[v].clone())
                .collect(),
        )
    }

    pub fn vertex_index(&self, p: &Point) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    /// Indices of the maximal simplexes containing vertex `v`.
    pub fn star(&self, v: usize) -> Vec<usize> {
        self.simplexes
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(&v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Evaluates `eval` at every vertex and checks, per maximal simplex,
    /// that the affine interpolant of the vertex values reproduces `eval`
    /// at the barycenter and at a second interior point with weights
    /// `1..=n+1`. This is the linearity standard shared by everything that
    /// turns a formula into vertex data.
    pub(crate) fn pl_values(
        &self,
        eval: &mut dyn FnMut(&[Rat]) -> Result<Rat>,
    ) -> Result<Vec<Rat>> {
        let values: Vec<Rat> = self
            .vertices
            .iter()
            .map(|v| eval(v.coords()))
            .collect::<Result<_>>()?;
        for (si, s) in self.simplexes.iter().enumerate() {
            let verts: Vec<&Point> = s.iter().map(|&v| &self.vertices[v]).collect();
            let vals: Vec<&Rat> = s.iter().map(|&v| &values[v]).collect();
            let weightings: [Vec<Rat>; 2] = [
                vec![Rat::one(); verts.len()],
                (1..=verts.len() as i64)
                    .map(|w| Rat::from_integer(w.into()))
                    .collect(),
            ];
            for weights in weightings {
                let total: Rat = weights.iter().fold(Rat::zero(), |a, w| a + w);
                let point: Vec<Rat> = (0..self.n)
                    .map(|j| {
                        verts
                            .iter()
                            .zip(&weights)
                            .map(|(v, w)| &v.coords()[j] * w)
                            .fold(Rat::zero(), |a, t| a + t)
                            / &total
                    })
                    .collect();
                let interpolated = vals
                    .iter()
                    .zip(&weights)
                    .map(|(v, w)| *v * w)
                    .fold(Rat::zero(), |a, t| a + t)
                    / &total;
                if eval(&point)? != interpolated {
                    return Err(Error::Linearization(format!(
                        "function is not affine on maximal simplex {si}"
                    )));
                }
            }
        }
        Ok(values)
    }

    /// Subdivides this complex so the given formulas become affine on
    /// every maximal simplex; existing vertices are preserved.
    pub fn refine(&self, formulas: &[Formula], cfg: &ComplexConfig) -> Result<RegularComplex> {
        if formulas.len() > cfg.max_formulas {
            return Err(Error::FormulaCap {
                got: formulas.len(),
                cap: cfg.max_formulas,
            });
        }
        for f in formulas {
            if f.arity() > self.n {
                return Err(Error::Dimension {
                    need: f.arity(),
                    got: self.n,
                });
            }
        }
        let initial: Vec<Cell> = self
            .simplexes
            .iter()
            .map(|s| Cell {
                // vertex indices are sorted and vertices are sorted
                // lexicographically, so these lists are already canonical
                verts: s.iter().map(|&v| self.vertices[v].clone()).collect(),
            })
            .collect();
        let refs: Vec<&Formula> = formulas.iter().collect();
        let out = triangulated_complex(initial, &refs, self.n, cfg)?;
        for f in formulas {
            out.pl_values(&mut |x| f.eval(x))?;
        }
        Ok(out)
    }

    /// Exact test: is `f` affine on every maximal simplex of this complex?
    /// Decides by intersecting `f`'s own affine decomposition with each
    /// simplex and comparing forms wherever the overlap is full-dimensional.
    pub fn check_linear(&self, f: &Formula, cfg: &ComplexConfig) -> Result<bool> {
        if f.arity() > self.n {
            return Err(Error::Dimension {
                need: f.arity(),
                got: self.n,
            });
        }
        let initial = vec![Cell::from_points(&cube_corners(self.n))?];
        let decomp = decompose(initial, &[f], self.n, cfg.max_subdivisions)?;
        let cell_polys: Vec<Polytope> = decomp
            .cells
            .iter()
            .map(|c| Polytope::convex_hull(&c.verts))
            .collect::<Result<_>>()?;

        for (si, s) in self.simplexes.iter().enumerate() {
            let simplex = self.simplex(si)?;
            let spoly = Polytope::from_simplex(&simplex)?;
            let values: Vec<Rat> = s
                .iter()
                .map(|&v| f.eval(self.vertices[v].coords()))
                .collect::<Result<_>>()?;
            let interpolant = fit_affine(simplex.vertices(), &values)?;
            for (cp, forms) in cell_polys.iter().zip(&decomp.root_forms) {
                if full_dim_overlap(cp, &spoly, self.n)? && forms[0] != interpolant {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Profile rows: for each vertex (in vertex order), the values of the
    /// formulas at that vertex. All formulas must be affine on every
    /// maximal simplex.
    pub fn vertex_profile(&self, formulas: &[Formula]) -> Result<Vec<Vec<Rat>>> {
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(formulas.len());
        for f in formulas {
            if f.arity() > self.n {
                return Err(Error::Dimension {
                    need: f.arity(),
                    got: self.n,
                });
            }
            cols.push(self.pl_values(&mut |x| f.eval(x))?);
        }
        Ok((0..self.vertices.len())
            .map(|v| cols.iter().map(|c| c[v].clone()).collect())
            .collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "vertices": self
                .vertices
                .iter()
                .map(|v| v.coords().iter().map(fmt_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "simplexes": self.simplexes,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidComplex(format!("complex json: {msg}"));
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field `n`"))? as usize;
        let verts_json = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field `vertices`"))?;
        let mut vertices = Vec::with_capacity(verts_json.len());
        for row in verts_json {
            let row = row.as_array().ok_or_else(|| bad("vertex must be an array"))?;
            let coords: Vec<Rat> = row
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| bad("coordinates are \"p/q\" strings"))
                        .and_then(parse_rat)
                })
                .collect::<Result<_>>()?;
            vertices.push(Point::new(coords)?);
        }
        let simps_json = obj
            .get("simplexes")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field `simplexes`"))?;
        let mut simplexes = Vec::with_capacity(simps_json.len());
        for row in simps_json {
            let row = row.as_array().ok_or_else(|| bad("simplex must be an array"))?;
            let idxs: Vec<usize> = row
                .iter()
                .map(|i| {
                    i.as_u64()
                        .map(|i| i as usize)
                        .ok_or_else(|| bad("simplex entries are vertex indices"))
                })
                .collect::<Result<_>>()?;
            simplexes.push(idxs);
        }
        RegularComplex::from_parts(n, vertices, simplexes)
    }
}

/// True when the two full-dimensional polytopes share an interior point,
/// decided by maximizing a uniform slack over both facet systems.
fn full_dim_overlap(a: &Polytope, b: &Polytope, n: usize) -> Result<bool> {
    let mut rows = Vec::new();
    for facet in a.facets().iter().chain(b.facets()) {
        let mut coeffs = facet.normal.clone();
        coeffs.push(Rat::one()); // + t
        rows.push(Constraint {
            coeffs,
            sense: Sense::Le,
            rhs: facet.offset.clone(),
        });
    }
    let mut objective = vec![Rat::zero(); n];
    objective.push(Rat::one());
    let mut bounds = vec![VarBound::Free; n];
    bounds.push(VarBound::NonNegative);
    let lp = LinearProgram {
        objective,
        rows,
        bounds,
    };
    match lp_solve(&lp)? {
        LpOutcome::Optimal { value, .. } => Ok(value.is_positive()),
        LpOutcome::Infeasible(_) => Ok(false),
        LpOutcome::Unbounded { .. } => Err(Error::Internal(
            "overlap probe unbounded on bounded cells".into(),
        )),
    }
}

/// Kuhn's triangulation of `[0,1]^n`: one simplex per permutation, the
/// chain of unit steps in that order. Supported for `1 <= n <= 4`.
pub fn kuhn_base(n: usize) -> Result<RegularComplex> {
    if n == 0 || n > 4 {
        return Err(Error::DimensionCap { got: n, cap: 4 });
    }
    let mut vertices = cube_corners(n);
    vertices.sort();
    let index_of = |p: &Point| -> usize {
        vertices
            .binary_search(p)
            .expect("chain points are cube corners")
    };
    let mut simplexes = Vec::new();
    for perm in (0..n).permutations(n) {
        let mut coords = vec![Rat::zero(); n];
        let mut chain = vec![index_of(&Point::new(coords.clone())?)];
        for &step in &perm {
            coords[step] = Rat::one();
            chain.push(index_of(&Point::new(coords.clone())?));
        }
        simplexes.push(chain);
    }
    RegularComplex::from_parts(n, vertices, simplexes)
}

/// Builds the smallest complex this library will produce on which all
/// `formulas` are affine per maximal simplex: decompose into affine
/// cells, triangulate each cell by pulling, then repair regularity.
pub fn linearize(formulas: &[Formula], cfg: &ComplexConfig) -> Result<RegularComplex> {
    if formulas.len() > cfg.max_formulas {
        return Err(Error::FormulaCap {
            got: formulas.len(),
            cap: cfg.max_formulas,
        });
    }
    let n = formulas
        .iter()
        .map(|f| f.arity())
        .max()
        .unwrap_or(0)
        .max(1);
    if n > cfg.max_dim {
        return Err(Error::DimensionCap {
            got: n,
            cap: cfg.max_dim,
        });
    }
    let initial = vec![Cell::from_points(&cube_corners(n))?];
    let refs: Vec<&Formula> = formulas.iter().collect();
    let out = triangulated_complex(initial, &refs, n, cfg)?;
    for f in formulas {
        out.pl_values(&mut |x| f.eval(x))?;
    }
    Ok(out)
}

/// Decompose-triangulate-desingularize pipeline shared by `linearize` and
/// `refine`.
pub(crate) fn triangulated_complex(
    initial: Vec<Cell>,
    formulas: &[&Formula],
    n: usize,
    cfg: &ComplexConfig,
) -> Result<RegularComplex> {
    let decomp = decompose(initial, formulas, n, cfg.max_subdivisions)?;
    let mut point_simplexes: Vec<Vec<Point>> = Vec::new();
    for cell in &decomp.cells {
        let poly = Polytope::convex_hull(&cell.verts)?;
        point_simplexes.extend(triangulate::pulling_triangulation(&poly)?);
    }

    let mut vertices: Vec<Point> = point_simplexes.iter().flatten().cloned().collect();
    vertices.sort();
    vertices.dedup();
    let simplexes: Vec<Vec<usize>> = point_simplexes
        .iter()
        .map(|s| {
            let mut idxs: Vec<usize> = s
                .iter()
                .map(|p| vertices.binary_search(p).expect("own vertex"))
                .collect();
            idxs.sort_unstable();
            idxs
        })
        .collect();
    if simplexes.len() > cfg.max_subdivisions {
        return Err(Error::SubdivisionCap(simplexes.len()));
    }

    let (vertices, simplexes) = desing::desingularize(vertices, simplexes, cfg.max_subdivisions)?;
    RegularComplex::from_parts(n, vertices, simplexes)
}

/// A piecewise-linear function given by one value per complex vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct PLFunction {
    complex: Arc<RegularComplex>,
    values: Vec<Rat>,
}

impl PLFunction {
    pub fn new(complex: Arc<RegularComplex>, values: Vec<Rat>) -> Result<Self> {
        if values.len() != complex.vertices().len() {
            return Err(Error::Internal(format!(
                "{} values for {} vertices",
                values.len(),
                complex.vertices().len()
            )));
        }
        Ok(PLFunction { complex, values })
    }

    /// Samples `f` at the vertices, validating that it is affine on every
    /// maximal simplex.
    pub fn from_formula(complex: &Arc<RegularComplex>, f: &Formula) -> Result<Self> {
        if f.arity() > complex.dim() {
            return Err(Error::Dimension {
                need: f.arity(),
                got: complex.dim(),
            });
        }
        let values = complex.pl_values(&mut |x| f.eval(x))?;
        PLFunction::new(complex.clone(), values)
    }

    pub fn complex(&self) -> &Arc<RegularComplex> {
        &self.complex
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Evaluates by locating a maximal simplex containing `x` and
    /// interpolating its vertex values barycentrically.
    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.complex.dim() {
            return Err(Error::Dimension {
                need: self.complex.dim(),
                got: x.len(),
            });
        }
        for c in x {
            if !crate::rat::in_unit_interval(c) {
                return Err(Error::OutsideUnitInterval(fmt_rat(c)));
            }
        }
        for i in 0..self.complex.simplexes().len() {
            let s = self.complex.simplex(i)?;
            if let Some(bary) = s.barycentric(x) {
                if bary.iter().all(|c| !c.is_negative()) {
                    let value = self.complex.simplexes()[i]
                        .iter()
                        .zip(&bary)
                        .map(|(&v, b)| &self.values[v] * b)
                        .fold(Rat::zero(), |a, t| a + t);
                    return Ok(value);
                }
            }
        }
        Err(Error::Internal(
            "complex does not cover the queried point".into(),
        ))
    }

    /// The affine form this function restricts to on maximal simplex `i`.
    pub fn affine_piece(&self, i: usize) -> Result<AffineForm> {
        let s = self.complex.simplex(i)?;
        let values: Vec<Rat> = self.complex.simplexes()[i]
            .iter()
            .map(|&v| self.values[v].clone())
            .collect();
        fit_affine(s.vertices(), &values)
    }
}

/// The hat function of a complex vertex: 1 at its apex, 0 at every other
/// vertex, affine on each maximal simplex. On a regular complex every
/// affine piece has integer coefficients, which is checked.
#[derive(Clone, Debug)]
pub struct SchauderHat {
    pub apex: usize,
    /// One affine piece per maximal simplex, in simplex order.
    pub pieces: Vec<AffineForm>,
    pub pl: PLFunction,
}

/// The barycentric coordinate forms of every maximal simplex: entry `[i][j]`
/// is the affine function that is 1 at vertex `j` of simplex `i` and 0 at its
/// other vertices.  Computed by one matrix inversion per simplex — the
/// coordinate forms are the columns of the inverse of the homogeneous vertex
/// matrix — and validated against the defining deltas afterwards.
pub(crate) fn barycentric_forms(complex: &RegularComplex) -> Result<Vec<Vec<AffineForm>>> {
    let n = complex.dim();
    let mut out = Vec::with_capacity(complex.simplexes().len());
    for s in complex.simplexes() {
        // Augmented [A | I] with row j = (coords of vertex j, 1); row-reduce
        // so the right block becomes the inverse of A.
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
        for (j, &v) in s.iter().enumerate() {
            let mut row = complex.vertices()[v].coords().to_vec();
            row.push(Rat::one());
            for k in 0..=n {
                row.push(if k == j { Rat::one() } else { Rat::zero() });
            }
            rows.push(row);
        }
        let pivots = linalg::rref(&mut rows);
        if pivots != (0..=n).collect::<Vec<_>>() {
            return Err(Error::Internal(
                "degenerate simplex in barycentric form computation".into(),
            ));
        }
        let mut forms = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let coef: Vec<Rat> = (0..n).map(|r| rows[r][n + 1 + j].clone()).collect();
            let cst = rows[n][n + 1 + j].clone();
            forms.push(AffineForm { coef, cst });
        }
        for (j, form) in forms.iter().enumerate() {
            for (i, &v) in s.iter().enumerate() {
                let want = if i == j { Rat::one() } else { Rat::zero() };
                if form.eval_point(&complex.vertices()[v]) != want {
                    return Err(Error::Internal(
                        "barycentric form fails its defining deltas".into(),
                    ));
                }
            }
        }
        out.push(forms);
    }
    Ok(out)
}

/// The hats of all vertices, in vertex order. They sum to 1 everywhere
/// (partition of unity) since barycentric coordinates do.
pub fn hats(complex: &Arc<RegularComplex>) -> Result<Vec<SchauderHat>> {
    let bary = barycentric_forms(complex)?;
    let nverts = complex.vertices().len();
    let zero = AffineForm::constant(complex.dim(), Rat::zero());
    let mut out = Vec::with_capacity(nverts);
    for apex in 0..nverts {
        let values: Vec<Rat> = (0..nverts)
            .map(|v| if v == apex { Rat::one() } else { Rat::zero() })
            .collect();
        let pl = PLFunction::new(complex.clone(), values)?;
        let mut pieces = Vec::with_capacity(complex.simplexes().len());
        for (i, s) in complex.simplexes().iter().enumerate() {
            let piece = match s.iter().position(|&v| v == apex) {
                Some(j) => bary[i][j].clone(),
                None => zero.clone(),
            };
            if !piece.is_integral() {
                return Err(Error::Internal(format!(
                    "hat of vertex {apex} has a non-integral piece on simplex {i}"
                )));
            }
            pieces.push(piece);
        }
        out.push(SchauderHat { apex, pieces, pl });
    }
    Ok(out)
}
