//! Exact rational polyhedral geometry.
//!
//! Points live in the unit cube `[0,1]^n`. A simplex is *regular* when the
//! homogeneous correspondents of its vertices extend to a basis of the
//! integer lattice; regular simplexes are the building blocks of the
//! complexes in [`crate::complex`].

pub mod linalg;
pub mod lp;
pub mod polytope;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, rat, Rat};

/// A rational point of the unit cube. Construction checks every
/// coordinate for membership in `[0,1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point(Vec<Rat>);

impl Point {
    pub fn new(coords: Vec<Rat>) -> Result<Point> {
        for c in &coords {
            if !crate::rat::in_unit_interval(c) {
                return Err(Error::OutsideUnitInterval(fmt_rat(c)));
            }
        }
        Ok(Point(coords))
    }

    /// Convenience constructor from numerator/denominator pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Point {
        Point::new(pairs.iter().map(|&(n, d)| rat(n, d)).collect()).expect("coords in [0,1]")
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.0
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rat(c))?;
        }
        write!(f, ")")
    }
}

/// The homogeneous correspondent of a rational point: numerators scaled to
/// the least common denominator, with that denominator appended.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomogeneousVector(pub Vec<BigInt>);

impl HomogeneousVector {
    /// The trailing denominator entry.
    pub fn den(&self) -> &BigInt {
        self.0.last().expect("nonempty")
    }
}

/// Homogeneous correspondent `(n1·den/d1, ..., nk·den/dk, den)` where
/// `den` is the lcm of the coordinate denominators.
pub fn homogeneous_correspondent(x: &Point) -> HomogeneousVector {
    let mut den = BigInt::one();
    for c in x.coords() {
        den = den.lcm(c.denom());
    }
    let mut v: Vec<BigInt> = x
        .coords()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    v.push(den);
    HomogeneousVector(v)
}

/// Recovers the point from a homogeneous vector (last entry must be >= 1).
pub fn dehomogenize(h: &HomogeneousVector) -> Result<Point> {
    let den = h.den().clone();
    if !den.is_positive() {
        return Err(Error::Internal("homogeneous denominator must be positive".into()));
    }
    let coords = h.0[..h.0.len() - 1]
        .iter()
        .map(|n| Rat::new(n.clone(), den.clone()))
        .collect();
    Point::new(coords)
}

/// A rational simplex: affinely independent vertices in `[0,1]^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Simplex {
    verts: Vec<Point>,
}

impl Simplex {
    pub fn new(verts: Vec<Point>) -> Result<Simplex> {
        if verts.is_empty() {
            return Err(Error::DegenerateSimplex);
        }
        let n = verts[0].dim();
        if verts.iter().any(|v| v.dim() != n) {
            return Err(Error::Dimension {
                need: n,
                got: verts.iter().map(|v| v.dim()).find(|&d| d != n).unwrap(),
            });
        }
        if verts.len() > n + 1 {
            return Err(Error::DegenerateSimplex);
        }
        let diffs: Vec<Vec<Rat>> = verts[1..]
            .iter()
            .map(|v| {
                v.coords()
                    .iter()
                    .zip(verts[0].coords())
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        if linalg::rank(&diffs) != verts.len() - 1 {
            return Err(Error::DegenerateSimplex);
        }
        Ok(Simplex { verts })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    /// Intrinsic dimension `m` (one less than the vertex count).
    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.verts[0].dim()
    }

    /// Exact `n`-dimensional volume `|det(v1-v0, ..., vn-v0)| / n!` of a
    /// full-dimensional simplex.
    pub fn volume(&self) -> Result<Rat> {
        if self.dim() != self.ambient_dim() {
            return Err(Error::Internal(
                "volume requires a full-dimensional simplex".into(),
            ));
        }
        let rows: Vec<Vec<Rat>> = self.verts[1..]
            .iter()
            .map(|v| {
                v.coords()
                    .iter()
                    .zip(self.verts[0].coords())
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let mut vol = linalg::det(&rows);
        if vol.is_negative() {
            vol = -vol;
        }
        let mut fact = BigInt::one();
        for i in 2..=self.dim() {
            fact *= BigInt::from(i);
        }
        Ok(vol / Rat::from_integer(fact))
    }

    /// Matrix of homogeneous correspondents, one row per vertex.
    pub fn homogeneous_matrix(&self) -> Vec<Vec<BigInt>> {
        self.verts
            .iter()
            .map(|v| homogeneous_correspondent(v).0)
            .collect()
    }

    /// Lattice index: the gcd of all maximal minors of the homogeneous
    /// matrix. The simplex is regular exactly when this is 1.
    pub fn lattice_index(&self) -> BigInt {
        linalg::gcd_of_maximal_minors(&self.homogeneous_matrix())
    }

    /// True when the vertex homogeneous correspondents extend to a basis of
    /// the integer lattice.
    pub fn is_regular(&self) -> bool {
        self.lattice_index().is_one()
    }

    pub fn barycenter(&self) -> Point {
        let n = self.ambient_dim();
        let count = Rat::from_integer(BigInt::from(self.verts.len()));
        let coords = (0..n)
            .map(|j| {
                self.verts
                    .iter()
                    .map(|v| v.coords()[j].clone())
                    .fold(Rat::zero(), |a, b| a + b)
                    / count.clone()
            })
            .collect();
        Point::new(coords).expect("barycenter of cube points stays in the cube")
    }

    /// Barycentric coordinates of `x` with respect to the vertices, or
    /// `None` when `x` is outside the affine hull.
    pub fn barycentric(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let n = self.ambient_dim();
        assert_eq!(x.len(), n, "point dimension mismatch");
        // rows: one per ambient coordinate, plus the affine row of ones
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|j| self.verts.iter().map(|v| v.coords()[j].clone()).collect())
            .collect();
        a.push(vec![Rat::one(); self.verts.len()]);
        let mut b: Vec<Rat> = x.to_vec();
        b.push(Rat::one());
        // affine independence makes the solution unique when it exists
        linalg::solve(&a, &b)
    }

    /// True when `x` lies in the (closed) simplex.
    pub fn contains(&self, x: &[Rat]) -> bool {
        match self.barycentric(x) {
            Some(l) => l.iter().all(|c| !c.is_negative()),
            None => false,
        }
    }
}

/// An affine form `cst + coef . x` on `R^n`, with exact rational
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineForm {
    pub coef: Vec<Rat>,
    pub cst: Rat,
}

impl AffineForm {
    pub fn constant(n: usize, c: Rat) -> AffineForm {
        AffineForm {
            coef: vec![Rat::zero(); n],
            cst: c,
        }
    }

    /// The coordinate projection `x_i` (`i` is 1-based).
    pub fn coordinate(n: usize, i: usize) -> AffineForm {
        assert!(1 <= i && i <= n, "coordinate index out of range");
        let mut coef = vec![Rat::zero(); n];
        coef[i - 1] = Rat::one();
        AffineForm { coef, cst: Rat::zero() }
    }

    pub fn dim(&self) -> usize {
        self.coef.len()
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.coef.len(), "affine form dimension mismatch");
        self.coef
            .iter()
            .zip(x)
            .map(|(c, v)| c * v)
            .fold(self.cst.clone(), |a, t| a + t)
    }

    pub fn eval_point(&self, p: &Point) -> Rat {
        self.eval(p.coords())
    }

    pub fn add(&self, other: &AffineForm) -> AffineForm {
        assert_eq!(self.coef.len(), other.coef.len());
        AffineForm {
            coef: self
                .coef
                .iter()
                .zip(&other.coef)
                .map(|(a, b)| a + b)
                .collect(),
            cst: &self.cst + &other.cst,
        }
    }

    pub fn sub(&self, other: &AffineForm) -> AffineForm {
        assert_eq!(self.coef.len(), other.coef.len());
        AffineForm {
            coef: self
                .coef
                .iter()
                .zip(&other.coef)
                .map(|(a, b)| a - b)
                .collect(),
            cst: &self.cst - &other.cst,
        }
    }

    /// `1 - self`, the Lukasiewicz negation of an affine piece.
    pub fn complement(&self) -> AffineForm {
        AffineForm {
            coef: self.coef.iter().map(|c| -c).collect(),
            cst: Rat::one() - &self.cst,
        }
    }

    pub fn add_const(&self, c: &Rat) -> AffineForm {
        AffineForm {
            coef: self.coef.clone(),
            cst: &self.cst + c,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coef.iter().all(|c| c.is_zero())
    }

    /// True when every coefficient and the constant are integers.
    pub fn is_integral(&self) -> bool {
        self.coef.iter().all(|c| c.is_integer()) && self.cst.is_integer()
    }

    /// Canonical key for the zero set `{x : self(x) = 0}`: the primitive
    /// integer scaling of `(coef, cst)` with positive leading entry, so a
    /// form and its negation share a key. `None` for constant forms.
    pub(crate) fn hyperplane_key(&self) -> Option<Vec<BigInt>> {
        if self.is_constant() {
            return None;
        }
        let mut v = self.coef.clone();
        v.push(self.cst.clone());
        polytope::primitive(&v)
    }
}

/// The unique affine form interpolating `values` on the vertices of an
/// affinely independent full-dimensional vertex set (n+1 points in `R^n`).
pub fn fit_affine(verts: &[Point], values: &[Rat]) -> Result<AffineForm> {
    let n = verts[0].dim();
    if verts.len() != n + 1 || values.len() != n + 1 {
        return Err(Error::Internal(
            "affine fit needs exactly n+1 vertices and values".into(),
        ));
    }
    // unknowns: coef_1..coef_n, cst; one equation per vertex
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
    for v in verts {
        let mut row = v.coords().to_vec();
        row.push(Rat::one());
        a.push(row);
    }
    let sol = linalg::solve(&a, values)
        .ok_or_else(|| Error::Internal("affine fit on dependent vertices".into()))?;
    let cst = sol[n].clone();
    let coef = sol[..n].to_vec();
    Ok(AffineForm { coef, cst })
}

/// Maximal simplexes of the cube `[0,1]^n` are (n)-simplexes; this helper
/// builds the standard corner points `0` and `1` of the cube.
pub fn cube_corners(n: usize) -> Vec<Point> {
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0..(1u64 << n) {
        let coords = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        out.push(Point::new(coords).unwrap());
    }
    out
}
