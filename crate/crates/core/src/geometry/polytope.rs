//! Convex hulls of finite rational point sets, with exact extremal points,
//! affine hulls, and facet inequalities relative to the affine hull.
//!
//! The sets handled here are small (risk sets of books, cells of a
//! subdivision), so the algorithms favour exactness and verifiability:
//! extremal points are found by exact LP membership tests, facets by
//! enumerating hyperplanes spanned by extremal subsets inside the affine
//! hull.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg;
use super::lp::{lp_solve, Constraint, LinearProgram, LpOutcome, Sense, VarBound};
use super::{Point, Simplex};
use crate::error::{Error, Result};
use crate::rat::Rat;

/// Affine hull `base + span(basis)`; the basis rows are in reduced row
/// echelon form, which makes relative coordinates a lookup.
#[derive(Clone, Debug)]
pub struct AffineHull {
    pub base: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl AffineHull {
    fn of_points(points: &[Point]) -> AffineHull {
        let base = points[0].coords().to_vec();
        let mut diffs: Vec<Vec<Rat>> = points[1..]
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .zip(&base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let pivots = linalg::rref(&mut diffs);
        let basis = diffs.into_iter().take(pivots.len()).collect();
        AffineHull {
            base,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    /// Coordinates of `x` relative to the basis, or `None` when `x` lies
    /// outside the hull. Because the basis is in RREF, the coordinates can
    /// be read off the pivot columns and verified by reconstruction.
    pub fn coords(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(x.len(), self.base.len(), "ambient dimension mismatch");
        let diff: Vec<Rat> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let z: Vec<Rat> = self.pivots.iter().map(|&c| diff[c].clone()).collect();
        for j in 0..diff.len() {
            let recon: Rat = self
                .basis
                .iter()
                .zip(&z)
                .map(|(dir, zi)| &dir[j] * zi)
                .fold(Rat::zero(), |a, t| a + t);
            if recon != diff[j] {
                return None;
            }
        }
        Some(z)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.coords(x).is_some()
    }

    /// Equations `normal . x = offset` cutting out the hull (a basis of the
    /// complement; empty for a full-dimensional hull).
    pub fn equations(&self) -> Vec<(Vec<Rat>, Rat)> {
        let n = self.base.len();
        let normals: Vec<Vec<Rat>> = if self.basis.is_empty() {
            (0..n)
                .map(|i| {
                    let mut e = vec![Rat::zero(); n];
                    e[i] = Rat::one();
                    e
                })
                .collect()
        } else {
            linalg::nullspace(&self.basis)
        };
        normals
            .into_iter()
            .map(|q| {
                let off = dot(&q, &self.base);
                (q, off)
            })
            .collect()
    }
}

/// A facet inequality `normal . x <= offset`, valid on the whole polytope
/// and tight exactly on the facet. Normals are primitive integer vectors
/// (stored as rationals); they are meaningful for points of the affine
/// hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

/// Convex hull of finitely many rational points of the unit cube.
#[derive(Clone, Debug)]
pub struct Polytope {
    generators: Vec<Point>,
    extremals: Vec<Point>,
    hull: AffineHull,
    facets: Vec<Facet>,
    dim: usize,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(Rat::zero(), |acc, t| acc + t)
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive. Returns `None` for the zero vector.
pub(crate) fn primitive(v: &[Rat]) -> Option<Vec<BigInt>> {
    let mut lcm = BigInt::one();
    for r in v {
        lcm = lcm.lcm(r.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return None;
    }
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    Some(ints)
}

/// Deduplicates a point list, preserving first occurrences.
fn dedup_points(points: &[Point]) -> Vec<Point> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for p in points {
        if seen.insert(p.clone()) {
            out.push(p.clone());
        }
    }
    out
}

/// The extremal points of `conv(points)`, sorted lexicographically.
/// Non-extremal points are detected by an exact LP membership test in
/// coordinates relative to the affine hull.
pub fn extremal_points(points: &[Point]) -> Result<Vec<Point>> {
    let pts = dedup_points(points);
    if pts.is_empty() {
        return Err(Error::EmptyHull);
    }
    let hull = AffineHull::of_points(&pts);
    let d = hull.dim();
    let rel: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| hull.coords(p.coords()).expect("generators lie in their own hull"))
        .collect();
    let mut extremals = Vec::new();
    if pts.len() <= d + 1 {
        // affinely independent: everything is extremal
        extremals = pts;
    } else {
        for i in 0..pts.len() {
            let others: Vec<&Vec<Rat>> = rel
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, z)| z)
                .collect();
            let mut rows = vec![Constraint {
                coeffs: vec![Rat::one(); others.len()],
                sense: Sense::Eq,
                rhs: Rat::one(),
            }];
            for c in 0..d {
                rows.push(Constraint {
                    coeffs: others.iter().map(|z| z[c].clone()).collect(),
                    sense: Sense::Eq,
                    rhs: rel[i][c].clone(),
                });
            }
            let lp = LinearProgram {
                objective: vec![Rat::zero(); others.len()],
                rows,
                bounds: vec![VarBound::NonNegative; others.len()],
            };
            if matches!(lp_solve(&lp)?, LpOutcome::Infeasible(_)) {
                extremals.push(pts[i].clone());
            }
        }
    }
    extremals.sort();
    Ok(extremals)
}

/// Hyperplane `(normal, offset)` in `R^d` spanned by `d` affinely
/// independent points, or None when the points are affinely dependent.
fn hyperplane_through(points: &[&Vec<Rat>], d: usize) -> Option<(Vec<Rat>, Rat)> {
    debug_assert_eq!(points.len(), d);
    if d == 1 {
        return Some((vec![Rat::one()], points[0][0].clone()));
    }
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let ns = linalg::nullspace(&diffs);
    if ns.len() != 1 {
        return None; // points affinely dependent (or degenerate)
    }
    let normal = ns.into_iter().next().unwrap();
    let offset = dot(&normal, points[0]);
    Some((normal, offset))
}

impl Polytope {
    /// Exact convex hull with extremals, affine hull, and facets.
    pub fn convex_hull(points: &[Point]) -> Result<Polytope> {
        let generators = dedup_points(points);
        if generators.is_empty() {
            return Err(Error::EmptyHull);
        }
        let extremals = extremal_points(&generators)?;
        let hull = AffineHull::of_points(&generators);
        let d = hull.dim();
        let rel: Vec<Vec<Rat>> = extremals
            .iter()
            .map(|p| hull.coords(p.coords()).expect("extremal in hull"))
            .collect();

        let mut facets = Vec::new();
        if d >= 1 {
            let mut seen: std::collections::BTreeSet<Vec<BigInt>> = std::collections::BTreeSet::new();
            let m = rel.len();
            let mut idx: Vec<usize> = (0..d).collect();
            loop {
                let subset: Vec<&Vec<Rat>> = idx.iter().map(|&i| &rel[i]).collect();
                if let Some((normal, offset)) = hyperplane_through(&subset, d) {
                    // canonical key for dedupe: primitive (normal, offset)
                    let mut keyed = normal.clone();
                    keyed.push(offset.clone());
                    let key = primitive(&keyed).expect("nonzero normal");
                    if seen.insert(key) {
                        let mut pos = false;
                        let mut neg = false;
                        for z in &rel {
                            let s = dot(&normal, z) - &offset;
                            if s.is_positive() {
                                pos = true;
                            } else if s.is_negative() {
                                neg = true;
                            }
                            if pos && neg {
                                break;
                            }
                        }
                        if !(pos && neg) {
                            // orient as <=; lift to ambient coordinates
                            let (n_rel, c_rel) = if pos {
                                (
                                    normal.iter().map(|x| -x.clone()).collect::<Vec<_>>(),
                                    -offset.clone(),
                                )
                            } else {
                                (normal.clone(), offset.clone())
                            };
                            let a = linalg::solve(&hull.basis, &n_rel)
                                .expect("basis has full row rank");
                            let c_amb = dot(&a, &hull.base) + c_rel;
                            let mut joint = a.clone();
                            joint.push(c_amb.clone());
                            let prim = primitive(&joint).expect("nonzero facet normal");
                            let scale = if a.iter().all(|x| x.is_zero()) {
                                Rat::one()
                            } else {
                                // primitive() keeps orientation up to a positive
                                // factor only when the first nonzero entry was
                                // positive; recover the correct sign from any
                                // nonzero coordinate.
                                let j = a.iter().position(|x| !x.is_zero()).unwrap();
                                let p = Rat::from_integer(prim[j].clone());
                                &a[j] / &p
                            };
                            let sgn = if scale.is_positive() { 1 } else { -1 };
                            let normal_amb: Vec<Rat> = prim[..prim.len() - 1]
                                .iter()
                                .map(|x| Rat::from_integer(x * sgn))
                                .collect();
                            let offset_amb = Rat::from_integer(prim[prim.len() - 1].clone() * sgn);
                            facets.push(Facet {
                                normal: normal_amb,
                                offset: offset_amb,
                            });
                        }
                    }
                }
                // next d-combination
                let mut i = d;
                let mut done = true;
                while i > 0 {
                    i -= 1;
                    if idx[i] != i + m - d {
                        idx[i] += 1;
                        for j in i + 1..d {
                            idx[j] = idx[j - 1] + 1;
                        }
                        done = false;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
            facets.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
        }

        Ok(Polytope {
            generators,
            extremals,
            hull,
            facets,
            dim: d,
        })
    }

    pub fn from_simplex(s: &Simplex) -> Result<Polytope> {
        Polytope::convex_hull(s.vertices())
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn extremals(&self) -> &[Point] {
        &self.extremals
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn affine_hull(&self) -> &AffineHull {
        &self.hull
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.hull.ambient_dim()
    }

    /// Exact membership via affine-hull equations plus facet inequalities.
    pub fn contains(&self, x: &[Rat]) -> bool {
        if !self.hull.contains(x) {
            return false;
        }
        self.facets
            .iter()
            .all(|f| dot(&f.normal, x) <= f.offset)
    }

    /// Membership in the relative interior: on the affine hull, strictly
    /// inside every facet. A 0-dimensional polytope is its own relative
    /// interior.
    pub fn in_relative_interior(&self, x: &[Rat]) -> bool {
        if !self.hull.contains(x) {
            return false;
        }
        if self.dim == 0 {
            return x == self.extremals[0].coords();
        }
        self.facets
            .iter()
            .all(|f| dot(&f.normal, x) < f.offset)
    }

    /// The facets as polytopes (extremals tight on each facet inequality).
    pub fn facet_subpolytopes(&self) -> Result<Vec<Polytope>> {
        let mut out = Vec::new();
        for f in &self.facets {
            let tight: Vec<Point> = self
                .extremals
                .iter()
                .filter(|p| dot(&f.normal, p.coords()) == f.offset)
                .cloned()
                .collect();
            debug_assert!(!tight.is_empty());
            out.push(Polytope::convex_hull(&tight)?);
        }
        Ok(out)
    }

    /// All proper nonempty faces (facets, their facets, ..., vertices),
    /// deduplicated. Their union is the relative boundary. A
    /// 0-dimensional polytope has no proper faces.
    pub fn faces(&self) -> Result<Vec<Polytope>> {
        let mut seen: std::collections::BTreeSet<Vec<Point>> = std::collections::BTreeSet::new();
        let mut queue: Vec<Polytope> = self.facet_subpolytopes()?;
        let mut out = Vec::new();
        while let Some(p) = queue.pop() {
            if !seen.insert(p.extremals.clone()) {
                continue;
            }
            queue.extend(p.facet_subpolytopes()?);
            out.push(p);
        }
        out.sort_by(|a, b| a.extremals.cmp(&b.extremals));
        Ok(out)
    }

    /// Set equality of polytopes (they are determined by their extremals).
    pub fn same_set(&self, other: &Polytope) -> bool {
        self.extremals == other.extremals
    }

    /// H-representation: affine-hull equations and facet inequalities.
    pub fn h_representation(&self) -> (Vec<(Vec<Rat>, Rat)>, Vec<(Vec<Rat>, Rat)>) {
        let eqs = self.hull.equations();
        let ineqs = self
            .facets
            .iter()
            .map(|f| (f.normal.clone(), f.offset.clone()))
            .collect();
        (eqs, ineqs)
    }
}

/// Exact vertex enumeration of the intersection of two polytopes, by
/// brute force over tight constraint subsets of the combined
/// H-representation. Intended for small dimensions and few constraints.
pub fn intersection_vertices(a: &Polytope, b: &Polytope) -> Result<Vec<Point>> {
    let n = a.ambient_dim();
    if b.ambient_dim() != n {
        return Err(Error::Dimension {
            need: n,
            got: b.ambient_dim(),
        });
    }
    let (mut eqs, mut ineqs) = a.h_representation();
    let (eb, ib) = b.h_representation();
    eqs.extend(eb);
    ineqs.extend(ib);

    let satisfies = |x: &[Rat]| -> bool {
        eqs.iter().all(|(q, c)| dot(q, x) == *c)
            && ineqs.iter().all(|(q, c)| dot(q, x) <= *c)
    };

    let eq_rows: Vec<Vec<Rat>> = eqs.iter().map(|(q, _)| q.clone()).collect();
    let base_rank = linalg::rank(&eq_rows);
    let need = n - base_rank;
    let mut found: std::collections::BTreeSet<Point> = std::collections::BTreeSet::new();

    let mut subset: Vec<usize> = (0..need).collect();
    if need > ineqs.len() && need > 0 {
        return Ok(Vec::new());
    }
    loop {
        let mut mat = eq_rows.clone();
        let mut rhs: Vec<Rat> = eqs.iter().map(|(_, c)| c.clone()).collect();
        for &i in &subset {
            mat.push(ineqs[i].0.clone());
            rhs.push(ineqs[i].1.clone());
        }
        if linalg::rank(&mat) == n {
            if let Some(x) = linalg::solve(&mat, &rhs) {
                if satisfies(&x) {
                    if let Ok(p) = Point::new(x) {
                        found.insert(p);
                    }
                }
            }
        }
        if need == 0 {
            break;
        }
        // next combination
        let mut i = need;
        let mut done = true;
        while i > 0 {
            i -= 1;
            if subset[i] != i + ineqs.len() - need {
                subset[i] += 1;
                for j in i + 1..need {
                    subset[j] = subset[j - 1] + 1;
                }
                done = false;
                break;
            }
        }
        if done {
            break;
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn p(pairs: &[(i64, i64)]) -> Point {
        Point::from_pairs(pairs)
    }

    fn reference_profile_points() -> Vec<Point> {
        vec![
            p(&[(0, 1), (0, 1), (0, 1)]),
            p(&[(0, 1), (1, 1), (1, 1)]),
            p(&[(1, 1), (0, 1), (1, 1)]),
            p(&[(1, 1), (1, 1), (1, 1)]),
            p(&[(1, 2), (1, 2), (1, 1)]),
        ]
    }

    #[test]
    fn hull_of_profile_points_drops_the_midpoint() {
        let pts = reference_profile_points();
        let hull = Polytope::convex_hull(&pts).unwrap();
        assert_eq!(hull.extremals().len(), 4);
        assert!(!hull.extremals().contains(&pts[4]));
        assert_eq!(hull.dim(), 3);
    }

    #[test]
    fn hull_of_square_plus_center() {
        let mut pts = vec![
            p(&[(0, 1), (0, 1)]),
            p(&[(1, 1), (0, 1)]),
            p(&[(0, 1), (1, 1)]),
            p(&[(1, 1), (1, 1)]),
        ];
        pts.push(p(&[(1, 2), (1, 2)]));
        let hull = Polytope::convex_hull(&pts).unwrap();
        assert_eq!(hull.extremals().len(), 4);
        assert_eq!(hull.dim(), 2);
        assert_eq!(hull.facets().len(), 4);
    }

    #[test]
    fn hull_of_single_point() {
        let hull = Polytope::convex_hull(&[p(&[(1, 2), (1, 3)])]).unwrap();
        assert_eq!(hull.dim(), 0);
        assert_eq!(hull.extremals().len(), 1);
        assert!(hull.facets().is_empty());
        assert!(hull.faces().unwrap().is_empty());
        assert!(hull.contains(&[rat(1, 2), rat(1, 3)]));
        assert!(hull.in_relative_interior(&[rat(1, 2), rat(1, 3)]));
        assert!(!hull.contains(&[rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn tetrahedron_face_lattice() {
        let pts = reference_profile_points()[..4].to_vec();
        let hull = Polytope::convex_hull(&pts).unwrap();
        assert_eq!(hull.facets().len(), 4);
        let faces = hull.faces().unwrap();
        let by_dim = |d: usize| faces.iter().filter(|f| f.dim() == d).count();
        assert_eq!(by_dim(2), 4, "facets");
        assert_eq!(by_dim(1), 6, "edges");
        assert_eq!(by_dim(0), 4, "vertices");
        assert_eq!(faces.len(), 14);
    }

    #[test]
    fn segment_faces_are_endpoints() {
        let hull = Polytope::convex_hull(&[p(&[(0, 1), (1, 1)]), p(&[(1, 1), (0, 1)])]).unwrap();
        assert_eq!(hull.dim(), 1);
        let faces = hull.faces().unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.dim() == 0));
    }

    #[test]
    fn square_face_counts() {
        let pts = vec![
            p(&[(0, 1), (0, 1)]),
            p(&[(1, 1), (0, 1)]),
            p(&[(0, 1), (1, 1)]),
            p(&[(1, 1), (1, 1)]),
        ];
        let hull = Polytope::convex_hull(&pts).unwrap();
        let faces = hull.faces().unwrap();
        let by_dim = |d: usize| faces.iter().filter(|f| f.dim() == d).count();
        assert_eq!(by_dim(1), 4);
        assert_eq!(by_dim(0), 4);
    }

    #[test]
    fn membership_and_relative_interior() {
        // lower-dimensional: the diagonal segment of the square
        let hull =
            Polytope::convex_hull(&[p(&[(0, 1), (0, 1)]), p(&[(1, 1), (1, 1)])]).unwrap();
        assert!(hull.contains(&[rat(1, 2), rat(1, 2)]));
        assert!(hull.in_relative_interior(&[rat(1, 2), rat(1, 2)]));
        assert!(hull.contains(&[rat_int(0), rat_int(0)]));
        assert!(!hull.in_relative_interior(&[rat_int(0), rat_int(0)]));
        assert!(!hull.contains(&[rat(1, 2), rat(1, 3)]));
    }

    #[test]
    fn relative_interior_of_the_reference_hull() {
        let hull = Polytope::convex_hull(&reference_profile_points()).unwrap();
        // the midpoint generator sits on the relative boundary (edge p2-p3)
        assert!(!hull.in_relative_interior(&[rat(1, 2), rat(1, 2), rat_int(1)]));
        assert!(hull.contains(&[rat(1, 2), rat(1, 2), rat_int(1)]));
        // barycenter of the four extremals is strictly inside
        assert!(hull.in_relative_interior(&[rat(1, 2), rat(1, 2), rat(3, 4)]));
        // (1,1,1/2) is not even a member
        assert!(!hull.contains(&[rat_int(1), rat_int(1), rat(1, 2)]));
    }

    #[test]
    fn hull_idempotence() {
        let hull = Polytope::convex_hull(&reference_profile_points()).unwrap();
        let again = Polytope::convex_hull(hull.extremals()).unwrap();
        assert!(hull.same_set(&again));
        assert_eq!(hull.facets(), again.facets());
    }

    #[test]
    fn facets_are_tight_on_enough_extremals() {
        let hull = Polytope::convex_hull(&reference_profile_points()).unwrap();
        for f in hull.facets() {
            let tight = hull
                .extremals()
                .iter()
                .filter(|p| dot(&f.normal, p.coords()) == f.offset)
                .count();
            assert!(tight >= hull.dim(), "facet {f:?} tight on {tight}");
            for p in hull.extremals() {
                assert!(dot(&f.normal, p.coords()) <= f.offset);
            }
        }
    }

    #[test]
    fn intersection_vertex_enumeration() {
        // triangle and square overlapping in a smaller triangle
        let tri = Polytope::convex_hull(&[
            p(&[(0, 1), (0, 1)]),
            p(&[(1, 1), (0, 1)]),
            p(&[(0, 1), (1, 1)]),
        ])
        .unwrap();
        let square = Polytope::convex_hull(&[
            p(&[(1, 2), (0, 1)]),
            p(&[(1, 1), (0, 1)]),
            p(&[(1, 2), (1, 2)]),
            p(&[(1, 1), (1, 2)]),
        ])
        .unwrap();
        let verts = intersection_vertices(&tri, &square).unwrap();
        assert_eq!(
            verts,
            vec![p(&[(1, 2), (0, 1)]), p(&[(1, 2), (1, 2)]), p(&[(1, 1), (0, 1)]),]
        );

        // disjoint: no vertices
        let far = Polytope::convex_hull(&[p(&[(9, 10), (9, 10)]), p(&[(1, 1), (1, 1)])]).unwrap();
        assert!(intersection_vertices(&tri, &far).unwrap().is_empty());

        // lower-dimensional intersection: segment meets triangle edge at a point
        let seg = Polytope::convex_hull(&[p(&[(1, 2), (1, 2)]), p(&[(1, 1), (1, 1)])]).unwrap();
        let verts = intersection_vertices(&tri, &seg).unwrap();
        assert_eq!(verts, vec![p(&[(1, 2), (1, 2)])]);
    }

    #[test]
    fn membership_agrees_with_lp_mixture_test() {
        use crate::geometry::lp;
        let pts = reference_profile_points();
        let hull = Polytope::convex_hull(&pts).unwrap();
        // pseudo-random rational probes with small denominators
        let mut state = 1u64;
        for _ in 0..200 {
            let mut coords = Vec::new();
            for _ in 0..3 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let num = (state >> 33) % 5;
                coords.push(rat(num as i64, 4));
            }
            let member_facets = hull.contains(&coords);
            // LP: is coords a convex combination of the generators?
            let mut rows = vec![Constraint {
                coeffs: vec![Rat::one(); pts.len()],
                sense: Sense::Eq,
                rhs: Rat::one(),
            }];
            for j in 0..3 {
                rows.push(Constraint {
                    coeffs: pts.iter().map(|p| p.coords()[j].clone()).collect(),
                    sense: Sense::Eq,
                    rhs: coords[j].clone(),
                });
            }
            let lp_prob = LinearProgram {
                objective: vec![Rat::zero(); pts.len()],
                rows,
                bounds: vec![VarBound::NonNegative; pts.len()],
            };
            let member_lp = matches!(lp::lp_solve(&lp_prob).unwrap(), LpOutcome::Optimal { .. });
            assert_eq!(member_facets, member_lp, "disagreement at {coords:?}");
        }
    }
}
