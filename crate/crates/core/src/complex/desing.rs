//! Repair of non-regular triangulations.
//!
//! A triangulation produced geometrically can contain simplexes whose
//! vertex correspondents do not span the integer lattice (lattice index
//! > 1). Such a simplex always has a face that is itself non-regular and
//! minimal with that property; that face's lattice quotient contains a
//! nonzero class, and any representative yields an integer vector `p`
//! whose dehomogenization lies strictly inside the face. Starring the
//! complex at that point splits every simplex around the face into pieces
//! of strictly smaller index (each maximal minor scales by `k_j/(D·g)`),
//! so the multiset of indices decreases and the loop terminates with an
//! everywhere-regular complex on the same support.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{dehomogenize, HomogeneousVector, Point, Simplex};
use crate::rat::Rat;

/// Upper bound on the size of the coefficient kernel enumerated while
/// searching for a witness. The kernel order never exceeds the lattice
/// index, so hitting this indicates a malformed input.
const MAX_WITNESS_ENUM: u64 = 1_000_000;

fn simplex_of(vertices: &[Point], idxs: &[usize]) -> Result<Simplex> {
    Simplex::new(idxs.iter().map(|&i| vertices[i].clone()).collect())
}

/// The first (smallest vertex set, then lexicographic) non-regular face of
/// the simplex with vertex indices `idxs`, with its lattice index.
fn minimal_nonregular_face(vertices: &[Point], idxs: &[usize]) -> Result<(Vec<usize>, BigInt)> {
    use itertools::Itertools;
    for size in 2..=idxs.len() {
        for face in idxs.iter().copied().combinations(size) {
            let s = simplex_of(vertices, &face)?;
            let index = s.lattice_index();
            if !index.is_one() {
                return Ok((face, index));
            }
        }
    }
    Err(Error::Internal(
        "non-regular simplex with all faces regular".into(),
    ))
}

/// Diagonalizes an integer matrix by unimodular row and column operations,
/// returning the diagonal and the accumulated column transform `w` (so a
/// solution `y` of the diagonal system maps back to `k = w·y`). Requires
/// full column rank.
fn diagonalize(mut mat: Vec<Vec<BigInt>>) -> Result<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut w: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for t in 0..cols {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !mat[i][j].is_zero()
                        && pivot
                            .map_or(true, |(pi, pj)| mat[i][j].abs() < mat[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return Err(Error::Internal(
                    "face correspondents are linearly dependent".into(),
                ));
            };
            mat.swap(t, pi);
            if pj != t {
                for row in &mut mat {
                    row.swap(t, pj);
                }
                for row in &mut w {
                    row.swap(t, pj);
                }
            }
            // One Euclidean pass down the column and along the row; any
            // nonzero remainder becomes a strictly smaller pivot next round.
            let mut clean = true;
            for i in t + 1..rows {
                let q = &mat[i][t] / &mat[t][t];
                if !q.is_zero() {
                    for j in t..cols {
                        let sub = &q * &mat[t][j];
                        mat[i][j] -= sub;
                    }
                }
                if !mat[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = &mat[t][j] / &mat[t][t];
                if !q.is_zero() {
                    for i in 0..rows {
                        let sub = &q * &mat[i][t];
                        mat[i][j] -= sub;
                    }
                    for row in &mut w {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                }
                if !mat[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    let diag = (0..cols).map(|t| mat[t][t].clone()).collect();
    Ok((diag, w))
}

/// A nonzero integer vector `p = sum_i (k_i/D) v~_i` with all
/// `k_i in {1..D-1}`, canonical by smallest coefficient sum then
/// lexicographic order. Minimality of the face forces full support.
///
/// The admissible coefficient vectors form the kernel of the correspondent
/// matrix acting on (Z/D)^m, a group whose order divides D: diagonalizing
/// the matrix reads the kernel off the diagonal, and only its elements are
/// enumerated.
fn lattice_witness(homs: &[HomogeneousVector], d: &BigInt) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let m1 = homs.len();
    let ncoords = homs[0].0.len();
    let mat: Vec<Vec<BigInt>> = (0..ncoords)
        .map(|r| homs.iter().map(|h| h.0[r].clone()).collect())
        .collect();
    let (diag, w) = diagonalize(mat)?;

    // s·y ≡ 0 (mod D) exactly when y is a multiple of D/gcd(s, D), leaving
    // gcd(s, D) choices per coordinate.
    let counts: Vec<BigInt> = diag.iter().map(|s| s.gcd(d)).collect();
    let mut size = BigInt::one();
    for g in &counts {
        size *= g;
    }
    if size > BigInt::from(MAX_WITNESS_ENUM) {
        return Err(Error::Internal("witness enumeration too large".into()));
    }
    let counts: Vec<u64> = counts
        .iter()
        .map(|g| g.to_u64().expect("bounded by the enumeration cap"))
        .collect();
    let strides: Vec<BigInt> = counts.iter().map(|&g| d / BigInt::from(g)).collect();

    let mut best: Option<(BigInt, Vec<BigInt>, Vec<BigInt>)> = None;
    let mut t = vec![0u64; m1];
    'outer: loop {
        // advance odometer (skip the all-zero vector)
        let mut pos = m1;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < counts[pos] {
                break;
            }
            t[pos] = 0;
        }

        let y: Vec<BigInt> = t
            .iter()
            .zip(&strides)
            .map(|(&ti, s)| BigInt::from(ti) * s)
            .collect();
        let k: Vec<BigInt> = w
            .iter()
            .map(|row| {
                let dot: BigInt = row.iter().zip(&y).map(|(a, b)| a * b).sum();
                dot.mod_floor(d)
            })
            .collect();
        if k.iter().all(|ki| ki.is_zero()) {
            continue;
        }

        let mut p = vec![BigInt::zero(); ncoords];
        for (ki, h) in k.iter().zip(homs) {
            for (pj, hj) in p.iter_mut().zip(&h.0) {
                *pj += ki * hj;
            }
        }
        let p: Vec<BigInt> = p
            .into_iter()
            .map(|c| {
                let (q, r) = c.div_rem(d);
                debug_assert!(r.is_zero(), "kernel element with non-integral image");
                q
            })
            .collect();
        let sum: BigInt = k.iter().sum();
        let better = match &best {
            None => true,
            Some((bsum, bk, _)) => sum < *bsum || (sum == *bsum && k < *bk),
        };
        if better {
            best = Some((sum, k, p));
        }
    }
    match best {
        Some((_, k, p)) => Ok((k, p)),
        None => Err(Error::Internal(
            "non-trivial lattice quotient without witness".into(),
        )),
    }
}

/// Repeatedly stars non-regular faces until every maximal simplex is
/// regular. Takes and returns (vertices, maximal simplexes as sorted
/// index lists); new vertices are appended.
pub(crate) fn desingularize(
    mut vertices: Vec<Point>,
    mut simplexes: Vec<Vec<usize>>,
    max_subdivisions: usize,
) -> Result<(Vec<Point>, Vec<Vec<usize>>)> {
    let mut rounds = 0usize;
    loop {
        simplexes.sort();
        let target = simplexes.iter().position(|s| {
            simplex_of(&vertices, s)
                .map(|sx| !sx.is_regular())
                .unwrap_or(true)
        });
        let Some(ti) = target else {
            return Ok((vertices, simplexes));
        };
        rounds += 1;
        if rounds > max_subdivisions || simplexes.len() > max_subdivisions {
            return Err(Error::SubdivisionCap(simplexes.len()));
        }

        let (face, d) = minimal_nonregular_face(&vertices, &simplexes[ti].clone())?;
        let homs: Vec<HomogeneousVector> = face
            .iter()
            .map(|&i| crate::geometry::homogeneous_correspondent(&vertices[i]))
            .collect();
        let (k, p) = lattice_witness(&homs, &d)?;
        if k.iter().any(|ki| ki.is_zero()) {
            return Err(Error::Internal(
                "witness without full support on a minimal face".into(),
            ));
        }
        let mut g = BigInt::zero();
        for c in &p {
            g = g.gcd(c);
        }
        let prim: Vec<BigInt> = p.iter().map(|c| c / &g).collect();
        let new_point = dehomogenize(&HomogeneousVector(prim))?;

        // the witness point lies strictly inside the face
        let face_simplex = simplex_of(&vertices, &face)?;
        let bary = face_simplex
            .barycentric(new_point.coords())
            .ok_or_else(|| Error::Internal("witness point outside face hull".into()))?;
        if bary.iter().any(|c| c <= &Rat::zero()) {
            return Err(Error::Internal("witness point not interior to face".into()));
        }
        if vertices.contains(&new_point) {
            return Err(Error::Internal("witness point already a vertex".into()));
        }
        let new_idx = vertices.len();
        vertices.push(new_point);

        // star: in every maximal simplex containing the face, replace each
        // face vertex in turn by the new point
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(simplexes.len());
        for s in &simplexes {
            if !face.iter().all(|v| s.contains(v)) {
                next.push(s.clone());
                continue;
            }
            let parent_index = simplex_of(&vertices, s)?.lattice_index();
            for &w in &face {
                let mut child: Vec<usize> =
                    s.iter().map(|&v| if v == w { new_idx } else { v }).collect();
                child.sort_unstable();
                let child_index = simplex_of(&vertices, &child)?.lattice_index();
                if child_index >= parent_index {
                    return Err(Error::Internal(
                        "stellar subdivision failed to reduce the lattice index".into(),
                    ));
                }
                next.push(child);
            }
        }
        simplexes = next;
    }
}
