//! Pulling triangulations.
//!
//! A convex cell is triangulated by coning its lexicographically smallest
//! vertex over the (recursively triangulated) facets that do not contain
//! it. Because the apex of any face is again that face's lex-min vertex,
//! two adjacent cells triangulate their shared face identically — so
//! per-cell triangulations of a polyhedral complex glue into a simplicial
//! complex without further coordination.

use crate::error::Result;
use crate::geometry::polytope::Polytope;
use crate::geometry::Point;

pub(crate) fn pulling_triangulation(poly: &Polytope) -> Result<Vec<Vec<Point>>> {
    let ext = poly.extremals();
    if ext.len() == poly.dim() + 1 {
        // already a simplex
        return Ok(vec![ext.to_vec()]);
    }
    let apex = ext[0].clone(); // extremals are sorted: lex-min first
    let mut out = Vec::new();
    for facet in poly.facet_subpolytopes()? {
        if facet.extremals().binary_search(&apex).is_ok() {
            continue;
        }
        for mut simplex in pulling_triangulation(&facet)? {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    Ok(out)
}
