//! Convex cell decompositions of the unit cube.
//!
//! A connective like `x (+) y` is affine only while the underlying sum
//! stays inside `[0,1]`; where it leaves, a truncation hyperplane starts a
//! new region. `decompose` walks a formula DAG bottom-up and splits cells
//! until every node is affine on every cell. Each discovered hyperplane is
//! applied to *every* cell it strictly crosses, not just the one that
//! produced it, so the cells always form a polyhedral complex (any two
//! intersect in a common face). That global property is what later lets
//! per-cell triangulations glue into one simplicial complex.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::dag::{Dag, Node};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::geometry::polytope::extremal_points;
use crate::geometry::{AffineForm, Point};
use crate::rat::Rat;

/// A full-dimensional convex cell, stored by its extremal vertices
/// (sorted, deduplicated).
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Cell {
    pub verts: Vec<Point>,
}

impl Cell {
    pub fn from_points(points: &[Point]) -> Result<Cell> {
        Ok(Cell {
            verts: extremal_points(points)?,
        })
    }
}

pub(crate) enum CellSplit {
    /// Every vertex lies (weakly) on one side of the hyperplane.
    NoCross,
    /// The cell strictly crosses the hyperplane: (nonnegative side,
    /// nonpositive side).
    Split(Cell, Cell),
}

/// Splits a cell by the zero set of an affine form. The two halves share
/// the section face; its vertices are segment crossings between strictly
/// positive and strictly negative vertices (every vertex of either half is
/// either a cell vertex or such a crossing, and the junk interior points a
/// non-edge pair can produce are removed by the extremality reduction).
pub(crate) fn split_cell(cell: &Cell, h: &AffineForm) -> Result<CellSplit> {
    let vals: Vec<Rat> = cell.verts.iter().map(|v| h.eval_point(v)).collect();
    let any_pos = vals.iter().any(|v| v > &Rat::zero());
    let any_neg = vals.iter().any(|v| v < &Rat::zero());
    if !any_pos || !any_neg {
        return Ok(CellSplit::NoCross);
    }

    let mut pos: Vec<Point> = Vec::new();
    let mut neg: Vec<Point> = Vec::new();
    let mut section: Vec<Point> = Vec::new();
    for (v, val) in cell.verts.iter().zip(&vals) {
        if val > &Rat::zero() {
            pos.push(v.clone());
        } else if val < &Rat::zero() {
            neg.push(v.clone());
        } else {
            section.push(v.clone());
        }
    }
    for (u, val_u) in cell.verts.iter().zip(&vals) {
        if val_u <= &Rat::zero() {
            continue;
        }
        for (w, val_w) in cell.verts.iter().zip(&vals) {
            if val_w >= &Rat::zero() {
                continue;
            }
            // point on [u, w] where h vanishes
            let denom = val_u - val_w;
            let coords: Vec<Rat> = u
                .coords()
                .iter()
                .zip(w.coords())
                .map(|(a, b)| (val_u * b - val_w * a) / &denom)
                .collect();
            section.push(Point::new(coords)?);
        }
    }

    let mut pos_side = pos;
    pos_side.extend_from_slice(&section);
    let mut neg_side = neg;
    neg_side.extend_from_slice(&section);
    Ok(CellSplit::Split(
        Cell::from_points(&pos_side)?,
        Cell::from_points(&neg_side)?,
    ))
}

/// Applies each hyperplane in turn to every cell it strictly crosses.
/// Because splitting never makes a cell cross a plane it already avoided,
/// one pass leaves every cell weakly on one side of every listed plane.
pub(crate) fn split_cells_by_hyperplanes(
    cells: Vec<Cell>,
    planes: &[AffineForm],
    max_cells: usize,
) -> Result<Vec<Cell>> {
    let mut cells = cells;
    for h in planes {
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            match split_cell(&cell, h)? {
                CellSplit::NoCross => next.push(cell),
                CellSplit::Split(a, b) => {
                    next.push(a);
                    next.push(b);
                }
            }
        }
        if next.len() > max_cells {
            return Err(Error::SubdivisionCap(next.len()));
        }
        cells = next;
    }
    Ok(cells)
}

/// A cell decomposition on which every root formula is affine, with the
/// affine form of each root on each cell.
pub(crate) struct Decomposition {
    pub cells: Vec<Cell>,
    /// `root_forms[c][r]` is the form of root `r` on `cells[c]`.
    pub root_forms: Vec<Vec<AffineForm>>,
}

struct WorkCell {
    cell: Cell,
    /// Affine form of each resolved DAG node on this cell; freed once no
    /// later node needs it.
    forms: Vec<Option<AffineForm>>,
}

/// The affine candidate and its truncation hyperplane for a binary node,
/// given the children's forms on one cell. `None` hyperplane means the
/// node is affine outright (lattice operations still need their
/// comparison plane, so they always return one).
fn node_candidate(node: &Node, forms: &[Option<AffineForm>]) -> (AffineForm, Option<AffineForm>) {
    let get = |i: usize| forms[i].as_ref().expect("child resolved before parent");
    match *node {
        Node::Oplus(a, b) => {
            let l = get(a).add(get(b));
            let plane = l.add_const(&-Rat::one()); // l + r - 1
            (l, Some(plane))
        }
        Node::Odot(a, b) => {
            let l = get(a).add(get(b)).add_const(&-Rat::one());
            (l.clone(), Some(l))
        }
        Node::Implies(a, b) => {
            let l = get(b).sub(get(a)).add_const(&Rat::one()); // 1 - a + b
            let plane = get(b).sub(get(a)); // l - 1
            (l, Some(plane))
        }
        Node::Meet(a, b) | Node::Join(a, b) => {
            let d = get(a).sub(get(b));
            (d.clone(), Some(d))
        }
        _ => unreachable!("only binary connectives carry candidates"),
    }
}

/// Resolves a binary node on a cell that no longer strictly crosses its
/// truncation hyperplane.
fn resolve_node(node: &Node, work: &WorkCell) -> AffineForm {
    let n = work.cell.verts[0].dim();
    let forms = &work.forms;
    let get = |i: usize| forms[i].as_ref().expect("child resolved before parent");
    let (candidate, plane) = node_candidate(node, forms);
    let plane = plane.expect("binary nodes carry a plane");
    let any_pos = work
        .cell
        .verts
        .iter()
        .any(|v| plane.eval_point(v) > Rat::zero());
    debug_assert!(
        !(any_pos
            && work
                .cell
                .verts
                .iter()
                .any(|v| plane.eval_point(v) < Rat::zero())),
        "cell still crosses its truncation plane"
    );
    match *node {
        // sum saturates at 1 on the high side
        Node::Oplus(_, _) => {
            if any_pos {
                AffineForm::constant(n, Rat::one())
            } else {
                candidate
            }
        }
        // strong conjunction saturates at 0 on the low side
        Node::Odot(_, _) => {
            if any_pos {
                candidate
            } else {
                AffineForm::constant(n, Rat::zero())
            }
        }
        // implication saturates at 1 where the consequent dominates
        Node::Implies(_, _) => {
            if any_pos {
                AffineForm::constant(n, Rat::one())
            } else {
                candidate
            }
        }
        // plane is l - r: positive side means l > r
        Node::Meet(a, b) => {
            if any_pos {
                get(b).clone()
            } else {
                get(a).clone()
            }
        }
        Node::Join(a, b) => {
            if any_pos {
                get(a).clone()
            } else {
                get(b).clone()
            }
        }
        _ => unreachable!(),
    }
}

fn node_children(node: &Node) -> Vec<usize> {
    match *node {
        Node::Var(_) | Node::Zero | Node::One => vec![],
        Node::Neg(a) => vec![a],
        Node::Oplus(a, b)
        | Node::Odot(a, b)
        | Node::Implies(a, b)
        | Node::Meet(a, b)
        | Node::Join(a, b) => vec![a, b],
    }
}

/// Decomposes the region covered by `initial` (full-dimensional cells in
/// `[0,1]^n`) so that every formula is affine on every cell.
pub(crate) fn decompose(
    initial: Vec<Cell>,
    formulas: &[&Formula],
    n: usize,
    max_cells: usize,
) -> Result<Decomposition> {
    let dag = Dag::build(formulas);
    let nnodes = dag.nodes.len();

    // last node that reads each node's form; roots are kept to the end
    let mut keep = vec![false; nnodes];
    for &r in &dag.roots {
        keep[r] = true;
    }
    let mut last_use: Vec<usize> = (0..nnodes).collect();
    for (k, node) in dag.nodes.iter().enumerate() {
        for c in node_children(node) {
            last_use[c] = k;
        }
    }

    let mut works: Vec<WorkCell> = initial
        .into_iter()
        .map(|cell| WorkCell {
            cell,
            forms: vec![None; nnodes],
        })
        .collect();

    for k in 0..nnodes {
        let node = dag.nodes[k];
        match node {
            Node::Var(i) => {
                if i as usize > n {
                    return Err(Error::Dimension {
                        need: i as usize,
                        got: n,
                    });
                }
                for w in works.iter_mut() {
                    w.forms[k] = Some(AffineForm::coordinate(n, i as usize));
                }
            }
            Node::Zero => {
                for w in works.iter_mut() {
                    w.forms[k] = Some(AffineForm::constant(n, Rat::zero()));
                }
            }
            Node::One => {
                for w in works.iter_mut() {
                    w.forms[k] = Some(AffineForm::constant(n, Rat::one()));
                }
            }
            Node::Neg(a) => {
                for w in works.iter_mut() {
                    let f = w.forms[a].as_ref().expect("child resolved").complement();
                    w.forms[k] = Some(f);
                }
            }
            _ => {
                // collect the truncation planes that strictly cross the cell
                // that proposed them; splitting only shrinks cells, so no
                // new planes can appear for this node afterwards
                let mut planes: BTreeMap<Vec<BigInt>, AffineForm> = BTreeMap::new();
                for w in &works {
                    let (_, plane) = node_candidate(&node, &w.forms);
                    let plane = plane.expect("binary node");
                    if let Some(key) = plane.hyperplane_key() {
                        if matches!(split_cell(&w.cell, &plane)?, CellSplit::Split(_, _)) {
                            planes.entry(key).or_insert(plane);
                        }
                    }
                }
                for plane in planes.values() {
                    let mut next: Vec<WorkCell> = Vec::with_capacity(works.len());
                    for w in works {
                        match split_cell(&w.cell, plane)? {
                            CellSplit::NoCross => next.push(w),
                            CellSplit::Split(a, b) => {
                                next.push(WorkCell {
                                    cell: a,
                                    forms: w.forms.clone(),
                                });
                                next.push(WorkCell {
                                    cell: b,
                                    forms: w.forms,
                                });
                            }
                        }
                    }
                    if next.len() > max_cells {
                        return Err(Error::SubdivisionCap(next.len()));
                    }
                    works = next;
                }
                for w in works.iter_mut() {
                    w.forms[k] = Some(resolve_node(&node, w));
                }
            }
        }
        // free forms no later node will read
        for c in node_children(&dag.nodes[k]) {
            if last_use[c] == k && !keep[c] {
                for w in works.iter_mut() {
                    w.forms[c] = None;
                }
            }
        }
    }

    let mut cells = Vec::with_capacity(works.len());
    let mut root_forms = Vec::with_capacity(works.len());
    for w in works {
        let forms: Vec<AffineForm> = dag
            .roots
            .iter()
            .map(|&r| w.forms[r].clone().expect("roots kept"))
            .collect();
        cells.push(w.cell);
        root_forms.push(forms);
    }
    Ok(Decomposition { cells, root_forms })
}
