//! Exact rational linear programming with certificates.
//!
//! A two-phase primal simplex over `BigRational`, pivoting by Bland's rule
//! (smallest eligible column; smallest basic-variable index on ratio ties),
//! which makes the solver deterministic and immune to cycling. Outcomes
//! carry replayable evidence: optimal solutions are returned with exact
//! primal and dual vectors, infeasible programs with a Farkas multiplier
//! vector, unbounded ones with an improving ray. `check_*` helpers verify
//! each kind of evidence independently of the solver.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub sense: Sense,
    pub rhs: Rat,
}

/// Maximization problem `max c·x` subject to the rows and variable bounds.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Rat>,
    pub rows: Vec<Constraint>,
    pub bounds: Vec<VarBound>,
}

/// Row multipliers `w` proving infeasibility: `w_i <= 0` on `<=` rows,
/// `w_i >= 0` on `>=` rows, unrestricted on `=` rows; the combined row
/// `sum_i w_i a_i` is `<= 0` on nonnegative variables and `= 0` on free
/// variables; and `sum_i w_i b_i > 0`. Any feasible point would violate
/// the strict inequality.
#[derive(Clone, Debug)]
pub struct FarkasCertificate {
    pub row_multipliers: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal {
        value: Rat,
        primal: Vec<Rat>,
        /// One multiplier per input row (shadow prices, exact).
        dual: Vec<Rat>,
    },
    Infeasible(FarkasCertificate),
    Unbounded {
        /// Direction `r` with `c·r > 0` that stays feasible forever.
        ray: Vec<Rat>,
    },
}

impl LinearProgram {
    fn validate(&self) -> Result<()> {
        let n = self.bounds.len();
        if self.objective.len() != n {
            return Err(Error::Dimension {
                need: n,
                got: self.objective.len(),
            });
        }
        for row in &self.rows {
            if row.coeffs.len() != n {
                return Err(Error::Dimension {
                    need: n,
                    got: row.coeffs.len(),
                });
            }
        }
        Ok(())
    }
}

/// Exact feasibility check of a candidate point.
pub fn check_feasible(lp: &LinearProgram, x: &[Rat]) -> bool {
    if x.len() != lp.bounds.len() {
        return false;
    }
    for (b, v) in lp.bounds.iter().zip(x) {
        if *b == VarBound::NonNegative && v.is_negative() {
            return false;
        }
    }
    lp.rows.iter().all(|row| {
        let lhs = dot(&row.coeffs, x);
        match row.sense {
            Sense::Le => lhs <= row.rhs,
            Sense::Eq => lhs == row.rhs,
            Sense::Ge => lhs >= row.rhs,
        }
    })
}

/// Exact verification of a Farkas infeasibility certificate.
pub fn check_farkas(lp: &LinearProgram, cert: &FarkasCertificate) -> bool {
    let w = &cert.row_multipliers;
    if w.len() != lp.rows.len() {
        return false;
    }
    for (row, wi) in lp.rows.iter().zip(w) {
        match row.sense {
            Sense::Le if wi.is_positive() => return false,
            Sense::Ge if wi.is_negative() => return false,
            _ => {}
        }
    }
    let n = lp.bounds.len();
    for v in 0..n {
        let g: Rat = lp
            .rows
            .iter()
            .zip(w)
            .map(|(row, wi)| &row.coeffs[v] * wi)
            .fold(Rat::zero(), |a, b| a + b);
        match lp.bounds[v] {
            VarBound::NonNegative => {
                if g.is_positive() {
                    return false;
                }
            }
            VarBound::Free => {
                if !g.is_zero() {
                    return false;
                }
            }
        }
    }
    let wb: Rat = lp
        .rows
        .iter()
        .zip(w)
        .map(|(row, wi)| &row.rhs * wi)
        .fold(Rat::zero(), |a, b| a + b);
    wb.is_positive()
}

/// Exact verification of an unboundedness ray.
pub fn check_ray(lp: &LinearProgram, ray: &[Rat]) -> bool {
    if ray.len() != lp.bounds.len() {
        return false;
    }
    for (b, v) in lp.bounds.iter().zip(ray) {
        if *b == VarBound::NonNegative && v.is_negative() {
            return false;
        }
    }
    for row in &lp.rows {
        let lhs = dot(&row.coeffs, ray);
        let ok = match row.sense {
            Sense::Le => !lhs.is_positive(),
            Sense::Eq => lhs.is_zero(),
            Sense::Ge => !lhs.is_negative(),
        };
        if !ok {
            return false;
        }
    }
    dot(&lp.objective, ray).is_positive()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(Rat::zero(), |acc, t| acc + t)
}

/// Column bookkeeping for the standard-form translation.
struct StandardForm {
    /// `var_cols[v] = (plus_col, Option<minus_col>)`
    var_cols: Vec<(usize, Option<usize>)>,
    slack_col: Vec<Option<usize>>,
    art_col: Vec<usize>,
    row_sign: Vec<bool>, // true when the row was negated to make rhs >= 0
    ncols: usize,
}

struct Tableau {
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.a[r][j].clone();
        for x in self.a[r].iter_mut() {
            *x = &*x / &piv;
        }
        self.b[r] = &self.b[r] / &piv;
        for i in 0..self.a.len() {
            if i == r || self.a[i][j].is_zero() {
                continue;
            }
            let f = self.a[i][j].clone();
            for c in 0..self.a[i].len() {
                if self.a[r][c].is_zero() {
                    continue;
                }
                let delta = &f * &self.a[r][c];
                self.a[i][c] = &self.a[i][c] - &delta;
            }
            let delta = &f * &self.b[r];
            self.b[i] = &self.b[i] - &delta;
        }
        self.basis[r] = j;
    }

    fn reduced_cost(&self, c: &[Rat], j: usize) -> Rat {
        let mut rc = c[j].clone();
        for (r, row) in self.a.iter().enumerate() {
            let cb = &c[self.basis[r]];
            if !cb.is_zero() && !row[j].is_zero() {
                rc -= cb * &row[j];
            }
        }
        rc
    }

    fn objective_value(&self, c: &[Rat]) -> Rat {
        self.basis
            .iter()
            .zip(&self.b)
            .map(|(&j, bi)| &c[j] * bi)
            .fold(Rat::zero(), |a, t| a + t)
    }

    /// Simplex multipliers `y = c_B B^{-1}`, read off the artificial
    /// columns (which started as the identity).
    fn multipliers(&self, c: &[Rat], art_col: &[usize]) -> Vec<Rat> {
        art_col
            .iter()
            .map(|&j| {
                self.basis
                    .iter()
                    .zip(self.a.iter())
                    .map(|(&bj, row)| &c[bj] * &row[j])
                    .fold(Rat::zero(), |a, t| a + t)
            })
            .collect()
    }
}

enum LoopEnd {
    Optimal,
    Unbounded { col: usize },
}

const MAX_PIVOTS: usize = 1_000_000;

fn simplex_loop(
    t: &mut Tableau,
    c: &[Rat],
    col_allowed: impl Fn(usize) -> bool,
) -> Result<LoopEnd> {
    for _ in 0..MAX_PIVOTS {
        // Bland: smallest improving column index
        let mut entering = None;
        for j in 0..c.len() {
            if !col_allowed(j) || t.basis.contains(&j) {
                continue;
            }
            if t.reduced_cost(c, j).is_positive() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Ok(LoopEnd::Optimal);
        };
        // ratio test; ties broken by smallest basic variable index (Bland)
        let mut best: Option<(Rat, usize, usize)> = None; // (ratio, basis var, row)
        for r in 0..t.a.len() {
            if t.a[r][j].is_positive() {
                let ratio = &t.b[r] / &t.a[r][j];
                let key = (ratio, t.basis[r], r);
                best = match best {
                    None => Some(key),
                    Some(cur) => {
                        if (key.0 < cur.0) || (key.0 == cur.0 && key.1 < cur.1) {
                            Some(key)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        match best {
            None => return Ok(LoopEnd::Unbounded { col: j }),
            Some((_, _, r)) => t.pivot(r, j),
        }
    }
    Err(Error::Internal("simplex pivot cap exceeded".into()))
}

/// Solves the program exactly. Deterministic for fixed input.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let nvars = lp.bounds.len();
    let nrows = lp.rows.len();

    // --- standard form layout ---
    let mut ncols = 0;
    let mut var_cols = Vec::with_capacity(nvars);
    for b in &lp.bounds {
        match b {
            VarBound::NonNegative => {
                var_cols.push((ncols, None));
                ncols += 1;
            }
            VarBound::Free => {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
    }
    let mut slack_col = vec![None; nrows];
    for (i, row) in lp.rows.iter().enumerate() {
        if row.sense != Sense::Eq {
            slack_col[i] = Some(ncols);
            ncols += 1;
        }
    }
    let art_col: Vec<usize> = (0..nrows).map(|i| ncols + i).collect();
    let sf = StandardForm {
        var_cols,
        slack_col,
        art_col,
        row_sign: lp.rows.iter().map(|r| r.rhs.is_negative()).collect(),
        ncols: ncols + nrows,
    };

    let mut t = Tableau {
        a: vec![vec![Rat::zero(); sf.ncols]; nrows],
        b: vec![Rat::zero(); nrows],
        basis: sf.art_col.clone(),
    };
    for (i, row) in lp.rows.iter().enumerate() {
        let neg = sf.row_sign[i];
        let sgn = |v: &Rat| if neg { -v.clone() } else { v.clone() };
        for (v, coef) in row.coeffs.iter().enumerate() {
            let (cp, cm) = sf.var_cols[v];
            t.a[i][cp] = sgn(coef);
            if let Some(cm) = cm {
                t.a[i][cm] = -t.a[i][cp].clone();
            }
        }
        if let Some(sc) = sf.slack_col[i] {
            let up = match row.sense {
                Sense::Le => Rat::one(),
                Sense::Ge => -Rat::one(),
                Sense::Eq => unreachable!(),
            };
            t.a[i][sc] = if neg { -up } else { up };
        }
        t.a[i][sf.art_col[i]] = Rat::one();
        t.b[i] = sgn(&row.rhs);
    }

    // --- phase 1: drive artificials to zero ---
    let mut c1 = vec![Rat::zero(); sf.ncols];
    for &j in &sf.art_col {
        c1[j] = -Rat::one();
    }
    match simplex_loop(&mut t, &c1, |_| true)? {
        LoopEnd::Unbounded { .. } => {
            return Err(Error::Internal("phase 1 cannot be unbounded".into()))
        }
        LoopEnd::Optimal => {}
    }
    if t.objective_value(&c1).is_negative() {
        // infeasible: y = c_B B^{-1}; original-row multipliers w_i = -sign_i y_i
        let y = t.multipliers(&c1, &sf.art_col);
        let w: Vec<Rat> = y
            .iter()
            .zip(&sf.row_sign)
            .map(|(yi, &neg)| if neg { yi.clone() } else { -yi.clone() })
            .collect();
        let cert = FarkasCertificate { row_multipliers: w };
        if !check_farkas(lp, &cert) {
            return Err(Error::Internal("extracted Farkas certificate failed its own check".into()));
        }
        return Ok(LpOutcome::Infeasible(cert));
    }

    // Pivot out any artificial still basic (at value zero) where possible;
    // rows that are zero on all non-artificial columns are redundant.
    let art_start = sf.ncols - nrows;
    let mut drop_rows: Vec<usize> = Vec::new();
    for r in 0..t.a.len() {
        if t.basis[r] >= art_start {
            match (0..art_start).find(|&j| !t.a[r][j].is_zero()) {
                Some(j) => t.pivot(r, j),
                None => drop_rows.push(r),
            }
        }
    }
    for &r in drop_rows.iter().rev() {
        t.a.remove(r);
        t.b.remove(r);
        t.basis.remove(r);
    }

    // --- phase 2 ---
    let mut c2 = vec![Rat::zero(); sf.ncols];
    for (v, &(cp, cm)) in sf.var_cols.iter().enumerate() {
        c2[cp] = lp.objective[v].clone();
        if let Some(cm) = cm {
            c2[cm] = -lp.objective[v].clone();
        }
    }
    let end = simplex_loop(&mut t, &c2, |j| j < art_start)?;

    let col_value = |t: &Tableau, j: usize| -> Rat {
        t.basis
            .iter()
            .position(|&bj| bj == j)
            .map(|r| t.b[r].clone())
            .unwrap_or_else(Rat::zero)
    };

    match end {
        LoopEnd::Unbounded { col } => {
            // direction: entering column moves up, basic columns adjust
            let mut d = vec![Rat::zero(); sf.ncols];
            d[col] = Rat::one();
            for (r, &bj) in t.basis.iter().enumerate() {
                d[bj] = -t.a[r][col].clone();
            }
            let ray: Vec<Rat> = sf
                .var_cols
                .iter()
                .map(|&(cp, cm)| match cm {
                    Some(cm) => &d[cp] - &d[cm],
                    None => d[cp].clone(),
                })
                .collect();
            if !check_ray(lp, &ray) {
                return Err(Error::Internal("extracted ray failed its own check".into()));
            }
            Ok(LpOutcome::Unbounded { ray })
        }
        LoopEnd::Optimal => {
            let primal: Vec<Rat> = sf
                .var_cols
                .iter()
                .map(|&(cp, cm)| match cm {
                    Some(cm) => col_value(&t, cp) - col_value(&t, cm),
                    None => col_value(&t, cp),
                })
                .collect();
            if !check_feasible(lp, &primal) {
                return Err(Error::Internal("optimal point failed feasibility check".into()));
            }
            let value = dot(&lp.objective, &primal);
            // dual prices on surviving rows; dropped rows were redundant
            // and get multiplier zero. The artificial columns of dropped
            // rows are gone from the tableau row set but their entries are
            // still meaningful for surviving rows.
            let y = t.multipliers(&c2, &sf.art_col);
            let dual: Vec<Rat> = y
                .iter()
                .zip(&sf.row_sign)
                .map(|(yi, &neg)| if neg { -yi.clone() } else { yi.clone() })
                .collect();
            debug_assert_eq!(t.objective_value(&c2), value);
            Ok(LpOutcome::Optimal {
                value,
                primal,
                dual,
            })
        }
    }
}
