//! Events of the infinite-valued calculus.
//!
//! A formula denotes a function `[0,1]^n -> [0,1]` built from the constants
//! 0 and 1, variables `x1, x2, ...`, and the connectives
//!
//! * negation `~a` = `1 - a`
//! * strong disjunction `a + b` = `min(1, a + b)`
//! * strong conjunction `a * b` = `max(0, a + b - 1)`
//! * weak conjunction `a & b` = `min(a, b)`
//! * weak disjunction `a | b` = `max(a, b)`
//! * implication `a -> b` = `min(1, 1 - a + b)`
//!
//! Every such function is continuous and piecewise affine with integer
//! coefficients, which is what makes the exact geometry in the rest of the
//! crate possible.

mod parse;
mod print;

pub use parse::parse;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rat::{cap_one, floor_zero, Rat};

/// Abstract syntax of an event formula. Variables are 1-based (`x1`, `x2`,
/// ...); `Var(0)` is never produced by the parser and is rejected by `eval`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(u32),
    Zero,
    One,
    Neg(Box<Formula>),
    /// Strong disjunction, rendered `+`.
    Oplus(Box<Formula>, Box<Formula>),
    /// Strong conjunction, rendered `*`.
    Odot(Box<Formula>, Box<Formula>),
    /// Rendered `->`; right-associative.
    Implies(Box<Formula>, Box<Formula>),
    /// Weak conjunction (pointwise min), rendered `&`.
    Meet(Box<Formula>, Box<Formula>),
    /// Weak disjunction (pointwise max), rendered `|`.
    Join(Box<Formula>, Box<Formula>),
}

pub fn var(i: u32) -> Formula {
    Formula::Var(i)
}
pub fn neg(f: Formula) -> Formula {
    Formula::Neg(Box::new(f))
}
pub fn oplus(a: Formula, b: Formula) -> Formula {
    Formula::Oplus(Box::new(a), Box::new(b))
}
pub fn odot(a: Formula, b: Formula) -> Formula {
    Formula::Odot(Box::new(a), Box::new(b))
}
pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}
pub fn meet(a: Formula, b: Formula) -> Formula {
    Formula::Meet(Box::new(a), Box::new(b))
}
pub fn join(a: Formula, b: Formula) -> Formula {
    Formula::Join(Box::new(a), Box::new(b))
}

impl Formula {
    /// Largest variable index occurring in the formula (0 for variable-free
    /// formulas). A formula of arity `n` denotes a function on `[0,1]^n`,
    /// and also on `[0,1]^m` for every `m >= n` by ignoring the extra
    /// coordinates.
    pub fn arity(&self) -> usize {
        match self {
            Formula::Var(i) => *i as usize,
            Formula::Zero | Formula::One => 0,
            Formula::Neg(a) => a.arity(),
            Formula::Oplus(a, b)
            | Formula::Odot(a, b)
            | Formula::Implies(a, b)
            | Formula::Meet(a, b)
            | Formula::Join(a, b) => a.arity().max(b.arity()),
        }
    }

    /// Evaluates the formula at a point of the unit cube. The point must
    /// supply at least `arity` coordinates; extra coordinates are ignored.
    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        match self {
            Formula::Var(i) => {
                if *i == 0 {
                    return Err(Error::Internal("variable index 0".into()));
                }
                x.get(*i as usize - 1).cloned().ok_or(Error::Dimension {
                    need: *i as usize,
                    got: x.len(),
                })
            }
            Formula::Zero => Ok(Rat::from_integer(0.into())),
            Formula::One => Ok(Rat::one()),
            Formula::Neg(a) => Ok(Rat::one() - a.eval(x)?),
            Formula::Oplus(a, b) => Ok(cap_one(a.eval(x)? + b.eval(x)?)),
            Formula::Odot(a, b) => Ok(floor_zero(a.eval(x)? + b.eval(x)? - Rat::one())),
            Formula::Implies(a, b) => Ok(cap_one(Rat::one() - a.eval(x)? + b.eval(x)?)),
            Formula::Meet(a, b) => {
                let (l, r) = (a.eval(x)?, b.eval(x)?);
                Ok(if l <= r { l } else { r })
            }
            Formula::Join(a, b) => {
                let (l, r) = (a.eval(x)?, b.eval(x)?);
                Ok(if l >= r { l } else { r })
            }
        }
    }

    /// `n`-fold strong conjunction `f * f * ... * f` (left-associated).
    /// Requires `n >= 1`; `power(f, 1)` is `f` itself. Semantically
    /// `power(f, n)(x) = max(0, 1 - n (1 - f(x)))`.
    pub fn power(&self, n: u32) -> Formula {
        assert!(n >= 1, "power requires a positive exponent");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = odot(acc, self.clone());
        }
        acc
    }
}
