//! Rendering back to concrete syntax.
//!
//! The printer emits the minimal parenthesization that re-parses to the
//! same tree: parentheses appear only where precedence or associativity
//! would otherwise regroup the formula.

use std::fmt;

use super::Formula;

/// Binding strength; larger binds tighter.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Var(_) | Formula::Zero | Formula::One => 6,
        Formula::Neg(_) => 5,
        Formula::Odot(_, _) => 4,
        Formula::Oplus(_, _) => 3,
        Formula::Meet(_, _) => 2,
        Formula::Join(_, _) => 1,
        Formula::Implies(_, _) => 0,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, needs_parens: bool) -> fmt::Result {
    if needs_parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

fn write_binary(
    f: &mut fmt::Formatter<'_>,
    lhs: &Formula,
    op: &str,
    rhs: &Formula,
    lvl: u8,
    right_assoc: bool,
) -> fmt::Result {
    let (lhs_parens, rhs_parens) = if right_assoc {
        (level(lhs) <= lvl, level(rhs) < lvl)
    } else {
        (level(lhs) < lvl, level(rhs) <= lvl)
    };
    write_child(f, lhs, lhs_parens)?;
    write!(f, " {op} ")?;
    write_child(f, rhs, rhs_parens)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(i) => write!(f, "x{i}"),
            Formula::Zero => write!(f, "0"),
            Formula::One => write!(f, "1"),
            Formula::Neg(a) => {
                write!(f, "~")?;
                write_child(f, a, level(a) < 5)
            }
            Formula::Odot(a, b) => write_binary(f, a, "*", b, 4, false),
            Formula::Oplus(a, b) => write_binary(f, a, "+", b, 3, false),
            Formula::Meet(a, b) => write_binary(f, a, "&", b, 2, false),
            Formula::Join(a, b) => write_binary(f, a, "|", b, 1, false),
            Formula::Implies(a, b) => write_binary(f, a, "->", b, 0, true),
        }
    }
}
