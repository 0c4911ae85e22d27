//! Hash-consed formula DAGs.
//!
//! Synthesized formulas can share large subtrees; as `Formula` trees those
//! shared parts are materialized repeatedly. Interning collapses
//! structurally equal subformulas to one node, so bottom-up passes
//! (evaluation, cell decomposition) do work proportional to the number of
//! *distinct* subformulas. Construction is iterative: tree depth never
//! touches the call stack.

use std::collections::HashMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::rat::{cap_one, floor_zero, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Node {
    Var(u32),
    Zero,
    One,
    Neg(usize),
    Oplus(usize, usize),
    Odot(usize, usize),
    Implies(usize, usize),
    Meet(usize, usize),
    Join(usize, usize),
}

pub(crate) struct Dag {
    /// Topologically ordered: children precede parents.
    pub nodes: Vec<Node>,
    pub roots: Vec<usize>,
}

impl Dag {
    pub fn build(formulas: &[&Formula]) -> Dag {
        let mut nodes: Vec<Node> = Vec::new();
        let mut memo: HashMap<Node, usize> = HashMap::new();
        let mut intern = |n: Node, nodes: &mut Vec<Node>| -> usize {
            *memo.entry(n).or_insert_with(|| {
                nodes.push(n);
                nodes.len() - 1
            })
        };

        let mut roots = Vec::with_capacity(formulas.len());
        for &f in formulas {
            // iterative post-order: (formula, children_done)
            let mut work: Vec<(&Formula, bool)> = vec![(f, false)];
            let mut out: Vec<usize> = Vec::new();
            while let Some((g, done)) = work.pop() {
                if !done {
                    work.push((g, true));
                    match g {
                        Formula::Var(_) | Formula::Zero | Formula::One => {}
                        Formula::Neg(a) => work.push((a, false)),
                        Formula::Oplus(a, b)
                        | Formula::Odot(a, b)
                        | Formula::Implies(a, b)
                        | Formula::Meet(a, b)
                        | Formula::Join(a, b) => {
                            // push right first so left is evaluated first
                            work.push((b, false));
                            work.push((a, false));
                        }
                    }
                } else {
                    let node = match g {
                        Formula::Var(i) => Node::Var(*i),
                        Formula::Zero => Node::Zero,
                        Formula::One => Node::One,
                        Formula::Neg(_) => {
                            let a = out.pop().unwrap();
                            Node::Neg(a)
                        }
                        Formula::Oplus(_, _)
                        | Formula::Odot(_, _)
                        | Formula::Implies(_, _)
                        | Formula::Meet(_, _)
                        | Formula::Join(_, _) => {
                            let b = out.pop().unwrap();
                            let a = out.pop().unwrap();
                            match g {
                                Formula::Oplus(_, _) => Node::Oplus(a, b),
                                Formula::Odot(_, _) => Node::Odot(a, b),
                                Formula::Implies(_, _) => Node::Implies(a, b),
                                Formula::Meet(_, _) => Node::Meet(a, b),
                                Formula::Join(_, _) => Node::Join(a, b),
                                _ => unreachable!(),
                            }
                        }
                    };
                    out.push(intern(node, &mut nodes));
                }
            }
            debug_assert_eq!(out.len(), 1);
            roots.push(out.pop().unwrap());
        }
        Dag { nodes, roots }
    }

    /// Values of every node at `x` (children first, no recursion).
    pub fn eval_all(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        let mut vals: Vec<Rat> = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let v = match *n {
                Node::Var(i) => x
                    .get(i as usize - 1)
                    .cloned()
                    .ok_or(Error::Dimension {
                        need: i as usize,
                        got: x.len(),
                    })?,
                Node::Zero => Rat::from_integer(0.into()),
                Node::One => Rat::one(),
                Node::Neg(a) => Rat::one() - &vals[a],
                Node::Oplus(a, b) => cap_one(&vals[a] + &vals[b]),
                Node::Odot(a, b) => floor_zero(&vals[a] + &vals[b] - Rat::one()),
                Node::Implies(a, b) => cap_one(Rat::one() - &vals[a] + &vals[b]),
                Node::Meet(a, b) => {
                    if vals[a] <= vals[b] {
                        vals[a].clone()
                    } else {
                        vals[b].clone()
                    }
                }
                Node::Join(a, b) => {
                    if vals[a] >= vals[b] {
                        vals[a].clone()
                    } else {
                        vals[b].clone()
                    }
                }
            };
            vals.push(v);
        }
        Ok(vals)
    }

    /// Value of one root formula at `x`.
    pub fn eval_root(&self, root: usize, x: &[Rat]) -> Result<Rat> {
        Ok(self.eval_all(x)?[self.roots[root]].clone())
    }
}
