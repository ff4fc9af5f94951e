//! Clone enumeration and hyperidentity checking.

use std::collections::{HashMap, HashSet};

use super::{projection_table, Assignment, Elem, FiniteAlgebra, Satisfaction};
use crate::hyp::{HypPool, Hypersubstitution};
use crate::term::{Equation, OpId, Signature, Term, VarIndex};

/// An `m`-ary term operation together with a term inducing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOperation {
    pub arity: usize,
    pub table: Vec<Elem>,
    pub witness: Term,
}

#[derive(Clone, Debug)]
pub struct CloneResult {
    pub arity: usize,
    /// Projections first, then operations in the order they were found.
    pub operations: Vec<TermOperation>,
    /// False when the bound stopped the search before a fixpoint.
    pub complete: bool,
}

impl CloneResult {
    pub fn len(&self) -> usize {
        self.operations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operations.is_empty()
    }

    pub fn find(&self, table: &[Elem]) -> Option<&TermOperation> {
        self.operations.iter().find(|op| op.table == table)
    }
}

/// How the hypersubstitutions of a hyperidentity check are drawn.
#[derive(Clone, Copy, Debug)]
pub enum HyperMode<'a> {
    Pool(&'a HypPool),
    /// Every choice of clone member per symbol; each clone is enumerated up
    /// to `bound` operations.
    CloneComplete {
        bound: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperSatisfaction {
    /// `exhaustive` is true only when every hypersubstitution was covered,
    /// which needs clone-complete mode with all clones at a fixpoint.
    Holds { exhaustive: bool },
    Fails {
        hyp: Hypersubstitution,
        assignment: Assignment,
    },
}

impl HyperSatisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, HyperSatisfaction::Holds { .. })
    }
}

impl FiniteAlgebra {
    /// The `m`-ary clone, grown breadth-first from the projections by
    /// applying basic operations to operations already found. Stops after
    /// `max_ops` operations.
    pub fn clone_upto(&self, m: usize, max_ops: usize) -> CloneResult {
        assert!(m >= 1, "clone arity must be positive");
        let k = self.size();
        let total = k.pow(m as u32);
        let mut ops: Vec<TermOperation> = Vec::new();
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        for pos in 0..m {
            let table = projection_table(k, m, pos);
            if seen.insert(table.clone()) {
                ops.push(TermOperation {
                    arity: m,
                    table,
                    witness: Term::Var(pos as VarIndex + 1),
                });
            }
        }
        if ops.len() > max_ops {
            ops.truncate(max_ops);
            return CloneResult {
                arity: m,
                operations: ops,
                complete: false,
            };
        }
        let mut newest_start = 0;
        loop {
            let known = ops.len();
            let mut fresh: Vec<TermOperation> = Vec::new();
            for (op_index, &n) in self.arities.iter().enumerate() {
                let op = OpId(op_index as u32);
                let table = self.table(op);
                let mut idx = vec![0usize; n];
                let mut buf = vec![0 as Elem; total];
                loop {
                    if idx.iter().any(|&i| i >= newest_start) {
                        for (slot, out) in buf.iter_mut().enumerate() {
                            let at = idx
                                .iter()
                                .fold(0usize, |acc, &g| acc * k + ops[g].table[slot] as usize);
                            *out = table[at];
                        }
                        if !seen.contains(&buf) {
                            seen.insert(buf.clone());
                            if known + fresh.len() >= max_ops {
                                ops.extend(fresh);
                                return CloneResult {
                                    arity: m,
                                    operations: ops,
                                    complete: false,
                                };
                            }
                            fresh.push(TermOperation {
                                arity: m,
                                table: buf.clone(),
                                witness: Term::app(op, idx.iter().map(|&g| ops[g].witness.clone())),
                            });
                        }
                    }
                    if !advance(&mut idx, known) {
                        break;
                    }
                }
            }
            if fresh.is_empty() {
                return CloneResult {
                    arity: m,
                    operations: ops,
                    complete: true,
                };
            }
            newest_start = known;
            ops.extend(fresh);
        }
    }

    /// Whether `eq` holds in `A` under every hypersubstitution of the mode.
    /// Counterexamples are the first failing hypersubstitution in pool order
    /// (or clone order, first symbol slowest) with its first failing
    /// assignment.
    pub fn hypersatisfies(
        &self,
        sig: &Signature,
        eq: &Equation,
        mode: HyperMode<'_>,
    ) -> HyperSatisfaction {
        match mode {
            HyperMode::Pool(pool) => {
                for hyp in pool.hyps() {
                    let image = Equation::new(hyp.apply(&eq.lhs), hyp.apply(&eq.rhs));
                    if let Satisfaction::Fails(assignment) = self.satisfies(&image) {
                        return HyperSatisfaction::Fails {
                            hyp: hyp.clone(),
                            assignment,
                        };
                    }
                }
                HyperSatisfaction::Holds { exhaustive: false }
            }
            HyperMode::CloneComplete { bound } => {
                let mut clones: HashMap<usize, CloneResult> = HashMap::new();
                for &n in &self.arities {
                    clones
                        .entry(n)
                        .or_insert_with(|| self.clone_upto(n.max(1), bound.max(n)));
                }
                let exhaustive = clones.values().all(|c| c.complete);
                let members: Vec<&[TermOperation]> = self
                    .arities
                    .iter()
                    .map(|n| &clones[n].operations[..])
                    .collect();
                let mut choice = vec![0usize; members.len()];
                loop {
                    let derived = FiniteAlgebra {
                        size: self.size(),
                        arities: self.arities.clone(),
                        tables: choice
                            .iter()
                            .zip(&members)
                            .map(|(&c, ms)| ms[c].table.clone().into())
                            .collect(),
                    };
                    if let Satisfaction::Fails(assignment) = derived.satisfies(eq) {
                        let images = choice
                            .iter()
                            .zip(&members)
                            .map(|(&c, ms)| ms[c].witness.clone())
                            .collect();
                        let hyp = Hypersubstitution::new(sig, images)
                            .expect("clone witnesses use only the symbol's variables");
                        return HyperSatisfaction::Fails { hyp, assignment };
                    }
                    if !advance_mixed(&mut choice, &members) {
                        return HyperSatisfaction::Holds { exhaustive };
                    }
                }
            }
        }
    }
}

// odometer over 0..limit, last position fastest
fn advance(idx: &mut [usize], limit: usize) -> bool {
    for i in idx.iter_mut().rev() {
        *i += 1;
        if *i < limit {
            return true;
        }
        *i = 0;
    }
    false
}

fn advance_mixed(idx: &mut [usize], members: &[&[TermOperation]]) -> bool {
    for (i, ms) in idx.iter_mut().zip(members).rev() {
        *i += 1;
        if *i < ms.len() {
            return true;
        }
        *i = 0;
    }
    false
}
