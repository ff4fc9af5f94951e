//! Finite algebras, term evaluation and identity checking.

mod builtin;
mod clone;

pub use builtin::*;
pub use clone::{CloneResult, HyperMode, HyperSatisfaction, TermOperation};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coloration::ColorationRule;
use crate::hyp::Hypersubstitution;
use crate::mhyp::MultiHypersubstitution;
use crate::term::{Equation, OpId, Signature, Term, VarIndex};

/// Carrier elements are `0..k`, `k <= 256`.
pub type Elem = u8;

pub const MAX_CARRIER: usize = 256;

// Beyond this many assignments tables are not materialized.
const TABLE_LIMIT: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier size must be between 1 and {MAX_CARRIER}, got {0}")]
    CarrierSize(usize),
    #[error("expected {expected} operation tables, got {found}")]
    TableCount { expected: usize, found: usize },
    #[error("table of `{symbol}` needs {expected} entries, got {found}")]
    TableLength {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("table of `{symbol}` contains {value}, outside the carrier 0..{size}")]
    EntryOutOfRange {
        symbol: String,
        value: usize,
        size: usize,
    },
    #[error("variable x{0} has no value in the assignment")]
    Unassigned(VarIndex),
    #[error("assigned value {value} is outside the carrier 0..{size}")]
    ValueOutOfRange { value: Elem, size: usize },
}

/// A finite algebra on `{0, ..., k-1}` with one dense operation table per
/// symbol. Tables are row-major: the last argument varies fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    size: usize,
    arities: Vec<usize>,
    tables: Vec<Arc<[Elem]>>,
}

/// Values for variables, listed as `(variable, value)` in increasing
/// variable order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<(VarIndex, Elem)>);

impl Assignment {
    pub fn get(&self, var: VarIndex) -> Option<Elem> {
        self.0.iter().find(|(v, _)| *v == var).map(|(_, e)| *e)
    }

    /// Dense form: position `i` holds the value of `x{i+1}`; unassigned
    /// variables below the largest assigned one get 0.
    pub fn to_dense(&self) -> Vec<Elem> {
        let n = self.0.iter().map(|(v, _)| *v).max().unwrap_or(0) as usize;
        let mut out = vec![0; n];
        for (v, e) in &self.0 {
            out[*v as usize - 1] = *e;
        }
        out
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{v}={e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfaction {
    Holds,
    /// The lexicographically first assignment on which the sides differ.
    Fails(Assignment),
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds)
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            Satisfaction::Holds => None,
            Satisfaction::Fails(a) => Some(a),
        }
    }
}

fn checked_pow(k: usize, n: usize) -> Option<usize> {
    k.checked_pow(n as u32)
}

impl FiniteAlgebra {
    pub fn new(sig: &Signature, size: usize, tables: Vec<Vec<Elem>>) -> Result<Self, AlgebraError> {
        if size == 0 || size > MAX_CARRIER {
            return Err(AlgebraError::CarrierSize(size));
        }
        if tables.len() != sig.len() {
            return Err(AlgebraError::TableCount {
                expected: sig.len(),
                found: tables.len(),
            });
        }
        for (op, table) in sig.ops().zip(&tables) {
            let expected = checked_pow(size, sig.arity(op)).unwrap_or(usize::MAX);
            if table.len() != expected {
                return Err(AlgebraError::TableLength {
                    symbol: sig.name(op).to_string(),
                    expected,
                    found: table.len(),
                });
            }
            if let Some(&bad) = table.iter().find(|&&e| e as usize >= size) {
                return Err(AlgebraError::EntryOutOfRange {
                    symbol: sig.name(op).to_string(),
                    value: bad as usize,
                    size,
                });
            }
        }
        Ok(FiniteAlgebra {
            size,
            arities: sig.symbols().iter().map(|s| s.arity).collect(),
            tables: tables.into_iter().map(Into::into).collect(),
        })
    }

    /// Tabulates `op(op_id, args)` for every symbol.
    pub fn from_fn(
        sig: &Signature,
        size: usize,
        op: impl Fn(OpId, &[Elem]) -> Elem,
    ) -> Result<Self, AlgebraError> {
        let tables = sig
            .ops()
            .map(|id| {
                let n = sig.arity(id);
                let mut args = vec![0 as Elem; n];
                let total = checked_pow(size, n).unwrap_or(0);
                let mut table = Vec::with_capacity(total);
                for idx in 0..total {
                    decode(idx, size, &mut args);
                    table.push(op(id, &args));
                }
                table
            })
            .collect();
        Self::new(sig, size, tables)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self, op: OpId) -> usize {
        self.arities[op.index()]
    }

    pub fn table(&self, op: OpId) -> &[Elem] {
        &self.tables[op.index()]
    }

    pub fn tables(&self) -> impl Iterator<Item = &[Elem]> {
        self.tables.iter().map(|t| &t[..])
    }

    pub fn apply(&self, op: OpId, args: &[Elem]) -> Elem {
        let k = self.size;
        let idx = args.iter().fold(0usize, |acc, &a| acc * k + a as usize);
        self.tables[op.index()][idx]
    }

    /// Value of `term` where `x_i` takes `assignment[i-1]`.
    pub fn eval(&self, term: &Term, assignment: &[Elem]) -> Result<Elem, AlgebraError> {
        if let Some(&value) = assignment.iter().find(|&&e| e as usize >= self.size) {
            return Err(AlgebraError::ValueOutOfRange {
                value,
                size: self.size,
            });
        }
        self.eval_unchecked(term, assignment)
    }

    fn eval_unchecked(&self, term: &Term, assignment: &[Elem]) -> Result<Elem, AlgebraError> {
        match term {
            Term::Var(i) => assignment
                .get((*i as usize).wrapping_sub(1))
                .copied()
                .ok_or(AlgebraError::Unassigned(*i)),
            Term::App(op, args) => {
                let mut vals = [0 as Elem; 8];
                let mut heap = Vec::new();
                let vals: &mut [Elem] = if args.len() <= 8 {
                    &mut vals[..args.len()]
                } else {
                    heap.resize(args.len(), 0);
                    &mut heap
                };
                for (slot, a) in vals.iter_mut().zip(args.iter()) {
                    *slot = self.eval_unchecked(a, assignment)?;
                }
                Ok(self.apply(*op, vals))
            }
        }
    }

    /// The term operation of `term` as a table over the listed variables:
    /// entry `i` is the value at the assignment whose base-`k` digits
    /// (first variable most significant) spell `i`.
    ///
    /// Panics if `term` uses a variable that is not listed.
    pub fn table_over(&self, term: &Term, vars: &[VarIndex]) -> Vec<Elem> {
        let total = checked_pow(self.size, vars.len()).expect("assignment count overflows");
        let mut memo: HashMap<usize, Arc<[Elem]>> = HashMap::new();
        let out = self.table_rec(term, vars, total, &mut memo);
        out.to_vec()
    }

    /// `table_over` with the variables `x1..x_n`.
    pub fn term_table(&self, term: &Term, n: usize) -> Vec<Elem> {
        let vars: Vec<VarIndex> = (1..=n as VarIndex).collect();
        self.table_over(term, &vars)
    }

    fn table_rec(
        &self,
        term: &Term,
        vars: &[VarIndex],
        total: usize,
        memo: &mut HashMap<usize, Arc<[Elem]>>,
    ) -> Arc<[Elem]> {
        match term {
            Term::Var(v) => {
                let pos = vars
                    .iter()
                    .position(|x| x == v)
                    .unwrap_or_else(|| panic!("x{v} is not among the tabulated variables"));
                projection_table(self.size, vars.len(), pos).into()
            }
            Term::App(op, args) => {
                let key = Arc::as_ptr(args) as *const Term as usize;
                let shared = Arc::strong_count(args) > 1;
                if shared {
                    if let Some(t) = memo.get(&key) {
                        return t.clone();
                    }
                }
                let children: Vec<Arc<[Elem]>> = args
                    .iter()
                    .map(|a| self.table_rec(a, vars, total, memo))
                    .collect();
                let table = self.table(*op);
                let k = self.size;
                let out: Arc<[Elem]> = (0..total)
                    .map(|i| {
                        let idx = children
                            .iter()
                            .fold(0usize, |acc, c| acc * k + c[i] as usize);
                        table[idx]
                    })
                    .collect();
                if shared {
                    memo.insert(key, out.clone());
                }
                out
            }
        }
    }

    /// Whether `lhs` and `rhs` induce the same term operation.
    pub fn satisfies(&self, eq: &Equation) -> Satisfaction {
        let vars: Vec<VarIndex> = eq.variables().into_iter().collect();
        let total = checked_pow(self.size, vars.len()).filter(|&t| t <= TABLE_LIMIT);
        let mut digits = vec![0 as Elem; vars.len()];
        match total {
            Some(total) => {
                let l = self.table_over(&eq.lhs, &vars);
                let r = self.table_over(&eq.rhs, &vars);
                match (0..total).find(|&i| l[i] != r[i]) {
                    None => Satisfaction::Holds,
                    Some(i) => {
                        decode(i, self.size, &mut digits);
                        Satisfaction::Fails(Assignment(vars.iter().copied().zip(digits).collect()))
                    }
                }
            }
            None => {
                // too many assignments to tabulate: walk them one by one
                let n = *vars.last().unwrap_or(&0) as usize;
                let mut dense = vec![0 as Elem; n];
                loop {
                    for (v, d) in vars.iter().zip(&digits) {
                        dense[*v as usize - 1] = *d;
                    }
                    let l = self
                        .eval_unchecked(&eq.lhs, &dense)
                        .expect("all variables assigned");
                    let r = self
                        .eval_unchecked(&eq.rhs, &dense)
                        .expect("all variables assigned");
                    if l != r {
                        return Satisfaction::Fails(Assignment(
                            vars.iter().copied().zip(digits).collect(),
                        ));
                    }
                    if !increment(&mut digits, self.size) {
                        return Satisfaction::Holds;
                    }
                }
            }
        }
    }

    pub fn satisfies_all<'a>(&self, eqs: impl IntoIterator<Item = &'a Equation>) -> bool {
        eqs.into_iter().all(|e| self.satisfies(e).holds())
    }

    /// `σ(A)`: the same carrier with each `f` interpreted as `σ(f)^A`.
    pub fn derived(&self, hyp: &Hypersubstitution) -> FiniteAlgebra {
        let tables = hyp
            .images()
            .iter()
            .zip(&self.arities)
            .map(|(img, &n)| self.term_table(img, n).into())
            .collect();
        FiniteAlgebra {
            size: self.size,
            arities: self.arities.clone(),
            tables,
        }
    }

    /// `ρ[A]`: each `f` is interpreted as `ρ̂_C[f(x1..xn)]^A`.
    pub fn derived_mhyp(
        &self,
        sig: &Signature,
        rho: &MultiHypersubstitution,
        rule: &ColorationRule,
    ) -> FiniteAlgebra {
        let tables = sig
            .ops()
            .map(|op| {
                let image = rho.apply(rule, &sig.fundamental_term(op));
                self.term_table(&image, sig.arity(op)).into()
            })
            .collect();
        FiniteAlgebra {
            size: self.size,
            arities: self.arities.clone(),
            tables,
        }
    }
}

/// Table of `x_{pos+1}` over `n` variables on a `k`-element carrier.
pub(crate) fn projection_table(k: usize, n: usize, pos: usize) -> Vec<Elem> {
    let total = k.pow(n as u32);
    let stride = k.pow((n - 1 - pos) as u32);
    (0..total).map(|i| ((i / stride) % k) as Elem).collect()
}

/// Base-`k` digits of `idx`, most significant first.
pub(crate) fn decode(mut idx: usize, k: usize, digits: &mut [Elem]) {
    for d in digits.iter_mut().rev() {
        *d = (idx % k) as Elem;
        idx /= k;
    }
}

fn increment(digits: &mut [Elem], k: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if (*d as usize) + 1 < k {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}
