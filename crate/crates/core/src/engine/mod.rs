//! Bounded versions of `Id`, `Mod`, the hypersubstitution closures and the
//! colored closures, plus solidity checks.
//!
//! Statements about all terms, all algebras or all hypersubstitutions are
//! computed here relative to a finite term universe,
//! a finite algebra catalog and a finite hypersubstitution pool. A reported
//! violation is always a genuine counterexample; the absence of one is
//! evidence within those bounds only.

mod closure;
mod profile;
mod solid;
mod varieties;

pub use closure::*;
pub use solid::*;
pub use varieties::*;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::enumerate::{count_up_to_depth, terms_up_to_depth};
use crate::term::{Equation, Signature, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("{what}: {count} exceeds the limit of {limit}")]
    Limit {
        what: &'static str,
        count: u128,
        limit: u128,
    },
    #[error("algebra name `{0}` is used twice in the catalog")]
    DuplicateAlgebra(String),
    #[error("the model does not satisfy the base equation {0}")]
    BaseNotSatisfied(String),
}

impl EngineError {
    fn limit(what: &'static str, count: impl Into<u128>, limit: impl Into<u128>) -> Self {
        EngineError::Limit {
            what,
            count: count.into(),
            limit: limit.into(),
        }
    }
}

/// Resource limits for the bounded operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Terms in a universe (streamed checks) or in an expanded universe.
    pub max_terms: u128,
    /// Equations materialized in one equation set.
    pub max_equations: usize,
    /// Multi-hypersubstitutions tried for a single equation.
    pub max_rho: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_terms: 20_000_000,
            max_equations: 2_000_000,
            max_rho: 1_000_000,
        }
    }
}

/// All terms of depth at most `max_depth` over `x1..x_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermUniverse {
    pub sig: Signature,
    pub max_depth: usize,
    pub vars: u32,
}

impl TermUniverse {
    pub fn new(sig: Signature, max_depth: usize, vars: u32) -> Self {
        TermUniverse {
            sig,
            max_depth,
            vars,
        }
    }

    pub fn count(&self) -> u128 {
        count_up_to_depth(&self.sig, self.vars, self.max_depth)
    }

    /// The terms in ascending term order.
    pub fn terms(&self, limits: &Limits) -> Result<Vec<Term>, EngineError> {
        let count = self.count();
        if count > limits.max_terms {
            return Err(EngineError::limit("universe size", count, limits.max_terms));
        }
        Ok(terms_up_to_depth(&self.sig, self.vars, self.max_depth))
    }
}

impl fmt::Display for TermUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "terms of depth <= {} over x1..x{} ({} terms)",
            self.max_depth,
            self.vars,
            self.count()
        )
    }
}

/// A finite set of ordered equations. `s = t` and `t = s` are different
/// members.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquationSet(BTreeSet<Equation>);

impl EquationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, eq: Equation) -> bool {
        self.0.insert(eq)
    }

    pub fn contains(&self, eq: &Equation) -> bool {
        self.0.contains(eq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Equation> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &EquationSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &EquationSet) -> EquationSet {
        EquationSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &EquationSet) -> EquationSet {
        EquationSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn as_set(&self) -> &BTreeSet<Equation> {
        &self.0
    }
}

impl FromIterator<Equation> for EquationSet {
    fn from_iter<I: IntoIterator<Item = Equation>>(iter: I) -> Self {
        EquationSet(iter.into_iter().collect())
    }
}

impl Extend<Equation> for EquationSet {
    fn extend<I: IntoIterator<Item = Equation>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl IntoIterator for EquationSet {
    type Item = Equation;
    type IntoIter = std::collections::btree_set::IntoIter<Equation>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a EquationSet {
    type Item = &'a Equation;
    type IntoIter = std::collections::btree_set::Iter<'a, Equation>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Named finite algebras over one signature.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraCatalog {
    entries: Vec<(String, FiniteAlgebra)>,
}

impl AlgebraCatalog {
    pub fn new(entries: Vec<(String, FiniteAlgebra)>) -> Result<Self, EngineError> {
        let mut catalog = AlgebraCatalog::default();
        for (name, a) in entries {
            catalog.push(name, a)?;
        }
        Ok(catalog)
    }

    pub fn push(&mut self, name: impl Into<String>, a: FiniteAlgebra) -> Result<(), EngineError> {
        let name = name.into();
        if self.get(&name).is_some() {
            return Err(EngineError::DuplicateAlgebra(name));
        }
        self.entries.push((name, a));
        Ok(())
    }

    /// Adds `a` unless an algebra with identical tables is present.
    /// Returns whether it was added.
    pub fn push_distinct(&mut self, name: impl Into<String>, a: FiniteAlgebra) -> bool {
        let name = name.into();
        if self.entries.iter().any(|(n, b)| *b == a || *n == name) {
            return false;
        }
        self.entries.push((name, a));
        true
    }

    pub fn get(&self, name: &str) -> Option<&FiniteAlgebra> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &FiniteAlgebra)> {
        self.entries.iter().map(|(n, a)| (n.as_str(), a))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn algebras(&self) -> impl Iterator<Item = &FiniteAlgebra> {
        self.entries.iter().map(|(_, a)| a)
    }

    /// Whether both catalogs hold the same algebras up to naming and order.
    pub fn same_tables(&self, other: &AlgebraCatalog) -> bool {
        self.algebras().all(|a| other.algebras().any(|b| a == b))
            && other.algebras().all(|b| self.algebras().any(|a| a == b))
    }
}
