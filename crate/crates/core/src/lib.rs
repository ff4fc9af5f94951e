//! Hypersubstitutions, colored terms and multi-hypersubstitutions over a
//! finite signature, with finite algebras and bounded closure operators for
//! checking identities, hyperidentities and colored solidity.

pub mod algebra;
pub mod coloration;
pub mod engine;
pub mod enumerate;
pub mod formats;
pub mod hyp;
pub mod mhyp;
pub mod parse;
pub mod random;
pub mod rank;
pub mod term;

pub use algebra::{
    AlgebraError, Assignment, CloneResult, Elem, FiniteAlgebra, HyperMode, HyperSatisfaction,
    Satisfaction, TermOperation,
};
pub use coloration::{Color, ColorationError, ColorationRule, TermColoring};
pub use engine::{
    AlgebraCatalog, EngineError, EquationSet, Iterated, Limits, SolidMode, SolidityReport,
    TermUniverse, Transform, Variety, Verdict, Violation,
};
pub use formats::FormatError;
pub use hyp::{HypError, HypPool, Hypersubstitution, NamedHyp};
pub use mhyp::MultiHypersubstitution;
pub use parse::{parse_equation, parse_signature, parse_term, ParseError};
pub use term::{Address, Equation, OpId, Signature, SignatureError, Term, TermError, VarIndex};
