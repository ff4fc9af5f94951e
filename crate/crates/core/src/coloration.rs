//! Colorations: rules assigning a color to every operation-symbol occurrence
//! of every non-variable term.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::rank::term_rank;
use crate::term::{Address, OpId, Signature, Term, TermError};

/// Colors are plain naturals; 0 is a valid color.
pub type Color = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorationError {
    #[error("table entry for a term with {expected} addresses lists {found} colors")]
    TableLength { expected: usize, found: usize },
    #[error("table entries must be non-variable terms")]
    TableVariable,
    #[error("symbol `{0}` needs arity at least 2 for the non-conjugacy coloration")]
    ArityTooSmall(String),
}

/// The colors a rule gives to one term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermColoring {
    /// Variables have no addresses.
    Empty,
    /// Every address gets the same color.
    Uniform(Color),
    /// One color per address, in preorder.
    PerAddress(Vec<Color>),
}

impl TermColoring {
    pub fn uniform(&self) -> Option<Color> {
        match self {
            TermColoring::Uniform(c) => Some(*c),
            _ => None,
        }
    }

    /// Color of the `i`-th address in preorder.
    pub fn at(&self, i: usize) -> Color {
        match self {
            TermColoring::Empty => unreachable!("variables have no addresses"),
            TermColoring::Uniform(c) => *c,
            TermColoring::PerAddress(cs) => cs[i],
        }
    }

    pub fn colors(&self) -> BTreeSet<Color> {
        match self {
            TermColoring::Empty => BTreeSet::new(),
            TermColoring::Uniform(c) => BTreeSet::from([*c]),
            TermColoring::PerAddress(cs) => cs.iter().copied().collect(),
        }
    }

    fn normalized(colors: Vec<Color>) -> TermColoring {
        match colors.first() {
            None => TermColoring::Empty,
            Some(&c) if colors.iter().all(|&d| d == c) => TermColoring::Uniform(c),
            Some(_) => TermColoring::PerAddress(colors),
        }
    }
}

/// A computable coloration of all terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorationRule {
    /// Every address of every term gets `c`.
    Uniform(Color),
    /// 1 on terms that start and end with the same variable, 2 otherwise.
    RbFirstLast,
    /// `inside` on every address of `term`, `outside` on all other terms.
    Singleton {
        term: Term,
        inside: Color,
        outside: Color,
    },
    /// On `term` the root gets `root` and its other addresses `rest`; all
    /// other terms are uniformly `other`.
    LeftmostSpecial {
        term: Term,
        root: Color,
        rest: Color,
        other: Color,
    },
    /// Uniformly the rank of the term in the canonical term enumeration.
    Enumeration(Signature),
    /// Terms in a single variable take the inner rule's colors; every other
    /// term is uniformly 1.
    OneVariableSplit(Box<ColorationRule>),
    /// `equal` on every address of `term`, `other` elsewhere.
    TermEquals {
        term: Term,
        equal: Color,
        other: Color,
    },
    /// 0 on `f(f(x1..x1), x2..x2)` and `f(f(x1..x1), x1..x1)`, 1 on the
    /// fundamental term `f(x1..xn)` and on every other term.
    NonConjugacy { op: OpId, s: Term, t: Term },
    /// Explicit per-address colors (preorder) for finitely many terms and a
    /// uniform default for the rest.
    Table {
        entries: BTreeMap<Term, Vec<Color>>,
        default: Color,
    },
}

impl ColorationRule {
    pub fn singleton(term: Term, inside: Color, outside: Color) -> Self {
        ColorationRule::Singleton {
            term,
            inside,
            outside,
        }
    }

    pub fn leftmost_special(term: Term, root: Color, rest: Color, other: Color) -> Self {
        ColorationRule::LeftmostSpecial {
            term,
            root,
            rest,
            other,
        }
    }

    pub fn term_equals(term: Term, equal: Color, other: Color) -> Self {
        ColorationRule::TermEquals { term, equal, other }
    }

    pub fn one_variable_split(inner: ColorationRule) -> Self {
        ColorationRule::OneVariableSplit(Box::new(inner))
    }

    /// The three-clause coloration used to show that colored closure and
    /// colored derived algebras do not form a conjugate pair.
    pub fn non_conjugacy(sig: &Signature, op: OpId) -> Result<Self, ColorationError> {
        let n = sig.arity(op);
        if n < 2 {
            return Err(ColorationError::ArityTooSmall(sig.name(op).to_string()));
        }
        let inner = Term::app(op, (0..n).map(|_| Term::Var(1)));
        let with = |v: u32| {
            Term::app(
                op,
                std::iter::once(inner.clone()).chain((1..n).map(|_| Term::Var(v))),
            )
        };
        Ok(ColorationRule::NonConjugacy {
            op,
            s: with(2),
            t: with(1),
        })
    }

    pub fn table(
        entries: BTreeMap<Term, Vec<Color>>,
        default: Color,
    ) -> Result<Self, ColorationError> {
        for (t, colors) in &entries {
            if t.is_var() {
                return Err(ColorationError::TableVariable);
            }
            if colors.len() != t.op_count() {
                return Err(ColorationError::TableLength {
                    expected: t.op_count(),
                    found: colors.len(),
                });
            }
        }
        Ok(ColorationRule::Table { entries, default })
    }

    /// The coloration `α_t` of `term`.
    pub fn coloring(&self, term: &Term) -> TermColoring {
        if term.is_var() {
            return TermColoring::Empty;
        }
        use ColorationRule::*;
        match self {
            Uniform(c) => TermColoring::Uniform(*c),
            RbFirstLast => {
                TermColoring::Uniform(if term.first_variable() == term.last_variable() {
                    1
                } else {
                    2
                })
            }
            Singleton {
                term: s,
                inside,
                outside,
            } => TermColoring::Uniform(if term == s { *inside } else { *outside }),
            LeftmostSpecial {
                term: s,
                root,
                rest,
                other,
            } => {
                if term == s {
                    let n = term.op_count();
                    let colors = (0..n).map(|i| if i == 0 { *root } else { *rest }).collect();
                    TermColoring::normalized(colors)
                } else {
                    TermColoring::Uniform(*other)
                }
            }
            Enumeration(sig) => {
                TermColoring::Uniform(term_rank(sig, term).min(Color::MAX as u128) as Color)
            }
            OneVariableSplit(inner) => {
                let first = term.first_variable();
                if term.preorder().filter_map(Term::as_var).all(|v| v == first) {
                    inner.coloring(term)
                } else {
                    TermColoring::Uniform(1)
                }
            }
            TermEquals {
                term: s,
                equal,
                other,
            } => TermColoring::Uniform(if term == s { *equal } else { *other }),
            NonConjugacy { s, t, .. } => {
                TermColoring::Uniform(if term == s || term == t { 0 } else { 1 })
            }
            Table { entries, default } => match entries.get(term) {
                Some(colors) => TermColoring::normalized(colors.clone()),
                None => TermColoring::Uniform(*default),
            },
        }
    }

    /// The color of the operation symbol at `address` in `term`.
    pub fn color_of(&self, term: &Term, address: &Address) -> Result<Color, TermError> {
        let index = term
            .addresses()
            .iter()
            .position(|a| a == address)
            .ok_or_else(|| TermError::InvalidAddress(address.clone()))?;
        Ok(self.coloring(term).at(index))
    }

    /// `Some(n)` when every address of `term` has color `n`; `None` for
    /// variables and mixed colorings.
    pub fn uniform_color(&self, term: &Term) -> Option<Color> {
        self.coloring(term).uniform()
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> RuleDisplay<'a> {
        RuleDisplay { rule: self, sig }
    }
}

/// Renders a rule in the command-line spec syntax where one exists.
pub struct RuleDisplay<'a> {
    rule: &'a ColorationRule,
    sig: &'a Signature,
}

impl fmt::Display for RuleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ColorationRule::*;
        let sig = self.sig;
        match self.rule {
            Uniform(c) => write!(f, "uniform:{c}"),
            RbFirstLast => f.write_str("rb-firstlast"),
            Singleton {
                term,
                inside,
                outside,
            } => write!(f, "singleton:{}:{inside}:{outside}", term.display(sig)),
            LeftmostSpecial {
                term,
                root,
                rest,
                other,
            } => write!(
                f,
                "leftmost-special:{}:{root}:{rest}:{other}",
                term.display(sig)
            ),
            Enumeration(_) => f.write_str("enumeration"),
            OneVariableSplit(inner) => write!(f, "one-var-split:{}", inner.display(sig)),
            TermEquals { term, equal, other } => {
                write!(f, "term-equals:{}:{equal}:{other}", term.display(sig))
            }
            NonConjugacy { op, .. } => write!(f, "prop63:{}", sig.name(*op)),
            Table { entries, default } => {
                write!(f, "table[{} entries, default {default}]", entries.len())
            }
        }
    }
}
