//! Signatures, terms, Dewey addresses and equations.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Index of a variable: `Var(3)` is `x3`. Indices start at 1.
pub type VarIndex = u32;

/// Position of an operation symbol inside its [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpId(pub u32);

impl OpId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate operation symbol `{0}`")]
    Duplicate(String),
    #[error("operation symbol name must be a nonempty identifier, got `{0}`")]
    BadName(String),
    #[error("operation symbol `{0}` has arity 0; nullary symbols are not supported")]
    Nullary(String),
    #[error("a signature needs at least one operation symbol")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("address {0} does not exist in the term")]
    InvalidAddress(Address),
    #[error("symbol `{symbol}` expects {expected} arguments, found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("symbol id {0} is not part of the signature")]
    UnknownOp(u32),
    #[error("variable index 0 is not allowed; variables are x1, x2, ...")]
    ZeroVariable,
}

/// An ordered list of operation symbols with positive arities (a type).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl Signature {
    pub fn new<S: Into<String>>(
        symbols: impl IntoIterator<Item = (S, usize)>,
    ) -> Result<Self, SignatureError> {
        let mut out: Vec<Symbol> = Vec::new();
        for (name, arity) in symbols {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(SignatureError::BadName(name));
            }
            if arity == 0 {
                return Err(SignatureError::Nullary(name));
            }
            if out.iter().any(|s| s.name == name) {
                return Err(SignatureError::Duplicate(name));
            }
            out.push(Symbol { name, arity });
        }
        if out.is_empty() {
            return Err(SignatureError::Empty);
        }
        Ok(Signature { symbols: out })
    }

    /// Type (2) with the single binary symbol `f`.
    pub fn binary() -> Self {
        Signature {
            symbols: vec![Symbol {
                name: "f".to_string(),
                arity: 2,
            }],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn ops(&self) -> impl Iterator<Item = OpId> + '_ {
        (0..self.symbols.len() as u32).map(OpId)
    }

    pub fn arity(&self, op: OpId) -> usize {
        self.symbols[op.index()].arity
    }

    pub fn name(&self, op: OpId) -> &str {
        &self.symbols[op.index()].name
    }

    pub fn lookup(&self, name: &str) -> Option<OpId> {
        self.symbols
            .iter()
            .position(|s| s.name == name)
            .map(|i| OpId(i as u32))
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    /// `f(x1, ..., xn)` for the symbol `op`.
    pub fn fundamental_term(&self, op: OpId) -> Term {
        Term::app(op, (1..=self.arity(op) as VarIndex).map(Term::Var))
    }

    /// Checks that `term` only uses symbols of this signature with their
    /// declared arities and that every variable index is positive.
    pub fn check(&self, term: &Term) -> Result<(), TermError> {
        match term {
            Term::Var(0) => Err(TermError::ZeroVariable),
            Term::Var(_) => Ok(()),
            Term::App(op, args) => {
                let sym = self
                    .symbols
                    .get(op.index())
                    .ok_or(TermError::UnknownOp(op.0))?;
                if sym.arity != args.len() {
                    return Err(TermError::ArityMismatch {
                        symbol: sym.name.clone(),
                        expected: sym.arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check(a))
            }
        }
    }
}

/// A term: a variable or an operation symbol applied to as many terms as its
/// arity. Children are reference counted so substitution can share them.
// The derived hash is structural, which agrees with the equality below.
#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Clone, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(VarIndex),
    App(OpId, Arc<[Term]>),
}

// Equality is structural. Results of repeated hypersubstitution share
// subterms and can be exponentially larger as trees than as graphs, so
// after a node budget the comparison switches to remembering pairs of
// shared children already found equal.
impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        let mut budget = 1usize << 12;
        match eq_bounded(self, other, &mut budget) {
            Some(r) => r,
            None => eq_shared(self, other, &mut HashSet::new()),
        }
    }
}

fn eq_bounded(a: &Term, b: &Term, budget: &mut usize) -> Option<bool> {
    match (a, b) {
        (Term::Var(i), Term::Var(j)) => Some(i == j),
        (Term::App(f, x), Term::App(g, y)) => {
            if f != g || x.len() != y.len() {
                return Some(false);
            }
            if Arc::ptr_eq(x, y) {
                return Some(true);
            }
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            for (p, q) in x.iter().zip(y.iter()) {
                if !eq_bounded(p, q, budget)? {
                    return Some(false);
                }
            }
            Some(true)
        }
        _ => Some(false),
    }
}

fn eq_shared(a: &Term, b: &Term, seen: &mut HashSet<(usize, usize)>) -> bool {
    match (a, b) {
        (Term::Var(i), Term::Var(j)) => i == j,
        (Term::App(f, x), Term::App(g, y)) => {
            if f != g || x.len() != y.len() {
                return false;
            }
            if Arc::ptr_eq(x, y) {
                return true;
            }
            let key = (
                Arc::as_ptr(x) as *const Term as usize,
                Arc::as_ptr(y) as *const Term as usize,
            );
            if seen.contains(&key) {
                return true;
            }
            let equal = x.iter().zip(y.iter()).all(|(p, q)| eq_shared(p, q, seen));
            if equal {
                seen.insert(key);
            }
            equal
        }
        _ => false,
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(op, args) => {
                write!(f, "#{}(", op.0)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a:?}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Term {
    pub fn var(index: VarIndex) -> Term {
        Term::Var(index)
    }

    pub fn app(op: OpId, args: impl IntoIterator<Item = Term>) -> Term {
        Term::App(op, args.into_iter().collect())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<VarIndex> {
        match self {
            Term::Var(i) => Some(*i),
            Term::App(..) => None,
        }
    }

    /// Variables have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Number of nodes, variables included.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Number of operation-symbol occurrences, i.e. `|addresses(t)|`.
    pub fn op_count(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::op_count).sum::<usize>(),
        }
    }

    /// Preorder traversal of all nodes.
    pub fn preorder(&self) -> Preorder<'_> {
        Preorder { stack: vec![self] }
    }

    pub fn variables(&self) -> BTreeSet<VarIndex> {
        self.preorder().filter_map(Term::as_var).collect()
    }

    pub fn max_var(&self) -> VarIndex {
        self.preorder().filter_map(Term::as_var).max().unwrap_or(0)
    }

    /// Leftmost variable of the written term.
    pub fn first_variable(&self) -> VarIndex {
        let mut t = self;
        loop {
            match t {
                Term::Var(i) => return *i,
                Term::App(_, args) => t = &args[0],
            }
        }
    }

    /// Rightmost variable of the written term.
    pub fn last_variable(&self) -> VarIndex {
        let mut t = self;
        loop {
            match t {
                Term::Var(i) => return *i,
                Term::App(_, args) => t = &args[args.len() - 1],
            }
        }
    }

    /// Addresses of all operation-symbol occurrences in preorder.
    pub fn addresses(&self) -> Vec<Address> {
        fn walk(t: &Term, path: &mut Vec<u32>, out: &mut Vec<Address>) {
            if let Term::App(_, args) = t {
                out.push(Address(path.clone()));
                for (i, a) in args.iter().enumerate() {
                    path.push(i as u32 + 1);
                    walk(a, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// The subterm reached by following `address`. Paths that end on a
    /// variable leaf are accepted too.
    pub fn subterm_at(&self, address: &Address) -> Result<&Term, TermError> {
        let mut t = self;
        for &step in address.path() {
            match t {
                Term::App(_, args) if step >= 1 && (step as usize) <= args.len() => {
                    t = &args[step as usize - 1];
                }
                _ => return Err(TermError::InvalidAddress(address.clone())),
            }
        }
        Ok(t)
    }

    /// Simultaneous substitution; unbound variables stay fixed.
    pub fn substitute(&self, binding: &BTreeMap<VarIndex, Term>) -> Term {
        self.substitute_with(&|i| binding.get(&i).cloned())
    }

    /// Replaces `x_i` by `args[i-1]`; variables beyond `args` stay fixed.
    /// This is the composition `self(args[0], ..., args[n-1])`.
    pub fn instantiate(&self, args: &[Term]) -> Term {
        match self {
            Term::Var(i) => match args.get((*i as usize).wrapping_sub(1)) {
                Some(t) => t.clone(),
                None => self.clone(),
            },
            Term::App(op, children) => Term::app(*op, children.iter().map(|c| c.instantiate(args))),
        }
    }

    pub fn substitute_with(&self, f: &dyn Fn(VarIndex) -> Option<Term>) -> Term {
        match self {
            Term::Var(i) => f(*i).unwrap_or_else(|| self.clone()),
            Term::App(op, args) => Term::app(*op, args.iter().map(|a| a.substitute_with(f))),
        }
    }

    /// Renders with `x1, x2, ...` variables; this is the round-trippable form.
    pub fn display<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay {
            term: self,
            sig,
            named: false,
        }
    }

    /// Renders variables 1..=6 as `x, y, z, w, u, v`.
    pub fn display_named<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay {
            term: self,
            sig,
            named: true,
        }
    }
}

pub struct Preorder<'a> {
    stack: Vec<&'a Term>,
}

impl<'a> Iterator for Preorder<'a> {
    type Item = &'a Term;

    fn next(&mut self) -> Option<&'a Term> {
        let t = self.stack.pop()?;
        if let Term::App(_, args) = t {
            self.stack.extend(args.iter().rev());
        }
        Some(t)
    }
}

/// Letter names accepted for the first variables, in index order.
pub const VARIABLE_ALIASES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

pub struct TermDisplay<'a> {
    term: &'a Term,
    sig: &'a Signature,
    named: bool,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Term, sig: &Signature, named: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Term::Var(i) => match VARIABLE_ALIASES.get((*i as usize).wrapping_sub(1)) {
                    Some(alias) if named => f.write_str(alias),
                    _ => write!(f, "x{i}"),
                },
                Term::App(op, args) => {
                    match sig.symbols.get(op.index()) {
                        Some(s) => f.write_str(&s.name)?,
                        None => write!(f, "#{}", op.0)?,
                    }
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        go(a, sig, named, f)?;
                    }
                    f.write_str(")")
                }
            }
        }
        go(self.term, self.sig, self.named, f)
    }
}

/// A Dewey position: 1-based child indices from the root. The empty path is
/// the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(pub Vec<u32>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn path(&self) -> &[u32] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: u32) -> Address {
        let mut p = self.0.clone();
        p.push(i);
        Address(p)
    }

    pub fn parent(&self) -> Option<Address> {
        let (_, init) = self.0.split_last()?;
        Some(Address(init.to_vec()))
    }
}

impl From<Vec<u32>> for Address {
    fn from(path: Vec<u32>) -> Self {
        Address(path)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// An ordered pair `lhs ≈ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn flipped(&self) -> Equation {
        Equation::new(self.rhs.clone(), self.lhs.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn variables(&self) -> BTreeSet<VarIndex> {
        let mut v = self.lhs.variables();
        v.extend(self.rhs.variables());
        v
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> EquationDisplay<'a> {
        EquationDisplay {
            eq: self,
            sig,
            named: false,
        }
    }

    pub fn display_named<'a>(&'a self, sig: &'a Signature) -> EquationDisplay<'a> {
        EquationDisplay {
            eq: self,
            sig,
            named: true,
        }
    }
}

pub struct EquationDisplay<'a> {
    eq: &'a Equation,
    sig: &'a Signature,
    named: bool,
}

impl fmt::Display for EquationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = if self.named {
            (
                self.eq.lhs.display_named(self.sig),
                self.eq.rhs.display_named(self.sig),
            )
        } else {
            (self.eq.lhs.display(self.sig), self.eq.rhs.display(self.sig))
        };
        write!(f, "{l} = {r}")
    }
}
