//! Hypersubstitutions and their extension to terms.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::enumerate::{count_up_to_depth, images_for};
use crate::term::{OpId, Signature, Term, TermError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypError {
    #[error("expected {expected} images (one per symbol), got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("image of `{symbol}` uses x{var}, but the symbol only has arity {arity}")]
    VariableOutOfRange {
        symbol: String,
        var: u32,
        arity: usize,
    },
    #[error("image of `{symbol}` is not a well-formed term: {source}")]
    Malformed {
        symbol: String,
        #[source]
        source: TermError,
    },
    #[error("unknown hypersubstitution name `{0}` (known: id, swap, proj-first, proj-last)")]
    UnknownName(String),
    #[error("`swap` needs every symbol to be binary, but `{0}` is not")]
    SwapNotBinary(String),
    #[error("a pool must contain the identity hypersubstitution")]
    PoolWithoutIdentity,
    #[error("duplicate pool member name `{0}`")]
    DuplicatePoolName(String),
    #[error("pool would hold {count} hypersubstitutions, more than the limit {limit}")]
    PoolTooLarge { count: u128, limit: usize },
}

/// A map from each operation symbol to a term of the same arity, stored as
/// one image per symbol in signature order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypersubstitution {
    images: Arc<[Term]>,
}

impl fmt::Debug for Hypersubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images.iter()).finish()
    }
}

impl Hypersubstitution {
    pub fn new(sig: &Signature, images: Vec<Term>) -> Result<Self, HypError> {
        if images.len() != sig.len() {
            return Err(HypError::WrongLength {
                expected: sig.len(),
                found: images.len(),
            });
        }
        for (op, image) in sig.ops().zip(&images) {
            let symbol = sig.name(op).to_string();
            sig.check(image).map_err(|source| HypError::Malformed {
                symbol: symbol.clone(),
                source,
            })?;
            let arity = sig.arity(op);
            let var = image.max_var();
            if var as usize > arity {
                return Err(HypError::VariableOutOfRange { symbol, var, arity });
            }
        }
        Ok(Hypersubstitution {
            images: images.into(),
        })
    }

    /// `f ↦ f(x1, ..., xn)` for every symbol.
    pub fn identity(sig: &Signature) -> Self {
        Hypersubstitution {
            images: sig.ops().map(|op| sig.fundamental_term(op)).collect(),
        }
    }

    /// Sends every symbol to `x1`.
    pub fn proj_first(sig: &Signature) -> Self {
        Hypersubstitution {
            images: sig.ops().map(|_| Term::Var(1)).collect(),
        }
    }

    /// Sends every `n`-ary symbol to `x_n`.
    pub fn proj_last(sig: &Signature) -> Self {
        Hypersubstitution {
            images: sig
                .ops()
                .map(|op| Term::Var(sig.arity(op) as u32))
                .collect(),
        }
    }

    /// Sends every binary `f` to `f(x2, x1)`.
    pub fn swap(sig: &Signature) -> Result<Self, HypError> {
        let images = sig
            .ops()
            .map(|op| {
                if sig.arity(op) != 2 {
                    return Err(HypError::SwapNotBinary(sig.name(op).to_string()));
                }
                Ok(Term::app(op, [Term::Var(2), Term::Var(1)]))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Hypersubstitution {
            images: images.into(),
        })
    }

    /// Looks up one of the built-in hypersubstitutions: `id` (alias `xy`),
    /// `swap` (alias `yx`), `proj-first` (alias `x1`) and `proj-last`.
    pub fn named(name: &str, sig: &Signature) -> Result<Self, HypError> {
        match name {
            "id" | "identity" | "xy" => Ok(Self::identity(sig)),
            "swap" | "yx" => Self::swap(sig),
            "proj-first" | "x1" => Ok(Self::proj_first(sig)),
            "proj-last" => Ok(Self::proj_last(sig)),
            other => Err(HypError::UnknownName(other.to_string())),
        }
    }

    pub fn image(&self, op: OpId) -> &Term {
        &self.images[op.index()]
    }

    pub fn images(&self) -> &[Term] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, img)| match img {
            Term::App(op, args) => {
                op.index() == i
                    && args
                        .iter()
                        .enumerate()
                        .all(|(j, a)| *a == Term::Var(j as u32 + 1))
            }
            Term::Var(_) => false,
        })
    }

    /// The extension `σ̂`: variables are fixed and `f(t1..tn)` becomes
    /// `σ(f)(σ̂[t1], ..., σ̂[tn])`.
    pub fn apply(&self, term: &Term) -> Term {
        let mut memo = HashMap::new();
        self.apply_memo(term, &mut memo)
    }

    // Images share subterms, so repeated application would revisit them
    // exponentially often without the memo on shared child slices.
    fn apply_memo(&self, term: &Term, memo: &mut HashMap<usize, Term>) -> Term {
        match term {
            Term::Var(_) => term.clone(),
            Term::App(op, args) => {
                let shared = Arc::strong_count(args) > 1;
                let key = Arc::as_ptr(args) as *const Term as usize;
                if shared {
                    if let Some(t) = memo.get(&key) {
                        return t.clone();
                    }
                }
                let new_args: Vec<Term> = args.iter().map(|a| self.apply_memo(a, memo)).collect();
                let out = self.image(*op).instantiate(&new_args);
                if shared {
                    memo.insert(key, out.clone());
                }
                out
            }
        }
    }

    /// `self ∘_h other`: maps each `f` to `self̂[other(f)]`.
    pub fn compose(&self, other: &Hypersubstitution) -> Hypersubstitution {
        Hypersubstitution {
            images: other.images.iter().map(|img| self.apply(img)).collect(),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> HypDisplay<'a> {
        HypDisplay { hyp: self, sig }
    }
}

/// Renders as `f -> f(x2,x1); g -> x1`.
pub struct HypDisplay<'a> {
    hyp: &'a Hypersubstitution,
    sig: &'a Signature,
}

impl fmt::Display for HypDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, op) in self.sig.ops().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(
                f,
                "{} -> {}",
                self.sig.name(op),
                self.hyp.image(op).display(self.sig)
            )?;
        }
        Ok(())
    }
}

/// Every hypersubstitution whose images have depth at most `max_depth`, in
/// lexicographic order of the image tuple (symbol order, then term order).
pub fn enumerate_hyps(
    sig: &Signature,
    max_depth: usize,
    limit: usize,
) -> Result<Vec<Hypersubstitution>, HypError> {
    let mut count: u128 = 1;
    for op in sig.ops() {
        count = count.saturating_mul(count_up_to_depth(sig, sig.arity(op) as u32, max_depth));
    }
    if count > limit as u128 {
        return Err(HypError::PoolTooLarge { count, limit });
    }
    let per_symbol: Vec<Vec<Term>> = sig.ops().map(|op| images_for(sig, op, max_depth)).collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; per_symbol.len()];
    loop {
        let images: Arc<[Term]> = idx
            .iter()
            .zip(&per_symbol)
            .map(|(&i, imgs)| imgs[i].clone())
            .collect();
        out.push(Hypersubstitution { images });
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_symbol[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedHyp {
    pub name: String,
    pub hyp: Hypersubstitution,
}

/// A finite, ordered set of named hypersubstitutions that always contains the
/// identity. It stands in for the whole monoid wherever a check quantifies
/// over all hypersubstitutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypPool {
    members: Vec<NamedHyp>,
}

impl HypPool {
    pub fn new(members: Vec<NamedHyp>) -> Result<Self, HypError> {
        for (i, m) in members.iter().enumerate() {
            if members[..i].iter().any(|o| o.name == m.name) {
                return Err(HypError::DuplicatePoolName(m.name.clone()));
            }
        }
        if !members.iter().any(|m| m.hyp.is_identity()) {
            return Err(HypError::PoolWithoutIdentity);
        }
        Ok(HypPool { members })
    }

    /// Builds a pool from built-in names such as `["id", "proj-first"]`.
    pub fn from_names(sig: &Signature, names: &[&str]) -> Result<Self, HypError> {
        let members = names
            .iter()
            .map(|n| {
                Ok(NamedHyp {
                    name: n.to_string(),
                    hyp: Hypersubstitution::named(n, sig)?,
                })
            })
            .collect::<Result<Vec<_>, HypError>>()?;
        Self::new(members)
    }

    /// All hypersubstitutions with images of depth at most `max_depth`
    /// (`max_depth >= 1`, otherwise the identity is missing).
    pub fn enumerate(sig: &Signature, max_depth: usize, limit: usize) -> Result<Self, HypError> {
        let members = enumerate_hyps(sig, max_depth, limit)?
            .into_iter()
            .map(|hyp| NamedHyp {
                name: hyp.display(sig).to_string(),
                hyp,
            })
            .collect();
        Self::new(members)
    }

    pub fn members(&self) -> &[NamedHyp] {
        &self.members
    }

    pub fn hyps(&self) -> impl Iterator<Item = &Hypersubstitution> {
        self.members.iter().map(|m| &m.hyp)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// The identity member.
    pub fn identity(&self) -> &Hypersubstitution {
        self.hyps()
            .find(|h| h.is_identity())
            .expect("pools contain the identity")
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, hyp: &Hypersubstitution) -> bool {
        self.hyps().any(|h| h == hyp)
    }

    pub fn name_of(&self, hyp: &Hypersubstitution) -> Option<&str> {
        self.members
            .iter()
            .find(|m| &m.hyp == hyp)
            .map(|m| m.name.as_str())
    }

    /// Whether `σ1 ∘_h σ2` is again a member for all members `σ1, σ2`.
    pub fn is_closed_under_composition(&self) -> bool {
        self.hyps()
            .all(|a| self.hyps().all(|b| self.contains(&a.compose(b))))
    }
}
