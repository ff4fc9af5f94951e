//! Multi-hypersubstitutions and their extension to colored terms.

use std::collections::BTreeMap;

use crate::coloration::{Color, ColorationRule, TermColoring};
use crate::hyp::Hypersubstitution;
use crate::term::{Signature, Term};

/// A map from colors to hypersubstitutions with finite support: colors in
/// `table` map to their entry, every other color maps to `default`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiHypersubstitution {
    table: BTreeMap<Color, Hypersubstitution>,
    default: Hypersubstitution,
}

impl MultiHypersubstitution {
    pub fn new(default: Hypersubstitution) -> Self {
        MultiHypersubstitution {
            table: BTreeMap::new(),
            default,
        }
    }

    /// Empty table with the identity as default.
    pub fn identity(sig: &Signature) -> Self {
        Self::new(Hypersubstitution::identity(sig))
    }

    /// `ρ(c) = σ` for every color.
    pub fn constant(hyp: Hypersubstitution) -> Self {
        Self::new(hyp)
    }

    pub fn with(mut self, color: Color, hyp: Hypersubstitution) -> Self {
        self.table.insert(color, hyp);
        self
    }

    pub fn set(&mut self, color: Color, hyp: Hypersubstitution) {
        self.table.insert(color, hyp);
    }

    pub fn get(&self, color: Color) -> &Hypersubstitution {
        self.table.get(&color).unwrap_or(&self.default)
    }

    pub fn default_hyp(&self) -> &Hypersubstitution {
        &self.default
    }

    pub fn table(&self) -> &BTreeMap<Color, Hypersubstitution> {
        &self.table
    }

    /// `ρ̂_C[t]`. Uniformly colored terms go straight to `ρ(n)^[t]`.
    pub fn apply(&self, rule: &ColorationRule, term: &Term) -> Term {
        match rule.coloring(term) {
            TermColoring::Empty => term.clone(),
            TermColoring::Uniform(c) => self.get(c).apply(term),
            coloring => self.apply_colored(&coloring, term),
        }
    }

    /// `ρ̂_C[t]` evaluated address by address, without the uniform shortcut.
    pub fn apply_by_address(&self, rule: &ColorationRule, term: &Term) -> Term {
        let coloring = rule.coloring(term);
        self.apply_colored(&coloring, term)
    }

    /// Applies `ρ` to `term` under an explicit coloring of its addresses.
    /// Colors always refer to addresses of `term` itself, never to addresses
    /// of intermediate results.
    pub fn apply_colored(&self, coloring: &TermColoring, term: &Term) -> Term {
        fn go(
            rho: &MultiHypersubstitution,
            coloring: &TermColoring,
            t: &Term,
            next: &mut usize,
        ) -> Term {
            match t {
                Term::Var(_) => t.clone(),
                Term::App(op, args) => {
                    let color = coloring.at(*next);
                    *next += 1;
                    let new_args: Vec<Term> =
                        args.iter().map(|a| go(rho, coloring, a, next)).collect();
                    rho.get(color).image(*op).instantiate(&new_args)
                }
            }
        }
        go(self, coloring, term, &mut 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn sig() -> Signature {
        Signature::binary()
    }
    fn t(s: &str) -> Term {
        parse_term(s, &sig()).unwrap()
    }

    #[test]
    fn coloured_swap_example() {
        let s = t("f(y,f(y,x))");
        let rule = ColorationRule::leftmost_special(s.clone(), 0, 1, 0);
        let swap = Hypersubstitution::swap(&sig()).unwrap();
        let rho = MultiHypersubstitution::identity(&sig()).with(0, swap);
        assert_eq!(rho.apply(&rule, &t("f(f(x,y),y)")), s);
        assert_eq!(rho.apply(&rule, &s), t("f(f(y,x),y)"));
    }

    #[test]
    fn singleton_collapse() {
        let s = t("f(f(x,x),f(f(x,x),f(x,x)))");
        let rule = ColorationRule::singleton(s.clone(), 1, 0);
        let rho = MultiHypersubstitution::new(Hypersubstitution::proj_first(&sig()))
            .with(0, Hypersubstitution::identity(&sig()));
        assert_eq!(rho.apply(&rule, &s), t("x"));
        let other = t("f(f(x,y),f(x,x))");
        assert_eq!(rho.apply(&rule, &other), other);
    }

    #[test]
    fn uniform_coloring_reduces_to_single_hyp() {
        let swap = Hypersubstitution::swap(&sig()).unwrap();
        let rho = MultiHypersubstitution::identity(&sig()).with(4, swap.clone());
        let u = t("f(f(x,y),f(z,x))");
        let rule = ColorationRule::Uniform(4);
        assert_eq!(rho.apply(&rule, &u), swap.apply(&u));
        assert_eq!(rho.apply_by_address(&rule, &u), swap.apply(&u));
    }

    #[test]
    fn variables_are_fixed() {
        let rho = MultiHypersubstitution::constant(Hypersubstitution::proj_last(&sig()));
        assert_eq!(rho.apply(&ColorationRule::RbFirstLast, &t("y")), t("y"));
    }
}
