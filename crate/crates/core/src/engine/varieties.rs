//! Equational bases of the semigroup varieties used in the examples.

use crate::parse::parse_term;
use crate::term::{Equation, OpId, Signature, Term, VarIndex};

/// A named equational base over the binary type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variety {
    pub name: &'static str,
    pub description: &'static str,
    pub base: Vec<Equation>,
}

/// The left-associated product `x_{w1} x_{w2} ... x_{wn}` of a word of
/// variable indices.
pub fn word(op: OpId, letters: &[VarIndex]) -> Term {
    let (first, rest) = letters.split_first().expect("words are nonempty");
    rest.iter().fold(Term::Var(*first), |acc, &v| {
        Term::app(op, [acc, Term::Var(v)])
    })
}

fn words(op: OpId, lhs: &[VarIndex], rhs: &[VarIndex]) -> Equation {
    Equation::new(word(op, lhs), word(op, rhs))
}

fn terms(sig: &Signature, lhs: &str, rhs: &str) -> Equation {
    Equation::new(
        parse_term(lhs, sig).expect("built-in term parses"),
        parse_term(rhs, sig).expect("built-in term parses"),
    )
}

/// Names accepted by [`variety`].
pub const VARIETY_NAMES: &[&str] = &["semigroups", "RB", "SL", "LZ", "bands", "NB", "RegB", "VHS"];

/// The base called `name`, for a signature with a binary first symbol.
pub fn variety(name: &str, sig: &Signature) -> Option<Variety> {
    let f = sig.ops().find(|&op| sig.arity(op) == 2)?;
    let fname = sig.name(f);
    let t = |s: &str| s.replace('f', fname);
    let assoc = terms(sig, &t("f(x,f(y,z))"), &t("f(f(x,y),z)"));
    let idem = terms(sig, &t("f(x,x)"), "x");
    let v = match name {
        "semigroups" => Variety {
            name: "semigroups",
            description: "associative law",
            base: vec![assoc],
        },
        "RB" => Variety {
            name: "RB",
            description: "rectangular bands: x(yz) = (xy)z = xz, xx = x",
            base: vec![assoc, terms(sig, &t("f(f(x,y),z)"), &t("f(x,z)")), idem],
        },
        "SL" => Variety {
            name: "SL",
            description: "semilattices: associative, commutative, idempotent",
            base: vec![assoc, terms(sig, &t("f(x,y)"), &t("f(y,x)")), idem],
        },
        "LZ" => Variety {
            name: "LZ",
            description: "left-zero semigroups: xy = x",
            base: vec![terms(sig, &t("f(x,y)"), "x")],
        },
        "bands" => Variety {
            name: "bands",
            description: "idempotent semigroups",
            base: vec![assoc, idem],
        },
        "NB" => Variety {
            name: "NB",
            description: "normal bands: bands with xyzx = xzyx",
            base: vec![assoc, idem, words(f, &[1, 2, 3, 1], &[1, 3, 2, 1])],
        },
        "RegB" => Variety {
            name: "RegB",
            description: "regular bands: bands with xyxzx = xyzx",
            base: vec![assoc, idem, words(f, &[1, 2, 1, 3, 1], &[1, 2, 3, 1])],
        },
        "VHS" => Variety {
            name: "VHS",
            description: "the greatest solid variety of semigroups",
            base: vec![
                assoc,
                words(f, &[1, 1], &[1, 1, 1, 1]),
                words(f, &[1, 2, 1, 3, 1, 2, 1], &[1, 2, 3, 2, 1]),
                words(f, &[1, 1, 2, 2, 3], &[1, 1, 2, 1, 1, 2, 3]),
                words(f, &[1, 2, 2, 3, 3], &[1, 2, 3, 3, 2, 3, 3]),
            ],
        },
        _ => return None,
    };
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        left_zero, normal_band, rectangular_band, regular_band, semilattice, zero_semigroup,
    };

    fn sig() -> Signature {
        Signature::binary()
    }

    fn holds_all(a: &crate::algebra::FiniteAlgebra, v: &Variety) -> bool {
        a.satisfies_all(&v.base)
    }

    #[test]
    fn words_associate_to_the_left() {
        let s = sig();
        assert_eq!(
            word(OpId(0), &[1, 2, 3]),
            parse_term("f(f(x,y),z)", &s).unwrap()
        );
        assert_eq!(word(OpId(0), &[2]), Term::Var(2));
    }

    #[test]
    fn every_base_parses() {
        for name in VARIETY_NAMES {
            assert!(variety(name, &sig()).is_some(), "{name}");
        }
        assert!(variety("groups", &sig()).is_none());
    }

    #[test]
    fn models_of_the_bases() {
        let s = sig();
        let v = |n| variety(n, &s).unwrap();
        assert!(holds_all(&rectangular_band(&s), &v("RB")));
        assert!(holds_all(&semilattice(&s), &v("SL")));
        assert!(!holds_all(&semilattice(&s), &v("RB")));
        assert!(holds_all(&left_zero(&s, 2), &v("LZ")));
        assert!(holds_all(&normal_band(&s), &v("NB")));
        assert!(!holds_all(&regular_band(&s), &v("NB")));
        assert!(holds_all(&regular_band(&s), &v("RegB")));
        for a in [
            rectangular_band(&s),
            normal_band(&s),
            regular_band(&s),
            semilattice(&s),
        ] {
            assert!(holds_all(&a, &v("bands")));
            assert!(holds_all(&a, &v("VHS")));
        }
    }

    #[test]
    fn zero_semigroup_is_in_vhs_but_not_a_band() {
        let s = sig();
        let z = zero_semigroup(&s, 2);
        assert!(holds_all(&z, &variety("VHS", &s).unwrap()));
        let idem = Equation::new(Term::Var(1), parse_term("f(x,x)", &s).unwrap());
        assert!(!z.satisfies(&idem).holds());
    }
}
