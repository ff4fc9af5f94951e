//! Small named algebras. Every constructor works for any signature: a
//! binary description like `f(x,y) = x` is read as "first argument" for
//! symbols of other arities.

use super::{Elem, FiniteAlgebra};
use crate::term::Signature;

fn build(sig: &Signature, size: usize, op: impl Fn(&[Elem]) -> Elem) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(sig, size, |_, args| op(args)).expect("built-in tables are valid")
}

/// The one-element algebra.
pub fn trivial(sig: &Signature) -> FiniteAlgebra {
    build(sig, 1, |_| 0)
}

/// `f(x1,...,xn) = x1` on `k` elements.
pub fn left_zero(sig: &Signature, k: usize) -> FiniteAlgebra {
    build(sig, k, |a| a[0])
}

/// `f(x1,...,xn) = xn` on `k` elements.
pub fn right_zero(sig: &Signature, k: usize) -> FiniteAlgebra {
    build(sig, k, |a| a[a.len() - 1])
}

/// Every operation is constantly 0.
pub fn zero_semigroup(sig: &Signature, k: usize) -> FiniteAlgebra {
    build(sig, k, |_| 0)
}

/// `{0,1}` with `f = min`.
pub fn semilattice(sig: &Signature) -> FiniteAlgebra {
    build(sig, 2, |a| a.iter().copied().min().unwrap_or(0))
}

/// `{0,1}` with `f` = sum mod 2.
pub fn xor(sig: &Signature) -> FiniteAlgebra {
    build(sig, 2, |a| a.iter().fold(0, |acc, &x| acc ^ x))
}

/// Direct product; the pair `(a, b)` is encoded as `a * |B| + b`.
pub fn product(sig: &Signature, a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    let kb = b.size();
    let size = a.size() * kb;
    FiniteAlgebra::from_fn(sig, size, |op, args| {
        let left: Vec<Elem> = args.iter().map(|&x| (x as usize / kb) as Elem).collect();
        let right: Vec<Elem> = args.iter().map(|&x| (x as usize % kb) as Elem).collect();
        (a.apply(op, &left) as usize * kb + b.apply(op, &right) as usize) as Elem
    })
    .expect("product carrier fits")
}

/// The 4-element rectangular band `L2 × R2`: element `2a + b` is the pair
/// `(a, b)` and `(a,b)(c,d) = (a,d)`.
pub fn rectangular_band(sig: &Signature) -> FiniteAlgebra {
    product(sig, &left_zero(sig, 2), &right_zero(sig, 2))
}

/// `L2¹`: the 2-element left-zero semigroup with an identity adjoined as
/// element 2. Left regular, not normal.
pub fn left_zero_monoid(sig: &Signature) -> FiniteAlgebra {
    build(sig, 3, |a| a.iter().copied().find(|&x| x != 2).unwrap_or(2))
}

/// `R2¹`, the dual of [`left_zero_monoid`].
pub fn right_zero_monoid(sig: &Signature) -> FiniteAlgebra {
    build(sig, 3, |a| {
        a.iter().copied().rev().find(|&x| x != 2).unwrap_or(2)
    })
}

/// `RB4 × SL2`, an 8-element normal band that is neither a rectangular band
/// nor a semilattice.
pub fn normal_band(sig: &Signature) -> FiniteAlgebra {
    product(sig, &rectangular_band(sig), &semilattice(sig))
}

/// `L2¹ × R2¹`, a 9-element regular band that is not normal.
pub fn regular_band(sig: &Signature) -> FiniteAlgebra {
    product(sig, &left_zero_monoid(sig), &right_zero_monoid(sig))
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "trivial",
    "left-zero",
    "right-zero",
    "semilattice",
    "zero-semigroup",
    "xor",
    "rect-band",
    "left-zero-monoid",
    "right-zero-monoid",
    "normal-band",
    "regular-band",
];

pub fn builtin(name: &str, sig: &Signature) -> Option<FiniteAlgebra> {
    Some(match name {
        "trivial" => trivial(sig),
        "left-zero" => left_zero(sig, 2),
        "right-zero" => right_zero(sig, 2),
        "semilattice" => semilattice(sig),
        "zero-semigroup" => zero_semigroup(sig, 2),
        "xor" => xor(sig),
        "rect-band" => rectangular_band(sig),
        "left-zero-monoid" => left_zero_monoid(sig),
        "right-zero-monoid" => right_zero_monoid(sig),
        "normal-band" => normal_band(sig),
        "regular-band" => regular_band(sig),
        _ => return None,
    })
}
