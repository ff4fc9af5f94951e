//! Seeded random terms, hypersubstitutions and multi-hypersubstitutions for
//! sampled checks. The same seed always gives the same sequence.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloration::Color;
use crate::hyp::{HypPool, Hypersubstitution};
use crate::mhyp::MultiHypersubstitution;
use crate::term::{Equation, Signature, Term, VarIndex};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A term over `x1..x_vars` of depth at most `max_depth`. Inner positions
/// become variables with probability 1/4.
pub fn random_term<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    vars: u32,
    max_depth: usize,
) -> Term {
    assert!(vars >= 1 && !sig.is_empty());
    if max_depth == 0 || rng.gen_ratio(1, 4) {
        return Term::Var(rng.gen_range(1..=vars as VarIndex));
    }
    let op = sig
        .ops()
        .nth(rng.gen_range(0..sig.len()))
        .expect("symbol index in range");
    let n = sig.arity(op);
    Term::app(
        op,
        (0..n).map(|_| random_term(rng, sig, vars, max_depth - 1)),
    )
}

pub fn random_equation<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    vars: u32,
    max_depth: usize,
) -> Equation {
    Equation::new(
        random_term(rng, sig, vars, max_depth),
        random_term(rng, sig, vars, max_depth),
    )
}

/// A hypersubstitution whose images have depth at most `image_depth`.
pub fn random_hyp<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    image_depth: usize,
) -> Hypersubstitution {
    let images = sig
        .ops()
        .map(|op| random_term(rng, sig, sig.arity(op) as u32, image_depth))
        .collect();
    Hypersubstitution::new(sig, images).expect("images use only the symbol's variables")
}

/// A multi-hypersubstitution drawing its default and the value at each of
/// `colors` from `pool`.
pub fn random_mhyp<R: Rng + ?Sized>(
    rng: &mut R,
    pool: &HypPool,
    colors: &[Color],
) -> MultiHypersubstitution {
    let pick = |rng: &mut R| {
        pool.members()
            .choose(rng)
            .expect("pools are nonempty")
            .hyp
            .clone()
    };
    let mut rho = MultiHypersubstitution::new(pick(rng));
    for &c in colors {
        rho.set(c, pick(rng));
    }
    rho
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let sig = Signature::binary();
        let a: Vec<Term> = (0..20)
            .map(|_| random_term(&mut seeded(7), &sig, 3, 4))
            .collect();
        let mut r = seeded(7);
        let b = random_term(&mut r, &sig, 3, 4);
        assert_eq!(a[0], b);
    }

    #[test]
    fn bounds_are_respected() {
        let sig = Signature::new([("f", 2), ("g", 3)]).unwrap();
        let mut rng = seeded(1);
        for _ in 0..200 {
            let t = random_term(&mut rng, &sig, 2, 5);
            assert!(t.depth() <= 5 && t.max_var() <= 2);
            sig.check(&t).unwrap();
            let h = random_hyp(&mut rng, &sig, 2);
            assert!(h.images().iter().all(|i| i.depth() <= 2));
        }
    }
}
