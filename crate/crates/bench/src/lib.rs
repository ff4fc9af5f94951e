//! Fixtures shared by the benchmarks.

use multihyp::random::{random_mhyp, random_term, seeded};
use multihyp::{HypPool, MultiHypersubstitution, Signature, Term};

pub const SEED: u64 = 0x6d68_7970;

/// The depth-2 pool over one binary symbol.
pub fn pool() -> HypPool {
    HypPool::enumerate(&Signature::binary(), 2, 1000).expect("depth-2 pool fits")
}

/// `n` random terms over x1..x3 of depth at most `depth`.
pub fn terms(n: usize, depth: usize) -> Vec<Term> {
    let sig = Signature::binary();
    let mut rng = seeded(SEED);
    (0..n)
        .map(|_| random_term(&mut rng, &sig, 3, depth))
        .collect()
}

/// A random multi-hypersubstitution from [`pool`] over colors 0..=2.
pub fn mhyp(pool: &HypPool) -> MultiHypersubstitution {
    random_mhyp(&mut seeded(SEED + 1), pool, &[0, 1, 2])
}
