//! Exhaustive enumeration of terms by depth.

use crate::term::{OpId, Signature, Term, VarIndex};

/// Number of terms of depth at most `depth` over `x1..x_vars`, saturating.
pub fn count_up_to_depth(sig: &Signature, vars: u32, depth: usize) -> u128 {
    let mut count = vars as u128;
    for _ in 0..depth {
        let mut next = vars as u128;
        for op in sig.ops() {
            let mut prod: u128 = 1;
            for _ in 0..sig.arity(op) {
                prod = prod.saturating_mul(count);
            }
            next = next.saturating_add(prod);
        }
        count = next;
    }
    count
}

/// Terms grouped by exact depth: `layers[d]` holds every term of depth `d`.
pub fn layers(sig: &Signature, vars: u32, depth: usize) -> Vec<Vec<Term>> {
    let mut layers: Vec<Vec<Term>> = vec![(1..=vars as VarIndex).map(Term::Var).collect()];
    let mut below: Vec<Term> = layers[0].clone();
    for _ in 0..depth {
        let newest = layers.len() - 1;
        let mut layer = Vec::new();
        for op in sig.ops() {
            for_each_tuple(sig.arity(op), &below, &layers[newest], |args| {
                layer.push(Term::app(op, args.iter().cloned()));
            });
        }
        below.extend(layer.iter().cloned());
        layers.push(layer);
    }
    layers
}

/// Calls `f` on every tuple of length `arity` drawn from `pool` that uses at
/// least one element of `newest` (a suffix of `pool`, compared by value).
/// With `pool = layers 0..=d` and `newest = layer d` this yields exactly the
/// argument tuples of depth-`d+1` applications.
pub(crate) fn for_each_tuple(
    arity: usize,
    pool: &[Term],
    newest: &[Term],
    mut f: impl FnMut(&[Term]),
) {
    if pool.is_empty() {
        return;
    }
    let newest_start = pool.len() - newest.len();
    let mut idx = vec![0usize; arity];
    let mut args: Vec<Term> = vec![pool[0].clone(); arity];
    loop {
        if idx.iter().any(|&i| i >= newest_start) {
            for (a, &i) in args.iter_mut().zip(&idx) {
                *a = pool[i].clone();
            }
            f(&args);
        }
        // odometer, last position fastest
        let mut k = arity;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All terms of depth at most `depth` over `x1..x_vars` in ascending term
/// order.
pub fn terms_up_to_depth(sig: &Signature, vars: u32, depth: usize) -> Vec<Term> {
    let mut all: Vec<Term> = layers(sig, vars, depth).into_iter().flatten().collect();
    all.sort();
    all
}

/// Images admissible for a symbol of arity `arity`: terms over `x1..x_arity`
/// of depth at most `depth`.
pub(crate) fn images_for(sig: &Signature, op: OpId, depth: usize) -> Vec<Term> {
    terms_up_to_depth(sig, sig.arity(op) as u32, depth)
}
