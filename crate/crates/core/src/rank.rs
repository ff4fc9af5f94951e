//! A computable bijection between terms and natural numbers.
//!
//! Terms are ordered by weight (node count plus largest variable index), then
//! node count, then term order. Every weight class is finite, so the position
//! of a term in this order is a bijection onto ℕ. The rank is computed by
//! counting, without listing the smaller terms.

use std::cell::RefCell;

use crate::term::{Signature, Term};

/// Counting tables for one signature up to size `max` and variable bound
/// `max`.
struct Counts {
    sig: Signature,
    max: usize,
    // n[b][s]: terms of size s over x1..xb
    n: Vec<Vec<u128>>,
    // seq[b][len][total]: tuples of `len` such terms with sizes adding up to `total`
    seq: Vec<Vec<Vec<u128>>>,
}

impl Counts {
    fn new(sig: &Signature, max: usize) -> Self {
        let arity = sig.max_arity();
        let mut n = Vec::with_capacity(max + 1);
        let mut seq = Vec::with_capacity(max + 1);
        for b in 0..=max {
            let mut nb = vec![0u128; max + 1];
            let mut sb = vec![vec![0u128; max + 1]; arity + 1];
            sb[0][0] = 1;
            for s in 1..=max {
                // tuples of total s - 1 only involve sizes below s
                let total = s - 1;
                for len in 1..=arity {
                    let mut ways: u128 = 0;
                    for first in 1..=total {
                        let rest = sb[len - 1][total - first];
                        if rest != 0 && nb[first] != 0 {
                            ways = ways.saturating_add(nb[first].saturating_mul(rest));
                        }
                    }
                    sb[len][total] = ways;
                }
                nb[s] = if s == 1 {
                    b as u128
                } else {
                    sig.ops().fold(0u128, |acc, op| {
                        acc.saturating_add(sb[sig.arity(op)][s - 1])
                    })
                };
            }
            // the last total has all the sizes it needs now
            for len in 1..=arity {
                let mut ways: u128 = 0;
                for first in 1..=max {
                    ways = ways.saturating_add(nb[first].saturating_mul(sb[len - 1][max - first]));
                }
                sb[len][max] = ways;
            }
            n.push(nb);
            seq.push(sb);
        }
        Counts {
            sig: sig.clone(),
            max,
            n,
            seq,
        }
    }

    fn terms(&self, size: usize, bound: usize) -> u128 {
        if size == 0 || size > self.max {
            return 0;
        }
        self.n[bound][size]
    }

    fn exact(&self, size: usize, maxvar: usize) -> u128 {
        self.terms(size, maxvar)
            .saturating_sub(self.terms(size, maxvar - 1))
    }

    /// `out[s]` for `s <= limit`: terms of size `s` over `x1..x_bound` that
    /// are smaller than `t`.
    fn less(&self, t: &Term, limit: usize, bound: usize) -> Vec<u128> {
        let mut out = vec![0u128; limit + 1];
        match t {
            Term::Var(i) => {
                if limit >= 1 {
                    out[1] = (*i as u128 - 1).min(bound as u128);
                }
            }
            Term::App(op, args) => {
                if limit >= 1 {
                    out[1] = bound as u128;
                }
                if limit >= 2 {
                    let smaller = self.seq_less(args, limit - 1, bound);
                    for s in 2..=limit {
                        let mut total = smaller[s - 1];
                        for o in 0..op.0 {
                            let arity = self.sig.arity(crate::term::OpId(o));
                            total = total.saturating_add(self.seq[bound][arity][s - 1]);
                        }
                        out[s] = total;
                    }
                }
            }
        }
        out
    }

    /// `out[total]` for `total <= limit`: tuples of the same length as `ts`
    /// with that total size that are lexicographically smaller than `ts`.
    fn seq_less(&self, ts: &[Term], limit: usize, bound: usize) -> Vec<u128> {
        let mut out = vec![0u128; limit + 1];
        let Some((head, tail)) = ts.split_first() else {
            return out;
        };
        let rest_len = tail.len();
        let head_less = self.less(head, limit, bound);
        for (total, slot) in out.iter_mut().enumerate() {
            if total < ts.len() {
                continue;
            }
            let mut count: u128 = 0;
            for (s1, &head) in head_less
                .iter()
                .enumerate()
                .take(total - rest_len + 1)
                .skip(1)
            {
                let rest = self.seq[bound][rest_len][total - s1];
                if rest != 0 && head != 0 {
                    count = count.saturating_add(head.saturating_mul(rest));
                }
            }
            *slot = count;
        }
        let head_size = head.size();
        if head.max_var() as usize <= bound && head_size + rest_len <= limit {
            let tail_less = self.seq_less(tail, limit - head_size, bound);
            for (total, slot) in out.iter_mut().enumerate().skip(head_size + rest_len) {
                *slot = slot.saturating_add(tail_less[total - head_size]);
            }
        }
        out
    }
}

thread_local! {
    static COUNTS: RefCell<Option<std::rc::Rc<Counts>>> = const { RefCell::new(None) };
}

/// Tables covering size and bound `max`, reused across calls.
fn counts(sig: &Signature, max: usize) -> std::rc::Rc<Counts> {
    COUNTS.with(|cell| {
        let mut cell = cell.borrow_mut();
        if let Some(c) = cell.as_ref() {
            if c.max >= max && c.sig == *sig {
                return c.clone();
            }
        }
        let grown = match cell.as_ref() {
            Some(c) if c.sig == *sig => max.max(c.max * 2),
            _ => max.max(16),
        };
        let c = std::rc::Rc::new(Counts::new(sig, grown));
        *cell = Some(c.clone());
        c
    })
}

/// Position of `t` in the canonical enumeration of all terms of `sig`.
/// Saturates at `u128::MAX` for terms far beyond desk scale.
pub fn term_rank(sig: &Signature, t: &Term) -> u128 {
    let size = t.size();
    let maxvar = t.max_var() as usize;
    let weight = size + maxvar;
    let counts = counts(sig, weight - 1);
    let mut rank: u128 = 0;
    for w in 2..weight {
        for s in 1..w {
            rank = rank.saturating_add(counts.exact(s, w - s));
        }
    }
    for s in 1..size {
        rank = rank.saturating_add(counts.exact(s, weight - s));
    }
    let upper = counts.less(t, size, maxvar)[size];
    let lower = counts.less(t, size, maxvar - 1)[size];
    rank.saturating_add(upper.saturating_sub(lower))
}
