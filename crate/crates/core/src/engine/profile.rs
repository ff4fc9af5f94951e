//! Term operations of one term in several algebras at once, stored as one
//! concatenated byte string.

use std::collections::HashMap;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::enumerate::layers;
use crate::term::{OpId, Term, VarIndex};

use super::{EngineError, Limits, TermUniverse};

pub(crate) struct Profiler {
    algebras: Vec<FiniteAlgebra>,
    vars: usize,
    // start of each algebra's table inside a profile
    offsets: Vec<usize>,
    width: usize,
}

impl Profiler {
    pub(crate) fn new(algebras: Vec<FiniteAlgebra>, vars: usize) -> Self {
        let mut offsets = Vec::with_capacity(algebras.len());
        let mut width = 0;
        for a in &algebras {
            offsets.push(width);
            width += a.size().pow(vars as u32);
        }
        Profiler {
            algebras,
            vars,
            offsets,
            width,
        }
    }

    pub(crate) fn width(&self) -> usize {
        self.width
    }

    pub(crate) fn vars(&self) -> usize {
        self.vars
    }

    /// The table of algebra `j` inside `profile`.
    pub(crate) fn part<'p>(&self, profile: &'p [Elem], j: usize) -> &'p [Elem] {
        let end = self.offsets.get(j + 1).copied().unwrap_or(self.width);
        &profile[self.offsets[j]..end]
    }

    pub(crate) fn var(&self, v: VarIndex, out: &mut Vec<Elem>) {
        out.clear();
        let pos = v as usize - 1;
        assert!(pos < self.vars, "x{v} is outside the profiled variables");
        for a in &self.algebras {
            let k = a.size();
            let total = k.pow(self.vars as u32);
            let stride = k.pow((self.vars - 1 - pos) as u32);
            out.extend((0..total).map(|i| ((i / stride) % k) as Elem));
        }
    }

    pub(crate) fn app(&self, op: OpId, children: &[&[Elem]], out: &mut Vec<Elem>) {
        out.clear();
        for (j, a) in self.algebras.iter().enumerate() {
            let k = a.size();
            let table = a.table(op);
            let start = self.offsets[j];
            let end = self.offsets.get(j + 1).copied().unwrap_or(self.width);
            for i in start..end {
                let idx = children
                    .iter()
                    .fold(0usize, |acc, c| acc * k + c[i] as usize);
                out.push(table[idx]);
            }
        }
    }

    pub(crate) fn term(&self, t: &Term) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.width);
        for a in &self.algebras {
            let vars: Vec<VarIndex> = (1..=self.vars as VarIndex).collect();
            out.extend(a.table_over(t, &vars));
        }
        out
    }

    /// Whether every algebra's table equals the table of algebra `j`.
    pub(crate) fn is_constant(&self, profile: &[Elem], j: usize) -> bool {
        let key = self.part(profile, j);
        (0..self.algebras.len()).all(|i| self.part(profile, i) == key)
    }
}

/// The terms of a universe in layer order (depth 0 first) with their
/// profiles, plus an index from term to position.
pub(crate) struct ProfiledTerms {
    pub(crate) terms: Vec<Term>,
    pub(crate) profiles: Vec<Elem>,
    pub(crate) width: usize,
    /// `layer_ends[d]` is the number of terms of depth `<= d`.
    pub(crate) layer_ends: Vec<usize>,
}

impl ProfiledTerms {
    pub(crate) fn profile(&self, i: usize) -> &[Elem] {
        &self.profiles[i * self.width..(i + 1) * self.width]
    }

    /// Profiles the universe truncated to depth `depth`.
    pub(crate) fn build(
        profiler: &Profiler,
        universe: &TermUniverse,
        depth: usize,
        limits: &Limits,
    ) -> Result<Self, EngineError> {
        let count = crate::enumerate::count_up_to_depth(&universe.sig, universe.vars, depth);
        if count > limits.max_terms {
            return Err(EngineError::limit("universe size", count, limits.max_terms));
        }
        let width = profiler.width();
        let mut out = ProfiledTerms {
            terms: Vec::with_capacity(count as usize),
            profiles: Vec::with_capacity(count as usize * width),
            width,
            layer_ends: Vec::new(),
        };
        let mut index: HashMap<Term, usize> = HashMap::new();
        let mut buf = Vec::with_capacity(width);
        for layer in layers(&universe.sig, universe.vars, depth) {
            for t in layer {
                match &t {
                    Term::Var(v) => profiler.var(*v, &mut buf),
                    Term::App(op, args) => {
                        let children: Vec<&[Elem]> =
                            args.iter().map(|a| out.profile(index[a])).collect();
                        profiler.app(*op, &children, &mut buf);
                    }
                }
                index.insert(t.clone(), out.terms.len());
                out.terms.push(t);
                out.profiles.extend_from_slice(&buf);
            }
            out.layer_ends.push(out.terms.len());
        }
        Ok(out)
    }
}
