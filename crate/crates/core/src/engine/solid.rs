//! Bounded (colored) solidity checks.
//!
//! The seeds are all identities of a model algebra `A` between terms of a
//! universe. Instead of listing every seed pair, terms are grouped by the
//! term operation they induce in `A`; every pair inside a group is a seed.
//!
//! For a uniformly colored term `s` with color `a`, `ρ̂_C[s]^A` equals
//! `s^{ρ(a)(A)}`, so it depends only on the derived algebra `ρ(a)(A)`. The
//! pool is therefore reduced to its distinct derived algebras, and a term
//! is summarized by its *profile*: its term operation in each of them. A
//! profile is *constant* when all entries equal the operation in `A`.
//!
//! Inside one group, every image of every seed holds in `A` exactly when
//! either all terms have constant profiles, or all of them share one color
//! and one profile (variables count as constant). Each group keeps one
//! representative of each kind, and every new term is compared with the
//! representatives only. Terms whose addresses carry several colors are
//! compared exactly, by trying every map from their colors to the derived
//! algebras, against the representatives and against each other.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::algebra::{Assignment, Elem, FiniteAlgebra, Satisfaction};
use crate::coloration::{Color, ColorationRule, TermColoring};
use crate::enumerate::count_up_to_depth;
use crate::hyp::{HypPool, Hypersubstitution};
use crate::mhyp::MultiHypersubstitution;
use crate::term::{Equation, Signature, Term, VarIndex};

use super::closure::distinct_derived;
use super::profile::{ProfiledTerms, Profiler};
use super::{EngineError, Limits, TermUniverse};

/// What was applied to the seed equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    Hyp {
        name: String,
        hyp: Hypersubstitution,
    },
    MultiHyp(MultiHypersubstitution),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Round of the check that found it (1 = seeds from the universe).
    pub round: usize,
    /// An identity of the model.
    pub seed: Equation,
    pub transform: Transform,
    /// The transformed seed, which fails in the model.
    pub image: Equation,
    pub assignment: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Violated(Box<Violation>),
    NoViolationWithinBounds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolidityReport {
    pub verdict: Verdict,
    pub pool_size: usize,
    /// Distinct derived algebras `σ(A)` over the pool.
    pub distinct_derived: usize,
    pub universe: TermUniverse,
    /// Terms fed to the check, over all rounds.
    pub terms_checked: u128,
    pub rounds_requested: usize,
    pub rounds_completed: usize,
    /// The set of checked terms stopped growing.
    pub fixpoint: bool,
    /// Only the base equations were transformed.
    pub basis_only: bool,
    /// Why fewer rounds than requested were run, if so.
    pub stopped: Option<String>,
}

impl SolidityReport {
    pub fn is_violated(&self) -> bool {
        matches!(self.verdict, Verdict::Violated(_))
    }

    pub fn violation(&self) -> Option<&Violation> {
        match &self.verdict {
            Verdict::Violated(v) => Some(v),
            Verdict::NoViolationWithinBounds => None,
        }
    }

    /// The bounds every verdict is relative to.
    pub fn soundness_note(&self) -> String {
        format!(
            "relative to a pool of {} hypersubstitutions, universe of {}, rounds {}/{}; \
             a violation is a genuine counterexample, its absence is evidence within these bounds only",
            self.pool_size,
            self.universe,
            self.rounds_completed,
            self.rounds_requested
        )
    }

    /// Recomputes the image of the cited seed and checks that the seed
    /// holds in `a` while the image fails at the cited assignment.
    pub fn replay(&self, a: &FiniteAlgebra, rule: Option<&ColorationRule>) -> bool {
        let Some(v) = self.violation() else {
            return true;
        };
        let image = match (&v.transform, rule) {
            (Transform::Hyp { hyp, .. }, _) => {
                Equation::new(hyp.apply(&v.seed.lhs), hyp.apply(&v.seed.rhs))
            }
            (Transform::MultiHyp(rho), Some(rule)) => {
                Equation::new(rho.apply(rule, &v.seed.lhs), rho.apply(rule, &v.seed.rhs))
            }
            (Transform::MultiHyp(_), None) => return false,
        };
        if image != v.image || !a.satisfies(&v.seed).holds() {
            return false;
        }
        let dense = v.assignment.to_dense();
        let width = image.variables().last().copied().unwrap_or(0) as usize;
        let mut values = dense;
        values.resize(values.len().max(width), 0);
        match (a.eval(&image.lhs, &values), a.eval(&image.rhs, &values)) {
            (Ok(l), Ok(r)) => l != r,
            _ => false,
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> ReportDisplay<'a> {
        ReportDisplay { report: self, sig }
    }
}

pub struct ReportDisplay<'a> {
    report: &'a SolidityReport,
    sig: &'a Signature,
}

impl fmt::Display for ReportDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.report;
        let sig = self.sig;
        match &r.verdict {
            Verdict::NoViolationWithinBounds => writeln!(f, "verdict: no-violation-within-bounds")?,
            Verdict::Violated(v) => {
                writeln!(f, "verdict: violated")?;
                writeln!(f, "round: {}", v.round)?;
                writeln!(f, "seed: {}", v.seed.display(sig))?;
                match &v.transform {
                    Transform::Hyp { name, hyp } => {
                        writeln!(f, "hypersubstitution: {name} ({})", hyp.display(sig))?
                    }
                    Transform::MultiHyp(rho) => {
                        write!(
                            f,
                            "multi-hypersubstitution: default {}",
                            rho.default_hyp().display(sig)
                        )?;
                        for (c, h) in rho.table() {
                            write!(f, "; color {c}: {}", h.display(sig))?;
                        }
                        writeln!(f)?;
                    }
                }
                writeln!(f, "image: {}", v.image.display(sig))?;
                writeln!(f, "assignment: {}", v.assignment)?;
            }
        }
        writeln!(
            f,
            "pool: {} hypersubstitutions, {} distinct derived algebras",
            r.pool_size, r.distinct_derived
        )?;
        writeln!(f, "universe: {}", r.universe)?;
        writeln!(f, "terms checked: {}", r.terms_checked)?;
        writeln!(
            f,
            "rounds: {} of {}{}",
            r.rounds_completed,
            r.rounds_requested,
            if r.fixpoint { " (fixpoint)" } else { "" }
        )?;
        if r.basis_only {
            writeln!(f, "mode: base equations only")?;
        }
        if let Some(why) = &r.stopped {
            writeln!(f, "stopped: {why}")?;
        }
        write!(f, "note: {}", r.soundness_note())
    }
}

/// What the M-solid check transforms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolidMode {
    /// The base and every identity of the model inside the universe.
    Full,
    /// Only the base equations.
    BasisOnly,
}

/// A term as seen by the engine.
struct Entry {
    term: Term,
    kind: Kind,
}

enum Kind {
    Var,
    Uniform(Color, Vec<Elem>),
    Mixed(TermColoring),
}

#[derive(Default)]
struct Group {
    constant: Option<Entry>,
    varying: Option<Entry>,
    mixed: Vec<Entry>,
}

/// A failing choice: color `colors[i]` goes to derived algebra `der[i]`.
struct Failure {
    colors: Vec<Color>,
    der: Vec<usize>,
}

struct Engine<'a> {
    model: &'a FiniteAlgebra,
    rule: ColorationRule,
    pool: &'a HypPool,
    der: Vec<FiniteAlgebra>,
    reps: Vec<usize>,
    id: usize,
    profiler: Profiler,
    groups: HashMap<Vec<Elem>, Group>,
    limits: Limits,
    as_hyp: bool,
}

impl<'a> Engine<'a> {
    fn new(
        model: &'a FiniteAlgebra,
        rule: ColorationRule,
        pool: &'a HypPool,
        vars: usize,
        limits: Limits,
        as_hyp: bool,
    ) -> Self {
        let derived = distinct_derived(model, pool);
        let id = derived
            .iter()
            .position(|(d, _)| d == model)
            .expect("the identity reproduces the model");
        let der: Vec<FiniteAlgebra> = derived.iter().map(|(d, _)| d.clone()).collect();
        let reps = derived.iter().map(|(_, i)| *i).collect();
        Engine {
            model,
            rule,
            pool,
            profiler: Profiler::new(der.clone(), vars),
            der,
            reps,
            id,
            groups: HashMap::new(),
            limits,
            as_hyp,
        }
    }

    fn entry(&self, term: Term, profile: Option<&[Elem]>) -> Entry {
        let kind = match self.rule.coloring(&term) {
            TermColoring::Empty => Kind::Var,
            TermColoring::Uniform(c) => Kind::Uniform(
                c,
                match profile {
                    Some(p) => p.to_vec(),
                    None => self.profiler.term(&term),
                },
            ),
            coloring => Kind::Mixed(coloring),
        };
        Entry { term, kind }
    }

    fn key(&self, e: &Entry) -> Vec<Elem> {
        match &e.kind {
            Kind::Uniform(_, p) => self.profiler.part(p, self.id).to_vec(),
            _ => {
                let vars: Vec<VarIndex> = (1..=self.profiler.vars() as VarIndex).collect();
                self.model.table_over(&e.term, &vars)
            }
        }
    }

    fn is_constant(&self, e: &Entry) -> bool {
        match &e.kind {
            Kind::Var => true,
            Kind::Uniform(_, p) => self.profiler.is_constant(p, self.id),
            Kind::Mixed(_) => false,
        }
    }

    /// Feeds one term; returns a violation against an earlier term of its
    /// group, if any.
    fn add(&mut self, entry: Entry, round: usize) -> Result<Option<Violation>, EngineError> {
        let key = self.key(&entry);
        let mut group = self.groups.remove(&key).unwrap_or_default();
        let mut found = None;
        {
            let others = group
                .varying
                .iter()
                .chain(group.constant.iter())
                .chain(group.mixed.iter());
            for other in others {
                if let Some(fail) = self.check_pair(&entry, other)? {
                    found = Some(self.violation(&entry.term, &other.term, fail, round));
                    break;
                }
            }
        }
        if found.is_none() {
            match entry.kind {
                Kind::Mixed(_) => group.mixed.push(entry),
                _ if self.is_constant(&entry) => {
                    group.constant.get_or_insert(entry);
                }
                _ => {
                    group.varying.get_or_insert(entry);
                }
            }
        }
        self.groups.insert(key, group);
        Ok(found)
    }

    fn check_pair(&self, x: &Entry, y: &Entry) -> Result<Option<Failure>, EngineError> {
        use Kind::*;
        let p = &self.profiler;
        match (&x.kind, &y.kind) {
            (Var, Var) => Ok(None),
            (Uniform(a, px), Uniform(b, py)) if a == b => Ok((0..self.der.len())
                .find(|&j| p.part(px, j) != p.part(py, j))
                .map(|j| Failure {
                    colors: vec![*a],
                    der: vec![j],
                })),
            (Mixed(_), _) | (_, Mixed(_)) => self.check_exhaustive(x, y),
            _ => {
                // different colors, or one side is a variable: both sides
                // must be constant
                for (e, other) in [(x, y), (y, x)] {
                    if let Uniform(c, pe) = &e.kind {
                        if let Some(j) =
                            (0..self.der.len()).find(|&j| p.part(pe, j) != p.part(pe, self.id))
                        {
                            let mut colors = vec![*c];
                            let mut der = vec![j];
                            if let Uniform(d, _) = &other.kind {
                                colors.push(*d);
                                der.push(self.id);
                            }
                            return Ok(Some(Failure { colors, der }));
                        }
                    }
                }
                Ok(None)
            }
        }
    }

    fn colors_of(e: &Entry) -> Vec<Color> {
        match &e.kind {
            Kind::Var => vec![],
            Kind::Uniform(c, _) => vec![*c],
            Kind::Mixed(coloring) => coloring.colors().into_iter().collect(),
        }
    }

    fn value(&self, e: &Entry, colors: &[Color], choice: &[usize]) -> Vec<Elem> {
        let at = |c: Color| choice[colors.binary_search(&c).expect("color is listed")];
        match &e.kind {
            Kind::Var => {
                let vars: Vec<VarIndex> = (1..=self.profiler.vars() as VarIndex).collect();
                self.model.table_over(&e.term, &vars)
            }
            Kind::Uniform(c, profile) => self.profiler.part(profile, at(*c)).to_vec(),
            Kind::Mixed(coloring) => {
                let k = self.model.size();
                let n = self.profiler.vars();
                let total = k.pow(n as u32);
                let mut next = 0;
                self.eval_colored(&e.term, coloring, &at, &mut next, k, n, total)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn eval_colored(
        &self,
        t: &Term,
        coloring: &TermColoring,
        at: &dyn Fn(Color) -> usize,
        next: &mut usize,
        k: usize,
        n: usize,
        total: usize,
    ) -> Vec<Elem> {
        match t {
            Term::Var(v) => {
                let stride = k.pow((n - *v as usize) as u32);
                (0..total).map(|i| ((i / stride) % k) as Elem).collect()
            }
            Term::App(op, args) => {
                let algebra = &self.der[at(coloring.at(*next))];
                *next += 1;
                let children: Vec<Vec<Elem>> = args
                    .iter()
                    .map(|a| self.eval_colored(a, coloring, at, next, k, n, total))
                    .collect();
                let table = algebra.table(*op);
                (0..total)
                    .map(|i| {
                        table[children
                            .iter()
                            .fold(0usize, |acc, c| acc * k + c[i] as usize)]
                    })
                    .collect()
            }
        }
    }

    fn check_exhaustive(&self, x: &Entry, y: &Entry) -> Result<Option<Failure>, EngineError> {
        let mut colors = Self::colors_of(x);
        colors.extend(Self::colors_of(y));
        colors.sort_unstable();
        colors.dedup();
        let m = self.der.len();
        let count = (m as u128)
            .checked_pow(colors.len() as u32)
            .unwrap_or(u128::MAX);
        if count > self.limits.max_rho {
            return Err(EngineError::limit(
                "color maps for one seed",
                count,
                self.limits.max_rho,
            ));
        }
        let mut choice = vec![0usize; colors.len()];
        loop {
            if self.value(x, &colors, &choice) != self.value(y, &colors, &choice) {
                return Ok(Some(Failure {
                    colors,
                    der: choice,
                }));
            }
            let mut advanced = false;
            for i in choice.iter_mut().rev() {
                *i += 1;
                if *i < m {
                    advanced = true;
                    break;
                }
                *i = 0;
            }
            if !advanced {
                return Ok(None);
            }
        }
    }

    fn violation(&self, s: &Term, t: &Term, fail: Failure, round: usize) -> Violation {
        let seed = Equation::new(s.clone(), t.clone());
        let hyp_of = |j: usize| &self.pool.members()[self.reps[j]];
        let (transform, image) = if self.as_hyp {
            let member = hyp_of(fail.der[0]);
            let image = Equation::new(member.hyp.apply(s), member.hyp.apply(t));
            (
                Transform::Hyp {
                    name: member.name.clone(),
                    hyp: member.hyp.clone(),
                },
                image,
            )
        } else {
            let mut rho = MultiHypersubstitution::new(self.pool.identity().clone());
            for (&c, &j) in fail.colors.iter().zip(&fail.der) {
                rho.set(c, hyp_of(j).hyp.clone());
            }
            let image = Equation::new(rho.apply(&self.rule, s), rho.apply(&self.rule, t));
            (Transform::MultiHyp(rho), image)
        };
        let assignment = match self.model.satisfies(&image) {
            Satisfaction::Fails(a) => a,
            Satisfaction::Holds => panic!("engine reported a violation whose image holds"),
        };
        Violation {
            round,
            seed,
            transform,
            image,
            assignment,
        }
    }

    /// Streams the universe: lower layers are profiled and kept, the top
    /// layer is generated and checked one term at a time.
    fn run_universe(
        &mut self,
        universe: &TermUniverse,
        checked: &mut u128,
    ) -> Result<Option<Violation>, EngineError> {
        let d = universe.max_depth;
        let lower_depth = d.saturating_sub(1);
        let lower = ProfiledTerms::build(&self.profiler, universe, lower_depth, &self.limits)?;
        for (i, t) in lower.terms.iter().enumerate() {
            *checked += 1;
            let e = self.entry(t.clone(), Some(lower.profile(i)));
            if let Some(v) = self.add(e, 1)? {
                return Ok(Some(v));
            }
        }
        if d == 0 {
            return Ok(None);
        }
        let newest = if lower.layer_ends.len() >= 2 {
            lower.layer_ends[lower.layer_ends.len() - 2]
        } else {
            0
        };
        let n = lower.terms.len();
        let mut buf = Vec::with_capacity(self.profiler.width());
        for op in universe.sig.ops() {
            let arity = universe.sig.arity(op);
            let mut idx = vec![0usize; arity];
            loop {
                if idx.iter().any(|&i| i >= newest) {
                    *checked += 1;
                    let children: Vec<&[Elem]> = idx.iter().map(|&i| lower.profile(i)).collect();
                    self.profiler.app(op, &children, &mut buf);
                    let term = Term::app(op, idx.iter().map(|&i| lower.terms[i].clone()));
                    let e = self.entry(term, Some(&buf));
                    if let Some(v) = self.add(e, 1)? {
                        return Ok(Some(v));
                    }
                }
                if !advance(&mut idx, n) {
                    break;
                }
            }
        }
        Ok(None)
    }

    /// Every image `ρ̂_C[t]` (or `σ̂[t]`) of `t` under the pool.
    fn images(&self, t: &Term, out: &mut Vec<Term>) -> Result<(), EngineError> {
        if self.as_hyp {
            out.extend(self.pool.hyps().map(|h| h.apply(t)));
            return Ok(());
        }
        match self.rule.coloring(t) {
            TermColoring::Empty => out.push(t.clone()),
            TermColoring::Uniform(_) => out.extend(self.pool.hyps().map(|h| h.apply(t))),
            coloring => {
                let colors: Vec<Color> = coloring.colors().into_iter().collect();
                let count = (self.pool.len() as u128)
                    .checked_pow(colors.len() as u32)
                    .unwrap_or(u128::MAX);
                if count > self.limits.max_rho {
                    return Err(EngineError::limit(
                        "multi-hypersubstitutions per term",
                        count,
                        self.limits.max_rho,
                    ));
                }
                let mut choice = vec![0usize; colors.len()];
                loop {
                    let mut rho = MultiHypersubstitution::new(self.pool.identity().clone());
                    for (&c, &m) in colors.iter().zip(&choice) {
                        rho.set(c, self.pool.members()[m].hyp.clone());
                    }
                    out.push(rho.apply_colored(&coloring, t));
                    if !advance(&mut choice, self.pool.len()) {
                        break;
                    }
                }
            }
        }
        Ok(())
    }
}

fn advance(idx: &mut [usize], limit: usize) -> bool {
    for i in idx.iter_mut().rev() {
        *i += 1;
        if *i < limit {
            return true;
        }
        *i = 0;
    }
    false
}

fn check_base(base: &[Equation], a: &FiniteAlgebra, sig: &Signature) -> Result<(), EngineError> {
    for e in base {
        if !a.satisfies(e).holds() {
            return Err(EngineError::BaseNotSatisfied(e.display(sig).to_string()));
        }
    }
    Ok(())
}

fn profile_vars(base: &[Equation], universe: &TermUniverse) -> usize {
    base.iter()
        .flat_map(|e| e.variables())
        .max()
        .unwrap_or(0)
        .max(universe.vars)
        .max(1) as usize
}

/// Whether the model's identities within the universe (and the base) stay
/// identities under every pool member. With [`SolidMode::BasisOnly`] only
/// the base equations are transformed.
pub fn is_m_solid_bounded(
    base: &[Equation],
    model: &FiniteAlgebra,
    pool: &HypPool,
    universe: &TermUniverse,
    mode: SolidMode,
    limits: &Limits,
) -> Result<SolidityReport, EngineError> {
    check_base(base, model, &universe.sig)?;
    let vars = profile_vars(base, universe);
    let mut engine = Engine::new(model, ColorationRule::Uniform(0), pool, vars, *limits, true);
    let mut report = SolidityReport {
        verdict: Verdict::NoViolationWithinBounds,
        pool_size: pool.len(),
        distinct_derived: engine.der.len(),
        universe: universe.clone(),
        terms_checked: 0,
        rounds_requested: 1,
        rounds_completed: 1,
        fixpoint: false,
        basis_only: mode == SolidMode::BasisOnly,
        stopped: None,
    };
    // base equations first, one pair at a time
    for e in base {
        report.terms_checked += 2;
        let l = engine.entry(e.lhs.clone(), None);
        let r = engine.entry(e.rhs.clone(), None);
        if let Some(fail) = engine.check_pair(&l, &r)? {
            report.verdict = Verdict::Violated(Box::new(engine.violation(&e.lhs, &e.rhs, fail, 1)));
            return Ok(report);
        }
    }
    if mode == SolidMode::Full {
        let mut checked = 0;
        let found = engine.run_universe(universe, &mut checked)?;
        report.terms_checked += checked;
        if let Some(v) = found {
            report.verdict = Verdict::Violated(Box::new(v));
        }
    }
    Ok(report)
}

/// Whether the colored closure of the model's identities within the
/// universe stays inside the model's identities, for `ρ` with values in the
/// pool.
///
/// Round 1 checks every seed pair. Each further round adds the images of
/// the terms added last and checks every identity of the model among all
/// terms so far; this covers the literal iterate, whose equations are
/// identities between such images. Rounds stop early when the term set
/// would exceed `limits.max_terms`, or at a fixpoint.
pub fn is_c_colored_solid_bounded(
    base: &[Equation],
    model: &FiniteAlgebra,
    rule: &ColorationRule,
    pool: &HypPool,
    universe: &TermUniverse,
    rounds: usize,
    limits: &Limits,
) -> Result<SolidityReport, EngineError> {
    check_base(base, model, &universe.sig)?;
    let vars = profile_vars(base, universe);
    let mut engine = Engine::new(model, rule.clone(), pool, vars, *limits, false);
    let mut report = SolidityReport {
        verdict: Verdict::NoViolationWithinBounds,
        pool_size: pool.len(),
        distinct_derived: engine.der.len(),
        universe: universe.clone(),
        terms_checked: 0,
        rounds_requested: rounds.max(1),
        rounds_completed: 0,
        fixpoint: false,
        basis_only: false,
        stopped: None,
    };
    let mut checked = 0;
    let found = engine.run_universe(universe, &mut checked)?;
    report.terms_checked = checked;
    if let Some(v) = found {
        report.verdict = Verdict::Violated(Box::new(v));
        report.rounds_completed = 1;
        return Ok(report);
    }
    for e in base {
        for side in [&e.lhs, &e.rhs] {
            report.terms_checked += 1;
            let entry = engine.entry(side.clone(), None);
            if let Some(v) = engine.add(entry, 1)? {
                report.verdict = Verdict::Violated(Box::new(v));
                report.rounds_completed = 1;
                return Ok(report);
            }
        }
    }
    report.rounds_completed = 1;
    if report.rounds_requested == 1 {
        return Ok(report);
    }

    // later rounds work on an explicit term set
    let universe_count = count_up_to_depth(&universe.sig, universe.vars, universe.max_depth);
    let projected = universe_count.saturating_mul(pool.len() as u128);
    if projected > limits.max_terms {
        report.stopped = Some(format!(
            "round 2 needs up to {projected} terms, over the limit of {}",
            limits.max_terms
        ));
        return Ok(report);
    }
    let mut known: HashSet<Term> = universe.terms(limits)?.into_iter().collect();
    let mut newest: Vec<Term> = known.iter().cloned().collect();
    newest.sort();
    for e in base {
        for side in [&e.lhs, &e.rhs] {
            if known.insert(side.clone()) {
                newest.push(side.clone());
            }
        }
    }
    for round in 2..=report.rounds_requested {
        let mut fresh: Vec<Term> = Vec::new();
        let mut images = Vec::new();
        for t in &newest {
            images.clear();
            engine.images(t, &mut images)?;
            for img in images.drain(..) {
                if !known.contains(&img) {
                    known.insert(img.clone());
                    fresh.push(img);
                    if known.len() as u128 > limits.max_terms {
                        report.stopped = Some(format!(
                            "round {round} exceeded the limit of {} terms",
                            limits.max_terms
                        ));
                        return Ok(report);
                    }
                }
            }
        }
        if fresh.is_empty() {
            report.fixpoint = true;
            return Ok(report);
        }
        for t in &fresh {
            report.terms_checked += 1;
            let entry = engine.entry(t.clone(), None);
            if let Some(v) = engine.add(entry, round)? {
                report.verdict = Verdict::Violated(Box::new(v));
                report.rounds_completed = round;
                return Ok(report);
            }
        }
        report.rounds_completed = round;
        newest = fresh;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rectangular_band, semilattice};
    use crate::engine::{closure::id_bounded, AlgebraCatalog};
    use crate::parse::parse_equation;

    fn sig() -> Signature {
        Signature::binary()
    }
    fn eqs(list: &[&str]) -> Vec<Equation> {
        list.iter()
            .map(|e| parse_equation(e, &sig()).unwrap())
            .collect()
    }
    const RB: [&str; 3] = [
        "f(x,f(y,z)) = f(f(x,y),z)",
        "f(f(x,y),z) = f(x,z)",
        "f(x,x) = x",
    ];
    const SL: [&str; 3] = ["f(x,f(y,z)) = f(f(x,y),z)", "f(x,y) = f(y,x)", "f(x,x) = x"];

    #[test]
    fn rectangular_band_is_solid_within_bounds() {
        let s = sig();
        let pool = HypPool::enumerate(&s, 2, 100).unwrap();
        let u = TermUniverse::new(s.clone(), 3, 2);
        let rb = rectangular_band(&s);
        let r = is_m_solid_bounded(
            &eqs(&RB),
            &rb,
            &pool,
            &u,
            SolidMode::Full,
            &Limits::default(),
        )
        .unwrap();
        assert!(!r.is_violated(), "{}", r.display(&s));
        assert_eq!(r.distinct_derived, 4);
    }

    #[test]
    fn semilattice_commutativity_breaks() {
        let s = sig();
        let pool = HypPool::from_names(&s, &["id", "proj-first"]).unwrap();
        let u = TermUniverse::new(s.clone(), 2, 2);
        let sl = semilattice(&s);
        let r = is_m_solid_bounded(
            &eqs(&SL),
            &sl,
            &pool,
            &u,
            SolidMode::BasisOnly,
            &Limits::default(),
        )
        .unwrap();
        let v = r.violation().expect("violated");
        assert_eq!(v.seed, eqs(&["f(x,y) = f(y,x)"])[0]);
        assert_eq!(v.image, eqs(&["x = y"])[0]);
        assert_eq!(v.assignment, Assignment(vec![(1, 0), (2, 1)]));
        match &v.transform {
            Transform::Hyp { name, .. } => assert_eq!(name, "proj-first"),
            other => panic!("{other:?}"),
        }
        assert!(r.replay(&sl, None));
    }

    #[test]
    fn identity_pool_never_violates() {
        let s = sig();
        let pool = HypPool::from_names(&s, &["id"]).unwrap();
        let u = TermUniverse::new(s.clone(), 3, 2);
        let sl = semilattice(&s);
        let r = is_m_solid_bounded(
            &eqs(&SL),
            &sl,
            &pool,
            &u,
            SolidMode::Full,
            &Limits::default(),
        )
        .unwrap();
        assert!(!r.is_violated());
    }

    #[test]
    fn colored_rectangular_band() {
        let s = sig();
        let pool = HypPool::enumerate(&s, 2, 100).unwrap();
        let u = TermUniverse::new(s.clone(), 3, 2);
        let rb = rectangular_band(&s);
        for rule in [
            ColorationRule::RbFirstLast,
            ColorationRule::one_variable_split(ColorationRule::Uniform(5)),
        ] {
            let r =
                is_c_colored_solid_bounded(&eqs(&RB), &rb, &rule, &pool, &u, 2, &Limits::default())
                    .unwrap();
            assert!(!r.is_violated(), "{}", r.display(&s));
            assert_eq!(r.rounds_completed, 2);
        }
    }

    #[test]
    fn colored_semilattice_violation_replays() {
        let s = sig();
        let pool = HypPool::enumerate(&s, 1, 100).unwrap();
        let u = TermUniverse::new(s.clone(), 2, 2);
        let sl = semilattice(&s);
        let rule = ColorationRule::Uniform(0);
        let r = is_c_colored_solid_bounded(&eqs(&SL), &sl, &rule, &pool, &u, 1, &Limits::default())
            .unwrap();
        assert!(r.is_violated());
        assert!(r.replay(&sl, Some(&rule)));
    }

    /// The grouped check against the literal definition: every seed pair,
    /// every map from its colors into the pool.
    #[test]
    fn grouped_check_matches_pairwise_definition() {
        let s = sig();
        let pool = HypPool::enumerate(&s, 1, 100).unwrap();
        let u = TermUniverse::new(s.clone(), 2, 2);
        let lim = Limits::default();
        let big = crate::parse::parse_term("f(f(x,y),x)", &s).unwrap();
        let rules = [
            ColorationRule::Uniform(0),
            ColorationRule::RbFirstLast,
            ColorationRule::leftmost_special(big.clone(), 0, 1, 2),
            ColorationRule::term_equals(crate::parse::parse_term("f(x,x)", &s).unwrap(), 1, 2),
            ColorationRule::Enumeration(s.clone()),
        ];
        for (name, a) in crate::algebra::BUILTIN_NAMES
            .iter()
            .map(|n| (n, crate::algebra::builtin(n, &s).unwrap()))
        {
            let k = AlgebraCatalog::new(vec![(name.to_string(), a.clone())]).unwrap();
            let seeds = id_bounded(&k, &u, &lim).unwrap();
            for rule in &rules {
                let mut literal = false;
                for e in &seeds {
                    let bad = super::super::closure::for_each_colored_image(
                        e,
                        &pool,
                        rule,
                        &lim,
                        |_, img| {
                            if a.satisfies(&img).holds() {
                                std::ops::ControlFlow::Continue(())
                            } else {
                                std::ops::ControlFlow::Break(())
                            }
                        },
                    )
                    .unwrap();
                    if bad.is_some() {
                        literal = true;
                        break;
                    }
                }
                let r = is_c_colored_solid_bounded(&[], &a, rule, &pool, &u, 1, &lim).unwrap();
                assert_eq!(r.is_violated(), literal, "{name} {rule:?}");
                assert!(r.replay(&a, Some(rule)));
            }
        }
    }
}
