//! `Id`, `Mod`, the closure operators and the colored Galois pair, all
//! relative to finite universes, catalogs and pools.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::ops::ControlFlow;

use crate::algebra::FiniteAlgebra;
use crate::coloration::{Color, ColorationRule, TermColoring};
use crate::hyp::{HypPool, Hypersubstitution};
use crate::mhyp::MultiHypersubstitution;
use crate::term::{Equation, Signature, Term};

use super::profile::{ProfiledTerms, Profiler};
use super::{AlgebraCatalog, EngineError, EquationSet, Limits, TermUniverse};

/// The universe split into classes of terms that induce the same term
/// operation in every algebra of the catalog. Classes are listed by their
/// smallest term; members are in ascending term order.
pub fn id_classes(
    catalog: &AlgebraCatalog,
    universe: &TermUniverse,
    limits: &Limits,
) -> Result<Vec<Vec<Term>>, EngineError> {
    let profiler = Profiler::new(
        catalog.algebras().cloned().collect(),
        universe.vars as usize,
    );
    let profiled = ProfiledTerms::build(&profiler, universe, universe.max_depth, limits)?;
    let mut classes: BTreeMap<&[u8], Vec<Term>> = BTreeMap::new();
    for (i, t) in profiled.terms.iter().enumerate() {
        classes
            .entry(profiled.profile(i))
            .or_default()
            .push(t.clone());
    }
    let mut out: Vec<Vec<Term>> = classes
        .into_values()
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    out.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(out)
}

/// All `(s, t)` in the universe squared that hold in every catalog member,
/// in both orientations and including `s = s`.
pub fn id_bounded(
    catalog: &AlgebraCatalog,
    universe: &TermUniverse,
    limits: &Limits,
) -> Result<EquationSet, EngineError> {
    let classes = id_classes(catalog, universe, limits)?;
    let total: u128 = classes.iter().map(|c| (c.len() as u128).pow(2)).sum();
    if total > limits.max_equations as u128 {
        return Err(EngineError::limit(
            "equations in Id",
            total,
            limits.max_equations as u128,
        ));
    }
    let mut out = EquationSet::new();
    for class in &classes {
        for s in class {
            for t in class {
                out.insert(Equation::new(s.clone(), t.clone()));
            }
        }
    }
    Ok(out)
}

/// The members of the catalog that satisfy every equation.
pub fn mod_catalog<'a>(
    equations: impl IntoIterator<Item = &'a Equation> + Clone,
    catalog: &AlgebraCatalog,
) -> AlgebraCatalog {
    let mut out = AlgebraCatalog::default();
    for (name, a) in catalog.iter() {
        if a.satisfies_all(equations.clone()) {
            out.push_distinct(name, a.clone());
        }
    }
    out
}

/// `{σ̂[u] = σ̂[v] : u = v ∈ Σ, σ ∈ M}`.
pub fn chi_e_m(equations: &EquationSet, pool: &HypPool) -> EquationSet {
    equations
        .iter()
        .flat_map(|e| {
            pool.hyps()
                .map(move |h| Equation::new(h.apply(&e.lhs), h.apply(&e.rhs)))
        })
        .collect()
}

/// A multi-hypersubstitution restricted to the colors that matter for one
/// equation: `colors[i]` is sent to pool member `members[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoChoice {
    pub colors: Vec<Color>,
    pub members: Vec<usize>,
}

impl RhoChoice {
    /// The full multi-hypersubstitution; unlisted colors go to the identity.
    pub fn to_mhyp(&self, pool: &HypPool) -> MultiHypersubstitution {
        let mut rho = MultiHypersubstitution::new(pool.identity().clone());
        for (&c, &m) in self.colors.iter().zip(&self.members) {
            rho.set(c, pool.members()[m].hyp.clone());
        }
        rho
    }
}

fn coloring_colors(c: &TermColoring) -> BTreeSet<Color> {
    c.colors()
}

/// Side of an equation with its images under every pool member, used when
/// the side is uniformly colored.
enum Side<'a> {
    Var(&'a Term),
    Uniform(Color, Vec<Term>),
    Mixed(&'a Term, TermColoring),
}

impl<'a> Side<'a> {
    fn new(t: &'a Term, rule: &ColorationRule, pool: &HypPool) -> Self {
        match rule.coloring(t) {
            TermColoring::Empty => Side::Var(t),
            TermColoring::Uniform(c) => Side::Uniform(c, pool.hyps().map(|h| h.apply(t)).collect()),
            coloring => Side::Mixed(t, coloring),
        }
    }

    fn colors(&self) -> BTreeSet<Color> {
        match self {
            Side::Var(_) => BTreeSet::new(),
            Side::Uniform(c, _) => BTreeSet::from([*c]),
            Side::Mixed(_, coloring) => coloring_colors(coloring),
        }
    }

    fn image(&self, colors: &[Color], choice: &[usize], hyps: &[&Hypersubstitution]) -> Term {
        match self {
            Side::Var(t) => (*t).clone(),
            Side::Uniform(c, images) => {
                let pos = colors.binary_search(c).expect("color is listed");
                images[choice[pos]].clone()
            }
            Side::Mixed(t, coloring) => {
                let mut rho = MultiHypersubstitution::new(hyps[0].clone());
                for (&c, &m) in colors.iter().zip(choice) {
                    rho.set(c, hyps[m].clone());
                }
                rho.apply_colored(coloring, t)
            }
        }
    }
}

/// Calls `f` with every image `ρ̂_C[u] = ρ̂_C[v]` of `eq` as `ρ` ranges over
/// all maps from the colors occurring in `eq` into the pool. Other colors
/// never influence the image, so this covers every `ρ` with values in the
/// pool. Maps are visited in odometer order over pool order, last color
/// fastest.
pub fn for_each_colored_image<B>(
    eq: &Equation,
    pool: &HypPool,
    rule: &ColorationRule,
    limits: &Limits,
    mut f: impl FnMut(&RhoChoice, Equation) -> ControlFlow<B>,
) -> Result<Option<B>, EngineError> {
    let lhs = Side::new(&eq.lhs, rule, pool);
    let rhs = Side::new(&eq.rhs, rule, pool);
    let colors: Vec<Color> = lhs.colors().union(&rhs.colors()).copied().collect();
    let count = (pool.len() as u128)
        .checked_pow(colors.len() as u32)
        .unwrap_or(u128::MAX);
    if count > limits.max_rho {
        return Err(EngineError::limit(
            "multi-hypersubstitutions per equation",
            count,
            limits.max_rho,
        ));
    }
    let hyps: Vec<&Hypersubstitution> = pool.hyps().collect();
    let mut choice = RhoChoice {
        colors: colors.clone(),
        members: vec![0; colors.len()],
    };
    loop {
        let image = Equation::new(
            lhs.image(&colors, &choice.members, &hyps),
            rhs.image(&colors, &choice.members, &hyps),
        );
        if let ControlFlow::Break(b) = f(&choice, image) {
            return Ok(Some(b));
        }
        if !advance(&mut choice.members, pool.len()) {
            return Ok(None);
        }
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

/// `χ_C^e[Σ]` with `ρ` ranging over maps into the pool.
pub fn chi_e_c(
    equations: &EquationSet,
    pool: &HypPool,
    rule: &ColorationRule,
    limits: &Limits,
) -> Result<EquationSet, EngineError> {
    let mut out = EquationSet::new();
    for e in equations {
        let overflow = for_each_colored_image(e, pool, rule, limits, |_, image| {
            out.insert(image);
            if out.len() > limits.max_equations {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if overflow.is_some() {
            return Err(EngineError::limit(
                "equations in the colored closure",
                out.len() as u128,
                limits.max_equations as u128,
            ));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iterated {
    pub equations: EquationSet,
    /// Rounds actually computed.
    pub rounds: usize,
    /// Some round added no new equation.
    pub fixpoint: bool,
}

/// The union of the iterates `χ_C^{e,0}[Σ], ..., χ_C^{e,r-1}[Σ]`. Each round
/// only transforms the equations that are new since the previous round.
pub fn chi_e_c_iterate(
    equations: &EquationSet,
    pool: &HypPool,
    rule: &ColorationRule,
    max_rounds: usize,
    limits: &Limits,
) -> Result<Iterated, EngineError> {
    let mut all = equations.clone();
    let mut frontier = equations.clone();
    for round in 1..=max_rounds {
        let images = chi_e_c(&frontier, pool, rule, limits)?;
        let fresh = images.difference(&all);
        if fresh.is_empty() {
            return Ok(Iterated {
                equations: all,
                rounds: round,
                fixpoint: true,
            });
        }
        all.extend(fresh.iter().cloned());
        if all.len() > limits.max_equations {
            return Err(EngineError::limit(
                "equations in the colored closure",
                all.len() as u128,
                limits.max_equations as u128,
            ));
        }
        frontier = fresh;
    }
    Ok(Iterated {
        equations: all,
        rounds: max_rounds,
        fixpoint: false,
    })
}

/// `{σ(A) : A ∈ K, σ ∈ M}` without duplicate tables. Names read
/// `<hyp>[<algebra>]`.
pub fn chi_a_m(catalog: &AlgebraCatalog, pool: &HypPool) -> AlgebraCatalog {
    let mut out = AlgebraCatalog::default();
    for (name, a) in catalog.iter() {
        for m in pool.members() {
            out.push_distinct(format!("{}[{}]", m.name, name), a.derived(&m.hyp));
        }
    }
    out
}

/// `{ρ[A] : A ∈ K}` with `ρ` ranging over maps from the colors of the
/// fundamental terms into the pool. Names read `rho<i>[<algebra>]`.
pub fn chi_a_c(
    sig: &Signature,
    catalog: &AlgebraCatalog,
    pool: &HypPool,
    rule: &ColorationRule,
    limits: &Limits,
) -> Result<AlgebraCatalog, EngineError> {
    let colors: Vec<Color> = sig
        .ops()
        .flat_map(|op| rule.coloring(&sig.fundamental_term(op)).colors())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let count = (pool.len() as u128)
        .checked_pow(colors.len() as u32)
        .unwrap_or(u128::MAX);
    if count > limits.max_rho {
        return Err(EngineError::limit(
            "multi-hypersubstitutions",
            count,
            limits.max_rho,
        ));
    }
    let mut out = AlgebraCatalog::default();
    for (name, a) in catalog.iter() {
        let mut choice = RhoChoice {
            colors: colors.clone(),
            members: vec![0; colors.len()],
        };
        let mut i = 0;
        loop {
            let rho = choice.to_mhyp(pool);
            out.push_distinct(format!("rho{i}[{name}]"), a.derived_mhyp(sig, &rho, rule));
            i += 1;
            if !advance(&mut choice.members, pool.len()) {
                break;
            }
        }
    }
    Ok(out)
}

/// Whether `check` accepts every equation of the first `rounds` iterates of
/// the colored closure of the single equation `eq`. Stops at the first
/// rejected equation.
fn closure_accepted(
    eq: &Equation,
    pool: &HypPool,
    rule: &ColorationRule,
    rounds: usize,
    limits: &Limits,
    check: &dyn Fn(&Equation) -> bool,
) -> Result<bool, EngineError> {
    if !check(eq) {
        return Ok(false);
    }
    let mut seen: HashSet<Equation> = HashSet::from([eq.clone()]);
    let mut frontier = vec![eq.clone()];
    for _ in 0..rounds {
        let mut next = Vec::new();
        for e in &frontier {
            let rejected = for_each_colored_image(e, pool, rule, limits, |_, image| {
                if seen.contains(&image) {
                    return ControlFlow::Continue(());
                }
                if !check(&image) {
                    return ControlFlow::Break(());
                }
                seen.insert(image.clone());
                next.push(image);
                ControlFlow::Continue(())
            })?;
            if rejected.is_some() {
                return Ok(false);
            }
            if seen.len() > limits.max_equations {
                return Err(EngineError::limit(
                    "equations in the colored closure",
                    seen.len() as u128,
                    limits.max_equations as u128,
                ));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(true)
}

/// `𝒞ModΣ` within the catalog: the members `A` with `χ_C^E[e] ⊆ Id A` for
/// every `e ∈ Σ`, iterating `rounds` times. Each algebra and equation is
/// checked on its own, stopping at the first failing image.
pub fn c_mod(
    equations: &EquationSet,
    catalog: &AlgebraCatalog,
    pool: &HypPool,
    rule: &ColorationRule,
    rounds: usize,
    limits: &Limits,
) -> Result<AlgebraCatalog, EngineError> {
    let mut out = AlgebraCatalog::default();
    for (name, a) in catalog.iter() {
        let mut member = true;
        for e in equations {
            let holds = |x: &Equation| a.satisfies(x).holds();
            if !closure_accepted(e, pool, rule, rounds, limits, &holds)? {
                member = false;
                break;
            }
        }
        if member {
            out.push_distinct(name, a.clone());
        }
    }
    Ok(out)
}

/// `Mod χ_C^E[Σ]` within the catalog, computed from the global closure.
pub fn c_mod_via_closure(
    equations: &EquationSet,
    catalog: &AlgebraCatalog,
    pool: &HypPool,
    rule: &ColorationRule,
    rounds: usize,
    limits: &Limits,
) -> Result<AlgebraCatalog, EngineError> {
    let closure = chi_e_c_iterate(equations, pool, rule, rounds, limits)?;
    Ok(mod_catalog(&closure.equations, catalog))
}

/// `𝒞Id K` within the universe: the pairs of universe terms whose colored
/// closure (up to `rounds` iterates) holds in every catalog member. Closure
/// equations may leave the universe; they are checked all the same.
pub fn c_id(
    catalog: &AlgebraCatalog,
    universe: &TermUniverse,
    pool: &HypPool,
    rule: &ColorationRule,
    rounds: usize,
    limits: &Limits,
) -> Result<EquationSet, EngineError> {
    let holds_in_all = |e: &Equation| catalog.algebras().all(|a| a.satisfies(e).holds());
    let mut out = EquationSet::new();
    for class in id_classes(catalog, universe, limits)? {
        for (i, s) in class.iter().enumerate() {
            out.insert(Equation::new(s.clone(), s.clone()));
            for t in &class[i + 1..] {
                let e = Equation::new(s.clone(), t.clone());
                // images of t = s are the flipped images of s = t
                if closure_accepted(&e, pool, rule, rounds, limits, &holds_in_all)? {
                    out.insert(e.flipped());
                    out.insert(e);
                }
            }
        }
        if out.len() > limits.max_equations {
            return Err(EngineError::limit(
                "equations in CId",
                out.len() as u128,
                limits.max_equations as u128,
            ));
        }
    }
    Ok(out)
}

/// Whether every algebra of the catalog satisfies every equation.
pub fn all_satisfy(catalog: &AlgebraCatalog, equations: &EquationSet) -> bool {
    catalog.algebras().all(|a| a.satisfies_all(equations))
}

/// The derived algebra of every pool member, without duplicates, each with
/// the first pool member (in pool order) producing it.
pub fn distinct_derived(a: &FiniteAlgebra, pool: &HypPool) -> Vec<(FiniteAlgebra, usize)> {
    let mut out: Vec<(FiniteAlgebra, usize)> = Vec::new();
    for (i, h) in pool.hyps().enumerate() {
        let d = a.derived(h);
        if !out.iter().any(|(e, _)| *e == d) {
            out.push((d, i));
        }
    }
    out
}
