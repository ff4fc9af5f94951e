//! The non-`verify` subcommands.

use std::path::Path;

use multihyp::engine::{chi_e_c, chi_e_c_iterate, is_c_colored_solid_bounded, is_m_solid_bounded};
use multihyp::formats::{write_algebra, write_hyp};
use multihyp::{
    Equation, EquationSet, FiniteAlgebra, HypPool, HyperMode, HyperSatisfaction, Satisfaction,
    SolidMode, SolidityReport, TermColoring, TermUniverse,
};

use crate::input::{self, CliError};
use crate::{Ctx, Status};

pub fn term_addresses(ctx: &Ctx, text: &str) -> Result<Status, CliError> {
    let sig = &ctx.sig;
    let t = input::term(text, sig)?;
    let addresses = t.addresses();
    ctx.out.put("addresses", addresses.len());
    for a in &addresses {
        let sub = t.subterm_at(a).expect("listed addresses exist");
        ctx.out.put(&format!("at {a}"), sub.display(sig));
    }
    Ok(Status::Holds)
}

pub fn term_format(ctx: &Ctx, text: &str, named: bool) -> Result<Status, CliError> {
    let sig = &ctx.sig;
    let t = input::term(text, sig)?;
    if named {
        ctx.out.put("term", t.display_named(sig));
    } else {
        ctx.out.put("term", t.display(sig));
    }
    ctx.out.put("depth", t.depth());
    ctx.out.put("size", t.size());
    Ok(Status::Holds)
}

pub fn hyp_apply(ctx: &Ctx, hyp: &str, text: &str) -> Result<Status, CliError> {
    let sig = &ctx.sig;
    let h = input::hyp_ref(hyp, sig, None)?;
    let t = input::term(text, sig)?;
    ctx.out.put("hypersubstitution", h.display(sig));
    ctx.out.put("result", h.apply(&t).display(sig));
    Ok(Status::Holds)
}

pub fn hyp_compose(ctx: &Ctx, first: &str, second: &str) -> Result<Status, CliError> {
    let sig = &ctx.sig;
    let a = input::hyp_ref(first, sig, None)?;
    let b = input::hyp_ref(second, sig, None)?;
    let c = a.compose(&b);
    if ctx.out.is_kv() {
        for op in sig.ops() {
            ctx.out.put(sig.name(op), c.image(op).display(sig));
        }
    } else {
        print!("{}", write_hyp(&c, sig));
    }
    Ok(Status::Holds)
}

pub fn mhyp_apply(ctx: &Ctx, spec: &str, mhyp: &Path, text: &str) -> Result<Status, CliError> {
    let sig = &ctx.sig;
    let rule = input::coloration(spec, sig)?;
    let rho = input::mhyp_file(mhyp, sig)?;
    let t = input::term(text, sig)?;
    let coloring = rule.coloring(&t);
    let colors = match &coloring {
        TermColoring::Empty => "-".to_string(),
        c => (0..t.op_count())
            .map(|i| c.at(i).to_string())
            .collect::<Vec<_>>()
            .join(" "),
    };
    ctx.out.put("coloration", rule.display(sig));
    ctx.out.put("colors", colors);
    ctx.out.put("result", rho.apply(&rule, &t).display(sig));
    Ok(Status::Holds)
}

fn put_satisfaction(ctx: &Ctx, s: &Satisfaction) -> Status {
    match s {
        Satisfaction::Holds => {
            ctx.out.put("holds", true);
            Status::Holds
        }
        Satisfaction::Fails(w) => {
            ctx.out.put("holds", false);
            ctx.out.put("witness", w);
            Status::Violated
        }
    }
}

pub fn algebra_check_eq(ctx: &Ctx, algebra: &str, eq: &str) -> Result<Status, CliError> {
    let a = input::algebra(algebra, &ctx.sig)?;
    let e = input::equation(eq, &ctx.sig)?;
    ctx.out.put("equation", e.display(&ctx.sig));
    Ok(put_satisfaction(ctx, &a.satisfies(&e)))
}

pub fn algebra_check_hyper(
    ctx: &Ctx,
    algebra: &str,
    eq: &str,
    clone_bound: usize,
    pool: Option<&HypPool>,
) -> Result<Status, CliError> {
    let sig = &ctx.sig;
    let a = input::algebra(algebra, sig)?;
    let e = input::equation(eq, sig)?;
    let mode = match pool {
        Some(p) => {
            ctx.out.put("mode", format!("pool of {}", p.len()));
            HyperMode::Pool(p)
        }
        None => {
            ctx.out
                .put("mode", format!("clone-complete, bound {clone_bound}"));
            HyperMode::CloneComplete { bound: clone_bound }
        }
    };
    ctx.out.put("equation", e.display(sig));
    match a.hypersatisfies(sig, &e, mode) {
        HyperSatisfaction::Holds { exhaustive } => {
            ctx.out.put("hyperidentity", true);
            ctx.out.put("exhaustive", exhaustive);
            if pool.is_none() && !exhaustive {
                ctx.out
                    .note("a clone stopped at the bound; raise --clone-bound");
                return Err(CliError::Engine(multihyp::EngineError::Limit {
                    what: "clone operations",
                    count: clone_bound as u128,
                    limit: clone_bound as u128,
                }));
            }
            Ok(Status::Holds)
        }
        HyperSatisfaction::Fails { hyp, assignment } => {
            ctx.out.put("hyperidentity", false);
            for op in sig.ops() {
                ctx.out
                    .put(&format!("σ({})", sig.name(op)), hyp.image(op).display(sig));
            }
            let image = Equation::new(hyp.apply(&e.lhs), hyp.apply(&e.rhs));
            ctx.out.put("image", image.display(sig));
            ctx.out.put("witness", assignment);
            Ok(Status::Violated)
        }
    }
}

fn put_algebra(ctx: &Ctx, a: &FiniteAlgebra) {
    let sig = &ctx.sig;
    if ctx.out.is_kv() {
        ctx.out.put("carrier", a.size());
        for op in sig.ops() {
            let entries: Vec<String> = a.table(op).iter().map(|e| e.to_string()).collect();
            ctx.out
                .put(&format!("table {}", sig.name(op)), entries.join(" "));
        }
    } else {
        print!("{}", write_algebra(a, sig));
    }
}

pub fn algebra_derive(
    ctx: &Ctx,
    algebra: &str,
    hyp: Option<&str>,
    mhyp: Option<&Path>,
    coloration: Option<&str>,
) -> Result<Status, CliError> {
    let sig = &ctx.sig;
    let a = input::algebra(algebra, sig)?;
    let derived = match (hyp, mhyp, coloration) {
        (Some(h), None, _) => a.derived(&input::hyp_ref(h, sig, None)?),
        (None, Some(m), Some(c)) => {
            let rho = input::mhyp_file(m, sig)?;
            let rule = input::coloration(c, sig)?;
            a.derived_mhyp(sig, &rho, &rule)
        }
        _ => {
            return Err(CliError::Usage(
                "give --hyp, or --mhyp together with --coloration".into(),
            ))
        }
    };
    put_algebra(ctx, &derived);
    Ok(Status::Holds)
}

pub fn algebra_clone(
    ctx: &Ctx,
    algebra: &str,
    arity: usize,
    bound: usize,
) -> Result<Status, CliError> {
    let sig = &ctx.sig;
    if arity == 0 {
        return Err(CliError::Usage("the clone arity must be at least 1".into()));
    }
    let a = input::algebra(algebra, sig)?;
    let clone = a.clone_upto(arity, bound);
    ctx.out.put("arity", arity);
    ctx.out.put("size", clone.len());
    ctx.out.put("complete", clone.complete);
    for op in &clone.operations {
        let table: Vec<String> = op.table.iter().map(|e| e.to_string()).collect();
        ctx.out
            .put(&format!("op {}", op.witness.display(sig)), table.join(" "));
    }
    if !clone.complete {
        return Err(CliError::Engine(multihyp::EngineError::Limit {
            what: "clone operations",
            count: clone.len() as u128,
            limit: bound as u128,
        }));
    }
    Ok(Status::Holds)
}

pub fn closure(
    ctx: &Ctx,
    equations: &Path,
    spec: &str,
    pool: &HypPool,
    rounds: Option<usize>,
) -> Result<Status, CliError> {
    let sig = &ctx.sig;
    let sigma: EquationSet = input::equations(equations, sig)?.into_iter().collect();
    let rule = input::coloration(spec, sig)?;
    ctx.out.put("coloration", rule.display(sig));
    ctx.out.put("pool", pool.len());
    let result = match rounds {
        None => chi_e_c(&sigma, pool, &rule, &ctx.limits)?,
        Some(r) => {
            let it = chi_e_c_iterate(&sigma, pool, &rule, r, &ctx.limits)?;
            ctx.out.put("rounds", it.rounds);
            ctx.out.put("fixpoint", it.fixpoint);
            it.equations
        }
    };
    ctx.out.put("equations", result.len());
    for e in &result {
        ctx.out.put("equation", e.display(sig));
    }
    Ok(Status::Holds)
}

pub struct SolidSetup {
    pub model: FiniteAlgebra,
    pub base: Vec<Equation>,
    pub pool: HypPool,
    pub universe: TermUniverse,
}

fn put_report(ctx: &Ctx, r: &SolidityReport) -> Status {
    ctx.out.block(&r.display(&ctx.sig).to_string());
    if r.is_violated() {
        Status::Violated
    } else {
        Status::Holds
    }
}

pub fn solid_check(ctx: &Ctx, s: &SolidSetup, basis_only: bool) -> Result<Status, CliError> {
    let mode = if basis_only {
        SolidMode::BasisOnly
    } else {
        SolidMode::Full
    };
    let r = is_m_solid_bounded(&s.base, &s.model, &s.pool, &s.universe, mode, &ctx.limits)?;
    Ok(put_report(ctx, &r))
}

pub fn solid_colored_check(
    ctx: &Ctx,
    s: &SolidSetup,
    spec: &str,
    rounds: usize,
) -> Result<Status, CliError> {
    let rule = input::coloration(spec, &ctx.sig)?;
    ctx.out.put("coloration", rule.display(&ctx.sig));
    let r = is_c_colored_solid_bounded(
        &s.base,
        &s.model,
        &rule,
        &s.pool,
        &s.universe,
        rounds,
        &ctx.limits,
    )?;
    Ok(put_report(ctx, &r))
}
