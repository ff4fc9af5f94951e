//! Built-in scenarios with fixed inputs and exact expected outcomes.
//! Sampled checks use a fixed seed, which is printed.

use std::fmt::Display;
use std::time::Instant;

use multihyp::algebra::{
    normal_band, rectangular_band, regular_band, right_zero, semilattice, zero_semigroup,
};
use multihyp::engine::{chi_e_c, is_c_colored_solid_bounded, variety};
use multihyp::random::{random_mhyp, random_term, seeded};
use multihyp::{
    Equation, EquationSet, FiniteAlgebra, HypPool, Hypersubstitution, Limits,
    MultiHypersubstitution, OpId, Satisfaction, Signature, SolidityReport, Term, TermUniverse,
};

use crate::input::{self, CliError};
use crate::{Ctx, Status};

/// Seed of every sampled check.
pub const SEED: u64 = 0x6d68_7970;

struct Scenario {
    name: &'static str,
    /// What is replayed and where the expected values come from.
    about: &'static str,
    run: fn(&mut Checks, &Limits) -> Result<(), CliError>,
}

const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "sec2-example",
        about: "worked example of the colored extension: s = f(y,f(y,x)), t = f(f(x,y),y), \
                root of s colored 0 and the rest 1, rho(0) = swap, default id",
        run: sec2_example,
    },
    Scenario {
        name: "ex33-rb",
        about: "rectangular bands are colored solid under the first/last-variable coloration: \
                sampled identities on the 4-element band and a bounded engine check",
        run: ex33_rb,
    },
    Scenario {
        name: "ex311-collapse",
        about: "collapse of f(f(x,x),f(f(x,x),f(x,x))) to x while every other term is fixed",
        run: ex311_collapse,
    },
    Scenario {
        name: "ex43-vhs",
        about: "x = f(x,x) is in the colored closure of the collapse fragment but not an \
                identity of the greatest solid variety of semigroups",
        run: ex43_vhs,
    },
    Scenario {
        name: "prop63-nonconjugate",
        about: "the colored image of an identity holds while the identity fails in the \
                colored derived algebra; the two satisfaction relations are not conjugate",
        run: prop63_nonconjugate,
    },
    Scenario {
        name: "ex64-bands",
        about: "rectangular, normal and regular bands stay solid when single-variable terms \
                are colored arbitrarily and all other terms get color 1",
        run: ex64_bands,
    },
    Scenario {
        name: "ex65-bands",
        about: "rectangular bands under the f(x,x)-versus-rest coloration: no violation; \
                semilattices under a uniform coloration: violated",
        run: ex65_bands,
    },
];

pub fn names() -> Vec<&'static str> {
    SCENARIOS.iter().map(|s| s.name).collect()
}

pub fn list(ctx: &Ctx) {
    for s in SCENARIOS {
        ctx.out.put(s.name, s.about);
    }
}

struct Check {
    key: String,
    value: String,
    pass: bool,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    /// Records `value`, passing when it renders as `expected`.
    fn expect(&mut self, key: impl Into<String>, value: impl Display, expected: impl Display) {
        let (value, expected) = (value.to_string(), expected.to_string());
        let pass = value == expected;
        let value = if pass {
            value
        } else {
            format!("{value} (expected {expected})")
        };
        self.0.push(Check {
            key: key.into(),
            value,
            pass,
        });
    }

    fn info(&mut self, key: impl Into<String>, value: impl Display) {
        self.0.push(Check {
            key: key.into(),
            value: value.to_string(),
            pass: true,
        });
    }
}

pub fn run(ctx: &mut Ctx, name: &str) -> Result<Status, CliError> {
    let chosen: Vec<&Scenario> = if name == "all" {
        SCENARIOS.iter().collect()
    } else {
        match SCENARIOS.iter().find(|s| s.name == name) {
            Some(s) => vec![s],
            None => {
                return Err(CliError::Usage(format!(
                    "unknown scenario `{name}`; known: all, {}",
                    names().join(", ")
                )))
            }
        }
    };
    let mut failed = 0;
    for s in chosen {
        let mut checks = Checks::default();
        let start = Instant::now();
        (s.run)(&mut checks, &ctx.limits)?;
        let elapsed = start.elapsed();
        let ok = checks.0.iter().all(|c| c.pass);
        if !ok {
            failed += 1;
        }
        ctx.out.scoped(s.name, |out| {
            out.note(format!("== {}: {}", s.name, s.about));
            for c in &checks.0 {
                if out.is_kv() {
                    out.put(&c.key, &c.value);
                    out.put(&format!("{} pass", c.key), c.pass);
                } else {
                    println!(
                        "  [{}] {}: {}",
                        if c.pass { "ok" } else { "FAIL" },
                        c.key,
                        c.value
                    );
                }
            }
            out.put("result", if ok { "pass" } else { "fail" });
            out.put("seconds", format!("{:.3}", elapsed.as_secs_f64()));
        });
    }
    Ok(if failed == 0 {
        Status::Holds
    } else {
        Status::Violated
    })
}

fn sig() -> Signature {
    Signature::binary()
}

fn term(text: &str) -> Result<Term, CliError> {
    input::term(text, &sig())
}

fn eq(text: &str) -> Result<Equation, CliError> {
    input::equation(text, &sig())
}

fn holds(s: &Satisfaction) -> String {
    match s {
        Satisfaction::Holds => "true".into(),
        Satisfaction::Fails(w) => format!("false at {w}"),
    }
}

fn verdict(r: &SolidityReport) -> &'static str {
    if r.is_violated() {
        "violated"
    } else {
        "no-violation-within-bounds"
    }
}

fn named(t: &Term) -> String {
    t.display_named(&sig()).to_string()
}

fn sec2_example(c: &mut Checks, _: &Limits) -> Result<(), CliError> {
    let s = sig();
    let sv = term("f(y,f(y,x))")?;
    let tv = term("f(f(x,y),y)")?;
    let rule = multihyp::ColorationRule::leftmost_special(sv.clone(), 0, 1, 0);
    let rho = MultiHypersubstitution::identity(&s).with(0, Hypersubstitution::swap(&s)?);
    c.info("coloration", rule.display(&s));
    c.expect("ρ̂_C[t]", named(&rho.apply(&rule, &tv)), "f(y,f(y,x))");
    c.expect("ρ̂_C[s]", named(&rho.apply(&rule, &sv)), "f(f(y,x),y)");
    Ok(())
}

fn ex311_collapse(c: &mut Checks, _: &Limits) -> Result<(), CliError> {
    let s = sig();
    let big = term("f(f(x,x),f(f(x,x),f(x,x)))")?;
    let rule = multihyp::ColorationRule::singleton(big.clone(), 1, 0);
    let rho = MultiHypersubstitution::new(Hypersubstitution::proj_first(&s))
        .with(0, Hypersubstitution::identity(&s));
    c.info("coloration", rule.display(&s));
    c.expect("ρ̂_C[s]", named(&rho.apply(&rule, &big)), "x");
    let mut rng = seeded(SEED);
    let mut fixed = 0;
    let mut drawn = 0;
    while drawn < 100 {
        let t = random_term(&mut rng, &s, 3, 5);
        if t == big {
            continue;
        }
        drawn += 1;
        if rho.apply(&rule, &t) == t {
            fixed += 1;
        }
    }
    c.info("seed", SEED);
    c.expect(
        "sampled t ≠ s with ρ̂_C[t] = t",
        format!("{fixed}/{drawn}"),
        "100/100",
    );
    Ok(())
}

fn ex43_vhs(c: &mut Checks, limits: &Limits) -> Result<(), CliError> {
    let s = sig();
    let z = zero_semigroup(&s, 2);
    let base = variety("VHS", &s).expect("built-in variety").base;
    c.expect("VHS base identities", base.len(), 5);
    let passed = base.iter().filter(|e| z.satisfies(e).holds()).count();
    c.expect(
        "zero semigroup satisfies VHS base",
        format!("{passed}/5"),
        "5/5",
    );
    c.expect(
        "zero semigroup ⊨ x = f(x,x)",
        holds(&z.satisfies(&eq("x = f(x,x)")?)),
        "false at x1=1",
    );
    let premise = eq("f(f(x,x),f(f(x,x),f(x,x))) = f(x,x)")?;
    c.expect(
        "zero semigroup ⊨ s = f(x,x)",
        holds(&z.satisfies(&premise)),
        "true",
    );
    let rule = multihyp::ColorationRule::singleton(premise.lhs.clone(), 1, 0);
    let pool = HypPool::from_names(&s, &["id", "proj-first"])?;
    let sigma: EquationSet = [premise].into_iter().collect();
    let closure = chi_e_c(&sigma, &pool, &rule, limits)?;
    c.expect(
        "x = f(x,x) ∈ χ_C^e[{s = f(x,x)}]",
        closure.contains(&eq("x = f(x,x)")?),
        true,
    );
    Ok(())
}

fn prop63_nonconjugate(c: &mut Checks, _: &Limits) -> Result<(), CliError> {
    let s = sig();
    let f = OpId(0);
    let rule = multihyp::ColorationRule::non_conjugacy(&s, f)?;
    let rho = MultiHypersubstitution::new(Hypersubstitution::proj_last(&s))
        .with(0, Hypersubstitution::proj_first(&s));
    let a = semilattice(&s);
    let derived = a.derived_mhyp(&s, &rho, &rule);
    let table = |x: &FiniteAlgebra| {
        x.table(f)
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    c.info("coloration", rule.display(&s));
    c.expect("f in ρ[A]", table(&derived), table(&right_zero(&s, 2)));
    let identity = eq("f(f(x,x),y) = f(f(x,x),x)")?;
    let (sv, tv) = (&identity.lhs, &identity.rhs);
    let image = Equation::new(rho.apply(&rule, sv), rho.apply(&rule, tv));
    c.expect("ρ̂_C[s]", named(&image.lhs), "x");
    c.expect("ρ̂_C[t]", named(&image.rhs), "x");
    let r1 = a.satisfies(&image);
    let r2 = derived.satisfies(&identity);
    c.expect("A ⊨ ρ̂_C[s] = ρ̂_C[t]", holds(&r1), "true");
    c.expect("ρ[A] ⊨ s = t", holds(&r2), "false at x1=0, x2=1");
    c.expect(
        "satisfaction checks disagree",
        r1.holds() != r2.holds(),
        true,
    );
    Ok(())
}

/// Bounded colored solidity of the model for its own base.
fn colored(
    model: &FiniteAlgebra,
    base_name: &str,
    rule: &multihyp::ColorationRule,
    pool: &HypPool,
    universe: &TermUniverse,
    rounds: usize,
    limits: &Limits,
) -> Result<SolidityReport, CliError> {
    let base = variety(base_name, &sig()).expect("built-in variety").base;
    Ok(is_c_colored_solid_bounded(
        &base, model, rule, pool, universe, rounds, limits,
    )?)
}

fn ex33_rb(c: &mut Checks, limits: &Limits) -> Result<(), CliError> {
    let s = sig();
    let rb = rectangular_band(&s);
    let rule = multihyp::ColorationRule::RbFirstLast;
    let pool = HypPool::enumerate(&s, 2, 1000)?;
    let mut rng = seeded(SEED);
    let mut identities = Vec::new();
    let mut invalid = 0;
    while identities.len() < 200 {
        let a = random_term(&mut rng, &s, 3, 5);
        let b = random_term(&mut rng, &s, 3, 5);
        if a == b
            || (a.first_variable(), a.last_variable()) != (b.first_variable(), b.last_variable())
        {
            continue;
        }
        let e = Equation::new(a, b);
        if !rb.satisfies(&e).holds() {
            invalid += 1;
        }
        identities.push(e);
    }
    c.info("seed", SEED);
    c.expect(
        "sampled identities failing on the 4-element band",
        invalid,
        0,
    );
    let mut violations = 0;
    for _ in 0..50 {
        let rho = random_mhyp(&mut rng, &pool, &[1, 2]);
        for e in &identities {
            let image = Equation::new(rho.apply(&rule, &e.lhs), rho.apply(&rule, &e.rhs));
            if !rb.satisfies(&image).holds() {
                violations += 1;
            }
        }
    }
    c.expect(
        "violated images of 200 identities under 50 ρ",
        violations,
        0,
    );
    let u = TermUniverse::new(s.clone(), 4, 2);
    let r = colored(&rb, "RB", &rule, &pool, &u, 1, limits)?;
    c.info("bounds", r.soundness_note());
    c.expect("bounded check", verdict(&r), "no-violation-within-bounds");
    Ok(())
}

fn ex64_bands(c: &mut Checks, limits: &Limits) -> Result<(), CliError> {
    let s = sig();
    let rule = multihyp::ColorationRule::one_variable_split(multihyp::ColorationRule::Enumeration(
        s.clone(),
    ));
    let pool = HypPool::enumerate(&s, 2, 1000)?;
    let u = TermUniverse::new(s.clone(), 3, 2);
    c.info("coloration", rule.display(&s));
    for (name, model, base) in [
        ("RB", rectangular_band(&s), "RB"),
        ("NB", normal_band(&s), "NB"),
        ("RegB", regular_band(&s), "RegB"),
    ] {
        let r = colored(&model, base, &rule, &pool, &u, 2, limits)?;
        c.expect(name, verdict(&r), "no-violation-within-bounds");
    }
    c.info(
        "bounds",
        format!("depth-2 pool of {}, {u}, 2 rounds", pool.len()),
    );
    Ok(())
}

fn ex65_bands(c: &mut Checks, limits: &Limits) -> Result<(), CliError> {
    let s = sig();
    let pool = HypPool::enumerate(&s, 2, 1000)?;
    let u = TermUniverse::new(s.clone(), 4, 2);
    let rule = multihyp::ColorationRule::term_equals(term("f(x,x)")?, 1, 2);
    let r = colored(&rectangular_band(&s), "RB", &rule, &pool, &u, 1, limits)?;
    c.info("bounds", r.soundness_note());
    c.expect(
        format!("RB under {}", rule.display(&s)),
        verdict(&r),
        "no-violation-within-bounds",
    );
    let uniform = multihyp::ColorationRule::Uniform(0);
    let r = colored(&semilattice(&s), "SL", &uniform, &pool, &u, 1, limits)?;
    c.expect("SL under uniform:0", verdict(&r), "violated");
    if let Some(v) = r.violation() {
        c.info(
            "SL counterexample",
            format!(
                "{} becomes {} at {}",
                v.seed.display(&s),
                v.image.display(&s),
                v.assignment
            ),
        );
    }
    Ok(())
}
