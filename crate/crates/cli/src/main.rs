//! `multihyp`: terms, hypersubstitutions, multi-hypersubstitutions, finite
//! algebras and bounded closure checks from the command line.
//!
//! Exit codes: 0 success or holds, 1 violated (a counterexample is
//! printed), 2 usage or format error, 3 bounds exceeded.

mod commands;
mod input;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use multihyp::Limits;

use crate::input::CliError;
use crate::output::Out;

#[derive(Parser, Debug)]
#[command(
    name = "multihyp",
    version,
    about = "Hypersubstitutions, colored terms and bounded identity checks"
)]
struct Cli {
    /// Signature file (`op <name> <arity>` per line); defaults to one binary `f`.
    #[arg(long, global = true)]
    sig: Option<PathBuf>,
    /// Print `key=value` lines.
    #[arg(long, global = true)]
    kv: bool,
    /// Largest term universe a check may enumerate.
    #[arg(long, global = true, default_value_t = Limits::default().max_terms)]
    max_terms: u128,
    /// Largest equation set a closure may materialize.
    #[arg(long, global = true, default_value_t = Limits::default().max_equations)]
    max_equations: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect terms.
    #[command(subcommand)]
    Term(TermCmd),
    /// Apply and compose hypersubstitutions.
    #[command(subcommand)]
    Hyp(HypCmd),
    /// Apply multi-hypersubstitutions to colored terms.
    #[command(subcommand)]
    Mhyp(MhypCmd),
    /// Identities, hyperidentities, derived algebras and clones.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Colored closures of equation sets.
    #[command(subcommand)]
    Closure(ClosureCmd),
    /// Bounded solidity checks.
    #[command(subcommand)]
    Solid(SolidCmd),
    /// Replay the built-in scenarios.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum TermCmd {
    /// List the addresses of the operation symbols in preorder.
    Addresses { term: String },
    /// Print the canonical form.
    Format {
        term: String,
        /// Use x, y, z, w, u, v for the first six variables.
        #[arg(long)]
        named: bool,
    },
}

#[derive(Subcommand, Debug)]
enum HypCmd {
    /// Apply a hypersubstitution to a term.
    Apply {
        /// Built-in name (id, swap, proj-first, proj-last) or file.
        #[arg(long)]
        hyp: String,
        term: String,
    },
    /// Print the composition `first ∘ second` in the file format.
    Compose { first: String, second: String },
}

#[derive(Subcommand, Debug)]
enum MhypCmd {
    /// Apply a multi-hypersubstitution under a coloration.
    Apply {
        /// Coloration spec, e.g. `uniform:0`, `rb-firstlast`, `singleton:<term>:1:0`.
        #[arg(long)]
        coloration: String,
        /// Multi-hypersubstitution file.
        #[arg(long)]
        mhyp: PathBuf,
        term: String,
    },
}

#[derive(Args, Debug, Clone)]
struct PoolArgs {
    /// Directory of `.hyp` files.
    #[arg(long)]
    pool: Option<PathBuf>,
    /// All hypersubstitutions with images up to this depth.
    #[arg(long)]
    pool_depth: Option<usize>,
    /// Comma-separated built-in names.
    #[arg(long, value_delimiter = ',')]
    pool_names: Option<Vec<String>>,
}

impl PoolArgs {
    fn given(&self) -> bool {
        self.pool.is_some() || self.pool_depth.is_some() || self.pool_names.is_some()
    }
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Check an identity or a hyperidentity.
    Check {
        /// `builtin:<name>` or algebra file.
        #[arg(long)]
        algebra: String,
        #[arg(long, conflicts_with = "hyper", required_unless_present = "hyper")]
        eq: Option<String>,
        #[arg(long)]
        hyper: Option<String>,
        /// Operations per clone in clone-complete mode.
        #[arg(long, default_value_t = 10_000)]
        clone_bound: usize,
        /// Check the hyperidentity over a pool instead of the clones.
        #[command(flatten)]
        pool: PoolArgs,
    },
    /// Print a derived algebra.
    Derive {
        #[arg(long)]
        algebra: String,
        #[arg(long, conflicts_with = "mhyp", required_unless_present = "mhyp")]
        hyp: Option<String>,
        #[arg(long, requires = "coloration")]
        mhyp: Option<PathBuf>,
        #[arg(long)]
        coloration: Option<String>,
    },
    /// Enumerate the clone of term operations of one arity.
    Clone {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, default_value_t = 10_000)]
        clone_bound: usize,
    },
}

#[derive(Args, Debug)]
struct ClosureArgs {
    /// Equation file.
    #[arg(long)]
    equations: PathBuf,
    /// Coloration spec.
    #[arg(long)]
    coloration: String,
    #[command(flatten)]
    pool: PoolArgs,
}

#[derive(Subcommand, Debug)]
enum ClosureCmd {
    /// One application of the colored closure.
    #[command(name = "chi-e")]
    ChiE(ClosureArgs),
    /// The iterated colored closure.
    #[command(name = "chi-E")]
    ChiEIterated {
        #[command(flatten)]
        args: ClosureArgs,
        #[arg(long, default_value_t = 5)]
        rounds: usize,
    },
}

#[derive(Args, Debug)]
struct SolidArgs {
    /// The model, `builtin:<name>` or algebra file.
    #[arg(long)]
    algebra: String,
    /// Named base: semigroups, RB, SL, LZ, bands, NB, RegB, VHS.
    #[arg(long, conflicts_with = "base", required_unless_present = "base")]
    variety: Option<String>,
    /// Equation file with the base.
    #[arg(long)]
    base: Option<PathBuf>,
    #[command(flatten)]
    pool: PoolArgs,
    /// Universe: terms up to this depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Universe: over x1..x<vars>.
    #[arg(long, default_value_t = 2)]
    vars: u32,
}

#[derive(Subcommand, Debug)]
enum SolidCmd {
    /// M-solidity relative to a pool.
    Check {
        #[command(flatten)]
        args: SolidArgs,
        /// Transform only the base equations.
        #[arg(long)]
        basis_only: bool,
    },
    /// Colored solidity relative to a pool and a coloration.
    ColoredCheck {
        #[command(flatten)]
        args: SolidArgs,
        /// Coloration spec, e.g. `uniform:0`, `rb-firstlast`, `term-equals:f(x,x):1:2`.
        #[arg(long)]
        coloration: String,
        /// Rounds of images: 1 transforms the universe, each later round the new images.
        #[arg(long, default_value_t = 5)]
        rounds: usize,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A scenario name or `all`.
    #[arg(required_unless_present = "list")]
    scenario: Option<String>,
    /// List the scenarios.
    #[arg(long)]
    list: bool,
}

/// How a command ended when it did not fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Violated,
}

pub struct Ctx {
    pub sig: multihyp::Signature,
    pub limits: Limits,
    pub out: Out,
}

fn run(cli: Cli) -> Result<Status, CliError> {
    let sig = input::signature(cli.sig.as_deref())?;
    let limits = Limits {
        max_terms: cli.max_terms,
        max_equations: cli.max_equations,
        ..Limits::default()
    };
    let mut ctx = Ctx {
        sig,
        limits,
        out: Out::new(cli.kv),
    };
    match cli.command {
        Command::Term(TermCmd::Addresses { term }) => commands::term_addresses(&ctx, &term),
        Command::Term(TermCmd::Format { term, named }) => commands::term_format(&ctx, &term, named),
        Command::Hyp(HypCmd::Apply { hyp, term }) => commands::hyp_apply(&ctx, &hyp, &term),
        Command::Hyp(HypCmd::Compose { first, second }) => {
            commands::hyp_compose(&ctx, &first, &second)
        }
        Command::Mhyp(MhypCmd::Apply {
            coloration,
            mhyp,
            term,
        }) => commands::mhyp_apply(&ctx, &coloration, &mhyp, &term),
        Command::Algebra(AlgebraCmd::Check {
            algebra,
            eq,
            hyper,
            clone_bound,
            pool,
        }) => match (eq, hyper) {
            (Some(eq), None) => commands::algebra_check_eq(&ctx, &algebra, &eq),
            (None, Some(hyper)) => {
                let pool = if pool.given() {
                    Some(pool_of(&ctx, &pool)?)
                } else {
                    None
                };
                commands::algebra_check_hyper(&ctx, &algebra, &hyper, clone_bound, pool.as_ref())
            }
            _ => Err(CliError::Usage("give exactly one of --eq, --hyper".into())),
        },
        Command::Algebra(AlgebraCmd::Derive {
            algebra,
            hyp,
            mhyp,
            coloration,
        }) => commands::algebra_derive(
            &ctx,
            &algebra,
            hyp.as_deref(),
            mhyp.as_deref(),
            coloration.as_deref(),
        ),
        Command::Algebra(AlgebraCmd::Clone {
            algebra,
            arity,
            clone_bound,
        }) => commands::algebra_clone(&ctx, &algebra, arity, clone_bound),
        Command::Closure(ClosureCmd::ChiE(args)) => {
            let pool = pool_of(&ctx, &args.pool)?;
            commands::closure(&ctx, &args.equations, &args.coloration, &pool, None)
        }
        Command::Closure(ClosureCmd::ChiEIterated { args, rounds }) => {
            let pool = pool_of(&ctx, &args.pool)?;
            commands::closure(&ctx, &args.equations, &args.coloration, &pool, Some(rounds))
        }
        Command::Solid(SolidCmd::Check { args, basis_only }) => {
            let setup = solid_setup(&ctx, &args)?;
            commands::solid_check(&ctx, &setup, basis_only)
        }
        Command::Solid(SolidCmd::ColoredCheck {
            args,
            coloration,
            rounds,
        }) => {
            let setup = solid_setup(&ctx, &args)?;
            commands::solid_colored_check(&ctx, &setup, &coloration, rounds)
        }
        Command::Verify(VerifyArgs { scenario, list }) => {
            if list {
                verify::list(&ctx);
                Ok(Status::Holds)
            } else {
                let name = scenario.expect("clap requires a scenario without --list");
                verify::run(&mut ctx, &name)
            }
        }
    }
}

fn pool_of(ctx: &Ctx, p: &PoolArgs) -> Result<multihyp::HypPool, CliError> {
    input::pool(
        p.pool.as_deref(),
        p.pool_depth,
        p.pool_names.as_deref(),
        &ctx.sig,
    )
}

fn solid_setup(ctx: &Ctx, args: &SolidArgs) -> Result<commands::SolidSetup, CliError> {
    let base = match (&args.variety, &args.base) {
        (Some(name), None) => {
            multihyp::engine::variety(name, &ctx.sig)
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "unknown variety `{name}`; known: {}",
                        multihyp::engine::VARIETY_NAMES.join(", ")
                    ))
                })?
                .base
        }
        (None, Some(path)) => input::equations(path, &ctx.sig)?,
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --variety, --base".into(),
            ))
        }
    };
    Ok(commands::SolidSetup {
        model: input::algebra(&args.algebra, &ctx.sig)?,
        base,
        pool: pool_of(ctx, &args.pool)?,
        universe: multihyp::TermUniverse::new(ctx.sig.clone(), args.depth, args.vars),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Holds) => ExitCode::SUCCESS,
        Ok(Status::Violated) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
