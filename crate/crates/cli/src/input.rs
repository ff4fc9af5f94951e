//! Loading command-line inputs: signatures, terms, hypersubstitution
//! references, pools, algebras and equation files.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use multihyp::algebra::{builtin, BUILTIN_NAMES};
use multihyp::formats::{self, FormatError};
use multihyp::parse::SignatureFileError;
use multihyp::{
    parse_equation, parse_signature, parse_term, ColorationError, ColorationRule, EngineError,
    Equation, FiniteAlgebra, HypError, HypPool, Hypersubstitution, MultiHypersubstitution,
    NamedHyp, ParseError, Signature, Term,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: FormatError,
    },
    #[error("{}: {source}", path.display())]
    SignatureFile {
        path: PathBuf,
        #[source]
        source: SignatureFileError,
    },
    #[error("`{text}`: {source}")]
    Parse {
        text: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Hyp(#[from] HypError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Rule(#[from] ColorationError),
}

impl CliError {
    /// 3 for exceeded bounds, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(EngineError::Limit { .. })
            | CliError::Hyp(HypError::PoolTooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn signature(path: Option<&Path>) -> Result<Signature, CliError> {
    match path {
        None => Ok(Signature::binary()),
        Some(p) => parse_signature(&read(p)?).map_err(|source| CliError::SignatureFile {
            path: p.to_path_buf(),
            source,
        }),
    }
}

pub fn term(text: &str, sig: &Signature) -> Result<Term, CliError> {
    parse_term(text, sig).map_err(|source| CliError::Parse {
        text: text.to_string(),
        source,
    })
}

pub fn equation(text: &str, sig: &Signature) -> Result<Equation, CliError> {
    parse_equation(text, sig).map_err(|source| CliError::Parse {
        text: text.to_string(),
        source,
    })
}

pub fn equations(path: &Path, sig: &Signature) -> Result<Vec<Equation>, CliError> {
    formats::parse_equations(&read(path)?, sig).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

pub fn hyp_file(path: &Path, sig: &Signature) -> Result<Hypersubstitution, CliError> {
    formats::parse_hyp(&read(path)?, sig).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

/// A built-in name (`id`, `swap`, `proj-first`, `proj-last`) or a path,
/// relative to `base` when given.
pub fn hyp_ref(
    reference: &str,
    sig: &Signature,
    base: Option<&Path>,
) -> Result<Hypersubstitution, CliError> {
    match Hypersubstitution::named(reference, sig) {
        Ok(h) => Ok(h),
        Err(HypError::UnknownName(_)) => {
            let path = match base {
                Some(dir) => dir.join(reference),
                None => PathBuf::from(reference),
            };
            if !path.exists() {
                return Err(CliError::Usage(format!(
                    "`{reference}` is neither a built-in hypersubstitution nor a file"
                )));
            }
            hyp_file(&path, sig)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn mhyp_file(path: &Path, sig: &Signature) -> Result<MultiHypersubstitution, CliError> {
    let text = read(path)?;
    let dir = path.parent().map(Path::to_path_buf);
    let mut failure = None;
    let parsed = formats::parse_mhyp(&text, |r| {
        hyp_ref(r, sig, dir.as_deref()).map_err(|e| {
            let message = e.to_string();
            failure = Some(e);
            FormatError::Syntax { line: 0, message }
        })
    });
    match (parsed, failure) {
        (Ok(rho), _) => Ok(rho),
        (Err(_), Some(e)) => Err(e),
        (Err(source), None) => Err(CliError::File {
            path: path.to_path_buf(),
            source,
        }),
    }
}

/// `builtin:<name>` or an algebra file.
pub fn algebra(reference: &str, sig: &Signature) -> Result<FiniteAlgebra, CliError> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return builtin(name, sig).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown built-in algebra `{name}`; known: {}",
                BUILTIN_NAMES.join(", ")
            ))
        });
    }
    let path = Path::new(reference);
    formats::parse_algebra(&read(path)?, sig).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

pub fn coloration(spec: &str, sig: &Signature) -> Result<ColorationRule, CliError> {
    Ok(formats::parse_coloration(spec, sig)?)
}

/// Every `*.hyp` file of `dir` in file name order, named by file stem.
pub fn pool_dir(dir: &Path, sig: &Signature) -> Result<HypPool, CliError> {
    let entries = fs::read_dir(dir).map_err(|source| CliError::Read {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|source| CliError::Read {
            path: dir.to_path_buf(),
            source,
        })?;
        let path = entry.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "hyp") {
            paths.push(path);
        }
    }
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no .hyp files in the pool directory",
            dir.display()
        )));
    }
    let members = paths
        .iter()
        .map(|p| {
            Ok(NamedHyp {
                name: p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                hyp: hyp_file(p, sig)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(HypPool::new(members)?)
}

/// Exactly one of a directory, an enumeration depth or a list of built-in
/// names.
pub fn pool(
    dir: Option<&Path>,
    depth: Option<usize>,
    names: Option<&[String]>,
    sig: &Signature,
) -> Result<HypPool, CliError> {
    match (dir, depth, names) {
        (Some(d), None, None) => pool_dir(d, sig),
        (None, Some(d), None) => Ok(HypPool::enumerate(sig, d, 100_000)?),
        (None, None, Some(n)) => {
            let n: Vec<&str> = n.iter().map(String::as_str).collect();
            Ok(HypPool::from_names(sig, &n)?)
        }
        _ => Err(CliError::Usage(
            "give exactly one of --pool, --pool-depth, --pool-names".into(),
        )),
    }
}
