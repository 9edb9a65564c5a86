use std::path::PathBuf;
use std::time::Duration;

use clap::{Args as ClapArgs, Parser, Subcommand};

use crate::report::Format;
use crate::{parse_ideal_dsl, CliError, Command, Job, Limits};

/// Stanley depth of squarefree monomial ideals: closed-form bounds, exact
/// interval-partition search, associated primes, depth and certificates.
///
/// Ideals are written in a small language:
///   kpartite 7 7 7 9
///   kpartite 7 7 7 9 extend p=10
///   hyperbipartite V1=7 V2=8 s=5
///   ideal n=4: x1*x3, x1*x4, x2*x3, x2*x4
#[derive(Debug, Parser)]
#[command(name = "stanley-lab", version, verbatim_doc_comment)]
pub struct Args {
    #[command(subcommand)]
    pub command: Sub,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, ClapArgs)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    /// Directory for cached exact results (overridden by STANLEY_LAB_CACHE).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Give up after this many seconds and report what was settled.
    #[arg(long, global = true)]
    pub deadline: Option<f64>,

    /// Largest ambient dimension for which the characteristic poset is built.
    #[arg(long, global = true, default_value_t = stanley_core::poset::DEFAULT_POSET_CAP)]
    pub poset_cap: usize,

    /// Field characteristic for depth computations (0 or 2).
    #[arg(long = "char", global = true, default_value_t = 2)]
    pub field_char: u32,

    /// Bisect on the target depth instead of scanning down.
    #[arg(long, global = true)]
    pub binary_search: bool,

    /// Remember failed search states.
    #[arg(long, global = true)]
    pub memoize: bool,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// List the minimal generators.
    Gen { ideal: String },
    /// Closed-form lower and upper bounds on the Stanley depth.
    Bounds {
        ideal: String,
        /// Use this integer in place of the k-partite bound inside the extension formula.
        #[arg(long, allow_hyphen_values = true)]
        override_a: Option<i64>,
    },
    /// Exact Stanley depth with a witnessing decomposition.
    Sdepth { ideal: String },
    /// Associated primes and the primary decomposition check.
    Ass { ideal: String },
    /// Big size of the ideal.
    Bigsize { ideal: String },
    /// Depth of S/I and of I through the Stanley-Reisner complex.
    Depth { ideal: String },
    /// Certify or numerically check sdepth(I) >= depth(I).
    Verify { ideal: String },
    /// Recompute the published examples and run the desk-scale suites.
    Reproduce {
        /// Run the exact-search suites up to eight variables.
        #[arg(long)]
        full: bool,
    },
}

impl Args {
    pub fn into_job(self) -> Result<Job, CliError> {
        let command = match self.command {
            Sub::Gen { ideal } => Command::Gen(parse_ideal_dsl(&ideal)?),
            Sub::Bounds { ideal, override_a } => Command::Bounds { source: parse_ideal_dsl(&ideal)?, override_a },
            Sub::Sdepth { ideal } => Command::Sdepth(parse_ideal_dsl(&ideal)?),
            Sub::Ass { ideal } => Command::Ass(parse_ideal_dsl(&ideal)?),
            Sub::Bigsize { ideal } => Command::BigSize(parse_ideal_dsl(&ideal)?),
            Sub::Depth { ideal } => Command::Depth(parse_ideal_dsl(&ideal)?),
            Sub::Verify { ideal } => Command::Verify(parse_ideal_dsl(&ideal)?),
            Sub::Reproduce { full } => Command::Reproduce { full },
        };
        let g = self.global;
        let deadline = match g.deadline {
            None => None,
            Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
            Some(s) => return Err(CliError::Invalid(format!("--deadline must be a nonnegative number, got {s}"))),
        };
        let job = Job {
            command,
            format: g.format,
            limits: Limits { poset_cap: g.poset_cap, deadline },
            field_char: g.field_char,
            binary_search: g.binary_search,
            memoize: g.memoize,
            cache_dir: g.cache,
        };
        job.validate()?;
        Ok(job)
    }
}
