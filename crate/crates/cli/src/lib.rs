//! Command-line front end for Stanley depth computations on squarefree
//! monomial ideals: bounds, exact search, associated primes, depth and
//! certificates.

pub mod args;
pub mod cache;
pub mod dsl;
pub mod report;
pub mod reproduce;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use stanley_core::algebra::{
    big_size, depth_quotient, intersect_primes, kpartite_ass_report, minimal_primes, stanley_certificate,
    CertificateStatus, NumericCheck, NumericOutcome, NUMERIC_CHECK_MAX_VARS,
};
use stanley_core::bounds::{
    extension_upper_bound, extension_upper_bound_with_a, hypergraph_bounds, ishaq_bipartite_bound,
    kpartite_upper_bound, mindeg_lower_bound, BoundKind, BoundReport,
};
use stanley_core::poset::MAX_POSET_CAP;
use stanley_core::{build_poset_with_cap, decomposition_from_partition, exact_sdepth, Error, SearchOptions};

pub use dsl::{parse_ideal_dsl, Base, FamilySpec, IdealSource, ParseError};
pub use report::{Document, Format, Output};

use cache::Cache;
use report::{
    AssDoc, BigSizeDoc, BoundEntry, BoundsDoc, GenDoc, IntervalDoc, PartialDoc, ProbeDoc, SdepthDoc, VerifyDoc,
};

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DEADLINE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Deadline { .. }) => EXIT_DEADLINE,
            CliError::Io(_) => 1,
            _ => EXIT_VALIDATION,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Command {
    Gen(IdealSource),
    Bounds { source: IdealSource, override_a: Option<i64> },
    Sdepth(IdealSource),
    Ass(IdealSource),
    BigSize(IdealSource),
    Depth(IdealSource),
    Verify(IdealSource),
    Reproduce { full: bool },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen(_) => "gen",
            Command::Bounds { .. } => "bounds",
            Command::Sdepth(_) => "sdepth",
            Command::Ass(_) => "ass",
            Command::BigSize(_) => "bigsize",
            Command::Depth(_) => "depth",
            Command::Verify(_) => "verify",
            Command::Reproduce { .. } => "reproduce",
        }
    }

    pub fn source(&self) -> Option<&IdealSource> {
        match self {
            Command::Gen(s)
            | Command::Bounds { source: s, .. }
            | Command::Sdepth(s)
            | Command::Ass(s)
            | Command::BigSize(s)
            | Command::Depth(s)
            | Command::Verify(s) => Some(s),
            Command::Reproduce { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Limits {
    pub poset_cap: usize,
    pub deadline: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { poset_cap: stanley_core::poset::DEFAULT_POSET_CAP, deadline: None }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub format: Format,
    pub limits: Limits,
    pub field_char: u32,
    pub binary_search: bool,
    pub memoize: bool,
    pub cache_dir: Option<PathBuf>,
}

impl Job {
    pub fn new(command: Command) -> Job {
        Job {
            command,
            format: Format::Text,
            limits: Limits::default(),
            field_char: 2,
            binary_search: false,
            memoize: false,
            cache_dir: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.limits.poset_cap == 0 || self.limits.poset_cap > MAX_POSET_CAP {
            return Err(CliError::Invalid(format!("--poset-cap must lie in 1..={MAX_POSET_CAP}")));
        }
        if self.field_char != 0 && self.field_char != 2 {
            return Err(Error::FieldCharacteristic(self.field_char).into());
        }
        Ok(())
    }

    fn search_options(&self, hint: Option<usize>) -> SearchOptions {
        SearchOptions {
            binary_search: self.binary_search,
            memoize: self.memoize,
            deadline: self.limits.deadline.map(|d| Instant::now() + d),
            upper_hint: hint,
            poset_cap: self.limits.poset_cap,
            ..SearchOptions::default()
        }
    }
}

pub fn run(job: &Job) -> Result<Document, CliError> {
    job.validate()?;
    let result = match &job.command {
        Command::Gen(s) => Output::Gen(gen(s)?),
        Command::Bounds { source, override_a } => Output::Bounds(bounds(source, *override_a)?),
        Command::Sdepth(s) => sdepth(job, s)?,
        Command::Ass(s) => Output::Ass(ass(s)?),
        Command::BigSize(s) => {
            let a = ass(s)?;
            Output::BigSize(BigSizeDoc { primes: a.primes.len(), big_size: a.big_size })
        }
        Command::Depth(s) => Output::Depth(depth_quotient(&s.ideal()?, job.field_char)?),
        Command::Verify(s) => Output::Verify(verify(job, s)?),
        Command::Reproduce { full } => Output::Reproduce(reproduce::reproduce(*full, &job.search_options(None))),
    };
    Ok(Document { command: job.command.name(), input: job.command.source().map(IdealSource::to_dsl), result })
}

fn gen(source: &IdealSource) -> Result<GenDoc, CliError> {
    let ideal = source.ideal()?;
    let warnings = match source {
        IdealSource::Family(FamilySpec { base: Base::KPartite(spec), .. }) => spec.warnings(),
        _ => Vec::new(),
    };
    Ok(GenDoc {
        n: ideal.n(),
        count: ideal.generators().len(),
        canonical: ideal.canonical(),
        generators: ideal.generators().iter().map(|g| g.to_string()).collect(),
        warnings,
    })
}

fn entry(report: BoundReport) -> BoundEntry {
    BoundEntry { result: report.source.result_label(), report }
}

fn bounds(source: &IdealSource, override_a: Option<i64>) -> Result<BoundsDoc, CliError> {
    let ideal = source.ideal()?;
    let mut reports = vec![entry(mindeg_lower_bound(&ideal))];
    match source {
        IdealSource::Family(FamilySpec { base: Base::KPartite(spec), extend }) => {
            if *extend == 0 && override_a.is_none() {
                reports.push(entry(kpartite_upper_bound(spec)));
                if spec.k() == 2 && spec.n() >= 4 {
                    reports.push(entry(ishaq_bipartite_bound(spec.n())?));
                }
            } else {
                let report = match override_a {
                    Some(a) => extension_upper_bound_with_a(spec, *extend, a)?,
                    None => extension_upper_bound(spec, *extend)?,
                };
                reports.push(entry(report));
            }
        }
        IdealSource::Family(FamilySpec { base: Base::Hypergraph(spec), extend }) => {
            if *extend > 0 {
                return Err(CliError::Invalid("extension bound defined only for k-partite base".into()));
            }
            let (lower, upper) = hypergraph_bounds(spec);
            reports.push(entry(lower));
            reports.push(entry(upper));
        }
        IdealSource::Explicit(_) => {}
    }
    if override_a.is_some() && !matches!(source, IdealSource::Family(FamilySpec { base: Base::KPartite(_), .. })) {
        return Err(CliError::Invalid("--override-a applies only to k-partite families".into()));
    }
    let lower = reports.iter().filter(|e| e.report.kind == BoundKind::Lower).map(|e| e.report.integer_bound).max();
    let upper = reports.iter().filter(|e| e.report.kind == BoundKind::Upper).map(|e| e.report.integer_bound).min();
    Ok(BoundsDoc { lower: lower.unwrap_or(0), upper, reports })
}

/// A proven closed-form upper bound to start the search from, if the family has one.
fn family_hint(source: &IdealSource) -> Option<usize> {
    let IdealSource::Family(f) = source else { return None };
    let bound = match &f.base {
        Base::KPartite(spec) if spec.has_singleton_part() => return None,
        Base::KPartite(spec) if f.extend == 0 => kpartite_upper_bound(spec).integer_bound,
        Base::KPartite(spec) => extension_upper_bound(spec, f.extend).ok()?.integer_bound,
        Base::Hypergraph(spec) if f.extend == 0 => hypergraph_bounds(spec).1.integer_bound,
        Base::Hypergraph(_) => return None,
    };
    usize::try_from(bound).ok()
}

fn sdepth(job: &Job, source: &IdealSource) -> Result<Output, CliError> {
    let ideal = source.ideal()?;
    let canonical = ideal.canonical();
    let cache = Cache::resolve(job.cache_dir.as_deref());
    if let Some(doc) = cache.as_ref().and_then(|c| c.get(&canonical)) {
        return Ok(Output::Sdepth(doc));
    }
    let hint = family_hint(source).map(|h| h.max(ideal.min_degree()));
    let result = match exact_sdepth(&ideal, &job.search_options(hint)) {
        Ok(r) => r,
        Err(Error::Deadline { best_feasible, least_infeasible }) => {
            return Ok(Output::Partial(PartialDoc { status: "deadline", best_feasible, least_infeasible }));
        }
        Err(e) => return Err(e.into()),
    };
    let poset = build_poset_with_cap(&ideal, job.limits.poset_cap)?;
    let decomposition = decomposition_from_partition(&poset, &result.witness)?;
    let doc = SdepthDoc {
        value: result.value,
        upper_start: result.upper_start,
        witness: result
            .witness
            .intervals()
            .iter()
            .map(|iv| IntervalDoc { lower: iv.lower.indices(), upper: iv.upper.indices() })
            .collect(),
        decomposition: decomposition.spaces.iter().map(|s| s.to_string()).collect(),
        nodes: result.stats.nodes,
        elapsed_ms: result.stats.elapsed.as_millis() as u64,
        probes: result.stats.probes.iter().map(|p| ProbeDoc { d: p.d, feasible: p.feasible, nodes: p.nodes }).collect(),
    };
    if let Some(c) = &cache {
        if let Err(e) = c.put(&canonical, &doc) {
            eprintln!("warning: could not write cache entry: {e}");
        }
    }
    Ok(Output::Sdepth(doc))
}

fn ass(source: &IdealSource) -> Result<AssDoc, CliError> {
    if let Some(spec) = source.kpartite() {
        let r = kpartite_ass_report(spec)?;
        return Ok(AssDoc {
            method: "kpartite-closed-form",
            primes: r.primes.iter().map(|p| p.to_string()).collect(),
            big_size: r.big_size,
            decomposition_verified: r.decomposition_verified,
        });
    }
    let ideal = source.ideal()?;
    let primes = minimal_primes(&ideal)?;
    let t = big_size(&primes, ideal.n())?;
    let verified = intersect_primes(&primes, ideal.n())? == ideal;
    Ok(AssDoc {
        method: "minimal-vertex-covers",
        primes: primes.iter().map(|p| p.to_string()).collect(),
        big_size: t,
        decomposition_verified: verified,
    })
}

fn verify(job: &Job, source: &IdealSource) -> Result<VerifyDoc, CliError> {
    let opts = job.search_options(family_hint(source));
    if let Some(spec) = source.kpartite() {
        let c = stanley_certificate(spec, job.field_char, &opts)?;
        let status = match c.status {
            CertificateStatus::Certified => "CERTIFIED",
            CertificateStatus::Failed => "FAILED",
        };
        return Ok(VerifyDoc {
            family: c.family,
            big_size: Some(c.big_size),
            cited: Some(c.cited),
            numeric: c.numeric,
            status: status.into(),
        });
    }
    let ideal = source.ideal()?;
    if ideal.n() > NUMERIC_CHECK_MAX_VARS {
        return Err(CliError::Invalid(format!(
            "no certificate for this family and {} variables exceed the numeric check limit of {NUMERIC_CHECK_MAX_VARS}",
            ideal.n()
        )));
    }
    let sd = exact_sdepth(&ideal, &opts)?.value;
    let depth = depth_quotient(&ideal, job.field_char)?;
    let ok = sd >= depth.depth_ideal;
    Ok(VerifyDoc {
        family: source.to_dsl(),
        big_size: None,
        cited: None,
        numeric: NumericOutcome::Checked(NumericCheck {
            sdepth: sd,
            depth_ideal: depth.depth_ideal,
            field_char: depth.field_char,
            ok,
        }),
        status: if ok { "VERIFIED" } else { "FAILED" }.into(),
    })
}
