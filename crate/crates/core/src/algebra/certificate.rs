use serde::Serialize;

use super::{big_size, depth_quotient, kpartite_associated_primes};
use crate::error::Result;
use crate::families::{kpartite_edge_ideal, KPartiteSpec};
use crate::sdepth::{exact_sdepth, SearchOptions};

/// Largest `n` for which the certificate also runs the numeric comparison.
pub const NUMERIC_CHECK_MAX_VARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CertificateStatus {
    Certified,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericCheck {
    pub sdepth: usize,
    pub depth_ideal: usize,
    pub field_char: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum NumericOutcome {
    Checked(NumericCheck),
    Skipped(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StanleyCertificate {
    pub family: String,
    pub big_size: usize,
    pub cited: &'static str,
    pub numeric: NumericOutcome,
    pub status: CertificateStatus,
}

/// Certifies `sdepth(I) >= depth(I)` for a k-partite edge ideal from big size 1,
/// and on small instances compares the two numbers directly.
pub fn stanley_certificate(spec: &KPartiteSpec, field_char: u32, opts: &SearchOptions) -> Result<StanleyCertificate> {
    let primes = kpartite_associated_primes(spec);
    let t = big_size(&primes, spec.n())?;
    let numeric = if spec.n() <= NUMERIC_CHECK_MAX_VARS {
        let ideal = kpartite_edge_ideal(spec)?;
        let sdepth = exact_sdepth(&ideal, opts)?.value;
        let depth = depth_quotient(&ideal, field_char)?;
        NumericOutcome::Checked(NumericCheck {
            sdepth,
            depth_ideal: depth.depth_ideal,
            field_char: depth.field_char,
            ok: sdepth >= depth.depth_ideal,
        })
    } else {
        NumericOutcome::Skipped("skipped")
    };
    let numeric_ok = match &numeric {
        NumericOutcome::Checked(c) => c.ok,
        NumericOutcome::Skipped(_) => true,
    };
    let status = if t == 1 && numeric_ok { CertificateStatus::Certified } else { CertificateStatus::Failed };
    Ok(StanleyCertificate { family: spec.dsl(), big_size: t, cited: "Corollary 2.8", numeric, status })
}
