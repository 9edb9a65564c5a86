//! Associated primes, big size, depth and the Stanley inequality check for
//! k-partite edge ideals.

mod certificate;
mod homology;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::combin::for_each_k_subset;
use crate::error::{Error, Result};
use crate::families::{kpartite_edge_ideal, KPartiteSpec};
use crate::ideal::{full_mask, minimalize, Monomial, SqfreeIdeal};

pub use certificate::{
    stanley_certificate, CertificateStatus, NumericCheck, NumericOutcome, StanleyCertificate, NUMERIC_CHECK_MAX_VARS,
};
pub use homology::{depth_quotient, reduced_homology_dims, DepthReport, Field, DEPTH_MAX_VARS};

/// Largest `n` for the exhaustive minimal-prime enumeration.
pub const MINIMAL_PRIMES_MAX_VARS: usize = 20;
/// Largest `n` for the colon-ideal trace.
pub const COLON_TRACE_MAX_VARS: usize = 16;

/// A monomial prime `(x_i : i in variables)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    variables: Monomial,
}

impl PrimeIdeal {
    pub fn new(variables: Monomial) -> Result<PrimeIdeal> {
        if variables.is_one() {
            return Err(Error::ZeroIdeal);
        }
        Ok(PrimeIdeal { variables })
    }

    pub fn variables(&self) -> Monomial {
        self.variables
    }

    /// The prime as a squarefree ideal generated by its variables.
    pub fn to_ideal(&self, n: usize) -> Result<SqfreeIdeal> {
        minimalize(self.variables.indices().into_iter().map(Monomial::var), n)
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.variables.indices().iter().map(|i| format!("x{i}")).collect();
        write!(f, "({})", vars.join(","))
    }
}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PrimeIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.variables.serialize(serializer)
    }
}

/// The primes `P_i` generated by all variables outside part `i`.
pub fn kpartite_associated_primes(spec: &KPartiteSpec) -> Vec<PrimeIdeal> {
    let all = full_mask(spec.n());
    spec.blocks().into_iter().map(|b| PrimeIdeal { variables: Monomial::from_mask(all & !b.mask()) }).collect()
}

/// Minimal primes of a squarefree ideal: the minimal vertex covers of its
/// generator hypergraph, sorted.
pub fn minimal_primes(ideal: &SqfreeIdeal) -> Result<Vec<PrimeIdeal>> {
    let n = ideal.n();
    if n > MINIMAL_PRIMES_MAX_VARS {
        return Err(Error::SizeCap { what: "minimal prime enumeration", n, limit: MINIMAL_PRIMES_MAX_VARS });
    }
    let gens: Vec<u64> = ideal.generators().iter().map(|g| g.mask()).collect();
    let mut covers = Vec::new();
    collect_covers(&gens, 0, 0, &mut covers);
    let mut minimal: Vec<PrimeIdeal> = covers
        .into_iter()
        .filter(|&c| is_minimal_cover(&gens, c))
        .map(|c| PrimeIdeal { variables: Monomial::from_mask(c) })
        .collect();
    minimal.sort();
    minimal.dedup();
    Ok(minimal)
}

// Branch on the vertices of the first unhit edge; vertices already tried for
// that edge are excluded from later siblings so no cover is produced twice.
fn collect_covers(gens: &[u64], chosen: u64, excluded: u64, out: &mut Vec<u64>) {
    let Some(&edge) = gens.iter().find(|&&g| g & chosen == 0) else {
        out.push(chosen);
        return;
    };
    let mut excluded = excluded;
    let mut options = edge & !excluded;
    while options != 0 {
        let v = options & options.wrapping_neg();
        options ^= v;
        collect_covers(gens, chosen | v, excluded, out);
        excluded |= v;
    }
}

fn is_minimal_cover(gens: &[u64], cover: u64) -> bool {
    let mut rest = cover;
    while rest != 0 {
        let v = rest & rest.wrapping_neg();
        rest ^= v;
        let smaller = cover & !v;
        if gens.iter().all(|&g| g & smaller != 0) {
            return false;
        }
    }
    true
}

/// Least `t` such that every `t + 1` of the primes together involve all of `[n]`.
pub fn big_size(primes: &[PrimeIdeal], n: usize) -> Result<usize> {
    if primes.is_empty() {
        return Err(Error::BigSizeUndefined("empty prime list".into()));
    }
    if primes.len() > 64 {
        return Err(Error::BigSizeUndefined("more than 64 primes".into()));
    }
    let full = full_mask(n);
    let union = primes.iter().fold(0, |acc, p| acc | p.variables.mask());
    if union != full {
        return Err(Error::BigSizeUndefined(format!(
            "the primes together miss variables {:?}",
            Monomial::from_mask(full & !union)
        )));
    }
    let index_set = full_mask(primes.len());
    for t in 0..primes.len() {
        let mut all_cover = true;
        for_each_k_subset(index_set, t + 1, |pick| {
            if !all_cover {
                return;
            }
            let mut u = 0;
            let mut rest = pick;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                u |= primes[i].variables.mask();
            }
            all_cover = u == full;
        });
        if all_cover {
            return Ok(t);
        }
    }
    unreachable!("the full prime set covers [n]")
}

/// Associated primes of a k-partite edge ideal with big size and a check that
/// their intersection gives back the ideal.
#[derive(Clone, Debug, Serialize)]
pub struct AssPrimesReport {
    pub primes: Vec<PrimeIdeal>,
    pub big_size: usize,
    pub decomposition_verified: bool,
}

pub fn kpartite_ass_report(spec: &KPartiteSpec) -> Result<AssPrimesReport> {
    let ideal = kpartite_edge_ideal(spec)?;
    let primes = kpartite_associated_primes(spec);
    let t = big_size(&primes, spec.n())?;
    let inter = intersect_primes(&primes, spec.n())?;
    Ok(AssPrimesReport { primes, big_size: t, decomposition_verified: inter == ideal })
}

/// `P_1 ∩ ... ∩ P_r` as a squarefree ideal.
pub fn intersect_primes(primes: &[PrimeIdeal], n: usize) -> Result<SqfreeIdeal> {
    let mut it = primes.iter();
    let first = it.next().ok_or(Error::ZeroIdeal)?.to_ideal(n)?;
    it.try_fold(first, |acc, p| acc.intersect(&p.to_ideal(n)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepOutcome {
    /// The colon ideal is the prime of part `part` (1-based).
    NewPrime { part: usize },
    /// The colon ideal contains the already-found prime of part `part`.
    Redundant { part: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ColonStep {
    pub variable: usize,
    pub colon: SqfreeIdeal,
    pub residual: SqfreeIdeal,
    pub outcome: StepOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColonTrace {
    pub steps: Vec<ColonStep>,
    pub primes: Vec<PrimeIdeal>,
    pub intersection_verified: bool,
}

/// Splits `I = (I : x) ∩ (I, x)` variable by variable through every part but
/// the last, checking at each step that the colon is the expected prime or
/// contains a prime already found, and that the final residual is the prime of
/// the last part.
pub fn colon_trace(spec: &KPartiteSpec) -> Result<ColonTrace> {
    let n = spec.n();
    if n > COLON_TRACE_MAX_VARS {
        return Err(Error::SizeCap { what: "colon trace", n, limit: COLON_TRACE_MAX_VARS });
    }
    let ideal = kpartite_edge_ideal(spec)?;
    let expected = kpartite_associated_primes(spec);
    let expected_ideals: Vec<SqfreeIdeal> = expected.iter().map(|p| p.to_ideal(n)).collect::<Result<_>>()?;
    let blocks = spec.blocks();
    let k = blocks.len();

    let mut current = ideal.clone();
    let mut found: Vec<usize> = Vec::new();
    let mut steps = Vec::new();
    for (part, block) in blocks.iter().enumerate().take(k - 1) {
        for (pos, v) in block.indices().into_iter().enumerate() {
            let step = steps.len() + 1;
            let fail = |reason: String| Error::ColonTrace { step, reason };
            let colon = current.colon_var(v).map_err(|e| fail(format!("colon by x{v}: {e}")))?;
            let residual = current.add_var(v).map_err(|e| fail(format!("adding x{v}: {e}")))?;
            if colon.intersect(&residual)? != current {
                return Err(fail(format!("(J : x{v}) ∩ (J, x{v}) differs from J")));
            }
            let outcome = if pos == 0 {
                if colon != expected_ideals[part] {
                    return Err(fail(format!("(J : x{v}) = {colon} is not P_{}", part + 1)));
                }
                found.push(part);
                StepOutcome::NewPrime { part: part + 1 }
            } else {
                let Some(&j) = found.iter().find(|&&j| colon.contains_ideal(&expected_ideals[j])) else {
                    return Err(fail(format!("(J : x{v}) = {colon} contains no prime found so far")));
                };
                StepOutcome::Redundant { part: j + 1 }
            };
            steps.push(ColonStep { variable: v, colon, residual: residual.clone(), outcome });
            current = residual;
        }
    }
    if current != expected_ideals[k - 1] {
        return Err(Error::ColonTrace {
            step: steps.len() + 1,
            reason: format!("final residual {current} is not P_{k}"),
        });
    }
    let inter = intersect_primes(&expected, n)?;
    if inter != ideal {
        return Err(Error::ColonTrace {
            step: steps.len() + 1,
            reason: format!("intersection of primes {inter} differs from the ideal"),
        });
    }
    Ok(ColonTrace { steps, primes: expected, intersection_verified: true })
}
