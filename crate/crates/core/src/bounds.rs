//! Closed-form Stanley depth bounds, evaluated exactly.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{binom, Rational};
use crate::error::{Error, Result};
use crate::families::{HypergraphSpec, KPartiteSpec};
use crate::ideal::SqfreeIdeal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundSource {
    #[serde(rename = "KPARTITE_L24")]
    KpartiteL24,
    #[serde(rename = "EXTENSION_T29")]
    ExtensionT29,
    #[serde(rename = "HYPERGRAPH_T34")]
    HypergraphT34,
    Ishaq,
    MindegLower,
}

impl BoundSource {
    /// Name of the published result behind the bound, used in reports.
    pub fn result_label(self) -> &'static str {
        match self {
            BoundSource::KpartiteL24 => "Lemma 2.4",
            BoundSource::ExtensionT29 => "Theorem 2.9",
            BoundSource::HypergraphT34 => "Theorem 3.4",
            BoundSource::Ishaq => "Ishaq bipartite bound",
            BoundSource::MindegLower => "least generator degree",
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            BoundSource::KpartiteL24 => "KPARTITE_L24",
            BoundSource::ExtensionT29 => "EXTENSION_T29",
            BoundSource::HypergraphT34 => "HYPERGRAPH_T34",
            BoundSource::Ishaq => "ISHAQ",
            BoundSource::MindegLower => "MINDEG_LOWER",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

/// Parameters a bound was evaluated at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BoundInputs {
    KPartite { parts: Vec<usize> },
    Extension { parts: Vec<usize>, p: usize, a: i64 },
    Hypergraph { v1: usize, v2: usize, s: usize },
    Vertices { n: usize },
    Ideal { ideal: String },
}

/// An evaluated bound `base + numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub source: BoundSource,
    pub kind: BoundKind,
    pub base: i64,
    /// Unreduced numerator of the fractional part.
    pub numerator: Rational,
    /// Unreduced denominator of the fractional part; may be a half-integer.
    pub denominator: Rational,
    #[serde(rename = "exact")]
    pub exact_value: Rational,
    /// Floor of `exact_value` for upper bounds, the value itself for lower bounds.
    #[serde(rename = "floor")]
    pub integer_bound: i64,
    /// Integer k-partite bound substituted into the extension formula.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    /// The comparison bound `A + p` for extensions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub naive_comparison: Option<i64>,
    pub inputs: BoundInputs,
    pub warnings: Vec<String>,
}

impl BoundReport {
    fn upper(
        source: BoundSource,
        base: i64,
        numerator: Rational,
        denominator: Rational,
        inputs: BoundInputs,
        warnings: Vec<String>,
    ) -> BoundReport {
        let exact_value = Rational::from(base) + &numerator / &denominator;
        let integer_bound = exact_value.floor_i64();
        BoundReport {
            source,
            kind: BoundKind::Upper,
            base,
            numerator,
            denominator,
            exact_value,
            integer_bound,
            a: None,
            naive_comparison: None,
            inputs,
            warnings,
        }
    }

    fn lower(source: BoundSource, value: i64, inputs: BoundInputs) -> BoundReport {
        BoundReport {
            source,
            kind: BoundKind::Lower,
            base: value,
            numerator: Rational::zero(),
            denominator: Rational::from(1),
            exact_value: Rational::from(value),
            integer_bound: value,
            a: None,
            naive_comparison: None,
            inputs,
            warnings: Vec::new(),
        }
    }
}

fn sum_binom(parts: &[usize], b: u64) -> BigInt {
    parts.iter().map(|&r| binom(r as u64, b)).sum()
}

/// `2 + (C(n,3) - sum C(r_i,3)) / sum_{i<j} r_i r_j`.
pub fn kpartite_upper_bound(spec: &KPartiteSpec) -> BoundReport {
    let n = spec.n() as u64;
    let numerator = binom(n, 3) - sum_binom(spec.parts(), 3);
    let denominator = BigInt::from(spec.edge_count());
    BoundReport::upper(
        BoundSource::KpartiteL24,
        2,
        numerator.into(),
        denominator.into(),
        BoundInputs::KPartite { parts: spec.parts().to_vec() },
        spec.warnings(),
    )
}

/// The bound for `(I, x_{n+1}, ..., x_{n+p})` over a k-partite edge ideal `I`,
/// with `A` the integer k-partite bound.
pub fn extension_upper_bound(spec: &KPartiteSpec, p: usize) -> Result<BoundReport> {
    let a = kpartite_upper_bound(spec).integer_bound;
    extension_upper_bound_with_a(spec, p, a)
}

/// As [`extension_upper_bound`] with a caller-supplied `A`.
pub fn extension_upper_bound_with_a(spec: &KPartiteSpec, p: usize, a: i64) -> Result<BoundReport> {
    if p == 0 {
        let mut report = kpartite_upper_bound(spec);
        report.a = Some(a);
        report.naive_comparison = Some(a);
        return Ok(report);
    }
    let n = spec.n() as u64;
    let pu = p as u64;
    let numerator = binom(n, 3) - sum_binom(spec.parts(), 3)
        + binom(pu, 3)
        + BigInt::from(n) * binom(pu, 2)
        + BigInt::from(pu) * binom(n, 2);
    let denominator = Rational::from(BigInt::from(spec.edge_count()))
        + Rational::from(BigInt::from(n * pu))
        + Rational::from(binom(pu, 2))
        - Rational::new(BigInt::from(pu) * (BigInt::from(a) + BigInt::from(pu) - 1), 2);
    if !denominator.is_positive() {
        return Err(Error::VacuousBound(denominator.to_string()));
    }
    let mut report = BoundReport::upper(
        BoundSource::ExtensionT29,
        2,
        numerator.into(),
        denominator,
        BoundInputs::Extension { parts: spec.parts().to_vec(), p, a },
        spec.warnings(),
    );
    report.a = Some(a);
    report.naive_comparison = Some(a + p as i64);
    Ok(report)
}

/// `sum r_i r_j + p (2n - A) / 2`, algebraically equal to the extension denominator.
pub fn extension_denominator_simplified(spec: &KPartiteSpec, p: usize, a: i64) -> Rational {
    let n = spec.n() as i64;
    Rational::from(spec.edge_count() as i64) + Rational::new(p as i64 * (2 * n - a), 2)
}

/// Lower bound `s` and upper bound `s + M / N` for the s-uniform complete
/// bipartite hypergraph, where `N` and `M` count the hyperedges of
/// uniformity `s` and `s + 1`.
pub fn hypergraph_bounds(spec: &HypergraphSpec) -> (BoundReport, BoundReport) {
    let (v, v1, v2, s) = (spec.v() as u64, spec.v1() as u64, spec.v2() as u64, spec.s() as u64);
    let count = |k: u64| binom(v, k) - binom(v1, k) - binom(v2, k);
    let inputs = BoundInputs::Hypergraph { v1: spec.v1(), v2: spec.v2(), s: spec.s() };
    let lower = BoundReport::lower(BoundSource::HypergraphT34, s as i64, inputs.clone());
    let mut warnings = Vec::new();
    if spec.is_veronese() {
        warnings.push(format!("both sides are smaller than s: squarefree Veronese ideal I_{{{v},{s}}}"));
    }
    let upper = BoundReport::upper(
        BoundSource::HypergraphT34,
        s as i64,
        count(s + 1).into(),
        count(s).into(),
        inputs,
        warnings,
    );
    (lower, upper)
}

/// `(n + 2) / 2` for the complete bipartite graph on `n >= 4` vertices.
pub fn ishaq_bipartite_bound(n: usize) -> Result<BoundReport> {
    if n < 4 {
        return Err(Error::IshaqRange(n));
    }
    Ok(BoundReport::upper(
        BoundSource::Ishaq,
        0,
        Rational::from(n as i64 + 2),
        Rational::from(2),
        BoundInputs::Vertices { n },
        Vec::new(),
    ))
}

/// The trivial lower bound: every ideal is partitioned by singletons.
pub fn mindeg_lower_bound(ideal: &SqfreeIdeal) -> BoundReport {
    BoundReport::lower(
        BoundSource::MindegLower,
        ideal.min_degree() as i64,
        BoundInputs::Ideal { ideal: ideal.canonical() },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kp(parts: &[usize]) -> KPartiteSpec {
        KPartiteSpec::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn kpartite_examples() {
        let r = kpartite_upper_bound(&kp(&[7, 7, 7, 9]));
        assert_eq!(r.numerator, Rational::from(3871));
        assert_eq!(r.denominator, Rational::from(336));
        assert_eq!(r.exact_value, Rational::from(2) + Rational::new(3871, 336));
        assert_eq!(r.integer_bound, 13);
        assert!(r.warnings.is_empty());

        let r = kpartite_upper_bound(&kp(&[1, 1]));
        assert_eq!(r.exact_value, Rational::from(2));
        assert_eq!(r.integer_bound, 2);
        assert_eq!(r.warnings.len(), 1);

        let r = kpartite_upper_bound(&kp(&[2, 2]));
        assert_eq!(r.exact_value, Rational::from(3));
    }

    #[test]
    fn extension_examples() {
        let r = extension_upper_bound(&kp(&[7, 7, 7, 9]), 10).unwrap();
        assert_eq!(r.a, Some(13));
        assert_eq!(r.numerator, Rational::from(9691));
        assert_eq!(r.denominator, Rational::from(571));
        assert_eq!(r.integer_bound, 18);
        assert_eq!(r.naive_comparison, Some(23));

        let r0 = extension_upper_bound(&kp(&[7, 7, 7, 9]), 0).unwrap();
        assert_eq!(r0.exact_value, kpartite_upper_bound(&kp(&[7, 7, 7, 9])).exact_value);
        assert_eq!(r0.integer_bound, 13);

        // 2 + 35 / (23/2)
        let r = extension_upper_bound(&kp(&[2, 2]), 3).unwrap();
        assert_eq!(r.a, Some(3));
        assert_eq!(r.numerator, Rational::from(35));
        assert_eq!(r.denominator, Rational::new(23, 2));
        assert_eq!(r.exact_value, Rational::from(2) + Rational::new(70, 23));
        assert_eq!(r.integer_bound, 5);
        assert_eq!(extension_denominator_simplified(&kp(&[2, 2]), 3, 3), Rational::new(23, 2));
    }

    #[test]
    fn vacuous_extension_bound() {
        // A > 2n drives the simplified denominator negative
        let spec = kp(&[2, 2]);
        assert!(matches!(extension_upper_bound_with_a(&spec, 3, 20), Err(Error::VacuousBound(_))));
        assert!(extension_upper_bound_with_a(&spec, 3, 8).is_ok());
        assert!(extension_upper_bound_with_a(&spec, 1, 12).is_ok());
        assert!(extension_upper_bound_with_a(&spec, 1, 17).is_err());
    }

    #[test]
    fn hypergraph_examples() {
        let (lo, hi) = hypergraph_bounds(&HypergraphSpec::new(7, 8, 5).unwrap());
        assert_eq!(lo.integer_bound, 5);
        assert_eq!(hi.numerator, Rational::from(4970));
        assert_eq!(hi.denominator, Rational::from(2926));
        assert_eq!(hi.integer_bound, 6);

        let (lo, hi) = hypergraph_bounds(&HypergraphSpec::new(2, 2, 2).unwrap());
        assert_eq!(lo.integer_bound, 2);
        assert_eq!(hi.exact_value, kpartite_upper_bound(&kp(&[2, 2])).exact_value);

        let (lo, hi) = hypergraph_bounds(&HypergraphSpec::new(2, 3, 4).unwrap());
        assert_eq!(lo.integer_bound, 4);
        assert_eq!(hi.exact_value, Rational::from(4) + Rational::new(1, 5));
        assert_eq!(hi.integer_bound, 4);
        assert_eq!(hi.warnings.len(), 1);
    }

    #[test]
    fn ishaq_examples() {
        assert_eq!(ishaq_bipartite_bound(4).unwrap().integer_bound, 3);
        assert_eq!(ishaq_bipartite_bound(5).unwrap().integer_bound, 3);
        assert_eq!(ishaq_bipartite_bound(5).unwrap().exact_value, Rational::new(7, 2));
        assert_eq!(ishaq_bipartite_bound(30).unwrap().integer_bound, 16);
        assert_eq!(ishaq_bipartite_bound(3), Err(Error::IshaqRange(3)));
        // the hypergraph bound on K_{15,15} is sharper than (n+2)/2
        let (_, hi) = hypergraph_bounds(&HypergraphSpec::new(15, 15, 2).unwrap());
        assert!(hi.integer_bound <= 16);
    }

    #[test]
    fn s2_hypergraph_matches_two_part_bound() {
        for v1 in 1..=10 {
            for v2 in 1..=10 {
                if v1 + v2 < 3 {
                    continue;
                }
                let (_, hi) = hypergraph_bounds(&HypergraphSpec::new(v1, v2, 2).unwrap());
                assert_eq!(hi.exact_value, kpartite_upper_bound(&kp(&[v1, v2])).exact_value);
            }
        }
    }

    #[test]
    fn report_json_fields() {
        let r = extension_upper_bound(&kp(&[7, 7, 7, 9]), 10).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["source"], "EXTENSION_T29");
        assert_eq!(v["floor"], 18);
        assert_eq!(v["naive_comparison"], 23);
        assert_eq!(v["inputs"]["p"], 10);
        assert_eq!(v["exact"], r.exact_value.to_string());
    }
}
