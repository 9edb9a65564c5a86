//! The characteristic poset of a squarefree ideal (all supports containing some
//! generator support), its intervals and interval partitions, and the Stanley
//! decomposition induced by a partition.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::combin::{for_each_k_subset, submasks};
use crate::error::{Error, Result};
use crate::ideal::{full_mask, Monomial, SqfreeIdeal};

/// Default largest `n` for which the poset is enumerated explicitly.
pub const DEFAULT_POSET_CAP: usize = 24;

/// Hard ceiling for a user-supplied cap.
pub const MAX_POSET_CAP: usize = 28;

/// A set of subsets of `[n]`, one bit per mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct SubsetBits {
    words: Vec<u64>,
}

impl SubsetBits {
    pub(crate) fn new(n: usize) -> SubsetBits {
        let bits = 1usize << n;
        SubsetBits { words: vec![0; bits.div_ceil(64)] }
    }

    #[inline]
    pub(crate) fn get(&self, mask: u64) -> bool {
        self.words[(mask >> 6) as usize] >> (mask & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, mask: u64) {
        self.words[(mask >> 6) as usize] |= 1 << (mask & 63);
    }

    #[inline]
    pub(crate) fn clear(&mut self, mask: u64) {
        self.words[(mask >> 6) as usize] &= !(1 << (mask & 63));
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

/// The characteristic poset for `h = (1, ..., 1)`, enumerated rank by rank.
#[derive(Clone)]
pub struct CharacteristicPoset {
    ideal: SqfreeIdeal,
    by_rank: Vec<Vec<Monomial>>,
    member: SubsetBits,
    len: usize,
}

impl CharacteristicPoset {
    pub fn n(&self) -> usize {
        self.ideal.n()
    }

    pub fn ideal(&self) -> &SqfreeIdeal {
        &self.ideal
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Elements of cardinality `r`, in lexicographic order.
    pub fn rank(&self, r: usize) -> &[Monomial] {
        self.by_rank.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All elements, by rank then lexicographically.
    pub fn elements(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.by_rank.iter().flatten().copied()
    }

    /// O(1) lookup in the enumerated family.
    pub fn is_member(&self, c: Monomial) -> bool {
        c.max_index() <= self.n() && self.member.get(c.mask())
    }

    /// Membership decided from the generators alone.
    pub fn contains_by_generators(&self, c: Monomial) -> bool {
        self.ideal.contains(c)
    }
}

impl fmt::Debug for CharacteristicPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharacteristicPoset").field("ideal", &self.ideal.canonical()).field("len", &self.len).finish()
    }
}

pub fn build_poset(ideal: &SqfreeIdeal) -> Result<CharacteristicPoset> {
    build_poset_with_cap(ideal, DEFAULT_POSET_CAP)
}

pub fn build_poset_with_cap(ideal: &SqfreeIdeal, cap: usize) -> Result<CharacteristicPoset> {
    let n = ideal.n();
    let cap = cap.min(MAX_POSET_CAP);
    if n > cap {
        return Err(Error::PosetCap { n, cap });
    }
    // upward closure of the generator supports, one variable at a time
    let size = 1usize << n;
    let mut up = vec![false; size];
    for g in ideal.generators() {
        up[g.mask() as usize] = true;
    }
    for i in 0..n {
        let bit = 1usize << i;
        for mask in 0..size {
            if mask & bit != 0 && up[mask ^ bit] {
                up[mask] = true;
            }
        }
    }
    let mut member = SubsetBits::new(n);
    let mut by_rank = vec![Vec::new(); n + 1];
    let mut len = 0;
    for (r, bucket) in by_rank.iter_mut().enumerate() {
        for_each_k_subset(full_mask(n), r, |c| {
            if up[c as usize] {
                member.set(c);
                bucket.push(Monomial::from_mask(c));
            }
        });
        len += bucket.len();
    }
    Ok(CharacteristicPoset { ideal: ideal.clone(), by_rank, member, len })
}

/// The interval `[lower, upper]` of subsets between two supports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Interval {
    pub lower: Monomial,
    pub upper: Monomial,
}

impl Interval {
    pub fn new(lower: Monomial, upper: Monomial) -> Result<Interval> {
        if !lower.divides(upper) {
            return Err(Error::InvalidPartition(format!("{lower:?} is not a subset of {upper:?}")));
        }
        Ok(Interval { lower, upper })
    }

    pub fn singleton(c: Monomial) -> Interval {
        Interval { lower: c, upper: c }
    }

    /// Number of subsets in the interval, `2^{|D \ C|}`.
    pub fn size(&self) -> u64 {
        1 << self.upper.without(self.lower).degree()
    }

    pub fn contains(&self, c: Monomial) -> bool {
        self.lower.divides(c) && c.divides(self.upper)
    }

    pub fn members(&self) -> impl Iterator<Item = Monomial> + '_ {
        let free = self.upper.without(self.lower).mask();
        submasks(free).map(move |s| Monomial::from_mask(self.lower.mask() | s))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lower, self.upper)
    }
}

/// A list of intervals meant to partition one characteristic poset.
///
/// Intervals are kept sorted by `(lower, upper)` so equal partitions have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalPartition {
    intervals: Vec<Interval>,
}

impl IntervalPartition {
    pub fn new(mut intervals: Vec<Interval>) -> IntervalPartition {
        intervals.sort_unstable();
        IntervalPartition { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `min |D_i|`, or `None` for the empty list.
    pub fn min_upper_size(&self) -> Option<usize> {
        self.intervals.iter().map(|iv| iv.upper.degree()).min()
    }
}

impl Serialize for IntervalPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.intervals.serialize(serializer)
    }
}

/// Why a list of intervals fails to partition the poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotNested(Interval),
    OutsidePoset(Interval),
    OutOfRange(Interval),
    DoublyCovered(Monomial),
    Uncovered(Monomial),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotNested(iv) => write!(f, "interval {iv} has lower not inside upper"),
            Violation::OutsidePoset(iv) => write!(f, "interval {iv} has lower outside the poset"),
            Violation::OutOfRange(iv) => write!(f, "interval {iv} uses variables outside [n]"),
            Violation::DoublyCovered(c) => write!(f, "{c:?} is doubly covered"),
            Violation::Uncovered(c) => write!(f, "{c:?} is uncovered"),
        }
    }
}

/// Checks disjointness and exact cover; on failure names the offending subset.
pub fn validate_partition(poset: &CharacteristicPoset, partition: &IntervalPartition) -> Result<(), Violation> {
    let n = poset.n();
    let mut covered = SubsetBits::new(n);
    let mut count = 0usize;
    for iv in partition.intervals() {
        if !iv.lower.divides(iv.upper) {
            return Err(Violation::NotNested(*iv));
        }
        if iv.upper.max_index() > n {
            return Err(Violation::OutOfRange(*iv));
        }
        if !poset.is_member(iv.lower) {
            return Err(Violation::OutsidePoset(*iv));
        }
        for c in iv.members() {
            if covered.get(c.mask()) {
                return Err(Violation::DoublyCovered(c));
            }
            covered.set(c.mask());
            count += 1;
        }
    }
    if count != poset.len() {
        let missing = poset
            .elements()
            .find(|c| !covered.get(c.mask()))
            .expect("cover count below poset size implies an uncovered element");
        return Err(Violation::Uncovered(missing));
    }
    Ok(())
}

/// One Stanley space `u K[Z]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct StanleySpace {
    pub generator: Monomial,
    pub free_variables: Monomial,
}

impl StanleySpace {
    pub fn dimension(&self) -> usize {
        self.free_variables.degree()
    }
}

impl fmt::Display for StanleySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.free_variables.indices().iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}*K[{}]", self.generator, vars.join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StanleyDecomposition {
    pub spaces: Vec<StanleySpace>,
}

impl StanleyDecomposition {
    /// Minimum dimension over the spaces.
    pub fn sdepth(&self) -> usize {
        self.spaces.iter().map(StanleySpace::dimension).min().unwrap_or(0)
    }
}

/// Each interval `[C, D]` becomes the space `x^C K[x_k : k in D]`.
pub fn decomposition_from_partition(
    poset: &CharacteristicPoset,
    partition: &IntervalPartition,
) -> Result<StanleyDecomposition> {
    validate_partition(poset, partition).map_err(|v| Error::InvalidPartition(v.to_string()))?;
    let spaces =
        partition.intervals().iter().map(|iv| StanleySpace { generator: iv.lower, free_variables: iv.upper }).collect();
    Ok(StanleyDecomposition { spaces })
}
