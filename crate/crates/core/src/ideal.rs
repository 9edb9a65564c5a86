//! Squarefree monomials as packed index sets, and squarefree monomial ideals
//! stored by their minimal generating set.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ambient variable count.
pub const MAX_VARS: usize = 64;

/// A squarefree monomial, identified with its support.
///
/// Bit `i - 1` of the mask stands for the variable `x_i`. The empty support is
/// the monomial `1`. Ordering is by degree, then lexicographic order of the
/// ascending index lists, so `x1*x2 < x1*x3 < x2*x3 < x1*x2*x3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub const fn from_mask(mask: u64) -> Monomial {
        Monomial(mask)
    }

    /// Builds a monomial from 1-based indices; duplicates collapse.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Monomial> {
        let mut mask = 0u64;
        for i in indices {
            if i == 0 || i > MAX_VARS {
                return Err(Error::IndexOutOfRange { index: i, n: MAX_VARS });
            }
            mask |= 1 << (i - 1);
        }
        Ok(Monomial(mask))
    }

    /// The single variable `x_i`.
    pub fn var(i: usize) -> Monomial {
        assert!((1..=MAX_VARS).contains(&i), "variable index {i} out of range");
        Monomial(1 << (i - 1))
    }

    /// The product `x_lo * ... * x_hi` over a contiguous index range.
    pub fn range(lo: usize, hi: usize) -> Monomial {
        if lo > hi {
            return Monomial::ONE;
        }
        Monomial(full_mask(hi) & !full_mask(lo - 1))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Support as ascending 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize + 1);
            m &= m - 1;
        }
        out
    }

    /// Largest variable index in the support, 0 for the monomial 1.
    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub const fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn contains_var(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub const fn lcm(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    pub const fn gcd(self, other: Monomial) -> Monomial {
        Monomial(self.0 & other.0)
    }

    /// Support difference `self \ other`.
    pub const fn without(self, other: Monomial) -> Monomial {
        Monomial(self.0 & !other.0)
    }
}

/// Mask of the variables `x_1, ..., x_n`.
pub const fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Sort key realizing the (degree, lexicographic) order on supports.
///
/// For two sets of equal size, the first position where the ascending index
/// lists differ holds the lowest bit of the symmetric difference; the set
/// holding that bit is lexicographically smaller. Reversing the bits turns
/// this into "larger reversed mask first".
pub fn lex_key(mask: u64) -> (u32, Reverse<u64>) {
    (mask.count_ones(), Reverse(mask.reverse_bits()))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_key(self.0).cmp(&lex_key(other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, i) in self.indices().into_iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let idx = Vec::<usize>::deserialize(deserializer)?;
        Monomial::from_indices(idx).map_err(serde::de::Error::custom)
    }
}

/// A nonzero proper squarefree monomial ideal in `K[x_1, ..., x_n]`.
///
/// Generators form an antichain under divisibility and are kept sorted in
/// [`Monomial`] order, so equal ideals compare and serialize identically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SqfreeIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Reduces a generator family to its divisibility-minimal members.
pub fn minimalize(generators: impl IntoIterator<Item = Monomial>, n: usize) -> Result<SqfreeIdeal> {
    if n == 0 {
        return Err(Error::EmptyAmbient);
    }
    if n > MAX_VARS {
        return Err(Error::TooManyVariables(n));
    }
    let mut gens: Vec<Monomial> = generators.into_iter().collect();
    if gens.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    for g in &gens {
        if g.is_one() {
            return Err(Error::UnitIdeal);
        }
        if g.max_index() > n {
            return Err(Error::IndexOutOfRange { index: g.max_index(), n });
        }
    }
    gens.sort_unstable();
    gens.dedup();
    // Sorted by degree, so any divisor of g precedes it.
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(g)) {
            kept.push(g);
        }
    }
    Ok(SqfreeIdeal { n, gens: kept })
}

impl SqfreeIdeal {
    pub fn new(n: usize, generators: impl IntoIterator<Item = Monomial>) -> Result<SqfreeIdeal> {
        minimalize(generators, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn min_degree(&self) -> usize {
        self.gens[0].degree()
    }

    pub fn max_degree(&self) -> usize {
        self.gens.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    /// Monomial membership: some generator divides `m`.
    pub fn contains(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `true` when `other` is contained in `self` as ideals.
    pub fn contains_ideal(&self, other: &SqfreeIdeal) -> bool {
        other.gens.iter().all(|&g| self.contains(g))
    }

    /// Intersection of two ideals over the same ring: generated by pairwise lcms.
    pub fn intersect(&self, other: &SqfreeIdeal) -> Result<SqfreeIdeal> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        let lcms = self.gens.iter().flat_map(|&a| other.gens.iter().map(move |&b| a.lcm(b)));
        minimalize(lcms, self.n)
    }

    /// The sum `self + other`.
    pub fn sum(&self, other: &SqfreeIdeal) -> Result<SqfreeIdeal> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        minimalize(self.gens.iter().chain(other.gens.iter()).copied(), self.n)
    }

    /// Colon ideal `(I : x_i)`.
    pub fn colon_var(&self, i: usize) -> Result<SqfreeIdeal> {
        let x = Monomial::var(i);
        minimalize(self.gens.iter().map(|g| g.without(x)), self.n)
    }

    /// `(I, x_i)`.
    pub fn add_var(&self, i: usize) -> Result<SqfreeIdeal> {
        minimalize(self.gens.iter().copied().chain([Monomial::var(i)]), self.n)
    }

    /// Canonical serialization `n=<int>: <gen>,<gen>,...`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Support union of all generators.
    pub fn support(&self) -> Monomial {
        self.gens.iter().fold(Monomial::ONE, |acc, &g| acc.lcm(g))
    }
}

/// Convenience: the intersection of two ideals.
pub fn intersect_ideals(a: &SqfreeIdeal, b: &SqfreeIdeal) -> Result<SqfreeIdeal> {
    a.intersect(b)
}

impl fmt::Display for SqfreeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}: ", self.n)?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SqfreeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SqfreeIdeal({self})")
    }
}

impl Serialize for SqfreeIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SqfreeIdeal", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("canonical", &self.canonical())?;
        st.serialize_field("generators", &self.gens)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(idx: &[usize]) -> Monomial {
        Monomial::from_indices(idx.iter().copied()).unwrap()
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> SqfreeIdeal {
        SqfreeIdeal::new(n, gens.iter().map(|g| m(g))).unwrap()
    }

    #[test]
    fn monomial_basics() {
        let a = m(&[1, 3]);
        assert_eq!(a.to_string(), "x1*x3");
        assert_eq!(a.degree(), 2);
        assert_eq!(a.indices(), vec![1, 3]);
        assert!(m(&[1]).divides(a));
        assert!(!m(&[2]).divides(a));
        assert_eq!(Monomial::ONE.to_string(), "1");
        assert_eq!(Monomial::range(3, 5), m(&[3, 4, 5]));
        assert!(Monomial::from_indices([0]).is_err());
        assert!(Monomial::from_indices([65]).is_err());
        assert_eq!(m(&[64]).max_index(), 64);
    }

    #[test]
    fn canonical_order_is_degree_then_lex() {
        let mut v = [m(&[2, 3]), m(&[1, 2, 3]), m(&[1, 3]), m(&[4]), m(&[1, 2]), m(&[1, 4])];
        v.sort();
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["x4", "x1*x2", "x1*x3", "x1*x4", "x2*x3", "x1*x2*x3"]);
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(3, &[&[1, 2], &[1, 2, 3]]).generators(), &[m(&[1, 2])]);
        assert_eq!(ideal(2, &[&[1], &[2]]).generators(), &[m(&[1]), m(&[2])]);
        let i = ideal(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4], &[1, 3, 4]]);
        assert_eq!(i.generators(), &[m(&[1, 3]), m(&[1, 4]), m(&[2, 3]), m(&[2, 4])]);
        let again = minimalize(i.generators().iter().copied(), 4).unwrap();
        assert_eq!(again, i);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(minimalize(Vec::new(), 3), Err(Error::ZeroIdeal));
        assert_eq!(minimalize([Monomial::ONE], 3), Err(Error::UnitIdeal));
        assert_eq!(minimalize([m(&[4])], 3), Err(Error::IndexOutOfRange { index: 4, n: 3 }));
        assert_eq!(minimalize([m(&[1])], 65), Err(Error::TooManyVariables(65)));
        assert_eq!(minimalize([m(&[1])], 0), Err(Error::EmptyAmbient));
    }

    #[test]
    fn intersection_examples() {
        let x1 = ideal(4, &[&[1]]);
        let x2 = ideal(4, &[&[2]]);
        assert_eq!(x1.intersect(&x2).unwrap(), ideal(4, &[&[1, 2]]));
        let k22 = ideal(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
        assert_eq!(k22.intersect(&k22).unwrap(), k22);
        let p = ideal(4, &[&[3], &[4]]);
        let q = ideal(4, &[&[1], &[2]]);
        assert_eq!(p.intersect(&q).unwrap(), k22);
        assert_eq!(x1.intersect(&ideal(3, &[&[1]])), Err(Error::AmbientMismatch(4, 3)));
    }

    #[test]
    fn canonical_serialization() {
        let k22 = ideal(4, &[&[2, 4], &[1, 4], &[2, 3], &[1, 3]]);
        assert_eq!(k22.canonical(), "n=4: x1*x3,x1*x4,x2*x3,x2*x4");
    }

    #[test]
    fn colon_and_residual() {
        let k22 = ideal(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
        assert_eq!(k22.colon_var(1).unwrap(), ideal(4, &[&[3], &[4]]));
        assert_eq!(k22.add_var(1).unwrap(), ideal(4, &[&[1], &[2, 3], &[2, 4]]));
    }

    fn arb_ideal(n: usize) -> impl Strategy<Value = SqfreeIdeal> {
        prop::collection::vec(1u64..(1 << n), 1..6)
            .prop_map(move |masks| minimalize(masks.into_iter().map(Monomial::from_mask), n).unwrap())
    }

    fn antichain(i: &SqfreeIdeal) -> bool {
        let g = i.generators();
        g.iter().enumerate().all(|(a, x)| g.iter().enumerate().all(|(b, y)| a == b || !x.divides(*y)))
    }

    proptest! {
        #[test]
        fn intersection_matches_membership(a in arb_ideal(6), b in arb_ideal(6)) {
            let c = a.intersect(&b).unwrap();
            prop_assert!(antichain(&c));
            for mask in 0u64..64 {
                let mono = Monomial::from_mask(mask);
                prop_assert_eq!(c.contains(mono), a.contains(mono) && b.contains(mono));
            }
        }

        #[test]
        fn intersection_laws(a in arb_ideal(5), b in arb_ideal(5), c in arb_ideal(5)) {
            prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
            prop_assert_eq!(a.intersect(&a).unwrap(), a.clone());
            let left = a.intersect(&b).unwrap().intersect(&c).unwrap();
            let right = a.intersect(&b.intersect(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn minimalize_is_idempotent_antichain(masks in prop::collection::vec(1u64..256, 1..12)) {
            let i = minimalize(masks.iter().map(|&m| Monomial::from_mask(m)), 8).unwrap();
            prop_assert!(antichain(&i));
            let j = minimalize(i.generators().iter().copied(), 8).unwrap();
            prop_assert_eq!(&i, &j);
            for &mask in &masks {
                prop_assert!(i.contains(Monomial::from_mask(mask)));
            }
        }
    }
}
