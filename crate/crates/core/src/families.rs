//! The ideal families: complete k-partite edge ideals, s-uniform complete
//! bipartite hypergraph edge ideals, and extensions by fresh variables.

use serde::Serialize;

use crate::arith::binomial;
use crate::combin::for_each_k_subset;
use crate::error::{Error, Result};
use crate::ideal::{full_mask, minimalize, Monomial, SqfreeIdeal, MAX_VARS};

/// Upper limit on generators materialized by a family constructor.
pub const MAX_GENERATORS: usize = 1 << 22;

/// Part sizes of a complete k-partite graph, kept nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KPartiteSpec {
    parts: Vec<usize>,
}

impl KPartiteSpec {
    pub fn new(mut parts: Vec<usize>) -> Result<KPartiteSpec> {
        if parts.len() < 2 {
            return Err(Error::NoEdges(format!("a k-partite graph needs k >= 2 parts, got {}", parts.len())));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidFamily("part sizes must be positive".into()));
        }
        let n: usize = parts.iter().sum();
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        parts.sort_unstable();
        Ok(KPartiteSpec { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Some part has a single vertex, outside the usual `r_1 >= 2` assumption.
    pub fn has_singleton_part(&self) -> bool {
        self.parts[0] == 1
    }

    pub fn warnings(&self) -> Vec<String> {
        if self.has_singleton_part() {
            vec!["part size 1 is outside the standing assumption 2 <= r_1; bound evaluated but not claimed".into()]
        } else {
            Vec::new()
        }
    }

    /// Variables of each part as consecutive index blocks.
    pub fn blocks(&self) -> Vec<Monomial> {
        let mut start = 1;
        self.parts
            .iter()
            .map(|&r| {
                let b = Monomial::range(start, start + r - 1);
                start += r;
                b
            })
            .collect()
    }

    /// `sum_{i<j} r_i r_j`, the number of edges.
    pub fn edge_count(&self) -> u64 {
        let n = self.n() as u64;
        let squares: u64 = self.parts.iter().map(|&r| (r * r) as u64).sum();
        (n * n - squares) / 2
    }

    pub fn dsl(&self) -> String {
        let parts: Vec<String> = self.parts.iter().map(|r| r.to_string()).collect();
        format!("kpartite {}", parts.join(" "))
    }
}

/// Side sizes and uniformity of an s-uniform complete bipartite hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HypergraphSpec {
    v1: usize,
    v2: usize,
    s: usize,
}

impl HypergraphSpec {
    pub fn new(v1: usize, v2: usize, s: usize) -> Result<HypergraphSpec> {
        if v1 == 0 || v2 == 0 {
            return Err(Error::InvalidFamily("both sides must be nonempty".into()));
        }
        if s < 2 {
            return Err(Error::InvalidFamily(format!("uniformity s must be >= 2, got {s}")));
        }
        let v = v1 + v2;
        if v > MAX_VARS {
            return Err(Error::TooManyVariables(v));
        }
        if s > v - 1 {
            return Err(Error::NoEdges(format!(
                "s = {s} leaves no hyperedge meeting both sides of {v1} + {v2} vertices"
            )));
        }
        Ok(HypergraphSpec { v1, v2, s })
    }

    pub fn v1(&self) -> usize {
        self.v1
    }

    pub fn v2(&self) -> usize {
        self.v2
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn v(&self) -> usize {
        self.v1 + self.v2
    }

    /// Both sides are smaller than `s`: every s-subset is a hyperedge.
    pub fn is_veronese(&self) -> bool {
        self.s > self.v1 && self.s > self.v2
    }

    pub fn dsl(&self) -> String {
        format!("hyperbipartite V1={} V2={} s={}", self.v1, self.v2, self.s)
    }
}

/// Edge ideal of the complete k-partite graph; parts occupy consecutive indices.
pub fn kpartite_edge_ideal(spec: &KPartiteSpec) -> Result<SqfreeIdeal> {
    let blocks = spec.blocks();
    let mut gens = Vec::with_capacity(spec.edge_count() as usize);
    for (i, bi) in blocks.iter().enumerate() {
        for bj in &blocks[i + 1..] {
            for a in bi.indices() {
                for b in bj.indices() {
                    gens.push(Monomial::from_mask((1 << (a - 1)) | (1 << (b - 1))));
                }
            }
        }
    }
    minimalize(gens, spec.n())
}

/// Edge ideal of the s-uniform complete bipartite hypergraph with
/// `V_1 = {1..v1}` and `V_2 = {v1+1..v1+v2}`.
pub fn uniform_bipartite_hypergraph_ideal(spec: &HypergraphSpec) -> Result<SqfreeIdeal> {
    let (v, s) = (spec.v() as u64, spec.s() as u64);
    let count = binomial(v, s) - binomial(spec.v1 as u64, s) - binomial(spec.v2 as u64, s);
    let count: u128 = count.try_into().unwrap_or(u128::MAX);
    if count > MAX_GENERATORS as u128 {
        return Err(Error::TooManyGenerators { count, limit: MAX_GENERATORS });
    }
    let side1 = full_mask(spec.v1);
    let side2 = full_mask(spec.v()) & !side1;
    let mut gens = Vec::with_capacity(count as usize);
    for_each_k_subset(full_mask(spec.v()), spec.s, |e| {
        if e & side1 != 0 && e & side2 != 0 {
            gens.push(Monomial::from_mask(e));
        }
    });
    minimalize(gens, spec.v())
}

/// `I' = (I, x_{n+1}, ..., x_{n+p})` in `n + p` variables.
pub fn extend_with_variables(base: &SqfreeIdeal, p: usize) -> Result<SqfreeIdeal> {
    let n = base.n();
    if n + p > MAX_VARS {
        return Err(Error::TooManyVariables(n + p));
    }
    if p == 0 {
        return Ok(base.clone());
    }
    let fresh = (n + 1..=n + p).map(Monomial::var);
    minimalize(base.generators().iter().copied().chain(fresh), n + p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Monomial;

    fn m(idx: &[usize]) -> Monomial {
        Monomial::from_indices(idx.iter().copied()).unwrap()
    }

    fn kp(parts: &[usize]) -> KPartiteSpec {
        KPartiteSpec::new(parts.to_vec()).unwrap()
    }

    // Independent count of crossing pairs.
    fn crossing_pairs(parts: &[usize]) -> usize {
        let mut count = 0;
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                count += parts[i] * parts[j];
            }
        }
        count
    }

    #[test]
    fn kpartite_examples() {
        let i = kpartite_edge_ideal(&kp(&[1, 1])).unwrap();
        assert_eq!(i.generators(), &[m(&[1, 2])]);
        let i = kpartite_edge_ideal(&kp(&[2, 2])).unwrap();
        assert_eq!(i.canonical(), "n=4: x1*x3,x1*x4,x2*x3,x2*x4");
        let i = kpartite_edge_ideal(&kp(&[7, 7, 7, 9])).unwrap();
        assert_eq!(i.generators().len(), 336);
        assert_eq!(crossing_pairs(&[7, 7, 7, 9]), 336);
        assert_eq!(i.n(), 30);
    }

    #[test]
    fn kpartite_spec_validation() {
        assert!(matches!(KPartiteSpec::new(vec![3]), Err(Error::NoEdges(_))));
        assert!(KPartiteSpec::new(vec![0, 2]).is_err());
        assert!(KPartiteSpec::new(vec![40, 30]).is_err());
        let s = kp(&[9, 7, 7, 7]);
        assert_eq!(s.parts(), &[7, 7, 7, 9]);
        assert!(s.warnings().is_empty());
        assert_eq!(kp(&[1, 3]).warnings().len(), 1);
        assert_eq!(s.blocks()[3], Monomial::range(22, 30));
    }

    #[test]
    fn kpartite_counts_match_pair_enumeration() {
        for a in 1..=5 {
            for b in a..=5 {
                for c in 0..=5usize {
                    let parts: Vec<usize> = if c == 0 { vec![a, b] } else { vec![a, b, c] };
                    let spec = kp(&parts);
                    let i = kpartite_edge_ideal(&spec).unwrap();
                    assert_eq!(i.generators().len(), crossing_pairs(&parts));
                    assert_eq!(spec.edge_count() as usize, crossing_pairs(&parts));
                }
            }
        }
    }

    #[test]
    fn permuted_parts_give_equal_ideals() {
        let a = kpartite_edge_ideal(&kp(&[3, 1, 2])).unwrap();
        let b = kpartite_edge_ideal(&kp(&[1, 2, 3])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hypergraph_example_three_three() {
        let spec = HypergraphSpec::new(3, 3, 3).unwrap();
        let i = uniform_bipartite_hypergraph_ideal(&spec).unwrap();
        let listed: &[&[usize]] = &[
            &[1, 2, 4],
            &[1, 2, 5],
            &[1, 2, 6],
            &[1, 3, 4],
            &[1, 3, 5],
            &[1, 3, 6],
            &[2, 3, 4],
            &[2, 3, 5],
            &[2, 3, 6],
            &[1, 4, 5],
            &[2, 4, 5],
            &[3, 4, 5],
            &[1, 4, 6],
            &[2, 4, 6],
            &[3, 4, 6],
            &[1, 5, 6],
            &[2, 5, 6],
            &[3, 5, 6],
        ];
        let expected = SqfreeIdeal::new(6, listed.iter().map(|g| m(g))).unwrap();
        assert_eq!(i, expected);
        assert_eq!(i.generators().len(), 18);
    }

    #[test]
    fn hypergraph_s2_is_bipartite_graph() {
        let i = uniform_bipartite_hypergraph_ideal(&HypergraphSpec::new(2, 3, 2).unwrap()).unwrap();
        assert_eq!(i.generators().len(), 6);
        for v1 in 1..=4 {
            for v2 in v1.max(2)..=4 {
                let h = uniform_bipartite_hypergraph_ideal(&HypergraphSpec::new(v1, v2, 2).unwrap()).unwrap();
                let g = kpartite_edge_ideal(&kp(&[v1, v2])).unwrap();
                assert_eq!(h, g);
            }
        }
    }

    #[test]
    fn hypergraph_counts_match_enumeration() {
        // brute force over all masks, independent of the k-subset walker
        for v in 2..=12usize {
            for v1 in 1..v {
                let v2 = v - v1;
                for s in 2..v {
                    let spec = HypergraphSpec::new(v1, v2, s).unwrap();
                    let i = uniform_bipartite_hypergraph_ideal(&spec).unwrap();
                    let side1 = (1u64 << v1) - 1;
                    let side2 = ((1u64 << v) - 1) & !side1;
                    let brute = (0u64..1 << v)
                        .filter(|e| e.count_ones() as usize == s && e & side1 != 0 && e & side2 != 0)
                        .count();
                    assert_eq!(i.generators().len(), brute, "({v1},{v2},{s})");
                }
            }
        }
    }

    #[test]
    fn hypergraph_large_example_count() {
        let i = uniform_bipartite_hypergraph_ideal(&HypergraphSpec::new(7, 8, 5).unwrap()).unwrap();
        assert_eq!(i.generators().len(), 2926);
    }

    #[test]
    fn hypergraph_validation() {
        assert!(matches!(HypergraphSpec::new(2, 2, 4), Err(Error::NoEdges(_))));
        assert!(HypergraphSpec::new(2, 2, 1).is_err());
        assert!(HypergraphSpec::new(0, 2, 2).is_err());
        assert!(HypergraphSpec::new(2, 3, 4).unwrap().is_veronese());
        assert!(matches!(
            uniform_bipartite_hypergraph_ideal(&HypergraphSpec::new(32, 32, 16).unwrap()),
            Err(Error::TooManyGenerators { .. })
        ));
    }

    #[test]
    fn extension_examples() {
        let base = SqfreeIdeal::new(2, [m(&[1, 2])]).unwrap();
        let e = extend_with_variables(&base, 1).unwrap();
        assert_eq!(e.canonical(), "n=3: x3,x1*x2");
        assert_eq!(extend_with_variables(&base, 0).unwrap(), base);
        let big = kpartite_edge_ideal(&kp(&[7, 7, 7, 9])).unwrap();
        let e = extend_with_variables(&big, 10).unwrap();
        assert_eq!(e.n(), 40);
        assert_eq!(e.generators().len(), 346);
        assert_eq!(extend_with_variables(&big, 35), Err(Error::TooManyVariables(65)));
    }
}
