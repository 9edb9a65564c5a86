//! Independent oracles shared by the integration tests. Nothing here goes
//! through the crate's poset or search code.

#![allow(dead_code)]

use stanley_core::{HypergraphSpec, KPartiteSpec, Monomial, SqfreeIdeal};

/// Poset elements by direct membership over all `2^n` subsets, ordered by size.
pub fn poset_elements(ideal: &SqfreeIdeal) -> Vec<u64> {
    let gens: Vec<u64> = ideal.generators().iter().map(|g| g.mask()).collect();
    let mut out: Vec<u64> = (0u64..1 << ideal.n()).filter(|&c| gens.iter().any(|&g| g & !c == 0)).collect();
    out.sort_by_key(|c| (c.count_ones(), *c));
    out
}

fn submasks(mask: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut s = mask;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
    out
}

/// Maximum of `min |D_i|` over all interval partitions, by branch and bound
/// over every interval (any upper size) headed by the least uncovered element.
/// No rank truncation and no fixed upper size.
pub fn brute_force_sdepth(ideal: &SqfreeIdeal) -> usize {
    let n = ideal.n();
    let elems = poset_elements(ideal);
    let mut member = vec![false; 1 << n];
    for &e in &elems {
        member[e as usize] = true;
    }
    let mut covered = vec![false; 1 << n];
    let mut best = 0;
    bb(&elems, &member, &mut covered, 0, usize::MAX, n, &mut best);
    best
}

fn bb(
    elems: &[u64],
    member: &[bool],
    covered: &mut [bool],
    mut pos: usize,
    current_min: usize,
    n: usize,
    best: &mut usize,
) {
    while pos < elems.len() && covered[elems[pos] as usize] {
        pos += 1;
    }
    if pos == elems.len() {
        *best = (*best).max(current_min);
        return;
    }
    let c = elems[pos];
    let full = (1u64 << n) - 1;
    let free = full & !c;
    // every superset of c is a candidate upper end
    let mut uppers: Vec<u64> = submasks(free).into_iter().map(|s| c | s).collect();
    uppers.sort_by_key(|u| std::cmp::Reverse(u.count_ones()));
    for d in uppers {
        let size = d.count_ones() as usize;
        if size.min(current_min) <= *best {
            continue;
        }
        let members: Vec<u64> = submasks(d & !c).into_iter().map(|s| c | s).collect();
        if members.iter().any(|&e| covered[e as usize] || !member[e as usize]) {
            continue;
        }
        for &e in &members {
            covered[e as usize] = true;
        }
        bb(elems, member, covered, pos + 1, current_min.min(size), n, best);
        for &e in &members {
            covered[e as usize] = false;
        }
    }
}

/// All interval partitions of the poset, each reported as its `min |D_i|`.
/// Only for posets with a handful of elements.
pub fn all_partition_minima(ideal: &SqfreeIdeal) -> Vec<usize> {
    let n = ideal.n();
    let elems = poset_elements(ideal);
    let mut covered = vec![false; 1 << n];
    let mut out = Vec::new();
    enumerate(&elems, &mut covered, 0, usize::MAX, n, &mut out);
    out
}

fn enumerate(elems: &[u64], covered: &mut [bool], mut pos: usize, cur: usize, n: usize, out: &mut Vec<usize>) {
    while pos < elems.len() && covered[elems[pos] as usize] {
        pos += 1;
    }
    if pos == elems.len() {
        out.push(cur);
        return;
    }
    let c = elems[pos];
    let free = ((1u64 << n) - 1) & !c;
    for s in submasks(free) {
        let d = c | s;
        let members: Vec<u64> = submasks(s).into_iter().map(|t| c | t).collect();
        // members of [c, d] are automatically in the poset
        if members.iter().any(|&e| covered[e as usize]) {
            continue;
        }
        for &e in &members {
            covered[e as usize] = true;
        }
        enumerate(elems, covered, pos + 1, cur.min(d.count_ones() as usize), n, out);
        for &e in &members {
            covered[e as usize] = false;
        }
    }
}

/// Nondecreasing part lists with `2 <= k <= max_k`, `min_part <= r_i`, `sum <= max_n`.
pub fn kpartite_specs(max_n: usize, max_k: usize, min_part: usize) -> Vec<KPartiteSpec> {
    fn rec(parts: &mut Vec<usize>, min: usize, left: usize, max_k: usize, out: &mut Vec<Vec<usize>>) {
        if parts.len() >= 2 {
            out.push(parts.clone());
        }
        if parts.len() == max_k {
            return;
        }
        for r in min..=left {
            parts.push(r);
            rec(parts, r, left - r, max_k, out);
            parts.pop();
        }
    }
    let mut lists = Vec::new();
    rec(&mut Vec::new(), min_part, max_n, max_k, &mut lists);
    lists.into_iter().map(|p| KPartiteSpec::new(p).unwrap()).collect()
}

/// Every valid hypergraph spec on at most `max_v` vertices.
pub fn hypergraph_specs(max_v: usize) -> Vec<HypergraphSpec> {
    let mut out = Vec::new();
    for v in 3..=max_v {
        for v1 in 1..v {
            for s in 2..v {
                out.push(HypergraphSpec::new(v1, v - v1, s).unwrap());
            }
        }
    }
    out
}

pub fn ideal_from_masks(n: usize, masks: &[u64]) -> SqfreeIdeal {
    SqfreeIdeal::new(n, masks.iter().map(|&m| Monomial::from_mask(m))).unwrap()
}

/// A random squarefree ideal on `1..=max_n` variables with a few generators.
pub fn random_ideal<R: rand::Rng>(rng: &mut R, max_n: usize) -> SqfreeIdeal {
    let n = rng.gen_range(1..=max_n);
    let count = rng.gen_range(1..=n + 2);
    let masks: Vec<u64> = (0..count).map(|_| rng.gen_range(1u64..1 << n)).collect();
    ideal_from_masks(n, &masks)
}

/// Exact `C(a, b)` as `u128`.
pub fn choose(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    (0..b).fold(1u128, |acc, i| acc * (a - i) as u128 / (i + 1) as u128)
}
