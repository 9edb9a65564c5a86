//! Subset enumeration over packed masks.

/// Calls `f` on every `k`-subset of `universe`, in lexicographic order of the
/// ascending index lists.
pub fn for_each_k_subset(universe: u64, k: usize, mut f: impl FnMut(u64)) {
    let bits: Vec<u64> = bit_list(universe);
    let m = bits.len();
    if k > m {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(idx.iter().fold(0, |acc, &i| acc | bits[i]));
        // advance the rightmost index that still has room
        let mut j = k;
        while j > 0 && idx[j - 1] == m - k + (j - 1) {
            j -= 1;
        }
        if j == 0 {
            return;
        }
        idx[j - 1] += 1;
        for t in j..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Single-bit masks of `mask`, lowest first.
pub fn bit_list(mut mask: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        out.push(low);
        mask ^= low;
    }
    out
}

/// Iterator over all submasks of `mask`, including `0` and `mask` itself.
pub fn submasks(mask: u64) -> Submasks {
    Submasks { mask, next: Some(mask) }
}

pub struct Submasks {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 { None } else { Some((cur - 1) & self.mask) };
        Some(cur)
    }
}
