//! Depth of `S/I` through the Stanley–Reisner complex of `I`.
//!
//! Hochster's formula gives the multigraded Betti numbers
//! `beta_{i,sigma}(S/I) = dim H~_{|sigma|-i-1}(Delta_sigma)`, where `Delta_sigma`
//! is the subcomplex induced on `sigma`. The projective dimension is the largest
//! `i` with a nonzero contribution and `depth S/I = n - pd`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combin::submasks;
use crate::error::{Error, Result};
use crate::ideal::{Monomial, SqfreeIdeal};

pub const DEPTH_MAX_VARS: usize = 12;

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    /// Characteristic 2.
    Gf2,
    /// Characteristic 0.
    Rationals,
}

impl Field {
    pub fn from_char(c: u32) -> Result<Field> {
        match c {
            0 => Ok(Field::Rationals),
            2 => Ok(Field::Gf2),
            other => Err(Error::FieldCharacteristic(other)),
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Gf2 => 2,
            Field::Rationals => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub depth_quotient: usize,
    /// `depth(I) = depth(S/I) + 1`.
    pub depth_ideal: usize,
    pub field_char: u32,
    pub projective_dimension: usize,
}

/// Depth of `S/I` over a field of characteristic 0 or 2.
pub fn depth_quotient(ideal: &SqfreeIdeal, field_char: u32) -> Result<DepthReport> {
    let field = Field::from_char(field_char)?;
    let n = ideal.n();
    if n > DEPTH_MAX_VARS {
        return Err(Error::SizeCap { what: "depth computation", n, limit: DEPTH_MAX_VARS });
    }
    let is_face = |m: u64| !ideal.contains(Monomial::from_mask(m));
    let pd = (0u64..1 << n)
        .into_par_iter()
        .map(|sigma| {
            if sigma != 0 && is_face(sigma) {
                // a full simplex is acyclic
                return 0;
            }
            let faces: Vec<u64> = submasks(sigma).filter(|&f| is_face(f)).collect();
            let dims = reduced_homology_dims(&faces, field);
            // lowest nonzero degree j gives the largest i = |sigma| - j - 1
            match dims.iter().position(|&h| h != 0) {
                Some(idx) => {
                    let j = idx as i64 - 1;
                    (sigma.count_ones() as i64 - j - 1) as usize
                }
                None => 0,
            }
        })
        .max()
        .unwrap_or(0);
    let depth_quotient = n - pd;
    Ok(DepthReport {
        depth_quotient,
        depth_ideal: depth_quotient + 1,
        field_char: field.characteristic(),
        projective_dimension: pd,
    })
}

/// Reduced Betti numbers `dim H~_j` for `j = -1, 0, 1, ...` (index `j + 1`) of
/// the complex whose faces are listed; the list must be closed under subsets
/// and contain the empty face.
pub fn reduced_homology_dims(faces: &[u64], field: Field) -> Vec<usize> {
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    // by_size[k] = faces with k vertices, i.e. dimension k - 1
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    for level in &mut by_size {
        level.sort_unstable();
    }
    // rank of the boundary from size-k faces to size-(k-1) faces, k >= 1
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        if by_size[k].is_empty() || by_size[k - 1].is_empty() {
            continue;
        }
        let index: HashMap<u64, usize> = by_size[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let cols = by_size[k - 1].len();
        ranks[k] = match field {
            Field::Gf2 => {
                let rows = by_size[k]
                    .iter()
                    .map(|&f| {
                        let mut row = vec![0u64; cols.div_ceil(64)];
                        for (_, g) in facets_of(f) {
                            let c = index[&g];
                            row[c / 64] |= 1 << (c % 64);
                        }
                        row
                    })
                    .collect();
                rank_gf2(rows)
            }
            Field::Rationals => {
                let rows = by_size[k]
                    .iter()
                    .map(|&f| {
                        let mut row = vec![BigInt::zero(); cols];
                        for (pos, g) in facets_of(f) {
                            row[index[&g]] = if pos % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        }
                        row
                    })
                    .collect();
                rank_fraction_free(rows)
            }
        };
    }
    (0..=top).map(|k| by_size[k].len() - ranks[k] - ranks[k + 1]).collect()
}

/// Codimension-one faces of `f` with the position of the removed vertex.
fn facets_of(f: u64) -> impl Iterator<Item = (usize, u64)> {
    let mut rest = f;
    let mut pos = 0;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let v = rest & rest.wrapping_neg();
        rest ^= v;
        pos += 1;
        Some((pos - 1, f ^ v))
    })
}

fn rank_gf2(mut rows: Vec<Vec<u64>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for word in 0..width {
        for bit in 0..64 {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][word] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[word] >> bit & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Rank over the rationals by fraction-free (Bareiss) elimination; every
/// division below is exact.
fn rank_fraction_free(mut a: Vec<Vec<BigInt>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..cols {
                let v = &pivot_row[col] * &row[c] - &factor * &pivot_row[c];
                row[c] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}
