//! Rank of sparse matrices over `F_p` by column reduction.

use alloc::vec;
use alloc::vec::Vec;

use crate::groebner::PrimeField;

/// A sparse column: `(row, value)` pairs, rows strictly increasing, values
/// nonzero.
pub type Column = Vec<(u32, u32)>;

const NONE: u32 = u32::MAX;

/// Reduces columns left to right so that every nonzero column ends in a
/// distinct pivot row (the last entry). Returns the rank together with the
/// pivot rows that were hit.
pub fn reduce_columns(field: PrimeField, rows: usize, columns: Vec<Column>) -> (usize, Vec<u32>) {
    let mut owner: Vec<u32> = vec![NONE; rows];
    let mut reduced: Vec<Column> = Vec::with_capacity(columns.len());
    let mut pivots = Vec::new();
    let mut scratch = Vec::new();
    for mut col in columns {
        while let Some(&(r, c)) = col.last() {
            let o = owner[r as usize];
            if o == NONE {
                break;
            }
            let other = &reduced[o as usize];
            let pc = other.last().expect("pivot columns are nonzero").1;
            let factor = field.neg(field.mul(c, field.inv(pc)));
            axpy(field, &col, factor, other, &mut scratch);
            core::mem::swap(&mut col, &mut scratch);
        }
        if let Some(&(r, _)) = col.last() {
            owner[r as usize] = reduced.len() as u32;
            pivots.push(r);
            reduced.push(col);
        }
    }
    (pivots.len(), pivots)
}

/// `out = a + f * b`, merging sorted supports.
fn axpy(field: PrimeField, a: &Column, f: u32, b: &Column, out: &mut Column) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(f, b[j].1)));
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(f, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
}

pub fn rank(field: PrimeField, rows: usize, columns: Vec<Column>) -> usize {
    reduce_columns(field, rows, columns).0
}

/// Rank over `F_2` with columns stored as dense bitsets. Far faster than the
/// generic path once matrices fill in.
pub fn rank_gf2(rows: usize, columns: &[Column]) -> usize {
    reduce_gf2(rows, columns).0
}

/// The `F_2` analogue of [`reduce_columns`].
pub fn reduce_gf2(rows: usize, columns: &[Column]) -> (usize, Vec<u32>) {
    let words = rows.div_ceil(64);
    let mut owner: Vec<u32> = vec![NONE; rows];
    let mut reduced: Vec<Vec<u64>> = Vec::new();
    let mut pivots = Vec::new();
    for col in columns {
        let mut bits = vec![0u64; words];
        for &(r, _) in col {
            bits[r as usize / 64] ^= 1 << (r % 64);
        }
        loop {
            let Some(top) = highest_bit(&bits) else { break };
            let o = owner[top];
            if o == NONE {
                owner[top] = reduced.len() as u32;
                pivots.push(top as u32);
                reduced.push(bits);
                break;
            }
            let other = &reduced[o as usize];
            for (w, ow) in bits.iter_mut().zip(other) {
                *w ^= ow;
            }
        }
    }
    (reduced.len(), pivots)
}

fn highest_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_rank(field: PrimeField, mut m: Vec<Vec<u32>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, p);
            let inv = field.inv(m[r][c]);
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = field.mul(m[i][c], inv);
                    for k in 0..cols {
                        let v = field.mul(f, m[r][k]);
                        m[i][k] = field.sub(m[i][k], v);
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn agrees_with_dense_elimination() {
        let mut seed = 12345u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for p in [2u32, 3, 32003] {
            let field = PrimeField::new(p).unwrap();
            for _ in 0..200 {
                let rows = (next() % 7 + 1) as usize;
                let cols = (next() % 7 + 1) as usize;
                let dense: Vec<Vec<u32>> = (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| if next() % 3 == 0 { (next() % p as u64) as u32 } else { 0 })
                            .collect()
                    })
                    .collect();
                let columns: Vec<Column> = (0..cols)
                    .map(|c| {
                        (0..rows)
                            .filter(|&r| dense[r][c] != 0)
                            .map(|r| (r as u32, dense[r][c]))
                            .collect()
                    })
                    .collect();
                let expect = dense_rank(field, dense);
                assert_eq!(rank(field, rows, columns.clone()), expect);
                if p == 2 {
                    assert_eq!(rank_gf2(rows, &columns), expect);
                }
            }
        }
    }
}
