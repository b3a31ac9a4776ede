//! Betti numbers of squarefree monomial ideals through Hochster's formula,
//! `β_{i,j}(S/I_Δ) = Σ_{|W| = j} dim H̃_{j-i-1}(Δ_W)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{self, Column};
use super::{BettiTable, OracleError, Tier};
use crate::groebner::{Monomial, PrimeField};

/// Largest number of ring variables the Hochster tier accepts.
pub const HOCHSTER_VAR_CAP: usize = 24;

/// Dense `F_2` elimination is used while a matrix has at most this many rows.
const GF2_DENSE_ROWS: usize = 1 << 14;

/// Simplicial complex on `0..num_vertices` given by its minimal nonfaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyReisnerComplex {
    num_vertices: usize,
    minimal_nonfaces: Vec<u32>,
}

impl StanleyReisnerComplex {
    /// Keeps only the inclusion-minimal sets. Empty nonfaces (the unit
    /// ideal) are rejected since no complex corresponds to them.
    pub fn new(num_vertices: usize, nonfaces: &[u32]) -> Result<Self, OracleError> {
        if num_vertices > 32 {
            return Err(OracleError::HochsterCap {
                vars: num_vertices,
                cap: HOCHSTER_VAR_CAP,
            });
        }
        let mut sorted: Vec<u32> = nonfaces.to_vec();
        sorted.sort_by_key(|m| (m.count_ones(), *m));
        sorted.dedup();
        let mut minimal: Vec<u32> = Vec::new();
        for m in sorted {
            if m == 0 || (num_vertices < 32 && m >> num_vertices != 0) {
                return Err(OracleError::BadComplex);
            }
            if minimal.iter().all(|&k| k & m != k) {
                minimal.push(m);
            }
        }
        minimal.sort_unstable();
        Ok(StanleyReisnerComplex {
            num_vertices,
            minimal_nonfaces: minimal,
        })
    }

    /// The complex whose face ideal is generated by the given squarefree
    /// monomials.
    pub fn from_monomials(num_vertices: usize, gens: &[Monomial]) -> Result<Self, OracleError> {
        if gens.iter().any(|m| !m.is_squarefree()) {
            return Err(OracleError::BadComplex);
        }
        let masks: Vec<u32> = gens.iter().map(Monomial::support).collect();
        Self::new(num_vertices, &masks)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn minimal_nonfaces(&self) -> &[u32] {
        &self.minimal_nonfaces
    }

    pub fn is_face(&self, face: u32) -> bool {
        self.minimal_nonfaces.iter().all(|&m| m & face != m)
    }

    /// Maximal faces, sorted.
    pub fn facets(&self) -> Vec<u32> {
        let all = if self.num_vertices == 32 {
            u32::MAX
        } else {
            (1u32 << self.num_vertices) - 1
        };
        let nonfaces: Vec<u32> = self.minimal_nonfaces.clone();
        let mut out = Vec::new();
        faces_of(all, &nonfaces, 0, &mut |f| {
            let maximal = (0..self.num_vertices)
                .filter(|&v| f >> v & 1 == 0)
                .all(|v| !self.is_face(f | 1 << v));
            if maximal {
                out.push(f);
            }
        });
        out.sort_unstable();
        out
    }
}

/// Calls `visit` on every face of `Δ_W` with at least `min_size` vertices.
fn faces_of(w: u32, nonfaces: &[u32], min_size: u32, visit: &mut impl FnMut(u32)) {
    let verts: Vec<u32> = (0..32).filter(|&v| w >> v & 1 == 1).collect();
    // nonfaces containing v whose other vertices all precede v
    let blockers: Vec<Vec<u32>> = verts
        .iter()
        .map(|&v| {
            nonfaces
                .iter()
                .filter(|&&m| m & w == m && m >> v & 1 == 1 && m >> (v + 1) == 0)
                .copied()
                .collect()
        })
        .collect();
    fn rec(
        k: usize,
        face: u32,
        verts: &[u32],
        blockers: &[Vec<u32>],
        min_size: u32,
        visit: &mut impl FnMut(u32),
    ) {
        if face.count_ones() + ((verts.len() - k) as u32) < min_size {
            return;
        }
        if k == verts.len() {
            visit(face);
            return;
        }
        let v = verts[k];
        let with = face | 1 << v;
        if blockers[k].iter().all(|&m| m & with != m) {
            rec(k + 1, with, verts, blockers, min_size, visit);
        }
        rec(k + 1, face, verts, blockers, min_size, visit);
    }
    rec(0, 0, &verts, &blockers, min_size, visit);
}

/// Reduced homology of `Δ_W` over `field`, as `h[d + 1] = dim H̃_d`.
///
/// With `top_only` the computation runs from the top dimension down and
/// stops after the first nonzero group; lower entries are then left at 0.
fn reduced_homology(w: u32, nonfaces: &[u32], field: PrimeField, top_only: bool) -> Vec<u64> {
    let size = w.count_ones() as usize;
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); size + 1];
    faces_of(w, nonfaces, 0, &mut |f| by_size[f.count_ones() as usize].push(f));
    while by_size.last().is_some_and(Vec::is_empty) {
        by_size.pop();
    }
    for layer in &mut by_size {
        layer.sort_unstable();
    }
    let top = by_size.len() - 1;
    let mut h = vec![0u64; top + 1];
    // rank of ∂_k : C(size k) → C(size k - 1); rank[top + 1] = 0
    let mut rank_above = 0usize;
    let mut cleared: Vec<bool> = Vec::new();
    for k in (1..=top).rev() {
        let cols: Vec<Column> = by_size[k]
            .iter()
            .enumerate()
            .filter(|&(c, _)| !cleared.get(c).copied().unwrap_or(false))
            .map(|(_, &f)| boundary(f, &by_size[k - 1], field))
            .collect();
        let rows = by_size[k - 1].len();
        let (r, pivots) = if field.characteristic() == 2 && rows <= GF2_DENSE_ROWS {
            linalg::reduce_gf2(rows, &cols)
        } else {
            linalg::reduce_columns(field, rows, cols)
        };
        h[k] = (by_size[k].len() - r - rank_above) as u64;
        if top_only && h[k] != 0 {
            return h;
        }
        cleared = vec![false; rows];
        for p in pivots {
            cleared[p as usize] = true;
        }
        rank_above = r;
    }
    h[0] = (1 - rank_above) as u64;
    h
}

fn boundary(face: u32, lower: &[u32], field: PrimeField) -> Column {
    let mut col: Column = Vec::with_capacity(face.count_ones() as usize);
    let mut sign = 1u32;
    let minus = field.neg(1);
    let mut rest = face;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        let row = lower
            .binary_search(&(face & !(1 << v)))
            .expect("faces are closed under subsets");
        col.push((row as u32, sign));
        sign = if sign == 1 { minus } else { 1 };
    }
    col.sort_unstable_by_key(|e| e.0);
    col
}

/// Every union of minimal nonfaces. Subsets outside this lattice induce
/// cones, which are acyclic.
fn lcm_lattice(complex: &StanleyReisnerComplex) -> Vec<u32> {
    let bits = complex.num_vertices;
    let mut seen = vec![0u64; (1usize << bits).div_ceil(64)];
    let mut out = vec![0u32];
    seen[0] |= 1;
    let mut head = 0;
    while head < out.len() {
        let a = out[head];
        head += 1;
        for &m in &complex.minimal_nonfaces {
            let b = a | m;
            let (word, bit) = (b as usize / 64, b as usize % 64);
            if seen[word] >> bit & 1 == 0 {
                seen[word] |= 1 << bit;
                out.push(b);
            }
        }
    }
    out
}

/// Splits `w` into the supports of the connected components of the
/// overlap graph of the nonfaces inside `w`.
fn support_components(w: u32, nonfaces: &[u32]) -> Vec<u32> {
    let mut comps: Vec<u32> = Vec::new();
    for &m in nonfaces.iter().filter(|&&m| m & w == m) {
        let mut merged = m;
        comps.retain(|&c| {
            if c & merged != 0 {
                merged |= c;
                false
            } else {
                true
            }
        });
        // a later nonface can bridge earlier disjoint parts
        loop {
            let before = merged;
            comps.retain(|&c| {
                if c & merged != 0 {
                    merged |= c;
                    false
                } else {
                    true
                }
            });
            if merged == before {
                break;
            }
        }
        comps.push(merged);
    }
    comps.sort_unstable();
    comps
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Betti table of `S/I_Δ` over `F_p`.
///
/// With `reg_only` only the regularity is certified: each connected piece
/// contributes its top nonvanishing homological degree, and the returned
/// table holds, for every subset realising the maximum, just that top
/// entry (plus `β_{0,0}`). Its `regularity()` is exact; other entries are
/// not meaningful.
pub fn betti_hochster(
    complex: &StanleyReisnerComplex,
    p: u32,
    reg_only: bool,
) -> Result<BettiTable, OracleError> {
    if complex.num_vertices > HOCHSTER_VAR_CAP {
        return Err(OracleError::HochsterCap {
            vars: complex.num_vertices,
            cap: HOCHSTER_VAR_CAP,
        });
    }
    let field = PrimeField::new(p)?;
    let nonfaces = &complex.minimal_nonfaces;
    let lattice = lcm_lattice(complex);
    let mut memo: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
    let mut table = BettiTable::new(p, Tier::Hochster);
    table.add(0, 0, 1);
    if reg_only {
        let mut best: Option<(usize, usize, u64)> = None;
        for &w in &lattice[1..] {
            let mut shifted = 0usize;
            let mut acyclic = false;
            for c in support_components(w, nonfaces) {
                let h = memo
                    .entry(c)
                    .or_insert_with(|| reduced_homology(c, nonfaces, field, true));
                match h.iter().rposition(|&x| x != 0) {
                    Some(idx) => shifted += idx,
                    None => {
                        acyclic = true;
                        break;
                    }
                }
            }
            if acyclic {
                continue;
            }
            // shifted = d + 1 for the join's top reduced homology degree d
            let j = w.count_ones() as usize;
            let i = j - shifted;
            if best.is_none_or(|(bi, bj, _)| shifted > bj - bi) {
                best = Some((i, j, 1));
            }
        }
        if let Some((i, j, b)) = best {
            table.add(i, j, b);
        }
        return Ok(table);
    }
    for &w in &lattice[1..] {
        let mut h = vec![1u64];
        for c in support_components(w, nonfaces) {
            let hc = memo
                .entry(c)
                .or_insert_with(|| reduced_homology(c, nonfaces, field, false));
            h = convolve(&h, hc);
        }
        let j = w.count_ones() as usize;
        for (idx, &b) in h.iter().enumerate() {
            // idx = d + 1, i = j - d - 1
            if b != 0 && idx <= j {
                table.add(j - idx, j, b);
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_quadric() {
        // x1*y2 in K[x1, x2, y1, y2]
        let c = StanleyReisnerComplex::new(4, &[0b1001]).unwrap();
        let t = betti_hochster(&c, 32003, false).unwrap();
        assert_eq!(t.get(1, 2), 1);
        assert_eq!(t.regularity(), 1);
        assert_eq!(t.entries().count(), 2);
    }

    #[test]
    fn path_three_initial_ideal() {
        // x1*y2, x2*y3 over variables x1 x2 x3 y1 y2 y3
        let c = StanleyReisnerComplex::new(6, &[1 | 1 << 4, 1 << 1 | 1 << 5]).unwrap();
        let t = betti_hochster(&c, 32003, false).unwrap();
        assert_eq!(t.get(1, 2), 2);
        assert_eq!(t.get(2, 4), 1);
        assert_eq!(t.regularity(), 2);
        assert_eq!(betti_hochster(&c, 2, true).unwrap().regularity(), 2);
    }

    #[test]
    fn octahedron_boundary_and_facets() {
        // three disjoint nonfaces: Δ is the octahedral sphere, H̃_2 = 1
        let c = StanleyReisnerComplex::new(6, &[0b11, 0b1100, 0b110000]).unwrap();
        assert_eq!(c.facets().len(), 8);
        let t = betti_hochster(&c, 3, false).unwrap();
        assert_eq!(t.get(3, 6), 1);
        assert_eq!(t.get(1, 2), 3);
        assert_eq!(t.get(2, 4), 3);
        assert_eq!(t.regularity(), 3);
    }

    #[test]
    fn homology_of_circle_is_in_degree_one() {
        // boundary of a square: nonfaces are the two diagonals
        let nonfaces = [0b0101, 0b1010];
        let h = reduced_homology(0b1111, &nonfaces, PrimeField::new(2).unwrap(), false);
        assert_eq!(h, vec![0, 0, 1]);
        let h = reduced_homology(0b1111, &nonfaces, PrimeField::new(32003).unwrap(), false);
        assert_eq!(h, vec![0, 0, 1]);
    }

    #[test]
    fn non_minimal_generators_are_dropped() {
        let c = StanleyReisnerComplex::new(3, &[0b011, 0b111, 0b011]).unwrap();
        assert_eq!(c.minimal_nonfaces(), &[0b011]);
        assert!(c.is_face(0b101));
        assert!(!c.is_face(0b111));
    }
}
