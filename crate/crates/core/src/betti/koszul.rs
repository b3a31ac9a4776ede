//! Graded Betti numbers of `S/J_G` as Koszul homology.
//!
//! `J_G` is homogeneous for the grading `deg x_v = deg y_v = e_v` in `Z^n`
//! and, separately, for the `x`-degree. Each graded piece of the Koszul
//! complex `K(x, y; S/J_G)` is finite dimensional with a basis of pairs
//! `(E, m)`: a set `E` of variables and a standard monomial `m`.
//!
//! Only multidegrees `a` with every `a_v <= 2` are scanned: the lex initial
//! ideal is squarefree, so its Betti numbers live in squarefree
//! `Z^{2n}`-degrees, and Betti numbers can only drop from `in(J_G)` back
//! to `J_G` in every grading the degeneration respects.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{self, Column};
use super::{BettiTable, OracleError, Tier};
use crate::graph::Graph;
use crate::groebner::{edge_ideal_basis, GroebnerBasis, Monomial, Polynomial, PrimeField};

pub const KOSZUL_VERTEX_CAP: usize = 7;

/// Exact `β_{i,j}(S/J_G)` over `F_p`. Refuses graphs above
/// [`KOSZUL_VERTEX_CAP`] vertices.
pub fn betti_koszul(g: &Graph, p: u32) -> Result<BettiTable, OracleError> {
    betti_koszul_capped(g, p, 2)
}

/// As [`betti_koszul`], scanning multidegrees with entries up to `cap`
/// (at most 3). Raising `cap` above 2 only serves to test that nothing is
/// missed.
pub fn betti_koszul_capped(g: &Graph, p: u32, cap: u8) -> Result<BettiTable, OracleError> {
    let n = g.n();
    if n > KOSZUL_VERTEX_CAP {
        return Err(OracleError::KoszulCap {
            n,
            cap: KOSZUL_VERTEX_CAP,
        });
    }
    assert!(cap <= 3, "multidegree entries are packed in two bits");
    let gb = edge_ideal_basis(g, p)?;
    gb.initial_ideal()?;
    let mut ctx = Context::new(g, &gb);
    let mut table = BettiTable::new(p, Tier::Tor);
    table.add(0, 0, 1);
    let mut a = vec![0u8; n];
    loop {
        // next multidegree in {0..=cap}^n, odometer style
        let mut v = 0;
        while v < n && a[v] == cap {
            a[v] = 0;
            v += 1;
        }
        if v == n {
            break;
        }
        a[v] += 1;
        let total: usize = a.iter().map(|&e| e as usize).sum();
        for by_i in ctx.strand(&a) {
            for (i, &b) in by_i.iter().enumerate() {
                table.add(i, total, b);
            }
        }
    }
    Ok(table)
}

/// `β[k][i]` for one multidegree: `k` is the `x`-degree, `i` homological.
type Strand = Vec<Vec<u64>>;

struct Context<'a> {
    gb: &'a GroebnerBasis,
    n: usize,
    field: PrimeField,
    leads: Vec<Monomial>,
    /// neighbourhoods as bitmasks, for splitting supports into components
    adjacency: Vec<u32>,
    monomials: Vec<Monomial>,
    ids: BTreeMap<Monomial, u32>,
    /// `standard[pack(b)][k]`: ids of standard monomials of degree `(b, k)`
    standard: Vec<Vec<Option<Vec<u32>>>>,
    /// `nf[id][var]`: normal form of `var * monomials[id]` as `(id, coeff)`
    nf: Vec<Vec<Option<Vec<(u32, u32)>>>>,
    strands: Vec<Option<Strand>>,
}

fn pack(a: &[u8]) -> usize {
    a.iter().rev().fold(0usize, |acc, &e| acc << 2 | e as usize)
}

impl<'a> Context<'a> {
    fn new(g: &Graph, gb: &'a GroebnerBasis) -> Self {
        let n = gb.ring.vertices();
        Context {
            gb,
            n,
            field: gb.ring.field(),
            leads: gb.leading_monomials(),
            adjacency: g
                .vertices()
                .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
                .collect(),
            monomials: Vec::new(),
            ids: BTreeMap::new(),
            standard: vec![Vec::new(); 1 << (2 * n)],
            nf: Vec::new(),
            strands: vec![None; 1 << (2 * n)],
        }
    }

    fn id_of(&mut self, m: Monomial) -> u32 {
        if let Some(&id) = self.ids.get(&m) {
            return id;
        }
        let id = self.monomials.len() as u32;
        self.monomials.push(m);
        self.ids.insert(m, id);
        self.nf.push(vec![None; 2 * self.n]);
        id
    }

    /// Ids of the standard monomials of multidegree `b` and `x`-degree `k`.
    fn standard_monomials(&mut self, b: &[u8], k: u32) -> &[u32] {
        let key = pack(b);
        let k = k as usize;
        if self.standard[key].len() <= k {
            self.standard[key].resize(k + 1, None);
        }
        if self.standard[key][k].is_none() {
            let n = self.n;
            let mut found = Vec::new();
            let mut exps = vec![0u8; 2 * n];
            fn rec(
                v: usize,
                left: i64,
                b: &[u8],
                exps: &mut Vec<u8>,
                leads: &[Monomial],
                out: &mut Vec<Monomial>,
            ) {
                let n = b.len();
                if v == n {
                    if left == 0 {
                        let m = Monomial::from_exponents(exps);
                        if leads.iter().all(|l| !l.divides(&m)) {
                            out.push(m);
                        }
                    }
                    return;
                }
                let rest: i64 = b[v + 1..].iter().map(|&e| e as i64).sum();
                for xe in 0..=b[v] {
                    let left2 = left - xe as i64;
                    if left2 < 0 || left2 > rest {
                        continue;
                    }
                    exps[v] = xe;
                    exps[n + v] = b[v] - xe;
                    rec(v + 1, left2, b, exps, leads, out);
                }
                exps[v] = 0;
                exps[n + v] = 0;
            }
            rec(0, k as i64, b, &mut exps, &self.leads, &mut found);
            let ids: Vec<u32> = found.into_iter().map(|m| self.id_of(m)).collect();
            self.standard[key][k] = Some(ids);
        }
        self.standard[key][k].as_deref().expect("just filled")
    }

    /// Normal form of `var * m` for a standard monomial `m`.
    fn times_var(&mut self, id: u32, var: usize) -> &[(u32, u32)] {
        if self.nf[id as usize][var].is_none() {
            let m = self.monomials[id as usize].mul_var(var);
            let image = self.gb.reduce(&Polynomial::monomial(m, 1));
            let terms: Vec<(u32, u32)> = image
                .terms()
                .iter()
                .map(|&(tm, c)| (self.id_of(tm), c))
                .collect();
            self.nf[id as usize][var] = Some(terms);
        }
        self.nf[id as usize][var].as_deref().expect("just filled")
    }

    fn strand(&mut self, a: &[u8]) -> Strand {
        let key = pack(a);
        if let Some(s) = &self.strands[key] {
            return s.clone();
        }
        let support: u32 = (0..self.n).filter(|&v| a[v] > 0).fold(0, |m, v| m | 1 << v);
        let parts = self.components(support);
        let total: u32 = a.iter().map(|&e| e as u32).sum();
        let s = if parts.len() > 1 {
            // Tor of a tensor product over disjoint variables
            let mut acc: Strand = vec![vec![1]];
            for part in parts {
                let sub: Vec<u8> = (0..self.n)
                    .map(|v| if part >> v & 1 == 1 { a[v] } else { 0 })
                    .collect();
                acc = tensor(&acc, &self.strand(&sub));
            }
            acc
        } else {
            let mut s: Strand = vec![Vec::new(); total as usize + 1];
            for k in 0..=total / 2 {
                let h = self.homology(a, k);
                s[(total - k) as usize] = h.clone();
                s[k as usize] = h;
            }
            s
        };
        self.strands[key] = Some(s.clone());
        s
    }

    fn components(&self, support: u32) -> Vec<u32> {
        let mut left = support;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = 1u32 << left.trailing_zeros();
            loop {
                let grown = (0..self.n)
                    .filter(|&v| comp >> v & 1 == 1)
                    .fold(comp, |m, v| m | (self.adjacency[v] & support));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Every `(E, m)` of the strand, built one vertex at a time: vertex `v`
    /// contributes none, one or both of `x_v, y_v` to `E`.
    fn collect_strand(
        &mut self,
        a: &[u8],
        k: u32,
        v: usize,
        e_mask: u32,
        xs: u32,
        b: &mut Vec<u8>,
        bases: &mut [Vec<u64>],
    ) {
        let n = self.n;
        if xs > k {
            return;
        }
        if v == n {
            let i = e_mask.count_ones() as usize;
            let std = self.standard_monomials(b, k - xs);
            bases[i].extend(std.iter().map(|&id| (e_mask as u64) << 32 | id as u64));
            return;
        }
        let x_bit = 1u32 << v;
        let y_bit = 1u32 << (n + v);
        let options = [(0, 0, 0), (x_bit, 1, 1), (y_bit, 0, 1), (x_bit | y_bit, 1, 2)];
        for &(bits, dx, used) in &options {
            if used > a[v] {
                continue;
            }
            b[v] = a[v] - used;
            self.collect_strand(a, k, v + 1, e_mask | bits, xs + dx, b, bases);
        }
        b[v] = a[v];
    }

    /// `dim H_i` of the `(a, k)` strand for every `i`, by column reduction
    /// from the top homological degree down, skipping columns that the
    /// previous reduction already proved dependent.
    fn homology(&mut self, a: &[u8], k: u32) -> Vec<u64> {
        let vars = 2 * self.n;
        // bases[i] = sorted keys E << 32 | id with |E| = i
        let mut bases: Vec<Vec<u64>> = vec![Vec::new(); vars + 1];
        let mut b = a.to_vec();
        self.collect_strand(a, k, 0, 0, 0, &mut b, &mut bases);
        for basis in &mut bases {
            basis.sort_unstable();
        }
        let top = bases.iter().rposition(|b| !b.is_empty()).unwrap_or(0);
        // ranks[i] = rank of ∂_i : K_i → K_{i-1}
        let mut ranks = vec![0usize; top + 2];
        let mut cleared: Vec<bool> = Vec::new();
        for i in (1..=top).rev() {
            let mut cols: Vec<Column> = Vec::with_capacity(bases[i].len());
            for (c, &key) in bases[i].iter().enumerate() {
                if cleared.get(c).copied().unwrap_or(false) {
                    continue;
                }
                let (e, id) = ((key >> 32) as u32, key as u32);
                let mut col: Column = Vec::new();
                let mut negate = false;
                for var in 0..vars {
                    if e >> var & 1 == 0 {
                        continue;
                    }
                    let target = ((e & !(1 << var)) as u64) << 32;
                    let field = self.field;
                    let lower = &bases[i - 1];
                    for &(tid, coeff) in self.times_var(id, var) {
                        let row = lower
                            .binary_search(&(target | tid as u64))
                            .expect("normal forms stay in the strand");
                        col.push((row as u32, if negate { field.neg(coeff) } else { coeff }));
                    }
                    negate = !negate;
                }
                col.sort_unstable_by_key(|t| t.0);
                cols.push(col);
            }
            let (r, pivots) = linalg::reduce_columns(self.field, bases[i - 1].len(), cols);
            ranks[i] = r;
            cleared = vec![false; bases[i - 1].len()];
            for p in pivots {
                cleared[p as usize] = true;
            }
        }
        (0..=top)
            .map(|i| (bases[i].len() - ranks[i] - ranks[i + 1]) as u64)
            .collect()
    }
}

/// Convolution of two strands in both `k` and `i`.
fn tensor(a: &Strand, b: &Strand) -> Strand {
    let mut out: Strand = vec![Vec::new(); a.len() + b.len() - 1];
    for (ka, ra) in a.iter().enumerate() {
        for (kb, rb) in b.iter().enumerate() {
            let row = &mut out[ka + kb];
            for (ia, &x) in ra.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (ib, &y) in rb.iter().enumerate() {
                    if row.len() <= ia + ib {
                        row.resize(ia + ib + 1, 0);
                    }
                    row[ia + ib] += x * y;
                }
            }
        }
    }
    out
}
