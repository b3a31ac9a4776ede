//! Polynomials over `F_p`, binomial edge ideals and Buchberger's algorithm.
//!
//! The monomial order is fixed to lex with `x_1 > ... > x_n > y_1 > ... >
//! y_n`; vertex `i` (0-based) owns variables `x = i` and `y = n + i`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::graph::Graph;

mod field;
mod monomial;
mod poly;

pub use field::PrimeField;
pub use monomial::{Monomial, MAX_VARS};
pub use poly::Polynomial;

/// Default characteristic.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("{n} vertices need {} variables; at most {MAX_VARS} are supported", 2 * n)]
    TooManyVariables { n: usize },
    #[error("graph has {graph} vertices but the ring was built for {ring}")]
    RingMismatch { graph: usize, ring: usize },
    #[error("basis element {index} has non-squarefree leading monomial {leading}")]
    NonSquarefreeLeadingTerm { index: usize, leading: String },
}

/// `K[x_1..x_n, y_1..y_n]` over `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyRing {
    n: usize,
    field: PrimeField,
}

impl PolyRing {
    pub fn new(n: usize, p: u32) -> Result<Self, GroebnerError> {
        if 2 * n > MAX_VARS {
            return Err(GroebnerError::TooManyVariables { n });
        }
        Ok(PolyRing {
            n,
            field: PrimeField::new(p)?,
        })
    }

    #[inline]
    pub fn vertices(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        2 * self.n
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn x(&self, v: usize) -> usize {
        v
    }

    #[inline]
    pub fn y(&self, v: usize) -> usize {
        self.n + v
    }

    /// Vertex owning variable `var`.
    #[inline]
    pub fn vertex_of(&self, var: usize) -> usize {
        var % self.n
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for var in 0..self.num_vars() {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            let name = if var < self.n { 'x' } else { 'y' };
            let _ = write!(s, "{}{}", name, self.vertex_of(var) + 1);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn format_polynomial(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in f.terms().iter().enumerate() {
            let c = self.field.signed(*c);
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                let _ = write!(s, " {sign} ");
            }
            let a = c.unsigned_abs();
            if a != 1 || m.degree() == 0 {
                let _ = write!(s, "{a}");
                if m.degree() > 0 {
                    s.push('*');
                }
            }
            if m.degree() > 0 {
                s.push_str(&self.format_monomial(m));
            }
        }
        s
    }
}

/// One binomial `x_i y_j - x_j y_i` per edge `i < j`, monic on `x_i y_j`.
pub fn edge_ideal_generators(g: &Graph, ring: &PolyRing) -> Result<Vec<Polynomial>, GroebnerError> {
    if g.n() != ring.vertices() {
        return Err(GroebnerError::RingMismatch {
            graph: g.n(),
            ring: ring.vertices(),
        });
    }
    let f = ring.field();
    Ok(g
        .edges()
        .map(|(i, j)| {
            let lead = Monomial::var(ring.x(i)).mul_var(ring.y(j));
            let trail = Monomial::var(ring.x(j)).mul_var(ring.y(i));
            Polynomial::from_terms(f, alloc::vec![(lead, 1), (trail, f.neg(1))])
        })
        .collect())
}

/// Full reduction of `f` by monic `basis`, always using the first basis
/// element whose leading monomial divides the current leading term.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], field: PrimeField) -> Polynomial {
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|b| b.leading_monomial().expect("basis elements are nonzero"))
        .collect();
    normal_form_with_leads(f, basis, &leads, field)
}

fn normal_form_with_leads(
    f: &Polynomial,
    basis: &[Polynomial],
    leads: &[Monomial],
    field: PrimeField,
) -> Polynomial {
    let mut g = f.clone();
    let mut rem = Vec::new();
    while let Some(&(m, c)) = g.leading_term() {
        match leads.iter().position(|l| l.divides(&m)) {
            Some(k) => {
                debug_assert_eq!(basis[k].leading_term().map(|t| t.1), Some(1));
                let q = leads[k].quotient_of(&m);
                g = g.sub_scaled(field, c, &q, &basis[k]);
            }
            None => rem.push(g.pop_leading().expect("nonzero")),
        }
    }
    Polynomial::from_sorted_terms(rem)
}

/// S-polynomial of two monic polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, field: PrimeField) -> Polynomial {
    let lf = f.leading_monomial().expect("nonzero");
    let lg = g.leading_monomial().expect("nonzero");
    let l = lf.lcm(&lg);
    f.mul_monomial(&lf.quotient_of(&l))
        .sub_scaled(field, 1, &lg.quotient_of(&l), g)
}

/// A reduced Gröbner basis under lex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub ring: PolyRing,
    /// Monic, inter-reduced, sorted by increasing leading monomial.
    pub basis: Vec<Polynomial>,
}

/// Buchberger's algorithm with normal pair selection (smallest lcm by degree,
/// then by lex), the coprime-leading-term criterion and the chain
/// criterion, followed by inter-reduction.
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> GroebnerBasis {
    let field = ring.field();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let push = |p: Polynomial,
                    basis: &mut Vec<Polynomial>,
                    leads: &mut Vec<Monomial>,
                    pending: &mut BTreeSet<(usize, usize)>| {
        let k = basis.len();
        leads.push(p.leading_monomial().expect("nonzero"));
        basis.push(p);
        for i in 0..k {
            pending.insert((i, k));
        }
    };

    for g in gens {
        let r = normal_form_with_leads(g, &basis, &leads, field);
        if !r.is_zero() {
            push(r.monic(field), &mut basis, &mut leads, &mut pending);
        }
    }

    while let Some(&pair) = pending
        .iter()
        .min_by_key(|&&(i, j)| {
            let l = leads[i].lcm(&leads[j]);
            (l.degree(), l, i, j)
        })
    {
        pending.remove(&pair);
        let (i, j) = pair;
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        let l = leads[i].lcm(&leads[j]);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], field);
        let r = normal_form_with_leads(&s, &basis, &leads, field);
        if !r.is_zero() {
            push(r.monic(field), &mut basis, &mut leads, &mut pending);
        }
    }

    GroebnerBasis {
        ring: *ring,
        basis: reduce_basis(basis, field),
    }
}

fn reduce_basis(basis: Vec<Polynomial>, field: PrimeField) -> Vec<Polynomial> {
    // minimal: drop elements whose leading monomial is a multiple of another
    let mut minimal: Vec<Polynomial> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by_key(|p| p.leading_monomial());
    for p in sorted {
        let lm = p.leading_monomial().expect("nonzero");
        if minimal
            .iter()
            .all(|q| !q.leading_monomial().expect("nonzero").divides(&lm))
        {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let mut terms = minimal[i].clone().into_terms();
        let lead = terms.remove(0);
        let tail = normal_form(&Polynomial::from_sorted_terms(terms), &others, field);
        let mut out = alloc::vec![lead];
        out.extend(tail.into_terms());
        reduced.push(Polynomial::from_sorted_terms(out));
    }
    reduced
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|p| p.leading_monomial().expect("nonzero"))
            .collect()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.basis, self.ring.field())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Independent re-check: every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let f = self.ring.field();
        (0..self.basis.len()).all(|i| {
            (i + 1..self.basis.len())
                .all(|j| self.reduce(&s_polynomial(&self.basis[i], &self.basis[j], f)).is_zero())
        })
    }

    /// Minimal generators of the initial ideal; fails loudly if any is not
    /// squarefree.
    pub fn initial_ideal(&self) -> Result<Vec<Monomial>, GroebnerError> {
        let leads = self.leading_monomials();
        for (index, m) in leads.iter().enumerate() {
            if !m.is_squarefree() {
                return Err(GroebnerError::NonSquarefreeLeadingTerm {
                    index,
                    leading: self.ring.format_monomial(m),
                });
            }
        }
        Ok(leads)
    }

    /// One polynomial per line, terms in order, variables `x<i>`/`y<i>`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for p in &self.basis {
            s.push_str(&self.ring.format_polynomial(p));
            s.push('\n');
        }
        s
    }
}

/// Reduced lex Gröbner basis of `J_G`.
pub fn edge_ideal_basis(g: &Graph, p: u32) -> Result<GroebnerBasis, GroebnerError> {
    let ring = PolyRing::new(g.n(), p)?;
    let gens = edge_ideal_generators(g, &ring)?;
    Ok(buchberger(&ring, &gens))
}
