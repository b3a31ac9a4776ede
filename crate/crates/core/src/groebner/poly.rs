use alloc::vec::Vec;

use super::{Monomial, PrimeField};

/// Sparse polynomial over `F_p`: terms sorted by strictly decreasing
/// monomial (lex), no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Polynomial {
            terms: alloc::vec![(m, c)],
        }
    }

    /// Collects arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(field: PrimeField, mut terms: Vec<(Monomial, u32)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % field.characteristic();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { terms: out }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn leading_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn scale(&self, field: PrimeField, c: u32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|&(m, a)| (m, field.mul(a, c))).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, field: PrimeField) -> Self {
        match self.leading_term() {
            None => Self::zero(),
            Some(&(_, c)) => self.scale(field, field.inv(c)),
        }
    }

    /// `self - c * m * other`. Multiplying by a monomial keeps lex order, so
    /// this is a single merge.
    pub fn sub_scaled(&self, field: PrimeField, c: u32, m: &Monomial, other: &Polynomial) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|&(om, oc)| (om.mul(m), field.neg(field.mul(oc, c))))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(&&(am, ac)), Some(&(bm, bc))) => match am.cmp(&bm) {
                    core::cmp::Ordering::Greater => {
                        out.push((am, ac));
                        a.next();
                    }
                    core::cmp::Ordering::Less => {
                        out.push((bm, bc));
                        b.next();
                    }
                    core::cmp::Ordering::Equal => {
                        let s = field.add(ac, bc);
                        if s != 0 {
                            out.push((am, s));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, field: PrimeField, other: &Polynomial) -> Self {
        self.sub_scaled(field, field.neg(1), &Monomial::ONE, other)
    }

    pub fn sub(&self, field: PrimeField, other: &Polynomial) -> Self {
        self.sub_scaled(field, 1, &Monomial::ONE, other)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|&(t, c)| (t.mul(m), c)).collect(),
        }
    }

    pub fn mul(&self, field: PrimeField, other: &Polynomial) -> Self {
        let mut acc = Polynomial::zero();
        for &(m, c) in &other.terms {
            acc = acc.sub_scaled(field, field.neg(c), &m, self);
        }
        acc
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, u32)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    /// Terms already sorted and nonzero; used by reductions that build output
    /// in decreasing order.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_consistent() {
        let f = PrimeField::new(7).unwrap();
        let x = Polynomial::monomial(Monomial::var(0), 1);
        let y = Polynomial::monomial(Monomial::var(1), 1);
        let s = x.add(f, &y);
        let d = x.sub(f, &y);
        // (x + y)(x - y) = x^2 - y^2
        let prod = s.mul(f, &d);
        let expect = Polynomial::from_terms(
            f,
            alloc::vec![
                (Monomial::var(0).mul_var(0), 1),
                (Monomial::var(1).mul_var(1), 6)
            ],
        );
        assert_eq!(prod, expect);
        assert!(prod.is_homogeneous());
        assert!(s.sub(f, &s).is_zero());
    }

    #[test]
    fn from_terms_merges() {
        let f = PrimeField::new(3).unwrap();
        let m = Monomial::var(2);
        let p = Polynomial::from_terms(f, alloc::vec![(m, 1), (Monomial::var(0), 2), (m, 2)]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.leading_monomial(), Some(Monomial::var(0)));
    }
}
