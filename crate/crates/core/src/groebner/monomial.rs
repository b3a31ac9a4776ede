use core::cmp::Ordering;
use core::fmt;

/// Maximum number of ring variables (two per graph vertex).
pub const MAX_VARS: usize = 32;

/// Dense exponent vector with cached total degree.
///
/// The derived ordering is lexicographic on the exponent vector, i.e. lex
/// with variable 0 largest. Trailing unused slots are zero and do not
/// influence comparisons.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    degree: u32,
}

impl Ord for Monomial {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl PartialOrd for Monomial {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        degree: 0,
    };

    pub fn var(i: usize) -> Self {
        let mut m = Self::ONE;
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u32).sum();
        m
    }

    /// Squarefree monomial with the given support bitmask.
    pub fn from_support(mask: u32) -> Self {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            if mask >> i & 1 == 1 {
                m.exps[i] = 1;
                m.degree += 1;
            }
        }
        m
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u8 {
        self.exps[i]
    }

    #[inline]
    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.degree += other.degree;
        m
    }

    #[inline]
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.degree -= self.degree;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.degree += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Bitmask of variables with positive exponent.
    pub fn support(&self) -> u32 {
        let mut mask = 0;
        for i in 0..MAX_VARS {
            if self.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", &self.exps[..])
    }
}
