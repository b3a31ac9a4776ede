use super::GroebnerError;

/// Arithmetic in `F_p` for a prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, GroebnerError> {
        if p < 2 || p >= 1 << 31 || !is_prime(p) {
            return Err(GroebnerError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, for printing.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 7, 32003] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p.min(500) {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn signed_representative() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.signed(6), -1);
        assert_eq!(f.signed(3), 3);
        assert_eq!(f.from_i64(-1), 6);
    }
}
