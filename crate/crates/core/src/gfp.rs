//! Exact arithmetic in the prime field GF(p).
//!
//! The characteristic is a runtime parameter so a single binary serves
//! p = 3, 5, 7, ... Field elements are canonical residues in `[0, p)`
//! stored as `u64`; the field itself is the lightweight [`Fp`] handle
//! that carries the modulus and performs every operation.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),
}

/// The prime field GF(p). Cheap to copy; all element operations live here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Fp {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Canonical residue of a signed integer.
    #[inline]
    pub fn reduce(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - b + a
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat exponentiation: a^(p-2).
    pub fn inv(self, a: u64) -> Result<u64, FieldError> {
        let a = a % self.p;
        if a == 0 {
            return Err(FieldError::DivisionByZero(self.p));
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// a / b, failing when b = 0.
    pub fn div(self, a: u64, b: u64) -> Result<u64, FieldError> {
        Ok(self.mul(a % self.p, self.inv(b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert_eq!(Fp::new(1), Err(FieldError::NotPrime(1)));
        assert_eq!(Fp::new(9), Err(FieldError::NotPrime(9)));
        assert!(Fp::new(2).is_ok());
        assert!(Fp::new(13).is_ok());
    }

    #[test]
    fn inverse_examples() {
        let f3 = Fp::new(3).unwrap();
        assert_eq!(f3.inv(2).unwrap(), 2); // 2*2 = 4 = 1 mod 3
        let f5 = Fp::new(5).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3); // 2*3 = 6 = 1 mod 5
        let f7 = Fp::new(7).unwrap();
        assert_eq!(f7.inv(1).unwrap(), 1);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f5 = Fp::new(5).unwrap();
        assert_eq!(f5.inv(0), Err(FieldError::DivisionByZero(5)));
    }

    #[test]
    fn inverse_is_involutive() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = Fp::new(p).unwrap();
            for a in 1..p {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1);
                assert_eq!(f.inv(inv).unwrap(), a);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_p() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = Fp::new(p).unwrap();
            for a in 0..p {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..p {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..p {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn reduce_signed() {
        let f = Fp::new(7).unwrap();
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.reduce(-14), 0);
        assert_eq!(f.reduce(15), 1);
    }
}
