//! Coefficient fields. Arithmetic goes through a field context so that the
//! prime is a runtime value and elements stay plain integers.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default characteristic for all computations.
pub const DEFAULT_PRIME: u32 = 32003;

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Signed integer-like rendering used when printing polynomials.
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// Whether `render` would print a leading minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool {
        self.render(a).starts_with('-')
    }
}

/// The prime field `F_p`, `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0} is not a prime below 2^31")]
pub struct NotPrime(pub u64);

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, NotPrime> {
        if p < 2 || p >= 1 << 31 || !is_prime(p as u64) {
            return Err(NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat
        let mut base = *a as u64;
        let mut exp = self.p as u64 - 2;
        let mut acc = 1u64;
        let m = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc as u32
    }

    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn render(&self, a: &u32) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
}

/// Exact rationals; slow, meant for spot checks against `F_p` results.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::default();
        assert_eq!(f.prime(), 32003);
        assert_eq!(f.from_i64(-1), 32002);
        assert_eq!(f.render(&32002), "-1");
        assert_eq!(f.mul(&f.inv(&7), &7), 1);
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn rational_field_basics() {
        let q = RationalField;
        let half = q.inv(&q.from_i64(2));
        assert_eq!(q.add(&half, &half), q.one());
        assert!(q.is_negative(&q.from_i64(-3)));
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0u32..32003, b in 0u32..32003, c in 0u32..32003) {
            let f = PrimeField::default();
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a)), 1);
            }
        }
    }
}
