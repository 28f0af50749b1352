//! Scalars of the prime field F_p with a runtime modulus.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

/// Raw residue arithmetic used by the polynomial and matrix hot paths.
/// Inputs must already be reduced; moduli fit comfortably in 32 bits, so
/// products are carried in `u128` only where an overflow is conceivable.
pub(crate) mod raw {
    pub fn add(a: u64, b: u64, p: u64) -> u64 {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    pub fn sub(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    pub fn neg(a: u64, p: u64) -> u64 {
        if a == 0 {
            0
        } else {
            p - a
        }
    }

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(mut base: u64, mut exp: u128, p: u64) -> u64 {
        let mut acc = 1 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue via Fermat.
    pub fn inv(a: u64, p: u64) -> u64 {
        debug_assert!(a % p != 0);
        pow(a, (p - 2) as u128, p)
    }
}

/// Validates a prime-field modulus.
pub fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// An element of F_p. Carries its modulus so mixed-modulus arithmetic can
/// be rejected instead of silently producing garbage.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp {
    p: u64,
    value: u64,
}

impl Fp {
    /// Reduces `value` into F_p. Fails if `p` is not prime.
    pub fn new(p: u64, value: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Fp { p, value: value % p })
    }

    /// Reduces a possibly negative integer into F_p.
    pub fn from_i64(p: u64, value: i64) -> Result<Self> {
        check_prime(p)?;
        Ok(Fp { p, value: value.rem_euclid(p as i64) as u64 })
    }

    /// Same field, value already reduced; used internally where the modulus
    /// has been validated once.
    pub(crate) fn reduced(p: u64, value: u64) -> Self {
        debug_assert!(value < p);
        Fp { p, value }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, exp: u128) -> Self {
        Fp { p: self.p, value: raw::pow(self.value, exp, self.p) }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            Err(Error::ZeroElement)
        } else {
            Ok(Fp { p: self.p, value: raw::inv(self.value, self.p) })
        }
    }

    fn expect_same_modulus(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "mixed moduli: F_{} vs F_{}",
            self.p, other.p
        );
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.expect_same_modulus(&rhs);
        Fp { p: self.p, value: raw::add(self.value, rhs.value, self.p) }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.expect_same_modulus(&rhs);
        Fp { p: self.p, value: raw::sub(self.value, rhs.value, self.p) }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.expect_same_modulus(&rhs);
        Fp { p: self.p, value: raw::mul(self.value, rhs.value, self.p) }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { p: self.p, value: raw::neg(self.value, self.p) }
    }
}
