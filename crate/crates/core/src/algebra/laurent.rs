//! Laurent polynomials over F_p: a unit polynomial part with nonzero
//! constant term times an integer power of Z.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::Fp;
use super::poly::DensePoly;
use crate::error::{Error, Result};

/// Canonical form: `unit * Z^offset` where `unit` has nonzero constant
/// coefficient, or `unit = 0` with `offset = 0` for the zero element.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct LaurentPoly {
    unit: DensePoly,
    offset: i64,
}

impl LaurentPoly {
    pub fn zero(p: u64) -> Self {
        LaurentPoly { unit: DensePoly::zero(p), offset: 0 }
    }

    pub fn one(p: u64) -> Self {
        LaurentPoly { unit: DensePoly::one(p), offset: 0 }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        LaurentPoly { unit: DensePoly::constant(p, c), offset: 0 }
    }

    /// The monomial `c * Z^e`.
    pub fn monomial(p: u64, c: u64, e: i64) -> Self {
        let unit = DensePoly::constant(p, c);
        if unit.is_zero() {
            Self::zero(p)
        } else {
            LaurentPoly { unit, offset: e }
        }
    }

    pub fn z(p: u64) -> Self {
        Self::monomial(p, 1, 1)
    }

    /// Wraps an ordinary polynomial, factoring its valuation into the
    /// offset.
    pub fn from_dense(f: DensePoly) -> Self {
        Self::from_dense_shifted(f, 0)
    }

    /// `f * Z^shift` in canonical form.
    pub fn from_dense_shifted(f: DensePoly, shift: i64) -> Self {
        if f.is_zero() {
            return Self::zero(f.p());
        }
        let val = f.coeffs().iter().position(|&c| c != 0).expect("nonzero");
        let unit = DensePoly::from_coeffs(f.p(), f.coeffs()[val..].iter().copied());
        LaurentPoly { unit, offset: shift + val as i64 }
    }

    /// Builds from `(exponent, coefficient)` terms.
    pub fn from_terms(p: u64, terms: &[(i64, u64)]) -> Self {
        if terms.is_empty() {
            return Self::zero(p);
        }
        let lo = terms.iter().map(|&(e, _)| e).min().expect("nonempty");
        let hi = terms.iter().map(|&(e, _)| e).max().expect("nonempty");
        let mut coeffs = vec![0u64; (hi - lo) as usize + 1];
        for &(e, c) in terms {
            let k = (e - lo) as usize;
            coeffs[k] = (coeffs[k] + c % p) % p;
        }
        Self::from_dense_shifted(DensePoly::from_coeffs(p, coeffs), lo)
    }

    pub fn p(&self) -> u64 {
        self.unit.p()
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.offset == 0 && self.unit.is_one()
    }

    /// Unit polynomial part (nonzero constant term unless zero).
    pub fn unit_part(&self) -> &DensePoly {
        &self.unit
    }

    /// `Z`-valuation; `None` for zero.
    pub fn val(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset)
        }
    }

    /// `Z`-degree; `None` for zero.
    pub fn deg(&self) -> Option<i64> {
        self.unit.degree().map(|d| self.offset + d as i64)
    }

    /// `(deg, val)` pair; the zero polynomial has neither.
    pub fn deg_val(&self) -> Result<(i64, i64)> {
        match (self.deg(), self.val()) {
            (Some(d), Some(v)) => Ok((d, v)),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    /// Coefficient of `Z^e`.
    pub fn coeff(&self, e: i64) -> u64 {
        if e < self.offset {
            return 0;
        }
        self.unit.coeff((e - self.offset) as usize)
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.unit
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.offset + k as i64, c))
    }

    /// Multiplies by `Z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { unit: self.unit.clone(), offset: self.offset + k }
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let a = self.unit.shift_up((self.offset - lo) as usize);
        let b = rhs.unit.shift_up((rhs.offset - lo) as usize);
        Self::from_dense_shifted(a.add_ref(&b), lo)
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly { unit: self.unit.neg_ref(), offset: self.offset }
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p());
        }
        // Unit parts have nonzero constant terms, so their product does
        // too; no renormalization is needed.
        LaurentPoly { unit: self.unit.mul_ref(&rhs.unit), offset: self.offset + rhs.offset }
    }

    pub fn mul_scalar(&self, c: u64) -> Self {
        Self::from_dense_shifted(self.unit.mul_scalar(c), self.offset)
    }

    pub fn pow(&self, exp: u64) -> Self {
        if exp == 0 {
            return Self::one(self.p());
        }
        if self.is_zero() {
            return Self::zero(self.p());
        }
        LaurentPoly { unit: self.unit.pow(exp), offset: self.offset * exp as i64 }
    }

    /// Division known to be exact in the Laurent ring.
    ///
    /// # Panics
    ///
    /// Panics if `d` is zero or does not divide `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "exact division by zero");
        if self.is_zero() {
            return Self::zero(self.p());
        }
        let unit = self.unit.exact_div(&d.unit);
        debug_assert_ne!(unit.constant_coeff(), 0);
        LaurentPoly { unit, offset: self.offset - d.offset }
    }

    /// Substitutes Z ↦ Z^-1, negating every exponent.
    pub fn reverse_z(&self) -> Self {
        let terms: Vec<(i64, u64)> = self.terms().map(|(e, c)| (-e, c)).collect();
        Self::from_terms(self.p(), &terms)
    }

    /// Evaluates at a point of F_p. Negative exponents require `z` to be
    /// invertible, so `z = 0` is rejected whenever the valuation is negative.
    pub fn eval(&self, z: Fp) -> Result<Fp> {
        assert_eq!(z.modulus(), self.p(), "mixed moduli");
        if self.is_zero() {
            return Ok(Fp::reduced(self.p(), 0));
        }
        let u = self.unit.eval(z);
        if self.offset >= 0 {
            return Ok(u * z.pow(self.offset as u128));
        }
        let zi = z.inv()?;
        Ok(u * zi.pow((-self.offset) as u128))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "Z")?,
                (1, c) => write!(f, "{c}*Z")?,
                (e, 1) => write!(f, "Z^{e}")?,
                (e, c) => write!(f, "{c}*Z^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.sub_ref(rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}
