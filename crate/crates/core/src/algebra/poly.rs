//! Dense univariate polynomials over F_p.
//!
//! Coefficients are stored ascending with no trailing zeros, so the zero
//! polynomial is the empty list and `degree` is `None` for it rather than a
//! sentinel integer.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::{check_prime, raw, Fp};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct DensePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl DensePoly {
    pub fn zero(p: u64) -> Self {
        DensePoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        let c = c % p;
        DensePoly { p, coeffs: if c == 0 { Vec::new() } else { vec![c] } }
    }

    /// The monomial `c * x^k`.
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero(p);
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        DensePoly { p, coeffs }
    }

    pub fn x(p: u64) -> Self {
        Self::monomial(p, 1, 1)
    }

    /// Builds from ascending coefficients, reducing mod `p`.
    pub fn from_coeffs(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        let mut out = DensePoly { p, coeffs };
        out.normalize();
        out
    }

    /// Builds from ascending signed coefficients.
    pub fn from_signed(p: u64, coeffs: impl IntoIterator<Item = i64>) -> Self {
        Self::from_coeffs(p, coeffs.into_iter().map(|c| c.rem_euclid(p as i64) as u64))
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; 0 for the zero polynomial.
    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn constant_coeff(&self) -> u64 {
        self.coeff(0)
    }

    /// Coefficient of `x^k` (0 beyond the stored length).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub(crate) fn expect_same_modulus(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "mixed moduli: F_{}[x] vs F_{}[x]",
            self.p, other.p
        );
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        self.expect_same_modulus(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(raw::add(self.coeff(k), rhs.coeff(k), self.p));
        }
        let mut out = DensePoly { p: self.p, coeffs };
        out.normalize();
        out
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.expect_same_modulus(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(raw::sub(self.coeff(k), rhs.coeff(k), self.p));
        }
        let mut out = DensePoly { p: self.p, coeffs };
        out.normalize();
        out
    }

    pub fn neg_ref(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| raw::neg(c, self.p)).collect();
        DensePoly { p: self.p, coeffs }
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        self.expect_same_modulus(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let mut acc = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
        }
        let p = self.p as u128;
        let coeffs = acc.into_iter().map(|c| (c % p) as u64).collect();
        let mut out = DensePoly { p: self.p, coeffs };
        out.normalize();
        out
    }

    pub fn mul_scalar(&self, c: u64) -> Self {
        let c = c % self.p;
        if c == 0 {
            return Self::zero(self.p);
        }
        let coeffs = self.coeffs.iter().map(|&a| raw::mul(a, c, self.p)).collect();
        DensePoly { p: self.p, coeffs }
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        DensePoly { p: self.p, coeffs }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: Fp) -> Fp {
        assert_eq!(x.modulus(), self.p, "evaluation point in a different field");
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = raw::add(raw::mul(acc, x.value(), self.p), c, self.p);
        }
        Fp::reduced(self.p, acc)
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn make_monic(&self) -> Self {
        let lead = self.leading_coeff();
        if lead == 0 || lead == 1 {
            return self.clone();
        }
        self.mul_scalar(raw::inv(lead, self.p))
    }

    /// Long division; the divisor must be nonzero.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        self.expect_same_modulus(d);
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        if self.coeffs.len() < dd + 1 {
            return Ok((Self::zero(self.p), self.clone()));
        }
        let p = self.p;
        let lead_inv = raw::inv(d.leading_coeff(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = raw::mul(rem[k], lead_inv, p);
            if q == 0 {
                continue;
            }
            quot[k - dd] = q;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + i] = raw::sub(rem[k - dd + i], raw::mul(q, dc, p), p);
            }
        }
        rem.truncate(dd);
        let mut r = DensePoly { p, coeffs: rem };
        r.normalize();
        let mut q = DensePoly { p, coeffs: quot };
        q.normalize();
        Ok((q, r))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Division known to be exact.
    ///
    /// # Panics
    ///
    /// Panics if the divisor is zero or the remainder is nonzero; callers
    /// only reach this from identities that guarantee exactness.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d).expect("exact division by zero");
        assert!(r.is_zero(), "division expected to be exact has a remainder");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        self.expect_same_modulus(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `self * rhs mod f`.
    pub fn mulmod(&self, rhs: &Self, f: &Self) -> Result<Self> {
        self.mul_ref(rhs).rem(f)
    }

    /// `self^exp mod f`.
    pub fn powmod(&self, mut exp: u128, f: &Self) -> Result<Self> {
        let mut acc = Self::one(self.p).rem(f)?;
        let mut base = self.rem(f)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mulmod(&base, f)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mulmod(&base, f)?;
            }
        }
        Ok(acc)
    }

    /// Irreducibility over F_p.
    ///
    /// A polynomial of degree n >= 2 is reducible iff it has an irreducible
    /// factor of degree k <= n/2, and the product of all irreducibles of
    /// degree dividing k is x^(p^k) - x. Walking the Frobenius chain and
    /// taking gcds at each level therefore decides irreducibility, with the
    /// common early exit on small factors.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = self.make_monic();
        let x = Self::x(self.p);
        let mut frob = x.clone();
        for _ in 1..=n / 2 {
            frob = frob.powmod(self.p as u128, &f).expect("nonzero modulus");
            let g = f.gcd(&frob.sub_ref(&x));
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    /// Monic irreducible factorization with multiplicities, factors
    /// ascending by (degree, coefficients). The input must be nonzero; the
    /// leading unit is dropped.
    ///
    /// Trial division over all monic polynomials of ascending degree: the
    /// quadratic-in-p^k cost is fine here because every caller factors
    /// polynomials of single-digit degree.
    pub fn factor_monic(&self) -> Vec<(Self, usize)> {
        assert!(!self.is_zero(), "factorization of the zero polynomial");
        let mut rem = self.make_monic();
        let mut out = Vec::new();
        let mut k = 1;
        while rem.degree().unwrap_or(0) >= 2 * k {
            for g in monic_polys_of_degree(self.p, k) {
                if rem.degree().unwrap_or(0) < 2 * k {
                    break;
                }
                let mut mult = 0;
                loop {
                    let (q, r) = rem.divrem(&g).expect("nonzero divisor");
                    if !r.is_zero() {
                        break;
                    }
                    rem = q;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((g, mult));
                }
            }
            k += 1;
        }
        if rem.degree().unwrap_or(0) >= 1 {
            out.push((rem, 1));
        }
        out.sort_by_key(|(g, _)| (g.degree().unwrap_or(0), g.coeffs.clone()));
        // Merge in case the final remainder equals an earlier factor degree
        // that was skipped by the loop bound.
        let mut merged: Vec<(Self, usize)> = Vec::new();
        for (g, e) in out {
            match merged.last_mut() {
                Some((h, m)) if *h == g => *m += e,
                _ => merged.push((g, e)),
            }
        }
        merged
    }
}

/// All monic polynomials of exact degree `d` over F_p, in lexicographic
/// order of ascending coefficients. Degree 0 yields the constant 1.
pub fn monic_polys_of_degree(p: u64, d: usize) -> impl Iterator<Item = DensePoly> {
    check_prime(p).expect("prime modulus");
    let total = (p as u128).pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push((idx % p as u128) as u64);
            idx /= p as u128;
        }
        coeffs.push(1);
        DensePoly { p, coeffs }
    })
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        self.add_ref(rhs)
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        self.sub_ref(rhs)
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, coeffs: &[u64]) -> DensePoly {
        DensePoly::from_coeffs(p, coeffs.iter().copied())
    }

    #[test]
    fn zero_is_empty_and_degreeless() {
        let z = poly(3, &[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z, DensePoly::zero(3));
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let f = poly(3, &[4, 5, 6]);
        assert_eq!(f.coeffs(), &[1, 2]);
        assert_eq!(f.degree(), Some(1));
    }

    #[test]
    fn arithmetic_basics() {
        let f = poly(2, &[1, 1]); // 1 + x
        let g = poly(2, &[1, 1, 1]); // 1 + x + x^2
        assert_eq!((&f * &g).coeffs(), &[1, 0, 0, 1]); // (1+x)(1+x+x^2) = 1 + x^3
        assert_eq!((&f + &f).coeffs(), &[] as &[u64]);
        assert_eq!((&g - &f).coeffs(), &[0, 0, 1]);
        assert_eq!(f.pow(3).coeffs(), &[1, 1, 1, 1]); // (1+x)^3 over F_2
    }

    #[test]
    fn divrem_roundtrip() {
        let f = poly(5, &[3, 0, 1, 4]);
        let d = poly(5, &[2, 3]);
        let (q, r) = f.divrem(&d).unwrap();
        assert!(r.degree() < d.degree());
        assert_eq!(&(&q * &d) + &r, f);
        assert_eq!(f.divrem(&DensePoly::zero(5)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn gcd_examples() {
        let f = poly(2, &[1, 0, 1]); // (1+x)^2
        let g = poly(2, &[1, 1]);
        assert_eq!(f.gcd(&g), g);
        let a = poly(7, &[6, 1]); // x + 6
        let b = poly(7, &[1, 1]); // x + 1
        assert!(a.gcd(&b).is_one());
        assert!(DensePoly::zero(7).gcd(&DensePoly::zero(7)).is_zero());
        // gcd is monic even when the inputs are not
        let c = poly(7, &[3, 3]); // 3(x + 1)
        assert_eq!(c.gcd(&c), b);
    }

    #[test]
    fn eval_horner() {
        let f = poly(5, &[1, 2, 3]);
        let x = Fp::new(5, 2).unwrap();
        assert_eq!(f.eval(x).value(), (1 + 2 * 2 + 3 * 4) % 5);
    }

    #[test]
    fn irreducibility_known_cases() {
        assert!(poly(2, &[1, 1, 1]).is_irreducible()); // x^2+x+1
        assert!(!poly(2, &[1, 0, 1]).is_irreducible()); // x^2+1 = (x+1)^2
        assert!(poly(3, &[1, 0, 1]).is_irreducible()); // x^2+1 over F_3
        assert!(poly(2, &[1, 1, 0, 1]).is_irreducible()); // x^3+x+1
        assert!(poly(2, &[1, 0, 1, 1]).is_irreducible()); // x^3+x^2+1
        assert!(!poly(2, &[1, 1, 1, 1]).is_irreducible()); // (x+1)(x^2+1)... = x^3+x^2+x+1
        assert!(!poly(2, &[1]).is_irreducible());
        assert!(!DensePoly::zero(2).is_irreducible());
        assert!(poly(2, &[1, 1, 0, 0, 1, 1, 1]).is_irreducible()); // x^6+x^5+x^4+x+1
    }

    #[test]
    fn factor_examples() {
        let f = poly(2, &[1, 0, 1]); // (x+1)^2
        assert_eq!(f.factor_monic(), vec![(poly(2, &[1, 1]), 2)]);

        let g = poly(2, &[1, 1, 1]); // irreducible
        assert_eq!(g.factor_monic(), vec![(g.clone(), 1)]);

        // x(x+1)^2(x^2+x+1) over F_2
        let h = &(&poly(2, &[0, 1]) * &poly(2, &[1, 0, 1])) * &poly(2, &[1, 1, 1]);
        assert_eq!(
            h.factor_monic(),
            vec![(poly(2, &[0, 1]), 1), (poly(2, &[1, 1]), 2), (poly(2, &[1, 1, 1]), 1)]
        );

        // 2(x+2)(x+1) over F_3: unit dropped, factors monic
        let k = poly(3, &[1, 0, 2]);
        assert_eq!(k.factor_monic(), vec![(poly(3, &[1, 1]), 1), (poly(3, &[2, 1]), 1)]);
    }

    #[test]
    fn factor_product_reassembles() {
        let f = poly(3, &[2, 0, 1, 1, 0, 2, 1]);
        let mut prod = DensePoly::one(3).mul_scalar(f.leading_coeff());
        for (g, e) in f.factor_monic() {
            assert!(g.is_irreducible());
            prod = prod.mul_ref(&g.pow(e as u64));
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn monic_enumeration_counts() {
        assert_eq!(monic_polys_of_degree(2, 3).count(), 8);
        assert_eq!(monic_polys_of_degree(3, 2).count(), 9);
        assert!(monic_polys_of_degree(2, 2).all(|f| f.is_monic() && f.degree() == Some(2)));
    }
}
