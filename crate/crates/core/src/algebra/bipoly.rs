//! Polynomials in an outer variable with Laurent-polynomial coefficients.
//!
//! Only what the characteristic-polynomial determinant needs: ring
//! operations and exact division in F_p[Z, Z^-1][lambda].

use super::laurent::LaurentPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct BiPoly {
    p: u64,
    coeffs: Vec<LaurentPoly>, // coefficient of lambda^i, no trailing zeros
}

impl BiPoly {
    pub fn zero(p: u64) -> Self {
        BiPoly { p, coeffs: Vec::new() }
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<LaurentPoly>) -> Self {
        let mut out = BiPoly { p, coeffs };
        out.normalize();
        out
    }

    pub fn constant(c: LaurentPoly) -> Self {
        let p = c.p();
        Self::from_coeffs(p, vec![c])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(LaurentPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> LaurentPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| LaurentPoly::zero(self.p))
    }

    pub fn into_coeffs(self) -> Vec<LaurentPoly> {
        self.coeffs
    }

    fn lead(&self) -> &LaurentPoly {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub_ref(&rhs.coeff(i))).collect();
        Self::from_coeffs(self.p, coeffs)
    }

    pub fn neg(&self) -> Self {
        BiPoly { p: self.p, coeffs: self.coeffs.iter().map(LaurentPoly::neg_ref).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let mut coeffs = vec![LaurentPoly::zero(self.p); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::from_coeffs(self.p, coeffs)
    }

    /// Division known to be exact (the quotient of two minors in a
    /// fraction-free elimination). Standard long division in lambda; each
    /// leading-coefficient division is exact in the Laurent ring because
    /// the full division is.
    ///
    /// # Panics
    ///
    /// Panics if `d` is zero or the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "exact division by zero");
        if self.is_zero() {
            return Self::zero(self.p);
        }
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        assert!(rem.len() >= d.coeffs.len(), "non-exact division");
        let mut quot = vec![LaurentPoly::zero(self.p); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = rem[k].exact_div(d.lead());
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + i] = rem[k - dd + i].sub_ref(&q.mul_ref(dc));
            }
            quot[k - dd] = q;
        }
        assert!(rem.iter().all(LaurentPoly::is_zero), "non-exact division");
        Self::from_coeffs(self.p, quot)
    }
}
