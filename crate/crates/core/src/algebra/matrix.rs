//! Square matrices of Laurent polynomials with exact determinants.

use std::collections::BTreeMap;
use std::fmt;

use super::bipoly::BiPoly;
use super::fp::Fp;
use super::fpmat::FpMatrix;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Entry rings the fraction-free elimination runs over.
///
/// Implementations must be integral domains; the elimination only ever
/// divides by products of earlier pivots, which divide exactly.
pub(crate) trait DetEntry: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn exact_div(&self, d: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl DetEntry for LaurentPoly {
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub_ref(rhs)
    }
    fn exact_div(&self, d: &Self) -> Self {
        LaurentPoly::exact_div(self, d)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
}

impl DetEntry for BiPoly {
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        BiPoly::mul(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        BiPoly::sub(self, rhs)
    }
    fn exact_div(&self, d: &Self) -> Self {
        BiPoly::exact_div(self, d)
    }
    fn neg(&self) -> Self {
        BiPoly::neg(self)
    }
}

/// Bareiss elimination: one-step fraction-free Gaussian elimination. After
/// step k every entry is a (k+1)-minor of the original matrix, so the
/// division by the previous pivot is exact and intermediate growth stays
/// polynomial. Works verbatim over any integral domain.
pub(crate) fn bareiss_det<T: DetEntry>(mut a: Vec<Vec<T>>, one: T) -> T {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    if n == 0 {
        return one;
    }
    let mut negate = false;
    let mut prev = one;
    for k in 0..n - 1 {
        let Some(pivot) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return a[k][k].clone();
        };
        if pivot != k {
            a.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// A square matrix over F_p[Z, Z^-1].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    p: u64,
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(p: u64, n: usize) -> Self {
        LaurentMatrix { p, n, entries: vec![LaurentPoly::zero(p); n * n] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(p));
        }
        m
    }

    pub fn from_entries(p: u64, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Mismatch(format!("matrix is not square {n}x{n}")));
        }
        let entries: Vec<LaurentPoly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.p() != p) {
            return Err(Error::Mismatch("mixed moduli in matrix entries".into()));
        }
        Ok(LaurentMatrix { p, n, entries })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert_eq!(v.p(), self.p, "mixed moduli: F_{} vs F_{}", self.p, v.p());
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.entries.iter()
    }

    fn expect_same_shape(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "mixed moduli: F_{} vs F_{}", self.p, rhs.p);
        assert_eq!(self.n, rhs.n, "dimension mismatch: {} vs {}", self.n, rhs.n);
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.expect_same_shape(rhs);
        let entries =
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add_ref(b)).collect();
        LaurentMatrix { p: self.p, n: self.n, entries }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.expect_same_shape(rhs);
        let entries =
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.sub_ref(b)).collect();
        LaurentMatrix { p: self.p, n: self.n, entries }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.expect_same_shape(rhs);
        let mut out = Self::zeros(self.p, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = LaurentPoly::zero(self.p);
                for k in 0..self.n {
                    let term = self.get(i, k).mul_ref(rhs.get(k, j));
                    acc = acc.add_ref(&term);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Subtracts `s · I` from the matrix; the shape `G^n − Z^k I` shows up
    /// throughout the counting formulas.
    pub fn sub_scaled_identity(&self, s: &LaurentPoly) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.set(i, i, self.get(i, i).sub_ref(s));
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.n);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact determinant in F_p[Z, Z^-1].
    pub fn det(&self) -> LaurentPoly {
        let grid: Vec<Vec<LaurentPoly>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        bareiss_det(grid, LaurentPoly::one(self.p))
    }

    /// Coefficients c_0..c_r of det(λI − m), ascending in λ. The result is
    /// monic of degree exactly `dim()`.
    pub fn char_poly(&self) -> Vec<LaurentPoly> {
        let grid: Vec<Vec<BiPoly>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let mut coeffs = vec![self.get(i, j).neg_ref()];
                        if i == j {
                            coeffs.push(LaurentPoly::one(self.p));
                        }
                        BiPoly::from_coeffs(self.p, coeffs)
                    })
                    .collect()
            })
            .collect();
        let chi = bareiss_det(grid, BiPoly::constant(LaurentPoly::one(self.p)));
        assert_eq!(chi.degree(), Some(self.n), "characteristic polynomial degree");
        let coeffs = chi.into_coeffs();
        assert!(coeffs[self.n].is_one(), "characteristic polynomial is monic");
        coeffs
    }

    /// Least valuation and greatest degree over the nonzero entries, or
    /// `None` for the zero matrix.
    pub fn val_deg_window(&self) -> Option<(i64, i64)> {
        let mut window: Option<(i64, i64)> = None;
        for e in &self.entries {
            let (Some(v), Some(d)) = (e.val(), e.deg()) else { continue };
            window = Some(match window {
                None => (v, d),
                Some((lo, hi)) => (lo.min(v), hi.max(d)),
            });
        }
        window
    }

    /// Writes the matrix as Σ_k M_k Z^k and returns the nonzero M_k.
    pub fn coefficient_matrices(&self) -> BTreeMap<i64, FpMatrix> {
        let mut out: BTreeMap<i64, FpMatrix> = BTreeMap::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for (e, c) in self.get(i, j).terms() {
                    out.entry(e)
                        .or_insert_with(|| FpMatrix::zeros(self.p, self.n, self.n))
                        .set(i, j, c);
                }
            }
        }
        out
    }

    /// Evaluates every entry at `z`. Entries of negative valuation require
    /// `z ≠ 0`.
    pub fn eval(&self, z: Fp) -> Result<FpMatrix> {
        let mut out = FpMatrix::zeros(self.p, self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j).eval(z)?.value());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: u64, terms: &[(i64, u64)]) -> LaurentPoly {
        LaurentPoly::from_terms(p, terms)
    }

    fn m(p: u64, rows: &[&[&[(i64, u64)]]]) -> LaurentMatrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|t| lp(p, t)).collect())
            .collect();
        LaurentMatrix::from_entries(p, rows).unwrap()
    }

    #[test]
    fn det_identity_is_one() {
        assert!(LaurentMatrix::identity(2, 3).det().is_one());
    }

    #[test]
    fn det_two_by_two() {
        // [[Z+1, 1], [1, 1]] over F_2
        let a = m(2, &[&[&[(1, 1), (0, 1)], &[(0, 1)]], &[&[(0, 1)], &[(0, 1)]]]);
        assert_eq!(a.det(), lp(2, &[(1, 1)]));
        // [[Z, 1], [1, 0]] over F_2
        let b = m(2, &[&[&[(1, 1)], &[(0, 1)]], &[&[(0, 1)], &[]]]);
        assert_eq!(b.det(), LaurentPoly::one(2));
    }

    #[test]
    fn det_needs_row_swap() {
        // Zero pivot in the corner forces a swap; det = -Z^-1 * Z = -1 = 4 mod 5.
        let a = m(5, &[&[&[], &[(-1, 1)]], &[&[(1, 1)], &[]]]);
        assert_eq!(a.det(), lp(5, &[(0, 4)]));
    }

    #[test]
    fn det_multiplicative() {
        let a = m(3, &[&[&[(1, 2), (0, 1)], &[]], &[&[(0, 1)], &[(2, 1)]]]);
        let b = m(3, &[&[&[(-1, 1)], &[(0, 2)]], &[&[(1, 1), (0, 1)], &[(0, 1)]]]);
        assert_eq!(a.mul(&b).det(), a.det().mul_ref(&b.det()));
    }

    #[test]
    fn char_poly_one_by_one() {
        let a = m(5, &[&[&[(1, 1)]]]);
        let chi = a.char_poly();
        assert_eq!(chi.len(), 2);
        assert_eq!(chi[0], lp(5, &[(1, 4)]));
        assert!(chi[1].is_one());
    }

    #[test]
    fn char_poly_companion_shape() {
        // [[Z, 1], [1, 0]] over F_2: χ = λ² + Zλ + 1.
        let a = m(2, &[&[&[(1, 1)], &[(0, 1)]], &[&[(0, 1)], &[]]]);
        let chi = a.char_poly();
        assert_eq!(chi[0], LaurentPoly::one(2));
        assert_eq!(chi[1], lp(2, &[(1, 1)]));
        assert!(chi[2].is_one());
    }

    #[test]
    fn char_poly_nilpotent() {
        let a = m(3, &[&[&[], &[(1, 1)]], &[&[], &[]]]);
        let chi = a.char_poly();
        assert!(chi[0].is_zero());
        assert!(chi[1].is_zero());
        assert!(chi[2].is_one());
    }

    #[test]
    fn power_matches_repeated_multiplication() {
        let a = m(2, &[&[&[(1, 1)], &[(0, 1)]], &[&[(0, 1)], &[]]]);
        assert_eq!(a.pow(0), LaurentMatrix::identity(2, 2));
        assert_eq!(a.pow(1), a);
        let sq = a.pow(2);
        assert_eq!(sq, a.mul(&a));
        // [[Z²+1, Z], [Z, 1]]
        assert_eq!(sq.get(0, 0), &lp(2, &[(2, 1), (0, 1)]));
        assert_eq!(sq.get(0, 1), &lp(2, &[(1, 1)]));
        assert_eq!(sq.get(1, 1), &LaurentPoly::one(2));
    }

    #[test]
    fn cayley_hamilton_two_by_two() {
        let a = m(3, &[&[&[(1, 1), (0, 2)], &[(-1, 1)]], &[&[(0, 1)], &[(2, 2)]]]);
        let chi = a.char_poly();
        let mut acc = LaurentMatrix::zeros(3, 2);
        for (k, c) in chi.iter().enumerate() {
            let mut term = a.pow(k as u64);
            for i in 0..2 {
                for j in 0..2 {
                    term.set(i, j, term.get(i, j).mul_ref(c));
                }
            }
            acc = acc.add(&term);
        }
        assert_eq!(acc, LaurentMatrix::zeros(3, 2));
    }

    #[test]
    fn window_and_coefficient_matrices() {
        let a = m(2, &[&[&[(-2, 1)], &[(0, 1)]], &[&[], &[(3, 1)]]]);
        assert_eq!(a.val_deg_window(), Some((-2, 3)));
        let parts = a.coefficient_matrices();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-2, 0, 3]);
        assert_eq!(parts[&-2].get(0, 0), 1);
        assert_eq!(parts[&0].get(0, 1), 1);
        assert_eq!(parts[&3].get(1, 1), 1);
        assert!(LaurentMatrix::zeros(2, 2).val_deg_window().is_none());
        assert!(LaurentMatrix::zeros(2, 2).coefficient_matrices().is_empty());
    }

    #[test]
    fn eval_commutes_with_det() {
        let a = m(5, &[&[&[(-1, 2), (1, 1)], &[(0, 3)]], &[&[(0, 1)], &[(2, 4)]]]);
        let z = Fp::new(5, 3).unwrap();
        let evaluated = a.eval(z).unwrap();
        assert_eq!(evaluated.det(), a.det().eval(z).unwrap().value());
    }

    #[test]
    fn rejects_ragged_and_mixed() {
        let p = 2;
        assert!(LaurentMatrix::from_entries(p, vec![vec![LaurentPoly::one(p)], vec![]]).is_err());
        assert!(LaurentMatrix::from_entries(
            p,
            vec![vec![LaurentPoly::one(p), LaurentPoly::one(3)], vec![
                LaurentPoly::zero(p),
                LaurentPoly::zero(p)
            ]]
        )
        .is_err());
        assert!(LaurentMatrix::from_entries(p, vec![]).is_err());
    }
}
