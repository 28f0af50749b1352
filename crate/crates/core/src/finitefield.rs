//! Extension fields F_{p^N}: arithmetic, Frobenius, traces, normal bases,
//! and the F_p-linear-operator views of field operations.
//!
//! All fields taking part in one analysis live inside a single top field;
//! the subfield F_{p^M} for M | N is the Frobenius-fixed subset, never a
//! separately constructed field, so no embedding computations are needed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{check_prime, raw, DensePoly, Fp, FpMatrix};
use crate::arith::{divisors, order_from_group};
use crate::error::{Error, Result};

/// F_{p^N} presented as F_p[x]/(modulus) on the power basis 1, x, ..,
/// x^{N-1}.
#[derive(Debug, PartialEq, Eq)]
pub struct ExtField {
    p: u64,
    degree: usize,
    modulus: DensePoly,
}

impl ExtField {
    /// Builds the field from a monic irreducible modulus. Irreducibility is
    /// verified, so construction of large fields is not free; callers that
    /// sweep over many degrees should cache the result.
    pub fn new(modulus: DensePoly) -> Result<Arc<Self>> {
        let p = modulus.p();
        check_prime(p)?;
        let degree = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::BadModulus("degree must be at least 1".into())),
        };
        if !modulus.is_monic() {
            return Err(Error::BadModulus(format!("{modulus} is not monic")));
        }
        if !modulus.is_irreducible() {
            return Err(Error::BadModulus(format!("{modulus} is reducible over F_{p}")));
        }
        Ok(Arc::new(ExtField { p, degree, modulus }))
    }

    /// Builds F_{p^N} with a seed-deterministic random modulus.
    pub fn random(p: u64, degree: usize, seed: u64) -> Result<Arc<Self>> {
        Self::new(random_irreducible(p, degree, seed)?)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &DensePoly {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> ExtElem {
        ExtElem { field: Arc::clone(self), repr: DensePoly::zero(self.p) }
    }

    pub fn one(self: &Arc<Self>) -> ExtElem {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, c: u64) -> ExtElem {
        ExtElem { field: Arc::clone(self), repr: DensePoly::constant(self.p, c) }
    }

    /// The class of x, a generator of the power basis (not necessarily of
    /// the multiplicative group).
    pub fn gen(self: &Arc<Self>) -> ExtElem {
        if self.degree == 1 {
            // x reduces to a constant modulo a linear modulus.
            let root = raw::neg(self.modulus.constant_coeff(), self.p);
            return self.constant(root);
        }
        ExtElem { field: Arc::clone(self), repr: DensePoly::x(self.p) }
    }

    /// Element with the given power-basis coordinates (length ≤ N; shorter
    /// vectors are padded with zeros).
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<ExtElem> {
        if coeffs.len() > self.degree {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates for a degree-{} field",
                coeffs.len(),
                self.degree
            )));
        }
        let repr = DensePoly::from_coeffs(self.p, coeffs.iter().copied());
        Ok(ExtElem { field: Arc::clone(self), repr })
    }

    pub fn random_elem(self: &Arc<Self>, rng: &mut impl Rng) -> ExtElem {
        let coeffs: Vec<u64> = (0..self.degree).map(|_| rng.gen_range(0..self.p)).collect();
        ExtElem {
            field: Arc::clone(self),
            repr: DensePoly::from_coeffs(self.p, coeffs),
        }
    }

    /// All p^N elements, in odometer order of their coordinate vectors.
    /// Meant for exhaustive sweeps over small fields; the caller bounds the
    /// field size.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = ExtElem> {
        let field = Arc::clone(self);
        let mut digits = vec![0u64; self.degree];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = ExtElem {
                field: Arc::clone(&field),
                repr: DensePoly::from_coeffs(field.p, digits.iter().copied()),
            };
            done = true;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < field.p {
                    done = false;
                    break;
                }
                *d = 0;
            }
            Some(out)
        })
    }

    /// Matrix of x ↦ x^p on the power basis (columns are images of basis
    /// vectors). Its N-th power is the identity.
    pub fn frobenius_matrix(self: &Arc<Self>) -> FpMatrix {
        let xp = self.gen().pow(self.p as u128);
        let mut col = self.one();
        let mut m = FpMatrix::zeros(self.p, self.degree, self.degree);
        for j in 0..self.degree {
            if j > 0 {
                col = &col * &xp;
            }
            for (i, c) in col.coords().into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Gram matrix (i, j) ↦ tr(x^i x^j) of the absolute trace form on the
    /// power basis. Invertible for every field, the trace form being
    /// non-degenerate; that is asserted here rather than returned.
    pub fn trace_pairing_matrix(self: &Arc<Self>) -> FpMatrix {
        let n = self.degree;
        let mut power_traces = Vec::with_capacity(2 * n - 1);
        let mut pw = self.one();
        let x = self.gen();
        for k in 0..2 * n - 1 {
            if k > 0 {
                pw = &pw * &x;
            }
            power_traces.push(pw.absolute_trace().value());
        }
        let mut m = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, power_traces[i + j]);
            }
        }
        assert!(m.is_invertible(), "degenerate trace pairing on F_{}^{}", self.p, n);
        m
    }

    /// F_p-basis of the subfield F_{p^m}, computed as the kernel of
    /// Frobenius^m − id on the top field.
    pub fn subfield_basis(self: &Arc<Self>, m: usize) -> Result<Vec<ExtElem>> {
        if m == 0 || self.degree % m != 0 {
            return Err(Error::NotSubfield { sub: m, sup: self.degree });
        }
        let phi_m = self.frobenius_matrix().pow(m as u64);
        let fixed = phi_m.sub(&FpMatrix::identity(self.p, self.degree));
        let basis = fixed.kernel_basis();
        assert_eq!(basis.len(), m, "subfield F_{}^{} has dimension {}", self.p, m, m);
        basis.into_iter().map(|v| self.from_coeffs(&v)).collect()
    }

    /// Seed-deterministic search for a normal-basis generator, verified by
    /// the rank test before returning.
    pub fn find_normal_generator(self: &Arc<Self>, seed: u64) -> Result<ExtElem> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e6f726d616c);
        for _ in 0..512 {
            let cand = self.random_elem(&mut rng);
            if cand.is_normal_generator() {
                return Ok(cand);
            }
        }
        Err(Error::SearchExhausted("normal-basis generator"))
    }
}

impl fmt::Display for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[x]/({})", self.p, self.modulus)
    }
}

/// An element of an [`ExtField`], stored as the reduced representative of
/// degree < N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElem {
    field: Arc<ExtField>,
    repr: DensePoly,
}

impl ExtElem {
    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.repr.is_one()
    }

    pub fn repr(&self) -> &DensePoly {
        &self.repr
    }

    /// Power-basis coordinates, always of length N.
    pub fn coords(&self) -> Vec<u64> {
        let mut v = self.repr.coeffs().to_vec();
        v.resize(self.field.degree, 0);
        v
    }

    fn expect_same_field(&self, rhs: &Self) {
        if Arc::ptr_eq(&self.field, &rhs.field) {
            return;
        }
        assert_eq!(
            self.field, rhs.field,
            "elements of different fields: {} vs {}",
            self.field, rhs.field
        );
    }

    pub fn pow(&self, exp: u128) -> Self {
        let repr = self
            .repr
            .powmod(exp, &self.field.modulus)
            .expect("field modulus has positive degree");
        ExtElem { field: Arc::clone(&self.field), repr }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        // The exponent p^N - 2 of the Fermat route can overflow u128 for
        // large N; extended Euclid on representatives has no such limit.
        let (g, s) = bezout_inverse(&self.repr, &self.field.modulus);
        debug_assert!(g.is_one());
        let repr = s.rem(&self.field.modulus).expect("modulus nonzero");
        Ok(ExtElem { field: Arc::clone(&self.field), repr })
    }

    /// x ↦ x^{p^k}; k may be any integer and acts modulo N.
    pub fn frobenius_power(&self, k: i64) -> Self {
        let n = self.field.degree as i64;
        let steps = k.rem_euclid(n) as usize;
        let mut out = self.clone();
        for _ in 0..steps {
            out = out.pow(self.field.p as u128);
        }
        out
    }

    /// Relative trace down to F_{p^m}: Σ_{i<N/m} x^{p^{mi}}, where N is the
    /// full field degree. The result is checked to lie in the subfield.
    pub fn rel_trace(&self, m: usize) -> Result<Self> {
        self.rel_trace_from(self.field.degree, m)
    }

    /// Relative trace from the subfield F_{p^n} down to F_{p^m}:
    /// Σ_{i<n/m} x^{p^{mi}}. The element must lie in F_{p^n}. Composing
    /// these level-aware traces is transitive; composing two full-field
    /// traces is not, because the second would sum each orbit N/n times.
    pub fn rel_trace_from(&self, n: usize, m: usize) -> Result<Self> {
        let top = self.field.degree;
        if n == 0 || top % n != 0 {
            return Err(Error::NotSubfield { sub: n, sup: top });
        }
        if m == 0 || n % m != 0 {
            return Err(Error::NotSubfield { sub: m, sup: n });
        }
        if !self.is_in_subfield(n) {
            return Err(Error::NotInSubfield);
        }
        let mut acc = self.clone();
        let mut orbit = self.clone();
        for _ in 1..n / m {
            orbit = orbit.frobenius_power(m as i64);
            acc = &acc + &orbit;
        }
        assert_eq!(acc.frobenius_power(m as i64), acc, "trace left the subfield");
        Ok(acc)
    }

    /// Absolute trace down to F_p, as a prime-field scalar.
    pub fn absolute_trace(&self) -> Fp {
        let t = self.rel_trace(1).expect("1 divides every degree");
        Fp::reduced(self.field.p, t.repr.constant_coeff())
    }

    /// True iff the element lies in the subfield F_{p^m} (for m | N).
    pub fn is_in_subfield(&self, m: usize) -> bool {
        m != 0 && self.field.degree % m == 0 && self.frobenius_power(m as i64) == *self
    }

    /// Degree of the element over F_p: the least d with x^{p^d} = x.
    pub fn degree_over_prime(&self) -> usize {
        for d in divisors(self.field.degree as u64) {
            if self.frobenius_power(d as i64) == *self {
                return d as usize;
            }
        }
        unreachable!("every element is fixed by Frobenius^N")
    }

    /// Least m ≥ 1 with x^m = 1. Requires p^d − 1 to fit in 128 bits,
    /// where d is the element's degree over F_p; the factorization of
    /// p^d − 1 at desk-scale d is cheap.
    pub fn multiplicative_order(&self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let d = self.degree_over_prime() as u32;
        let group = crate::arith::checked_pow_u128(self.field.p as u128, d)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "multiplicative order needs p^{d} - 1, which exceeds 128 bits"
                ))
            })?
            - 1;
        Ok(order_from_group(group, |e| self.pow(e), ExtElem::is_one))
    }

    /// True iff the Frobenius orbit {x, x^p, .., x^{p^{N-1}}} spans, i.e.
    /// the element generates a normal basis.
    pub fn is_normal_generator(&self) -> bool {
        let n = self.field.degree;
        let mut rows = Vec::with_capacity(n);
        let mut orbit = self.clone();
        for i in 0..n {
            if i > 0 {
                orbit = orbit.frobenius_power(1);
            }
            rows.push(orbit.coords());
        }
        let m = FpMatrix::from_rows(self.field.p, rows).expect("square by construction");
        m.rank() == n
    }

    /// Matrix of y ↦ xy on the power basis.
    pub fn multiplication_matrix(&self) -> FpMatrix {
        let n = self.field.degree;
        let mut m = FpMatrix::zeros(self.field.p, n, n);
        let x = self.field.gen();
        let mut col = self.clone();
        for j in 0..n {
            if j > 0 {
                col = &col * &x;
            }
            for (i, c) in col.coords().into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }
}

/// Extended Euclid on polynomial representatives: returns (g, s) with
/// g = gcd(a, f) monic and s·a ≡ g (mod f).
fn bezout_inverse(a: &DensePoly, f: &DensePoly) -> (DensePoly, DensePoly) {
    let p = a.p();
    let (mut r0, mut r1) = (f.clone(), a.clone());
    let (mut s0, mut s1) = (DensePoly::zero(p), DensePoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("divisor nonzero in Euclid loop");
        let s = s0.sub_ref(&q.mul_ref(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let lead_inv = Fp::reduced(p, r0.leading_coeff()).inv().expect("gcd is nonzero").value();
    (r0.mul_scalar(lead_inv), s0.mul_scalar(lead_inv))
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

impl Add for &ExtElem {
    type Output = ExtElem;
    fn add(self, rhs: &ExtElem) -> ExtElem {
        self.expect_same_field(rhs);
        ExtElem { field: Arc::clone(&self.field), repr: self.repr.add_ref(&rhs.repr) }
    }
}

impl Sub for &ExtElem {
    type Output = ExtElem;
    fn sub(self, rhs: &ExtElem) -> ExtElem {
        self.expect_same_field(rhs);
        ExtElem { field: Arc::clone(&self.field), repr: self.repr.sub_ref(&rhs.repr) }
    }
}

impl Mul for &ExtElem {
    type Output = ExtElem;
    fn mul(self, rhs: &ExtElem) -> ExtElem {
        self.expect_same_field(rhs);
        let repr = self
            .repr
            .mulmod(&rhs.repr, &self.field.modulus)
            .expect("field modulus has positive degree");
        ExtElem { field: Arc::clone(&self.field), repr }
    }
}

impl Neg for &ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        ExtElem { field: Arc::clone(&self.field), repr: self.repr.neg_ref() }
    }
}

/// Seed-deterministic monic irreducible polynomial of the given degree.
pub fn random_irreducible(p: u64, degree: usize, seed: u64) -> Result<DensePoly> {
    check_prime(p)?;
    if degree == 0 {
        return Err(Error::InvalidArgument("irreducible of degree 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if degree == 1 {
        let c = rng.gen_range(0..p);
        return Ok(DensePoly::from_coeffs(p, [c, 1]));
    }
    // A fraction ~1/N of monic candidates is irreducible, so this budget
    // fails with negligible probability.
    let attempts = 128 + 64 * degree as u64;
    for _ in 0..attempts {
        let mut coeffs: Vec<u64> = (0..degree).map(|_| rng.gen_range(0..p)).collect();
        coeffs.push(1);
        let cand = DensePoly::from_coeffs(p, coeffs);
        if cand.degree() == Some(degree) && cand.is_irreducible() {
            return Ok(cand);
        }
    }
    Err(Error::SearchExhausted("irreducible polynomial"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<ExtField> {
        ExtField::new(DensePoly::from_coeffs(2, [1, 1, 1])).unwrap()
    }

    fn f8() -> Arc<ExtField> {
        ExtField::new(DensePoly::from_coeffs(2, [1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn rejects_bad_moduli() {
        // x^2 + 1 = (x+1)^2 over F_2.
        assert!(matches!(
            ExtField::new(DensePoly::from_coeffs(2, [1, 0, 1])),
            Err(Error::BadModulus(_))
        ));
        assert!(matches!(
            ExtField::new(DensePoly::from_coeffs(3, [1, 0, 2])),
            Err(Error::BadModulus(_))
        ));
        assert!(ExtField::new(DensePoly::constant(2, 1)).is_err());
    }

    #[test]
    fn frobenius_on_f4() {
        let k = f4();
        let x = k.gen();
        // x^2 = x + 1 from the modulus.
        assert_eq!(x.frobenius_power(1), k.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(x.frobenius_power(0), x);
        assert_eq!(x.frobenius_power(2), x);
        assert_eq!(x.frobenius_power(-1), x.frobenius_power(1));
    }

    #[test]
    fn field_arithmetic_in_f4() {
        let k = f4();
        let x = k.gen();
        let x2 = &x * &x;
        assert_eq!(x2, k.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(&x2 + &x, k.one());
        assert!((&x2 - &x2).is_zero());
        assert_eq!(x.pow(3), k.one());
        assert_eq!(x.inv().unwrap(), x.pow(2));
        assert!(k.zero().inv().is_err());
    }

    #[test]
    fn traces_in_f4() {
        let k = f4();
        let x = k.gen();
        assert_eq!(x.rel_trace(1).unwrap(), k.one());
        assert_eq!(x.rel_trace(2).unwrap(), x);
        assert!(k.one().rel_trace(1).unwrap().is_zero());
        assert_eq!(x.absolute_trace().value(), 1);
        assert!(x.rel_trace(3).is_err());
    }

    #[test]
    fn trace_transitivity_exhaustive_f64() {
        let k = ExtField::random(2, 6, 7).unwrap();
        for x in k.elements() {
            let via_2 = x.rel_trace(2).unwrap().rel_trace_from(2, 1).unwrap();
            let via_3 = x.rel_trace(3).unwrap().rel_trace_from(3, 1).unwrap();
            let direct = x.rel_trace(1).unwrap();
            assert_eq!(via_2, direct);
            assert_eq!(via_3, direct);
        }
    }

    #[test]
    fn level_trace_rejects_outsiders() {
        let k = ExtField::random(2, 6, 7).unwrap();
        let outside = k
            .elements()
            .find(|x| x.degree_over_prime() == 6)
            .expect("F_64 has primitive elements");
        assert_eq!(outside.rel_trace_from(3, 1), Err(Error::NotInSubfield));
        assert!(matches!(
            outside.rel_trace_from(4, 2),
            Err(Error::NotSubfield { sub: 4, sup: 6 })
        ));
    }

    #[test]
    fn trace_commutes_with_frobenius() {
        let k = ExtField::random(3, 4, 11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let x = k.random_elem(&mut rng);
            let lhs = x.frobenius_power(1).rel_trace(2).unwrap();
            let rhs = x.rel_trace(2).unwrap().frobenius_power(1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn trace_surjective_onto_subfield() {
        let k = f8();
        let images: std::collections::HashSet<Vec<u64>> =
            k.elements().map(|x| x.rel_trace(1).unwrap().coords()).collect();
        assert_eq!(images.len(), 2);
    }

    #[test]
    fn normal_generators_in_small_fields() {
        let k = f4();
        assert!(k.gen().is_normal_generator());
        assert!(!k.one().is_normal_generator());
        assert!(!k.zero().is_normal_generator());

        let found = f8().find_normal_generator(3).unwrap();
        assert!(found.is_normal_generator());

        let trivial = ExtField::random(2, 1, 0).unwrap();
        assert!(trivial.find_normal_generator(0).unwrap().is_normal_generator());
    }

    #[test]
    fn normal_generator_traces_stay_normal() {
        // Inside F_64 the traces of a normal generator generate normal
        // bases of every intermediate field.
        let k = ExtField::random(2, 6, 42).unwrap();
        let alpha = k.find_normal_generator(9).unwrap();
        for m in [1usize, 2, 3] {
            let a_m = alpha.rel_trace(m).unwrap();
            let mut rows = Vec::new();
            let mut orbit = a_m.clone();
            for i in 0..m {
                if i > 0 {
                    orbit = orbit.frobenius_power(1);
                }
                rows.push(orbit.coords());
            }
            let mat = FpMatrix::from_rows(2, rows).unwrap();
            assert_eq!(mat.rank(), m, "trace to level {m} lost normality");
        }
    }

    #[test]
    fn pairing_matrices_invertible() {
        for (p, n, seed) in [(2, 1, 0), (2, 2, 1), (3, 2, 2), (2, 6, 3), (5, 3, 4)] {
            let k = ExtField::random(p, n, seed).unwrap();
            let m = k.trace_pairing_matrix();
            assert_eq!(m.rows(), n);
            assert!(m.is_invertible());
        }
    }

    #[test]
    fn operator_matrices() {
        let k = f4();
        let phi = k.frobenius_matrix();
        assert_eq!(phi.pow(2), FpMatrix::identity(2, 2));
        // Φ sends x to x + 1.
        assert_eq!(phi.mul_vec(&[0, 1]), vec![1, 1]);

        let x = k.gen();
        let mx = x.multiplication_matrix();
        assert_eq!(mx.mul_vec(&[0, 1]), vec![1, 1]);
        assert_eq!(k.one().multiplication_matrix(), FpMatrix::identity(2, 2));
        assert_eq!(k.zero().multiplication_matrix(), FpMatrix::zeros(2, 2, 2));
        // Multiplication by x then by x^-1 is the identity.
        let inv = x.inv().unwrap().multiplication_matrix();
        assert_eq!(mx.mul(&inv), FpMatrix::identity(2, 2));
    }

    #[test]
    fn multiplicative_orders() {
        let k = f4();
        assert_eq!(k.one().multiplicative_order().unwrap(), 1);
        assert_eq!(k.gen().multiplicative_order().unwrap(), 3);
        assert!(k.zero().multiplicative_order().is_err());

        let f3 = ExtField::random(3, 1, 1).unwrap();
        assert_eq!(f3.constant(2).multiplicative_order().unwrap(), 2);

        let f16 = ExtField::random(2, 4, 8).unwrap();
        for x in f16.elements().filter(|x| !x.is_zero()) {
            let m = x.multiplicative_order().unwrap();
            assert_eq!(15 % m, 0);
            assert!(x.pow(m).is_one());
        }
    }

    #[test]
    fn subfield_membership_and_basis() {
        let k = ExtField::random(2, 6, 13).unwrap();
        let count_in = |m: usize| k.elements().filter(|x| x.is_in_subfield(m)).count();
        assert_eq!(count_in(1), 2);
        assert_eq!(count_in(2), 4);
        assert_eq!(count_in(3), 8);
        assert_eq!(count_in(6), 64);

        let basis = k.subfield_basis(3).unwrap();
        assert_eq!(basis.len(), 3);
        for b in &basis {
            assert!(b.is_in_subfield(3));
        }
        assert!(k.subfield_basis(4).is_err());
    }

    #[test]
    fn degrees_over_prime() {
        let k = ExtField::random(2, 6, 21).unwrap();
        assert_eq!(k.one().degree_over_prime(), 1);
        let mut seen = std::collections::HashSet::new();
        for x in k.elements() {
            seen.insert(x.degree_over_prime());
        }
        let mut seen: Vec<_> = seen.into_iter().collect();
        seen.sort_unstable();
        assert_eq!(seen, vec![1, 2, 3, 6]);
    }

    #[test]
    fn random_irreducible_is_deterministic() {
        let a = random_irreducible(2, 8, 99).unwrap();
        let b = random_irreducible(2, 8, 99).unwrap();
        assert_eq!(a, b);
        assert!(a.is_irreducible());

        let only_quadratic = random_irreducible(2, 2, 5).unwrap();
        assert_eq!(only_quadratic, DensePoly::from_coeffs(2, [1, 1, 1]));

        let over_f3 = random_irreducible(3, 2, 17).unwrap();
        assert_eq!(over_f3.degree(), Some(2));
        assert!(over_f3.is_irreducible());
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixed_field_arithmetic_panics() {
        let a = f4().gen();
        let b = f8().gen();
        let _ = &a + &b;
    }
}
