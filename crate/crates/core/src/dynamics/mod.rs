//! Temporal invariants of a rule: exact fixed-point counts of the iterates
//! and the closed formula governing them.
//!
//! For a confined rule, log_p #Fix(g^n) = n*a - t_{gcd(n, varpi)} * p^{v_p(n)}
//! where `a` comes from the Newton polygons of the characteristic polynomial,
//! `varpi` from the multiplicative orders of residual roots, and the defect
//! table `t` from determinant counts at the divisors of `varpi`. The zeta
//! series, orbit counts, and asymptotics build on these with exact integer
//! and rational arithmetic throughout.

mod newton;
mod zeta;

pub use newton::{compute_a, compute_varpi, newton_polygon, residual_data, NewtonPolygon, Place};
pub use zeta::{
    asymptotic_report, fix_count, orbit_counting_function, orbit_counts, zeta, AsymptoticReport,
    AsymptoticRow, PiRow, ZetaClassification, ZetaKind,
};

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::algebra::{DensePoly, LaurentPoly};
use crate::arith;
use crate::automaton::Rule;
use crate::error::{Error, Result};

/// True when every iterate of the rule has finitely many fixed
/// configurations, i.e. det(G^n - I) is nonzero for all n >= 1.
///
/// Writing χ(Z, λ) = Σ_k d_k(λ) Z^k, a common root of the d_k in the
/// algebraic closure of F_p would be a constant eigenvalue of G, and every
/// nonzero constant is a root of unity. So the rule is confined exactly when
/// h = gcd_k d_k has no nonzero root, i.e. h is a power of λ times a unit.
pub fn is_confined(rule: &Rule) -> bool {
    let chi = rule.matrix().char_poly();
    let p = rule.p();
    let mut lo = 0i64;
    let mut hi = 0i64;
    for c in &chi {
        if let (Some(v), Some(d)) = (c.val(), c.deg()) {
            lo = lo.min(v);
            hi = hi.max(d);
        }
    }
    let mut h: Option<DensePoly> = None;
    for e in lo..=hi {
        let d = DensePoly::from_coeffs(p, chi.iter().map(|c| c.coeff(e)));
        if d.degree().is_none() {
            continue;
        }
        let g = match h {
            None => d,
            Some(g) => g.gcd(&d),
        };
        if g.degree() == Some(0) {
            return true;
        }
        h = Some(g);
    }
    let h = h.expect("characteristic polynomial is nonzero");
    let deg = h.degree().expect("gcd of nonzero polynomials is nonzero");
    h.coeffs()[..deg].iter().all(|&c| c == 0)
}

/// True when some iterate of the rule is the zero map, equivalently when the
/// characteristic polynomial is λ^r. Cayley-Hamilton then forces G^r = 0.
pub fn is_eventually_zero(rule: &Rule) -> bool {
    let chi = rule.matrix().char_poly();
    chi[..chi.len() - 1].iter().all(|c| c.is_zero())
}

/// log_p of the number of configurations fixed by g^n, computed as
/// deg - val of det(G^n - I).
///
/// Two-sided rules need no separate treatment: shifting to a one-sided rule
/// multiplies the determinant by a power of Z, which deg - val ignores.
pub fn log_fix_count(rule: &Rule, n: u64) -> Result<u64> {
    coincidence_log_count(rule, n, 0)
}

/// log_p of the number of configurations y with g^n(y) = s^k(y), where s is
/// the coordinate shift: deg - val of det(G^n - Z^k I).
///
/// Errors with [`Error::SingularInstance`] when the determinant vanishes and
/// the coincidence set is infinite.
pub fn coincidence_log_count(rule: &Rule, n: u64, k: i64) -> Result<u64> {
    let d = rule
        .matrix()
        .pow(n)
        .sub_scaled_identity(&LaurentPoly::monomial(rule.p(), 1, k))
        .det();
    match d.deg_val() {
        Ok((deg, val)) => Ok((deg - val) as u64),
        Err(_) => Err(Error::SingularInstance { n, k }),
    }
}

/// Defect table: t_d = a*d - log_fix_count(rule, d) for each divisor d of
/// varpi. Exact by construction; a negative value means the inputs do not
/// belong to the same rule and is a hard error.
pub fn compute_t(rule: &Rule, a: u64, varpi: u64) -> Result<BTreeMap<u64, u64>> {
    let mut t = BTreeMap::new();
    for d in arith::divisors(varpi) {
        let log = log_fix_count(rule, d)?;
        let main = a * d;
        if log > main {
            return Err(Error::Inconsistency(format!(
                "log #Fix(g^{d}) = {log} exceeds the main term a*d = {main}"
            )));
        }
        t.insert(d, main - log);
    }
    Ok(t)
}

/// The data determining #Fix(g^n) for every n, as produced by [`invariants`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub p: u64,
    pub confined: bool,
    /// Growth rate: log_p #Fix(g^n) grows like n*a.
    pub a: u64,
    /// Period of the defect in n; always coprime to p.
    pub varpi: u64,
    /// Defect values t_d, one per divisor d of varpi.
    pub t: BTreeMap<u64, u64>,
    /// The counting formula was checked against determinants for
    /// n = 1..=n_checked.
    pub n_checked: u64,
}

impl Invariants {
    fn predicted_signed(&self, n: u64) -> i128 {
        let d = n.gcd(&self.varpi);
        let scale = self.p.pow(arith::v_adic(self.p, n)) as i128;
        n as i128 * self.a as i128 - self.t[&d] as i128 * scale
    }

    /// log_p #Fix(g^n) according to the closed formula.
    pub fn predicted_log_fix(&self, n: u64) -> u64 {
        assert!(n >= 1, "counting formula needs n >= 1");
        u64::try_from(self.predicted_signed(n)).expect("defect term exceeds the main term")
    }
}

/// Assembles (a, varpi, t) and verifies the counting formula against the
/// determinant for every n = 1..=n_check before returning.
///
/// `n_check` defaults to max(20, 2*varpi, 2*p) so the range always exercises
/// the p^{v_p(n)} factor and a full defect period. A mismatch is an
/// [`Error::Inconsistency`]: the formula is a theorem, so disagreement means
/// an implementation bug, not bad input.
pub fn invariants(rule: &Rule, n_check: Option<u64>) -> Result<Invariants> {
    if !is_confined(rule) {
        return Err(Error::NotConfined);
    }
    let a = compute_a(rule);
    let varpi = compute_varpi(rule);
    let t = compute_t(rule, a, varpi)?;
    let p = rule.p();
    let n_checked = n_check.unwrap_or_else(|| 20.max(2 * varpi).max(2 * p));
    let inv = Invariants {
        p,
        confined: true,
        a,
        varpi,
        t,
        n_checked,
    };
    for n in 1..=n_checked {
        let actual = log_fix_count(rule, n)? as i128;
        let predicted = inv.predicted_signed(n);
        if actual != predicted {
            return Err(Error::Inconsistency(format!(
                "counting formula fails at n = {n}: determinant gives {actual}, formula gives {predicted}"
            )));
        }
    }
    Ok(inv)
}
