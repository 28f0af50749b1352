//! The dynamical zeta function and periodic-orbit statistics.
//!
//! Everything here is exact: fixed-point counts are powers of p as big
//! integers, series coefficients and normalizations are big rationals, and
//! decimal strings are rendered by integer long division only at the edge.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{invariants, log_fix_count};
use crate::arith;
use crate::automaton::Rule;
use crate::error::{Error, Result};

/// #Fix(g^n) as an exact integer.
pub fn fix_count(rule: &Rule, n: u64) -> Result<BigInt> {
    let log = log_fix_count(rule, n)?;
    let log = u32::try_from(log).map_err(|_| Error::BoundExceeded {
        needed: log as u128,
        bound: u32::MAX as u128,
    })?;
    Ok(BigInt::from(rule.p()).pow(log))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaKind {
    /// Every defect t_d is zero and the zeta function is exactly
    /// 1/(1 - p^a z).
    Rational,
    /// Some defect is nonzero, so the coefficients deviate from every
    /// geometric sequence. Only the classification is computed; no analytic
    /// statement is checked.
    NaturalBoundaryCandidate,
}

/// Classification of ζ(z) = exp(Σ_{n≥1} #Fix(g^n) z^n / n) together with its
/// leading Taylor coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaClassification {
    pub kind: ZetaKind,
    pub a: u64,
    /// Coefficients ζ_0 ..= ζ_order. Provably integers; integrality is
    /// asserted during the computation.
    pub truncated_series: Vec<BigInt>,
}

/// Expands the zeta series to the given order via the recurrence
/// n ζ_n = Σ_{k=1}^{n} #Fix(g^k) ζ_{n-k} and classifies it by the defect
/// table.
pub fn zeta(rule: &Rule, order: usize) -> Result<ZetaClassification> {
    let inv = invariants(rule, None)?;
    let fix: Vec<BigInt> = (1..=order as u64)
        .map(|n| fix_count(rule, n))
        .collect::<Result<_>>()?;

    let mut series = vec![BigInt::one()];
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            acc += &fix[k - 1] * &series[n - k];
        }
        let (q, r) = acc.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::Inconsistency(format!(
                "zeta coefficient {n} is not an integer"
            )));
        }
        series.push(q);
    }

    let kind = if inv.t.values().all(|&t| t == 0) {
        let pa = BigInt::from(rule.p()).pow(u32::try_from(inv.a).expect("a fits in u32"));
        let mut expected = BigInt::one();
        for (n, c) in series.iter().enumerate() {
            if *c != expected {
                return Err(Error::Inconsistency(format!(
                    "zero defect but zeta coefficient {n} is not p^(a*{n})"
                )));
            }
            expected *= &pa;
        }
        ZetaKind::Rational
    } else {
        ZetaKind::NaturalBoundaryCandidate
    };

    Ok(ZetaClassification {
        kind,
        a: inv.a,
        truncated_series: series,
    })
}

/// Number of periodic orbits of exact length ℓ for ℓ = 1..=l_max, by Möbius
/// inversion: P_ℓ = (1/ℓ) Σ_{d|ℓ} μ(ℓ/d) #Fix(g^d). The division is exact
/// and the counts nonnegative; anything else is a hard error.
pub fn orbit_counts(rule: &Rule, l_max: u64) -> Result<Vec<BigInt>> {
    let fix: Vec<BigInt> = (1..=l_max)
        .map(|n| fix_count(rule, n))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(l_max as usize);
    for l in 1..=l_max {
        let mut sum = BigInt::zero();
        for d in arith::divisors(l) {
            match arith::moebius(l / d) {
                1 => sum += &fix[d as usize - 1],
                -1 => sum -= &fix[d as usize - 1],
                _ => {}
            }
        }
        let (q, r) = sum.div_rem(&BigInt::from(l));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::Inconsistency(format!(
                "orbit count at length {l} came out as {sum}/{l}"
            )));
        }
        out.push(q);
    }
    Ok(out)
}

/// One row of the orbit-growth table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticRow {
    pub l: u64,
    pub orbit_count: BigInt,
    /// p^{l·a - t_{gcd(l,varpi)}·p^{v_p(l)}} / l.
    pub main_term: BigRational,
    /// (P_l - main_term)^2 / p^{l·a}. Kept squared so the normalization by
    /// p^{l·a/2} stays inside the rationals for odd l·a.
    pub residual_sq: BigRational,
    /// |P_l - main_term| / p^{l·a/2} to six decimal places.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub rows: Vec<AsymptoticRow>,
    /// Largest residual_sq over the computed range; the observed bound on
    /// the normalized error.
    pub max_residual_sq: BigRational,
    pub max_residual: String,
}

/// Compares each orbit count against its main term, normalizing the error
/// by p^{l·a/2}.
pub fn asymptotic_report(rule: &Rule, l_max: u64) -> Result<AsymptoticReport> {
    let inv = invariants(rule, None)?;
    if inv.a == 0 {
        return Err(Error::InvalidArgument(
            "orbit asymptotics need a >= 1".into(),
        ));
    }
    let counts = orbit_counts(rule, l_max)?;
    let p = BigInt::from(rule.p());
    let mut rows = Vec::with_capacity(counts.len());
    let mut max_residual_sq = BigRational::zero();
    for l in 1..=l_max {
        let orbit_count = counts[l as usize - 1].clone();
        let log_main =
            u32::try_from(inv.predicted_log_fix(l)).expect("main-term exponent fits in u32");
        let main_term = BigRational::new(p.pow(log_main), BigInt::from(l));
        let diff = BigRational::from_integer(orbit_count.clone()) - &main_term;
        let norm = p.pow(u32::try_from(l * inv.a).expect("normalization exponent fits in u32"));
        let residual_sq = &diff * &diff / BigRational::from_integer(norm);
        if residual_sq > max_residual_sq {
            max_residual_sq = residual_sq.clone();
        }
        rows.push(AsymptoticRow {
            l,
            orbit_count,
            main_term,
            residual: decimal_of_sqrt(&residual_sq, 6),
            residual_sq,
        });
    }
    Ok(AsymptoticReport {
        max_residual: decimal_of_sqrt(&max_residual_sq, 6),
        rows,
        max_residual_sq,
    })
}

/// One row of the cumulative orbit-counting table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiRow {
    pub x: u64,
    /// π(X) = Σ_{l ≤ X} P_l.
    pub pi: BigInt,
    /// X · π(X) / p^{a·X}; approaches p^a / (p^a - 1) when the defect
    /// vanishes identically.
    pub normalized: BigRational,
    pub normalized_decimal: String,
}

/// Tabulates the orbit-counting function π(X) with its normalization.
pub fn orbit_counting_function(rule: &Rule, x_max: u64) -> Result<Vec<PiRow>> {
    let inv = invariants(rule, None)?;
    let counts = orbit_counts(rule, x_max)?;
    let p = BigInt::from(rule.p());
    let mut pi = BigInt::zero();
    let mut rows = Vec::with_capacity(counts.len());
    for x in 1..=x_max {
        pi += &counts[x as usize - 1];
        let denom = p.pow(u32::try_from(x * inv.a).expect("exponent fits in u32"));
        let normalized = BigRational::new(BigInt::from(x) * &pi, denom);
        rows.push(PiRow {
            x,
            pi: pi.clone(),
            normalized_decimal: decimal_of_ratio(&normalized, 6),
            normalized,
        });
    }
    Ok(rows)
}

/// Renders a rational to a fixed number of decimal places, rounding half
/// away from zero.
fn decimal_of_ratio(q: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u64).pow(digits);
    let scaled = (q * BigRational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let (int, frac) = scaled.abs().div_rem(&scale);
    format!("{sign}{int}.{frac:0width$}", width = digits as usize)
}

/// Renders sqrt(q) for q >= 0 to a fixed number of decimal places,
/// truncating in the last digit.
fn decimal_of_sqrt(q: &BigRational, digits: u32) -> String {
    assert!(!q.is_negative(), "cannot take the square root of {q}");
    let scale = BigInt::from(10u64).pow(digits);
    let s = (q.numer() * &scale * &scale * q.denom()).sqrt();
    let (int, frac) = (s / q.denom()).div_rem(&scale);
    format!("{int}.{frac:0width$}", width = digits as usize)
}
