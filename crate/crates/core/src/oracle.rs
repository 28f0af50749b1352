//! Independent brute-force counting on both sides of the correspondence.
//!
//! The closed-form counts in `dynamics` are valuations of determinants. The
//! functions here recount the same sets by exact Gaussian elimination: on
//! the field side as kernels of σ^n − F^k acting F_p-linearly on F_{p^N}^r,
//! and on the sequence side as kernels of g^n − s^k on period-N
//! configurations. The two sides share no code, so their agreement is a
//! genuine check of the correspondence.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::algebra::{raw, DensePoly, FpMatrix, LaurentPoly};
use crate::arith;
use crate::automaton::{coincidence_operator, PeriodicConfig, Rule};
use crate::error::{Error, Result};
use crate::finitefield::ExtField;

/// Seed for the deterministic choice of field models; any fixed value
/// works, since counts do not depend on the modulus.
const FIELD_SEED: u64 = 0x6f7261636c65;

fn kronecker(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    let p = a.p();
    let mut out = FpMatrix::zeros(p, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let c = a.get(i, j);
            if c == 0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, raw::mul(c, b.get(k, l), p));
                }
            }
        }
    }
    out
}

/// log_p #{x ∈ F_{p^N}^r : σ^n(x) = F^k(x)} by elimination: the nullity of
/// σ^n − F^k written as an rN × rN matrix over F_p in a power basis of
/// F_{p^N}, with σ = Σ_e M_e ⊗ Φ^e and Φ the Frobenius matrix.
pub fn field_side_count(rule: &Rule, n: u64, k: i64, level: usize) -> Result<usize> {
    if level == 0 {
        return Err(Error::InvalidArgument("field level must be at least 1".into()));
    }
    let p = rule.p();
    let r = rule.bands();
    let field = ExtField::random(p, level, FIELD_SEED)?;
    let phi = field.frobenius_matrix();
    let mut sigma = FpMatrix::zeros(p, r * level, r * level);
    for (e, m) in rule.matrix().coefficient_matrices() {
        let e = e.rem_euclid(level as i64) as u64;
        sigma = sigma.add(&kronecker(&m, &phi.pow(e)));
    }
    let mut op = sigma.pow(n);
    let frobenius_k = phi.pow(k.rem_euclid(level as i64) as u64);
    op = op.sub(&kronecker(&FpMatrix::identity(p, r), &frobenius_k));
    Ok(op.nullity())
}

/// log_p #{period-N configurations y : g^n(y) = s^k(y)} by elimination on
/// the block-circulant operator.
pub fn sequence_side_count(rule: &Rule, n: u64, k: i64, level: usize) -> usize {
    coincidence_operator(rule, n, k, level).nullity()
}

/// Smallest N such that every bi-infinite solution of g^n(y) = s^k(y) has
/// period dividing N, or None when it exceeds `cap`.
///
/// Over the Laurent-polynomial PID, the Smith normal form of G^n − Z^k I
/// turns the solution set into a product of scalar solution sets
/// {w : d_i(S) w = 0}, and Z^N − 1 annihilates all of them exactly when the
/// unit part h of the determinant divides it. So the bound is the
/// multiplicative order of Z modulo h.
pub fn sufficient_level(rule: &Rule, n: u64, k: i64, cap: usize) -> Result<Option<usize>> {
    let det = rule
        .matrix()
        .pow(n)
        .sub_scaled_identity(&LaurentPoly::monomial(rule.p(), 1, k))
        .det();
    if det.is_zero() {
        return Err(Error::SingularInstance { n, k });
    }
    let h = det.unit_part();
    if h.degree() == Some(0) {
        return Ok(Some(1));
    }
    let one = DensePoly::from_coeffs(rule.p(), [1]);
    let z = DensePoly::from_coeffs(rule.p(), [0, 1]);
    let mut power = z.rem(h)?;
    for m in 1..=cap {
        if power == one {
            return Ok(Some(m));
        }
        power = power.mul_ref(&z).rem(h)?;
    }
    Ok(None)
}

/// Result of sweeping field-side counts up a ladder of levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizedCount {
    /// Largest log_p count observed over `levels`.
    pub log_count: usize,
    /// Levels probed, ascending.
    pub levels: Vec<usize>,
    /// True when the probed levels include one that provably captures
    /// every solution (see [`sufficient_level`]), making `log_count` the
    /// exact total. Otherwise the value is only a lower bound.
    pub certified: bool,
}

/// Sweeps [`field_side_count`] over the ladder N = lcm(1..j) together with
/// the certified sufficient level when it fits, keeping every matrix
/// dimension r·N at or below `dim_cap` (default 600).
///
/// When the sufficient level fits the cap, rungs above it are skipped: the
/// count there is already the total.
pub fn stabilized_count(
    rule: &Rule,
    n: u64,
    k: i64,
    dim_cap: Option<usize>,
) -> Result<StabilizedCount> {
    let cap = dim_cap.unwrap_or(600);
    let level_cap = (cap / rule.bands()).max(1);
    let suff = sufficient_level(rule, n, k, level_cap)?;
    let certified = matches!(suff, Some(s) if s <= level_cap);

    let mut levels = BTreeSet::new();
    let mut rung = 1usize;
    let mut j = 1usize;
    while rung <= level_cap {
        levels.insert(rung);
        j += 1;
        rung = match rung.checked_mul(j / rung.gcd(&j)) {
            Some(next) => next,
            None => break,
        };
    }
    if certified {
        let s = suff.expect("certified implies a sufficient level");
        levels.retain(|&l| l <= s);
        levels.insert(s);
    }

    let levels: Vec<usize> = levels.into_iter().collect();
    let mut log_count = 0;
    for &level in &levels {
        log_count = log_count.max(field_side_count(rule, n, k, level)?);
    }
    Ok(StabilizedCount {
        log_count,
        levels,
        certified,
    })
}

/// Enumerates every period-N configuration fixed by g^n, provided
/// p^{r·N} does not exceed `bound` (default 2^16). The count is checked
/// against [`sequence_side_count`] before returning.
pub fn exhaustive_config_search(
    rule: &Rule,
    n: u64,
    level: usize,
    bound: Option<u64>,
) -> Result<Vec<PeriodicConfig>> {
    let p = rule.p();
    let r = rule.bands();
    let bound = bound.unwrap_or(1 << 16) as u128;
    let total = arith::checked_pow_u128(p as u128, (r * level) as u32).unwrap_or(u128::MAX);
    if total > bound {
        return Err(Error::BoundExceeded {
            needed: total,
            bound,
        });
    }

    let g_n = rule.iterate(n);
    let mut fixed = Vec::new();
    let mut flat = vec![0u64; r * level];
    'odometer: loop {
        let cfg = PeriodicConfig::from_flat(p, r, &flat)?;
        if g_n.apply(&cfg)? == cfg {
            fixed.push(cfg);
        }
        for digit in flat.iter_mut() {
            *digit += 1;
            if *digit < p {
                continue 'odometer;
            }
            *digit = 0;
        }
        break;
    }

    let expected = arith::checked_pow_u128(p as u128, sequence_side_count(rule, n, 0, level) as u32);
    if expected != Some(fixed.len() as u128) {
        return Err(Error::Inconsistency(format!(
            "enumeration found {} fixed configurations, elimination predicts p^{}",
            fixed.len(),
            sequence_side_count(rule, n, 0, level)
        )));
    }
    Ok(fixed)
}
