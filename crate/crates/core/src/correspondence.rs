//! The bridge between field vectors and periodic configurations.
//!
//! A trace-compatible chain of normal-basis generators α_N (one per divisor
//! N of a chosen depth) turns a vector x ∈ F_{p^N}^r into the period-N
//! configuration whose j-th cell is (tr(α x_i^{p^j}))_i. The map is an
//! injective homomorphism that intertwines the coordinate shift with the
//! Frobenius, and it carries the fixed points of the endomorphism
//! σ = Σ_e M_e φ^e to the fixed configurations of the matching rule.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FpMatrix;
use crate::arith;
use crate::automaton::{PeriodicConfig, Rule};
use crate::error::{Error, Result};
use crate::finitefield::{ExtElem, ExtField};

/// Normal-basis generators α_N for every divisor N of the chain depth,
/// compatible under relative traces.
#[derive(Clone, Debug)]
pub struct GeneratorChain {
    top_field: Arc<ExtField>,
    alpha: ExtElem,
    alpha_at: BTreeMap<usize, ExtElem>,
    seed: u64,
}

impl GeneratorChain {
    pub fn p(&self) -> u64 {
        self.top_field.p()
    }

    /// Depth of the chain: the degree of the top field.
    pub fn n_max(&self) -> usize {
        self.top_field.degree()
    }

    pub fn top_field(&self) -> &Arc<ExtField> {
        &self.top_field
    }

    /// The normal generator of the top field the chain was grown from.
    pub fn alpha(&self) -> &ExtElem {
        &self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Levels at which the chain has a generator: the divisors of n_max.
    pub fn levels(&self) -> impl Iterator<Item = usize> + '_ {
        self.alpha_at.keys().copied()
    }

    /// The generator α_N of F_{p^N}, stored as a top-field element.
    pub fn alpha_at(&self, level: usize) -> Result<&ExtElem> {
        self.alpha_at.get(&level).ok_or(Error::NotSubfield {
            sub: level,
            sup: self.n_max(),
        })
    }

    fn check_level(&self, level: usize) -> Result<()> {
        self.alpha_at(level).map(|_| ())
    }
}

/// Whether the Frobenius orbit {e^{p^i} : i < m} of an element of F_{p^m}
/// is F_p-linearly independent, i.e. the element generates a normal basis
/// of F_{p^m}. The orbit is ranked inside the ambient field, which changes
/// nothing about independence.
fn is_normal_at_level(elem: &ExtElem, m: usize) -> bool {
    let rows: Vec<Vec<u64>> = (0..m)
        .map(|i| elem.frobenius_power(i as i64).coords())
        .collect();
    let matrix = FpMatrix::from_rows(elem.field().p(), rows)
        .expect("orbit coordinate rows have equal length");
    matrix.rank() == m
}

/// Builds the field tower F_p ⊂ … ⊂ F_{p^n_max}, finds a normal generator
/// of the top field, and derives the lower generators by relative traces.
///
/// Every chain invariant is verified before returning: the trace to each
/// level is again a normal generator, and tracing between any two stored
/// levels reproduces the stored element. Violations are hard errors, since
/// traces of normal generators are normal generators.
pub fn build_chain(p: u64, n_max: usize, seed: u64) -> Result<GeneratorChain> {
    if n_max == 0 {
        return Err(Error::InvalidArgument(
            "chain depth must be at least 1".into(),
        ));
    }
    let top_field = ExtField::random(p, n_max, seed)?;
    let alpha = top_field.find_normal_generator(seed)?;
    let mut alpha_at = BTreeMap::new();
    for m in arith::divisors(n_max as u64) {
        let m = m as usize;
        let alpha_m = alpha.rel_trace(m)?;
        if !is_normal_at_level(&alpha_m, m) {
            return Err(Error::Inconsistency(format!(
                "trace of a normal generator to level {m} lost normality"
            )));
        }
        alpha_at.insert(m, alpha_m);
    }
    for (&n, alpha_n) in &alpha_at {
        for (&m, alpha_m) in &alpha_at {
            if n % m != 0 {
                continue;
            }
            if alpha_n.rel_trace_from(n, m)? != *alpha_m {
                return Err(Error::Inconsistency(format!(
                    "trace from level {n} to level {m} misses the stored generator"
                )));
            }
        }
    }
    Ok(GeneratorChain {
        top_field,
        alpha,
        alpha_at,
        seed,
    })
}

/// The correspondence map: sends x ∈ F_{p^N}^r to the period-N
/// configuration with j-th cell (tr(α x_i^{p^j}))_{i}, using absolute
/// traces from the top field. Trace compatibility of the chain makes this
/// equal to the level-N trace against α_N.
///
/// Coordinates must be elements of the chain's top field lying in F_{p^N}.
pub fn iota(chain: &GeneratorChain, x: &[ExtElem], level: usize) -> Result<PeriodicConfig> {
    chain.check_level(level)?;
    if x.is_empty() {
        return Err(Error::InvalidArgument(
            "the correspondence needs at least one band".into(),
        ));
    }
    for xi in x {
        if !xi.is_in_subfield(level) {
            return Err(Error::NotInSubfield);
        }
    }
    let cells: Vec<Vec<u64>> = (0..level)
        .map(|j| {
            x.iter()
                .map(|xi| {
                    (&chain.alpha * &xi.frobenius_power(j as i64))
                        .absolute_trace()
                        .value()
                })
                .collect()
        })
        .collect();
    PeriodicConfig::from_cells(chain.p(), x.len(), cells)
}

/// Applies the endomorphism σ = Σ_e M_e φ^e attached to a rule: each
/// coordinate is raised to the p^e-th power, then the e-th coefficient
/// matrix acts over F_p. Negative exponents use the inverse Frobenius,
/// which exists on any finite field.
pub fn sigma_apply(rule: &Rule, x: &[ExtElem]) -> Result<Vec<ExtElem>> {
    if x.len() != rule.bands() {
        return Err(Error::Mismatch(format!(
            "rule with {} bands applied to a vector of length {}",
            rule.bands(),
            x.len()
        )));
    }
    let field = Arc::clone(x[0].field());
    if field.p() != rule.p() {
        return Err(Error::Mismatch(format!(
            "rule over F_{} applied to coordinates in characteristic {}",
            rule.p(),
            field.p()
        )));
    }
    let mut out = vec![field.zero(); x.len()];
    for (e, m) in rule.matrix().coefficient_matrices() {
        let powered: Vec<ExtElem> = x.iter().map(|xi| xi.frobenius_power(e)).collect();
        for (i, acc) in out.iter_mut().enumerate() {
            for (l, xe) in powered.iter().enumerate() {
                let c = m.get(i, l);
                if c != 0 {
                    *acc = &*acc + &(&field.constant(c) * xe);
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of checking the correspondence on one (rule, n, level) instance.
/// `failures` holds a witness description for every check that failed;
/// an empty list means everything passed.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub p: u64,
    pub r: usize,
    pub n: u64,
    pub level: usize,
    /// Whether every vector of F_{p^N}^r was exercised, rather than a
    /// seeded random sample.
    pub exhaustive: bool,
    pub vectors_checked: usize,
    /// The per-band trace matrix x ↦ (tr(α x^{p^j}))_j has full rank.
    pub injective: bool,
    pub additive: bool,
    pub equivariant: bool,
    /// Number of distinct images seen (exhaustive sweeps only); equals
    /// p^{r·level} exactly when the image is all of the period-level
    /// configurations.
    pub image_count: Option<usize>,
    /// log_p #{x ∈ F_{p^N}^r : σ^n(x) = x}.
    pub field_fixed_log: usize,
    /// log_p #{configurations of period dividing N fixed by g^n}.
    pub sequence_fixed_log: usize,
    /// The two logs agree and ι maps the σ-fixed space into the g-fixed
    /// configurations; with injectivity this is a bijection.
    pub fixed_points_match: bool,
    pub failures: Vec<String>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn combine(field: &Arc<ExtField>, basis: &[ExtElem], coeffs: &[u64]) -> ExtElem {
    let mut acc = field.zero();
    for (c, b) in coeffs.iter().zip(basis) {
        if *c != 0 {
            acc = &acc + &(&field.constant(*c) * b);
        }
    }
    acc
}

fn fmt_vector(x: &[ExtElem]) -> String {
    let parts: Vec<String> = x.iter().map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// F_p-matrix of σ acting on F_{p^level}^r, written in the coordinates of
/// `basis` repeated per band.
fn sigma_matrix(rule: &Rule, basis: &[ExtElem], basis_coords: &FpMatrix) -> Result<FpMatrix> {
    let field = Arc::clone(basis[0].field());
    let r = rule.bands();
    let level = basis.len();
    let dim = r * level;
    let mut s = FpMatrix::zeros(rule.p(), dim, dim);
    for band in 0..r {
        for (k, b) in basis.iter().enumerate() {
            let mut x = vec![field.zero(); r];
            x[band] = b.clone();
            let image = sigma_apply(rule, &x)?;
            for (i, coord) in image.iter().enumerate() {
                let c = basis_coords.solve(&coord.coords()).ok_or_else(|| {
                    Error::Inconsistency(
                        "sigma left the subfield it was restricted to".into(),
                    )
                })?;
                for (row, &v) in c.iter().enumerate() {
                    s.set(i * level + row, band * level + k, v);
                }
            }
        }
    }
    Ok(s)
}

/// Checks the correspondence between a one-sided rule and its endomorphism
/// at one level: injectivity, additivity, shift-Frobenius equivariance,
/// image size, and matching of the fixed points of σ^n with the fixed
/// configurations of g^n.
///
/// All of F_{p^{r·level}} is swept when its size is at most
/// `exhaustive_bound` (default 4096); otherwise a seeded sample derived
/// from the chain's seed is used, and the linear-algebra checks (rank,
/// kernel dimensions) remain exact either way.
pub fn verify_theorem_main(
    chain: &GeneratorChain,
    rule: &Rule,
    n: u64,
    level: usize,
    exhaustive_bound: Option<u64>,
) -> Result<TheoremReport> {
    chain.check_level(level)?;
    if rule.p() != chain.p() {
        return Err(Error::Mismatch(format!(
            "rule over F_{} checked against a chain over F_{}",
            rule.p(),
            chain.p()
        )));
    }
    if !rule.is_one_sided() {
        return Err(Error::InvalidArgument(
            "the correspondence pairs one-sided rules with endomorphisms; reduce two-sided rules first".into(),
        ));
    }
    let p = chain.p();
    let r = rule.bands();
    let field = chain.top_field();
    let bound = exhaustive_bound.unwrap_or(4096);
    let total = arith::checked_pow_u128(p as u128, (r * level) as u32);
    let exhaustive = total.is_some_and(|t| t <= bound as u128);
    let mut failures = Vec::new();

    let basis = field.subfield_basis(level)?;
    let mut basis_coords = FpMatrix::zeros(p, chain.n_max(), level);
    for (k, b) in basis.iter().enumerate() {
        for (i, &c) in b.coords().iter().enumerate() {
            basis_coords.set(i, k, c);
        }
    }

    // (ii) injectivity via the rank of the one-band trace matrix
    let mut trace_matrix = FpMatrix::zeros(p, level, level);
    for (k, b) in basis.iter().enumerate() {
        let cfg = iota(chain, std::slice::from_ref(b), level)?;
        for j in 0..level {
            trace_matrix.set(j, k, cfg.cell(j)[0]);
        }
    }
    let injective = trace_matrix.rank() == level;
    if !injective {
        failures.push(format!(
            "trace pairing at level {level} has rank {} instead of {level}",
            trace_matrix.rank()
        ));
    }

    // vectors to exercise, as coordinate tuples over the per-band basis
    let digit_tuples: Vec<Vec<u64>> = if exhaustive {
        let mut tuples = vec![vec![0u64; r * level]];
        let mut current = vec![0u64; r * level];
        'odometer: loop {
            for d in current.iter_mut() {
                *d += 1;
                if *d < p {
                    tuples.push(current.clone());
                    continue 'odometer;
                }
                *d = 0;
            }
            break;
        }
        tuples
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(chain.seed ^ 0x766572696679);
        (0..48)
            .map(|_| (0..r * level).map(|_| rng.gen_range(0..p)).collect())
            .collect()
    };
    let vectors: Vec<Vec<ExtElem>> = digit_tuples
        .iter()
        .map(|digits| {
            (0..r)
                .map(|band| combine(field, &basis, &digits[band * level..(band + 1) * level]))
                .collect()
        })
        .collect();

    // (i) additivity against two fixed offsets, (iii) equivariance, and the
    // image census
    let mut rng = ChaCha8Rng::seed_from_u64(chain.seed ^ 0x616464);
    let offsets: Vec<Vec<ExtElem>> = (0..2)
        .map(|_| {
            (0..r)
                .map(|_| {
                    let digits: Vec<u64> = (0..level).map(|_| rng.gen_range(0..p)).collect();
                    combine(field, &basis, &digits)
                })
                .collect()
        })
        .collect();
    let offset_images: Vec<PeriodicConfig> = offsets
        .iter()
        .map(|y| iota(chain, y, level))
        .collect::<Result<_>>()?;

    let mut additive = true;
    let mut equivariant = true;
    let mut images = HashSet::new();
    for x in &vectors {
        let image = iota(chain, x, level)?;
        if exhaustive {
            images.insert(image.to_flat());
        }
        for (y, y_image) in offsets.iter().zip(&offset_images) {
            let sum: Vec<ExtElem> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            if iota(chain, &sum, level)? != image.add(y_image) {
                if additive {
                    failures.push(format!(
                        "iota not additive at x = {}, y = {}",
                        fmt_vector(x),
                        fmt_vector(y)
                    ));
                }
                additive = false;
            }
        }
        let frobenius: Vec<ExtElem> = x.iter().map(|xi| xi.frobenius_power(1)).collect();
        if iota(chain, &frobenius, level)? != image.shift_by(1) {
            if equivariant {
                failures.push(format!(
                    "iota does not intertwine Frobenius with the shift at x = {}",
                    fmt_vector(x)
                ));
            }
            equivariant = false;
        }
    }
    let image_count = exhaustive.then(|| images.len());
    if let (Some(count), Some(t)) = (image_count, total) {
        if count as u128 != t {
            failures.push(format!(
                "image has {count} configurations, expected {t}"
            ));
        }
    }

    // (v) fixed points: kernel of sigma^n - 1 versus fixed configurations
    let sigma = sigma_matrix(rule, &basis, &basis_coords)?;
    let mut fixed_operator = sigma.pow(n);
    for i in 0..r * level {
        fixed_operator.add_at(i, i, p - 1);
    }
    let field_fixed_log = fixed_operator.nullity();
    let sequence_fixed_log = rule.fixed_configs_dimension(n, level);
    let mut fixed_points_match = field_fixed_log == sequence_fixed_log;
    if !fixed_points_match {
        failures.push(format!(
            "sigma^{n} fixes p^{field_fixed_log} vectors but g^{n} fixes p^{sequence_fixed_log} configurations at level {level}"
        ));
    }
    let g_n = rule.iterate(n);
    for kernel_coords in fixed_operator.kernel_basis() {
        let x: Vec<ExtElem> = (0..r)
            .map(|band| combine(field, &basis, &kernel_coords[band * level..(band + 1) * level]))
            .collect();
        let image = iota(chain, &x, level)?;
        if g_n.apply(&image)? != image {
            failures.push(format!(
                "iota of the sigma-fixed vector {} is not fixed by the rule",
                fmt_vector(&x)
            ));
            fixed_points_match = false;
        }
    }

    Ok(TheoremReport {
        p,
        r,
        n,
        level,
        exhaustive,
        vectors_checked: vectors.len(),
        injective,
        additive,
        equivariant,
        image_count,
        field_fixed_log,
        sequence_fixed_log,
        fixed_points_match,
        failures,
    })
}

/// Checks that the Galois action φ^k on coordinates corresponds to shifting
/// the configuration by k.
pub fn verify_galois_shift(
    chain: &GeneratorChain,
    x: &[ExtElem],
    level: usize,
    k: i64,
) -> Result<bool> {
    let acted: Vec<ExtElem> = x.iter().map(|xi| xi.frobenius_power(k)).collect();
    let lhs = iota(chain, &acted, level)?;
    let rhs = iota(chain, x, level)?.shift_by(k);
    Ok(lhs == rhs)
}
