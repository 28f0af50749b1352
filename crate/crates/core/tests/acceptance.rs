//! Acceptance gate: ten checks covering the counting formula, orbit
//! counts, the zeta dichotomy, the finite-level correspondence, and the
//! brute-force oracles. Each test prints a single verdict line.

use mlca::algebra::{LaurentMatrix, LaurentPoly};
use mlca::automaton::Rule;
use mlca::correspondence::{build_chain, verify_theorem_main, TheoremReport};
use mlca::dynamics::{self, ZetaKind};
use mlca::{arith, oracle};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdict(number: u32, name: &str, pass: bool, detail: &str) {
    let word = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number:02} ({name}): {word}");
    assert!(pass, "criterion {number:02} ({name}) failed: {detail}");
}

fn lp(p: u64, terms: &[(i64, u64)]) -> LaurentPoly {
    LaurentPoly::from_terms(p, terms)
}

fn rule1(p: u64, terms: &[(i64, u64)]) -> Rule {
    Rule::new(LaurentMatrix::from_entries(p, vec![vec![lp(p, terms)]]).unwrap())
}

fn fib_shift(p: u64) -> Rule {
    Rule::new(
        LaurentMatrix::from_entries(
            p,
            vec![
                vec![lp(p, &[(1, 1)]), LaurentPoly::one(p)],
                vec![LaurentPoly::one(p), LaurentPoly::zero(p)],
            ],
        )
        .unwrap(),
    )
}

fn nilpotent_rule() -> Rule {
    Rule::new(
        LaurentMatrix::from_entries(
            2,
            vec![
                vec![LaurentPoly::zero(2), lp(2, &[(1, 1)])],
                vec![LaurentPoly::zero(2), LaurentPoly::zero(2)],
            ],
        )
        .unwrap(),
    )
}

/// A random entry supported on exponents in [-2,2] with degree at most 2.
/// Sparse on purpose: rules whose determinants are built from short
/// windows mostly stabilize at levels the brute-force oracle can reach.
fn random_entry(rng: &mut ChaCha8Rng, p: u64) -> LaurentPoly {
    if rng.gen_bool(0.2) {
        return LaurentPoly::zero(p);
    }
    let deg = [0i64, 0, 1, 1, 2][rng.gen_range(0..5)];
    let lo = rng.gen_range(-2..=(2 - deg));
    let terms: Vec<(i64, u64)> = (lo..=lo + deg).map(|e| (e, rng.gen_range(0..p))).collect();
    LaurentPoly::from_terms(p, &terms)
}

fn random_rule(rng: &mut ChaCha8Rng, p: u64, r: usize) -> Rule {
    let rows = (0..r)
        .map(|_| (0..r).map(|_| random_entry(rng, p)).collect())
        .collect();
    Rule::new(LaurentMatrix::from_entries(p, rows).unwrap())
}

fn seeded_rules(seed: u64, count: usize, keep: impl Fn(&Rule) -> bool) -> Vec<Rule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rules = Vec::new();
    while rules.len() < count {
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let r = if rng.gen_bool(0.5) { 1 } else { 2 };
        let rule = random_rule(&mut rng, p, r);
        if keep(&rule) {
            rules.push(rule);
        }
    }
    rules
}

/// The 50 seeded confined rules exercised by criteria 6 and 8.
fn seeded_confined_rules() -> Vec<Rule> {
    seeded_rules(0x616363_01, 50, dynamics::is_confined)
}

/// The 20 seeded two-sided confined rules exercised by criteria 7 and 8.
fn seeded_two_sided_rules() -> Vec<Rule> {
    seeded_rules(0x616363_02, 20, |rule| {
        !rule.is_one_sided() && dynamics::is_confined(rule)
    })
}

#[test]
fn criterion_01_single_band_fixed_point_counts() {
    let mut failures = Vec::new();
    for p in [2u64, 3, 5] {
        let rule = rule1(p, &[(0, 1), (1, 1)]);
        for n in 1..=24u64 {
            let expected = n - p.pow(arith::v_adic(p, n));
            let got = dynamics::log_fix_count(&rule, n).unwrap();
            if got != expected {
                failures.push(format!("p={p}, n={n}: log count {got}, expected {expected}"));
            }
        }
        let invs = dynamics::invariants(&rule, None).unwrap();
        if invs.a != 1 || invs.varpi != 1 || invs.t.get(&1) != Some(&1) {
            failures.push(format!(
                "p={p}: a={}, varpi={}, t={:?}",
                invs.a, invs.varpi, invs.t
            ));
        }
    }
    verdict(
        1,
        "single-band fixed-point counts",
        failures.is_empty(),
        &failures.join("; "),
    );
}

#[test]
fn criterion_02_necklace_orbit_counts() {
    let rule = rule1(2, &[(1, 1)]);
    let expected: Vec<BigInt> = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    let counts = dynamics::orbit_counts(&rule, 12).unwrap();
    let classified = dynamics::zeta(&rule, 15).unwrap();
    let geometric: Vec<BigInt> = (0..=15u32).map(|n| BigInt::from(2).pow(n)).collect();
    let pass = counts == expected
        && classified.kind == ZetaKind::Rational
        && classified.truncated_series == geometric;
    verdict(
        2,
        "necklace orbit counts",
        pass,
        &format!("counts {counts:?}, kind {:?}", classified.kind),
    );
}

#[test]
fn criterion_03_zeta_dichotomy() {
    let defective = dynamics::zeta(&rule1(2, &[(0, 1), (1, 1)]), 8).unwrap();
    let geometric = dynamics::zeta(&rule1(2, &[(1, 1)]), 8).unwrap();
    let pass = defective.kind == ZetaKind::NaturalBoundaryCandidate
        && geometric.kind == ZetaKind::Rational;
    verdict(
        3,
        "zeta rationality dichotomy",
        pass,
        &format!("got {:?} and {:?}", defective.kind, geometric.kind),
    );
}

#[test]
fn criterion_04_nilpotent_rules_fix_only_zero() {
    let rule = nilpotent_rule();
    let mut failures = Vec::new();
    if !dynamics::is_eventually_zero(&rule) {
        failures.push("not recognized as eventually zero".to_string());
    }
    if !rule.iterate(2).matrix().entries().all(LaurentPoly::is_zero) {
        failures.push("square is not the zero rule".to_string());
    }
    let invs = dynamics::invariants(&rule, None).unwrap();
    if invs.a != 0 {
        failures.push(format!("a = {}", invs.a));
    }
    for n in 1..=10 {
        let count = dynamics::fix_count(&rule, n).unwrap();
        if !count.is_one() {
            failures.push(format!("n={n}: {count} fixed points"));
        }
    }
    verdict(
        4,
        "nilpotent rules fix only zero",
        failures.is_empty(),
        &failures.join("; "),
    );
}

fn report_summary(r: &TheoremReport) -> (bool, bool, bool, Option<usize>, usize, usize, bool) {
    (
        r.injective,
        r.additive,
        r.equivariant,
        r.image_count,
        r.field_fixed_log,
        r.sequence_fixed_log,
        r.fixed_points_match,
    )
}

#[test]
fn criterion_05_correspondence_verification() {
    let mut failures = Vec::new();
    for p in [2u64, 3] {
        let chain_a = build_chain(p, 6, 11).unwrap();
        let chain_b = build_chain(p, 6, 17).unwrap();
        let rules = [rule1(p, &[(0, 1), (1, 1)]), rule1(p, &[(1, 1)]), fib_shift(p)];
        for (which, rule) in rules.iter().enumerate() {
            for n in 1..=4u64 {
                for level in [1usize, 2, 3, 6] {
                    let ra = verify_theorem_main(&chain_a, rule, n, level, None).unwrap();
                    let rb = verify_theorem_main(&chain_b, rule, n, level, None).unwrap();
                    if !ra.all_passed() {
                        failures.push(format!(
                            "p={p}, rule {which}, n={n}, level {level}: {:?}",
                            ra.failures
                        ));
                    }
                    if report_summary(&ra) != report_summary(&rb) {
                        failures.push(format!(
                            "p={p}, rule {which}, n={n}, level {level}: verdicts depend on the seed"
                        ));
                    }
                }
            }
        }
    }
    verdict(
        5,
        "correspondence verification",
        failures.is_empty(),
        &failures.join("; "),
    );
}

#[test]
fn criterion_06_oracle_equivalence() {
    let rules = seeded_confined_rules();
    let mut attained = 0usize;
    let mut total = 0usize;
    let mut failures = Vec::new();
    for (which, rule) in rules.iter().enumerate() {
        for n in 1..=5u64 {
            total += 1;
            let closed = dynamics::log_fix_count(rule, n).unwrap();
            let stabilized = oracle::stabilized_count(rule, n, 0, None).unwrap();
            if (stabilized.log_count as u64) > closed {
                failures.push(format!(
                    "rule {which}, n={n}: oracle count p^{} exceeds closed form p^{closed}",
                    stabilized.log_count
                ));
            } else if stabilized.log_count as u64 == closed {
                attained += 1;
            } else {
                println!(
                    "  rule {which}, n={n}: oracle reached p^{} of closed form p^{closed} \
                     (levels {:?}, certified {})",
                    stabilized.log_count, stabilized.levels, stabilized.certified
                );
            }
            for &level in stabilized.levels.iter().filter(|&&l| l <= 60) {
                let field = oracle::field_side_count(rule, n, 0, level).unwrap();
                let sequence = oracle::sequence_side_count(rule, n, 0, level);
                if field != sequence {
                    failures.push(format!(
                        "rule {which}, n={n}, level {level}: field p^{field} vs sequence p^{sequence}"
                    ));
                }
            }
        }
    }
    println!("  attainment: {attained}/{total}");
    let ratio_ok = attained * 10 >= total * 9;
    if !ratio_ok {
        failures.push(format!("attainment {attained}/{total} below 90%"));
    }
    verdict(6, "oracle equivalence", failures.is_empty(), &failures.join("; "));
}

#[test]
fn criterion_07_two_sided_reduction() {
    let rules = seeded_two_sided_rules();
    let mut failures = Vec::new();
    for (which, rule) in rules.iter().enumerate() {
        let (reduced, m) = rule.one_sided_reduction();
        if !reduced.is_one_sided() || m >= 0 {
            failures.push(format!("rule {which}: reduction gave offset {m}"));
            continue;
        }
        for n in 1..=5u64 {
            let direct = dynamics::log_fix_count(rule, n).unwrap();
            let via_coincidence =
                dynamics::coincidence_log_count(&reduced, n, -m * n as i64).unwrap();
            if direct != via_coincidence {
                failures.push(format!(
                    "rule {which}, n={n}: direct {direct}, coincidence {via_coincidence}"
                ));
            }
        }
    }
    verdict(7, "two-sided reduction", failures.is_empty(), &failures.join("; "));
}

#[test]
fn criterion_08_invariant_formula_consistency() {
    let mut rules = vec![
        rule1(2, &[(0, 1), (1, 1)]),
        rule1(3, &[(0, 1), (1, 1)]),
        rule1(5, &[(0, 1), (1, 1)]),
        rule1(2, &[(1, 1)]),
        rule1(3, &[(1, 1)]),
        fib_shift(2),
        fib_shift(3),
        nilpotent_rule(),
    ];
    rules.extend(seeded_confined_rules());
    rules.extend(seeded_two_sided_rules());

    let mut failures = Vec::new();
    for (which, rule) in rules.iter().enumerate() {
        let invs = match dynamics::invariants(rule, None) {
            Ok(invs) => invs,
            Err(e) => {
                failures.push(format!("rule {which}: {e}"));
                continue;
            }
        };
        let p = rule.p();
        for n in [p, 2 * p, p * p] {
            let predicted = invs.predicted_log_fix(n);
            let actual = dynamics::log_fix_count(rule, n).unwrap();
            if predicted != actual {
                failures.push(format!(
                    "rule {which}, n={n}: predicted {predicted}, actual {actual}"
                ));
            }
        }
        let order_bound = (1..=rule.bands() as u32)
            .fold(1u64, |acc, k| num_integer::lcm(acc, (p.pow(k) - 1).max(1)));
        if order_bound % invs.varpi != 0 {
            failures.push(format!(
                "rule {which}: varpi {} outside the residual order bound {order_bound}",
                invs.varpi
            ));
        }
    }
    verdict(
        8,
        "invariant formula consistency",
        failures.is_empty(),
        &failures.join("; "),
    );
}

#[test]
fn criterion_09_orbit_asymptotics() {
    let mut failures = Vec::new();
    let bound = BigRational::from_integer(BigInt::from(4));
    for (name, rule) in [("shift", rule1(2, &[(1, 1)])), ("defective", rule1(2, &[(0, 1), (1, 1)]))] {
        let report = dynamics::asymptotic_report(&rule, 20).unwrap();
        println!("  {name}: largest normalized residual {}", report.max_residual);
        for row in report.rows.iter().filter(|row| row.l >= 2) {
            // residual_sq <= 4 is |P_l - main| / p^{l/2} <= 2, kept exact
            if row.residual_sq > bound {
                failures.push(format!(
                    "{name}: residual {} at length {}",
                    row.residual, row.l
                ));
            }
        }
    }
    verdict(9, "orbit asymptotics", failures.is_empty(), &failures.join("; "));
}

fn percent_of(q: &BigRational) -> String {
    let scaled = (q * BigRational::from_integer(BigInt::from(10000))).to_integer();
    format!("{}.{:02}%", &scaled / 100, &scaled % 100)
}

#[test]
fn criterion_10_orbit_counting_limit() {
    let mut failures = Vec::new();

    let nil_rows = dynamics::orbit_counting_function(&nilpotent_rule(), 10).unwrap();
    if !nil_rows.iter().all(|row| row.pi.is_one()) {
        failures.push("growthless rule has non-constant orbit-counting function".to_string());
    }

    let rows = dynamics::orbit_counting_function(&rule1(2, &[(1, 1)]), 16).unwrap();
    let last = rows.last().unwrap();
    let two = BigRational::from_integer(BigInt::from(2));
    let deviation = (&last.normalized - &two).abs() / &two;
    println!(
        "  X=16: normalized count {} sits {} from the limit 2",
        last.normalized_decimal,
        percent_of(&deviation)
    );
    if deviation > BigRational::new(BigInt::from(1), BigInt::from(20)) {
        failures.push(format!(
            "normalized count {} at X=16 deviates {} from the limit 2, above the stated 5%",
            last.normalized_decimal,
            percent_of(&deviation)
        ));
    }

    verdict(10, "orbit counting limit", failures.is_empty(), &failures.join("; "));
}
