//! Report types for every command. Big integers travel as decimal strings,
//! parallel sweeps feed a single-threaded, ordered assembly, and the
//! counting formula is re-checked just before a report leaves the process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use mlca::automaton::{PeriodicConfig, Rule};
use mlca::correspondence::{build_chain, verify_theorem_main};
use mlca::dynamics::{self, Invariants, ZetaKind};
use mlca::{arith, oracle, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::spec::RuleSpec;

/// Counts whose binary size stays below this many bits are also written out
/// in decimal.
const DECIMAL_BITS: u64 = 128;

/// Cross-check grid for the analyze report: iterates and field levels.
const ORACLE_N_MAX: u64 = 3;
const ORACLE_LEVELS: [usize; 5] = [1, 2, 3, 4, 6];
const ORACLE_DIM_CAP: usize = 64;

pub fn decimal_count(p: u64, log: u64) -> Option<String> {
    let bits = u64::from(u64::BITS - p.leading_zeros()) * log;
    (bits <= DECIMAL_BITS).then(|| BigInt::from(p).pow(log as u32).to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: u64,
    pub log: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub a: u64,
    pub varpi: u64,
    pub t: BTreeMap<u64, u64>,
    pub n_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub kind: String,
    pub order: usize,
    pub series: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRowReport {
    pub l: u64,
    pub orbit_count: String,
    /// Rational main term as "numerator/denominator".
    pub main_term: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub l_max: u64,
    pub counts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asymptotics: Option<Vec<AsymptoticRowReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub n: u64,
    pub level: usize,
    pub field_log: usize,
    pub sequence_log: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilizedRow {
    pub n: u64,
    pub log: usize,
    pub levels: Vec<usize>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub rows: Vec<OracleRow>,
    pub stabilized: Vec<StabilizedRow>,
    /// Field and sequence sides matched on every row, and every certified
    /// stabilized count matched the counting formula.
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub rule: RuleSpec,
    pub seed: u64,
    pub confined: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    pub counts: Vec<CountRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<OrbitReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub timing_ms: u64,
}

fn kind_name(kind: ZetaKind) -> &'static str {
    match kind {
        ZetaKind::Rational => "rational",
        ZetaKind::NaturalBoundaryCandidate => "natural-boundary-candidate",
    }
}

pub fn zeta_report(rule: &Rule, order: usize) -> Result<ZetaReport> {
    let z = dynamics::zeta(rule, order)?;
    Ok(ZetaReport {
        kind: kind_name(z.kind).into(),
        order,
        series: z.truncated_series.iter().map(BigInt::to_string).collect(),
    })
}

pub fn orbit_report(rule: &Rule, l_max: u64, with_asymptotics: bool) -> Result<OrbitReport> {
    let counts = dynamics::orbit_counts(rule, l_max)?;
    let mut report = OrbitReport {
        l_max,
        counts: counts.iter().map(BigInt::to_string).collect(),
        asymptotics: None,
        max_residual: None,
    };
    if with_asymptotics {
        let asym = dynamics::asymptotic_report(rule, l_max)?;
        report.asymptotics = Some(
            asym.rows
                .iter()
                .map(|row| AsymptoticRowReport {
                    l: row.l,
                    orbit_count: row.orbit_count.to_string(),
                    main_term: format!("{}/{}", row.main_term.numer(), row.main_term.denom()),
                    residual: row.residual.clone(),
                })
                .collect(),
        );
        report.max_residual = Some(asym.max_residual);
    }
    Ok(report)
}

fn oracle_report(rule: &Rule, inv: &Invariants) -> Result<OracleReport> {
    let mut rows = Vec::new();
    let mut agree = true;
    for n in 1..=ORACLE_N_MAX {
        for level in ORACLE_LEVELS {
            let field_log = oracle::field_side_count(rule, n, 0, level)?;
            let sequence_log = oracle::sequence_side_count(rule, n, 0, level);
            agree &= field_log == sequence_log;
            rows.push(OracleRow {
                n,
                level,
                field_log,
                sequence_log,
            });
        }
    }
    let mut stabilized = Vec::new();
    for n in 1..=ORACLE_N_MAX {
        let s = oracle::stabilized_count(rule, n, 0, Some(ORACLE_DIM_CAP))?;
        if s.certified {
            agree &= s.log_count as u64 == inv.predicted_log_fix(n);
        }
        stabilized.push(StabilizedRow {
            n,
            log: s.log_count,
            levels: s.levels,
            certified: s.certified,
        });
    }
    Ok(OracleReport {
        rows,
        stabilized,
        agree,
    })
}

pub fn analyze(spec: &RuleSpec, rule: &Rule, seed: u64) -> Result<AnalysisReport> {
    let start = Instant::now();
    let mut report = AnalysisReport {
        rule: spec.clone(),
        seed,
        confined: dynamics::is_confined(rule),
        invariants: None,
        counts: Vec::new(),
        zeta: None,
        orbits: None,
        oracle: None,
        timing_ms: 0,
    };
    if report.confined {
        let inv = dynamics::invariants(rule, spec.n_check)?;
        report.counts = (1..=inv.n_checked)
            .into_par_iter()
            .map(|n| {
                let log = dynamics::log_fix_count(rule, n)?;
                Ok(CountRow {
                    n,
                    log,
                    count: decimal_count(rule.p(), log),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        report.zeta = Some(zeta_report(rule, 12)?);
        report.orbits = Some(orbit_report(rule, spec.l_max.unwrap_or(12), inv.a >= 1)?);
        report.oracle = Some(oracle_report(rule, &inv)?);
        report.invariants = Some(InvariantsReport {
            a: inv.a,
            varpi: inv.varpi,
            t: inv.t,
            n_checked: inv.n_checked,
        });
    }
    report.validate()?;
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

impl AnalysisReport {
    /// Re-derives every count row from the invariants and re-renders the
    /// decimals; any mismatch is an internal inconsistency.
    pub fn validate(&self) -> Result<()> {
        let Some(inv) = &self.invariants else {
            return Ok(());
        };
        let p = self.rule.p;
        for row in &self.counts {
            let d = row.n.gcd(&inv.varpi);
            let Some(&t_d) = inv.t.get(&d) else {
                return Err(Error::Inconsistency(format!("defect table lacks t_{d}")));
            };
            let scale = i128::from(p.pow(arith::v_adic(p, row.n)));
            let predicted = i128::from(row.n) * i128::from(inv.a) - i128::from(t_d) * scale;
            if i128::from(row.log) != predicted {
                return Err(Error::Inconsistency(format!(
                    "count row n = {} carries log {} but the formula gives {predicted}",
                    row.n, row.log
                )));
            }
            if row.count != decimal_count(p, row.log) {
                return Err(Error::Inconsistency(format!(
                    "count row n = {} renders p^{} incorrectly",
                    row.n, row.log
                )));
            }
        }
        if let Some(oracle) = &self.oracle {
            if !oracle.agree {
                return Err(Error::Inconsistency(
                    "oracle counts disagree with the analysis".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "rule: p = {}, r = {}", self.rule.p, self.rule.r).unwrap();
        if !self.confined {
            writeln!(
                out,
                "not confined: some iterate fixes infinitely many configurations"
            )
            .unwrap();
            return out;
        }
        if let Some(inv) = &self.invariants {
            let t: Vec<String> = inv.t.iter().map(|(d, t)| format!("t_{d} = {t}")).collect();
            writeln!(
                out,
                "invariants: a = {}, varpi = {}, {}",
                inv.a,
                inv.varpi,
                t.join(", ")
            )
            .unwrap();
            writeln!(out, "counting formula verified for n <= {}", inv.n_checked).unwrap();
        }
        let logs: Vec<String> = self.counts.iter().map(|c| c.log.to_string()).collect();
        writeln!(out, "log_p #Fix(g^n), n ascending: {}", logs.join(" ")).unwrap();
        if let Some(z) = &self.zeta {
            writeln!(out, "zeta: {}", z.kind).unwrap();
            writeln!(out, "zeta series to order {}: {}", z.order, z.series.join(", ")).unwrap();
        }
        if let Some(o) = &self.orbits {
            writeln!(out, "orbit counts, l = 1..{}: {}", o.l_max, o.counts.join(", ")).unwrap();
            if let Some(m) = &o.max_residual {
                writeln!(out, "max normalized orbit residual: {m}").unwrap();
            }
        }
        if let Some(o) = &self.oracle {
            let certified = o.stabilized.iter().filter(|s| s.certified).count();
            writeln!(
                out,
                "oracle: {} level checks, {}/{} stabilized counts certified, agree = {}",
                o.rows.len(),
                certified,
                o.stabilized.len(),
                o.agree
            )
            .unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub p: u64,
    pub r: usize,
    pub period: usize,
    /// One flat cell-major line per time step, starting with the input.
    pub steps: Vec<String>,
}

fn flat_line(cfg: &PeriodicConfig) -> String {
    cfg.to_flat()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn simulate(rule: &Rule, config: &PeriodicConfig, steps: u64) -> Result<SimulationReport> {
    let mut current = config.clone();
    let mut lines = vec![flat_line(&current)];
    for _ in 0..steps {
        current = rule.apply(&current)?;
        lines.push(flat_line(&current));
    }
    Ok(SimulationReport {
        p: rule.p(),
        r: rule.bands(),
        period: config.period(),
        steps: lines,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub n: u64,
    pub level: usize,
    pub exhaustive: bool,
    pub vectors_checked: usize,
    pub injective: bool,
    pub additive: bool,
    pub equivariant: bool,
    pub field_fixed_log: usize,
    pub sequence_fixed_log: usize,
    pub fixed_points_match: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub p: u64,
    pub r: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Shift applied to make the rule one-sided before checking; 0 when the
    /// rule already was.
    pub shift_exponent: i64,
    pub rows: Vec<VerifyRow>,
    pub all_passed: bool,
}

pub fn verify(rule: &Rule, n_max: usize, seed: u64) -> Result<VerifyReport> {
    let (reduced, m) = rule.one_sided_reduction();
    let chain = build_chain(rule.p(), n_max, seed)?;
    let mut rows = Vec::new();
    let mut all_passed = true;
    for n in 1..=3u64 {
        for level in chain.levels() {
            let report = verify_theorem_main(&chain, &reduced, n, level, None)?;
            all_passed &= report.all_passed();
            rows.push(VerifyRow {
                n,
                level,
                exhaustive: report.exhaustive,
                vectors_checked: report.vectors_checked,
                injective: report.injective,
                additive: report.additive,
                equivariant: report.equivariant,
                field_fixed_log: report.field_fixed_log,
                sequence_fixed_log: report.sequence_fixed_log,
                fixed_points_match: report.fixed_points_match,
                failures: report.failures,
            });
        }
    }
    Ok(VerifyReport {
        p: rule.p(),
        r: rule.bands(),
        n_max,
        seed,
        shift_exponent: m,
        rows,
        all_passed,
    })
}
