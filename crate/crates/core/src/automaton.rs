//! Multiband linear cellular automata and their exact action on spatially
//! periodic configurations.
//!
//! A rule is a square matrix G over F_p[Z, Z^-1]; writing G = Σ_e M_e Z^e,
//! it acts on a bi-infinite sequence (y_i) of column vectors by
//! (g y)_i = Σ_e M_e y_{i+e}. Period-N configurations are closed under this
//! action, which is where all computation happens.

use std::fmt;

use num_integer::Integer;

use crate::algebra::{raw, FpMatrix, LaurentMatrix, LaurentPoly};
use crate::error::{Error, Result};

/// A multiband linear cellular automaton in convolutional-encoder form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule {
    matrix: LaurentMatrix,
}

impl Rule {
    pub fn new(matrix: LaurentMatrix) -> Self {
        Rule { matrix }
    }

    pub fn p(&self) -> u64 {
        self.matrix.p()
    }

    /// Number of bands, the r of F_p^r.
    pub fn bands(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    /// Min and max Z-exponents over all entries; `None` for the zero rule.
    pub fn window(&self) -> Option<(i64, i64)> {
        self.matrix.val_deg_window()
    }

    /// True iff no negative Z-exponent occurs, so a cell depends only on
    /// neighbors to one side.
    pub fn is_one_sided(&self) -> bool {
        self.window().is_none_or(|(e_min, _)| e_min >= 0)
    }

    /// The n-th iterate as a rule in its own right.
    pub fn iterate(&self, n: u64) -> Rule {
        Rule { matrix: self.matrix.pow(n) }
    }

    /// Rewrites the rule as (one-sided rule) ∘ shift^m: returns (g̃, m)
    /// with g = g̃ ∘ s^m and g̃ one-sided, m = min(e_min, 0). One-sided
    /// rules come back unchanged with m = 0.
    pub fn one_sided_reduction(&self) -> (Rule, i64) {
        let m = self.window().map_or(0, |(e_min, _)| e_min.min(0));
        if m == 0 {
            return (self.clone(), 0);
        }
        let shift = LaurentPoly::monomial(self.p(), 1, -m);
        let mut matrix = self.matrix.clone();
        for i in 0..matrix.dim() {
            for j in 0..matrix.dim() {
                matrix.set(i, j, matrix.get(i, j).mul_ref(&shift));
            }
        }
        (Rule { matrix }, m)
    }

    /// Applies the local rule to a periodic configuration; the output has
    /// the same period.
    pub fn apply(&self, cfg: &PeriodicConfig) -> Result<PeriodicConfig> {
        if self.p() != cfg.p || self.bands() != cfg.r {
            return Err(Error::Mismatch(format!(
                "rule over F_{}^{} applied to a configuration over F_{}^{}",
                self.p(),
                self.bands(),
                cfg.p,
                cfg.r
            )));
        }
        let n = cfg.period() as i64;
        let mut out = PeriodicConfig::zero(cfg.p, cfg.r, cfg.period());
        for (e, m) in self.matrix.coefficient_matrices() {
            for i in 0..cfg.period() {
                let src = (i as i64 + e).rem_euclid(n) as usize;
                let contrib = m.mul_vec(&cfg.cells[src]);
                for (band, c) in contrib.into_iter().enumerate() {
                    let cell = &mut out.cells[i][band];
                    *cell = raw::add(*cell, c, cfg.p);
                }
            }
        }
        Ok(out)
    }

    /// F_p-dimension of {period-N configurations fixed by the n-th
    /// iterate}; the number of such configurations is p to this power.
    pub fn fixed_configs_dimension(&self, n: u64, period: usize) -> usize {
        coincidence_operator(self, n, 0, period).nullity()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// Matrix of g^n − s^k on period-N configurations, flattened cell-major
/// (cell i occupies coordinates i·r .. i·r+r). Its nullity is the log_p of
/// the coincidence count at this period.
pub(crate) fn coincidence_operator(rule: &Rule, n: u64, k: i64, period: usize) -> FpMatrix {
    let p = rule.p();
    let r = rule.bands();
    let dim = r * period;
    let mut op = FpMatrix::zeros(p, dim, dim);
    for (e, m) in rule.iterate(n).matrix.coefficient_matrices() {
        for i in 0..period {
            let j = (i as i64 + e).rem_euclid(period as i64) as usize;
            for a in 0..r {
                for b in 0..r {
                    op.add_at(i * r + a, j * r + b, m.get(a, b));
                }
            }
        }
    }
    for i in 0..period {
        let j = (i as i64 + k).rem_euclid(period as i64) as usize;
        for a in 0..r {
            op.add_at(i * r + a, j * r + a, p - 1);
        }
    }
    op
}

/// The block-companion rule of an order-s linear recursion
/// Y_t = Σ_{j=1..s} G_j Y_{t-j}: first block-row G_1..G_s, identity blocks
/// on the subdiagonal.
pub fn companion(blocks: &[LaurentMatrix]) -> Result<Rule> {
    let Some(first) = blocks.first() else {
        return Err(Error::InvalidArgument("companion of an empty block list".into()));
    };
    let p = first.p();
    let r = first.dim();
    if blocks.iter().any(|b| b.p() != p || b.dim() != r) {
        return Err(Error::Mismatch("companion blocks differ in modulus or size".into()));
    }
    let s = blocks.len();
    let mut m = LaurentMatrix::zeros(p, r * s);
    for (block, g) in blocks.iter().enumerate() {
        for a in 0..r {
            for b in 0..r {
                m.set(a, block * r + b, g.get(a, b).clone());
            }
        }
    }
    for block in 1..s {
        for a in 0..r {
            m.set(block * r + a, (block - 1) * r + a, LaurentPoly::one(p));
        }
    }
    Ok(Rule::new(m))
}

/// A spatially periodic configuration: cell i is a column vector in F_p^r,
/// extended bi-infinitely by period N. The stated period need not be
/// minimal; equality as sequences is [`same_sequence`](Self::same_sequence),
/// while `==` compares the stored representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicConfig {
    p: u64,
    r: usize,
    cells: Vec<Vec<u64>>,
}

impl PeriodicConfig {
    pub fn zero(p: u64, r: usize, period: usize) -> Self {
        assert!(period >= 1, "period must be at least 1");
        PeriodicConfig { p, r, cells: vec![vec![0; r]; period] }
    }

    pub fn from_cells(p: u64, r: usize, cells: Vec<Vec<u64>>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidArgument("a configuration needs period ≥ 1".into()));
        }
        if cells.iter().any(|c| c.len() != r) {
            return Err(Error::Mismatch(format!("every cell must have {r} bands")));
        }
        let cells = cells
            .into_iter()
            .map(|c| c.into_iter().map(|v| v % p).collect())
            .collect();
        Ok(PeriodicConfig { p, r, cells })
    }

    /// Rebuilds from the cell-major flattening used by the linear-operator
    /// view (length r·N).
    pub fn from_flat(p: u64, r: usize, flat: &[u64]) -> Result<Self> {
        if r == 0 || flat.len() % r != 0 {
            return Err(Error::Mismatch(format!(
                "flat vector of length {} is not a whole number of {r}-band cells",
                flat.len()
            )));
        }
        Self::from_cells(p, r, flat.chunks(r).map(<[u64]>::to_vec).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn bands(&self) -> usize {
        self.r
    }

    pub fn period(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, i: usize) -> &[u64] {
        &self.cells[i]
    }

    pub fn cells(&self) -> &[Vec<u64>] {
        &self.cells
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|c| c.iter().all(|&v| v == 0))
    }

    pub fn to_flat(&self) -> Vec<u64> {
        self.cells.iter().flatten().copied().collect()
    }

    fn expect_compatible(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "mixed moduli: F_{} vs F_{}", self.p, rhs.p);
        assert_eq!(self.r, rhs.r, "band count mismatch: {} vs {}", self.r, rhs.r);
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.expect_compatible(rhs);
        let n = self.period().lcm(&rhs.period());
        let mut out = PeriodicConfig::zero(self.p, self.r, n);
        for i in 0..n {
            for band in 0..self.r {
                out.cells[i][band] = raw::add(
                    self.cells[i % self.period()][band],
                    rhs.cells[i % rhs.period()][band],
                    self.p,
                );
            }
        }
        out
    }

    pub fn scale(&self, c: u64) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|cell| cell.iter().map(|&v| raw::mul(v, c, self.p)).collect())
            .collect();
        PeriodicConfig { p: self.p, r: self.r, cells }
    }

    /// Cyclic shift: cell i of the result is cell i+k of the input.
    pub fn shift_by(&self, k: i64) -> Self {
        let n = self.period() as i64;
        let cells = (0..self.period())
            .map(|i| self.cells[(i as i64 + k).rem_euclid(n) as usize].clone())
            .collect();
        PeriodicConfig { p: self.p, r: self.r, cells }
    }

    /// Restates the configuration with period `m`, which must be a multiple
    /// of the current period.
    pub fn lift_to_period(&self, m: usize) -> Result<Self> {
        if m == 0 || m % self.period() != 0 {
            return Err(Error::Mismatch(format!(
                "period {} does not divide requested period {m}",
                self.period()
            )));
        }
        let cells = (0..m).map(|i| self.cells[i % self.period()].clone()).collect();
        Ok(PeriodicConfig { p: self.p, r: self.r, cells })
    }

    /// Equality as bi-infinite sequences, regardless of the stated periods.
    pub fn same_sequence(&self, rhs: &Self) -> bool {
        if self.p != rhs.p || self.r != rhs.r {
            return false;
        }
        let n = self.period().lcm(&rhs.period());
        (0..n).all(|i| self.cells[i % self.period()] == rhs.cells[i % rhs.period()])
    }
}

impl fmt::Display for PeriodicConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, cell) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if self.r == 1 {
                write!(f, "{}", cell[0])?;
            } else {
                write!(f, "[")?;
                for (b, v) in cell.iter().enumerate() {
                    if b > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")?;
            }
        }
        write!(f, ")")
    }
}
