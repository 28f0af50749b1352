//! Rule files: a JSON document carrying the modulus, the band count, the
//! entry grid, and optional analysis knobs.

use std::fmt;
use std::path::Path;

use mlca::algebra::{check_prime, LaurentMatrix, LaurentPoly};
use mlca::automaton::Rule;
use serde::{Deserialize, Serialize};

use crate::parser::{parse_entry, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub p: u64,
    pub r: usize,
    pub entries: Vec<Vec<String>>,
    /// Blocks B_1..B_s of an order-s recursion, for the companion command.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_check: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max_field: Option<usize>,
}

#[derive(Debug)]
pub enum SpecError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Shape(String),
    Entry {
        row: usize,
        column: usize,
        source: ParseError,
    },
    Invalid(mlca::Error),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Io(e) => write!(f, "cannot read the rule file: {e}"),
            SpecError::Json(e) => write!(f, "rule file is not valid JSON: {e}"),
            SpecError::Shape(msg) => write!(f, "{msg}"),
            SpecError::Entry {
                row,
                column,
                source,
            } => write!(f, "entry ({row},{column}): {source}"),
            SpecError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpecError {}

impl RuleSpec {
    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(SpecError::Io)?;
        serde_json::from_str(&text).map_err(SpecError::Json)
    }

    fn grid_to_matrix(&self, grid: &[Vec<String>]) -> Result<LaurentMatrix, SpecError> {
        if grid.len() != self.r || grid.iter().any(|row| row.len() != self.r) {
            return Err(SpecError::Shape(format!(
                "expected an {r}x{r} entry grid",
                r = self.r
            )));
        }
        let mut rows = Vec::with_capacity(self.r);
        for (i, row) in grid.iter().enumerate() {
            let mut out = Vec::with_capacity(self.r);
            for (j, entry) in row.iter().enumerate() {
                out.push(parse_entry(entry, self.p).map_err(|source| SpecError::Entry {
                    row: i + 1,
                    column: j + 1,
                    source,
                })?);
            }
            rows.push(out);
        }
        LaurentMatrix::from_entries(self.p, rows).map_err(SpecError::Invalid)
    }

    pub fn rule(&self) -> Result<Rule, SpecError> {
        check_prime(self.p).map_err(SpecError::Invalid)?;
        if self.r == 0 {
            return Err(SpecError::Shape("the band count r must be positive".into()));
        }
        Ok(Rule::new(self.grid_to_matrix(&self.entries)?))
    }

    pub fn companion_blocks(&self) -> Result<Vec<LaurentMatrix>, SpecError> {
        check_prime(self.p).map_err(SpecError::Invalid)?;
        let blocks = self.blocks.as_ref().ok_or_else(|| {
            SpecError::Shape("the companion command needs a \"blocks\" list".into())
        })?;
        blocks.iter().map(|grid| self.grid_to_matrix(grid)).collect()
    }

    /// Spec for a freshly built rule, with entries pretty-printed so the
    /// output parses back to the same rule.
    pub fn from_rule(rule: &Rule, template: &RuleSpec) -> Self {
        let m = rule.matrix();
        let entries = (0..m.dim())
            .map(|i| (0..m.dim()).map(|j| print_poly(m.get(i, j))).collect())
            .collect();
        RuleSpec {
            p: rule.p(),
            r: rule.bands(),
            entries,
            blocks: None,
            seed: template.seed,
            n_check: template.n_check,
            l_max: template.l_max,
            n_max_field: template.n_max_field,
        }
    }
}

/// Renders a polynomial in the entry grammar; parsing the result gives the
/// polynomial back.
pub fn print_poly(poly: &LaurentPoly) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    poly.terms()
        .map(|(e, c)| match (e, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "Z".into(),
            (1, c) => format!("{c}*Z"),
            (e, 1) => format!("Z^{e}"),
            (e, c) => format!("{c}*Z^{e}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
