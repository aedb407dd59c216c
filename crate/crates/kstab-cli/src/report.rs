//! Report documents. Field order is fixed; timing lives in its own block.

use kstab::criteria::{Check, CriterionResult};
use kstab::invariants::InvariantReport;
use kstab::toric::PolarizedToric;
use kstab::{Error, Q};
use serde::{Deserialize, Serialize};

use crate::problem::ProblemSpec;
use crate::rat::{rats, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub input: ProblemSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety: Option<VarietySummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Invariants>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<Criterion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleTable>,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<Diagnostic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietySummary {
    pub dim: usize,
    pub rays: Vec<Vec<Rat>>,
    pub l: Vec<Rat>,
    pub degree: Rat,
    /// `μ(X, L, T)` for the given `L` (not `L^r`).
    pub slope: Rat,
}

impl VarietySummary {
    pub fn new(x: &PolarizedToric<Q>, mu: Q) -> Result<Self, Error> {
        Ok(VarietySummary {
            dim: x.dim(),
            rays: x.fan().rays().iter().map(|r| rats(r)).collect(),
            l: rats(&x.polarization().coeffs),
            degree: Rat(x.degree()?),
            slope: Rat(mu),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Routes {
    pub components: Option<Rat>,
    pub j_l: Option<Rat>,
    pub intersection: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRow {
    pub a0: Rat,
    pub b0: Rat,
    pub lambda: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficients {
    pub a0: Rat,
    pub a1: Rat,
    pub b0: Rat,
    pub b1: Rat,
    pub d0: Rat,
    pub hat_a0: Option<Rat>,
    pub hat_b0: Option<Rat>,
    pub tilde_a0: Option<Rat>,
    pub tilde_b0: Option<Rat>,
    pub components: Vec<ComponentRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceEntry {
    pub value: String,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub df_untwisted: Rat,
    pub df_twisted: Option<Rat>,
    pub df_log: Option<Rat>,
    pub min_norm: Rat,
    pub min_norm_routes: Routes,
    pub l2_norm: Rat,
    /// `μ(X, L^r, T)`.
    pub slope: Rat,
    pub uniform_margin: Option<Rat>,
    pub s_coefficient: Option<Rat>,
    pub component_in_divisor: Option<bool>,
    pub trivial: bool,
    pub coefficients: Coefficients,
    pub provenance: Vec<ProvenanceEntry>,
}

fn opt(v: &Option<Q>) -> Option<Rat> {
    v.clone().map(Rat)
}

impl From<&InvariantReport<Q>> for Invariants {
    fn from(r: &InvariantReport<Q>) -> Self {
        let c = &r.coefficients;
        Invariants {
            df_untwisted: Rat(r.df_untwisted.clone()),
            df_twisted: opt(&r.df_twisted),
            df_log: opt(&r.df_log),
            min_norm: Rat(r.min_norm.clone()),
            min_norm_routes: Routes {
                components: opt(&r.min_norm_routes.components),
                j_l: opt(&r.min_norm_routes.j_l),
                intersection: opt(&r.min_norm_routes.intersection),
            },
            l2_norm: Rat(r.l2_norm.clone()),
            slope: Rat(r.slope.clone()),
            uniform_margin: opt(&r.uniform_margin),
            s_coefficient: opt(&r.s_coefficient),
            component_in_divisor: r.component_in_divisor,
            trivial: r.trivial,
            coefficients: Coefficients {
                a0: Rat(c.a0.clone()),
                a1: Rat(c.a1.clone()),
                b0: Rat(c.b0.clone()),
                b1: Rat(c.b1.clone()),
                d0: Rat(c.d0.clone()),
                hat_a0: opt(&c.hat_a0),
                hat_b0: opt(&c.hat_b0),
                tilde_a0: opt(&c.tilde_a0),
                tilde_b0: opt(&c.tilde_b0),
                components: c
                    .components
                    .iter()
                    .map(|p| ComponentRow { a0: Rat(p.a0.clone()), b0: Rat(p.b0.clone()), lambda: Rat(p.lambda.clone()) })
                    .collect(),
            },
            provenance: r
                .provenance
                .iter()
                .map(|(v, p)| ProvenanceEntry { value: v.clone(), method: p.as_str().to_string() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub slack: Option<Rat>,
    pub divisor: Option<Vec<Rat>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: String,
    pub verdict: String,
    pub checks: Vec<CheckRow>,
    pub notes: Vec<String>,
}

impl From<&Check<Q>> for CheckRow {
    fn from(c: &Check<Q>) -> Self {
        CheckRow {
            name: c.name.clone(),
            passed: c.passed,
            slack: opt(&c.slack),
            divisor: c.divisor.as_ref().map(|d| rats(&d.coeffs)),
        }
    }
}

impl From<&CriterionResult<Q>> for Criterion {
    fn from(r: &CriterionResult<Q>) -> Self {
        Criterion {
            id: r.id.as_str().to_string(),
            verdict: r.verdict.as_str().to_string(),
            checks: r.checks.iter().map(CheckRow::from).collect(),
            notes: r.notes.clone(),
        }
    }
}

/// Integer counts at one `k`, as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub h: String,
    pub w: String,
    pub w2: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRow {
    pub k: u64,
    pub path_a: Option<Counts>,
    pub path_b: Option<Counts>,
    pub equal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientCheck {
    pub name: String,
    pub left: Rat,
    pub right: Rat,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleTable {
    /// Power of `L` at which the two paths were compared.
    pub r: u64,
    pub rows: Vec<OracleRow>,
    pub coefficients: Vec<CoefficientCheck>,
}

impl OracleTable {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.equal != Some(false)) && self.coefficients.iter().all(|c| c.equal)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// Exit code for a library error: 3 for failed internal cross-checks, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CrossCheck(_) | Error::NotPolynomial { .. } => 3,
        _ => 2,
    }
}

pub fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

impl Diagnostic {
    pub fn from_error(e: &Error) -> Self {
        Diagnostic { kind: error_kind(e), message: e.to_string(), exit_code: exit_code(e) }
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |d| d.exit_code)
    }

    /// JSON without the timing block, the form used for comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timing = None;
        serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
    }
}
