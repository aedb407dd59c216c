//! Problem files: a polarized toric variety, one degeneration, tasks.

use kstab::config::{flag_blowup, toric_config, BlowupModel, MonomialFlagIdeal, ToricTestConfig};
use kstab::geometry::{AffinePiece, PLConvexFunction, RationalPolytope};
use kstab::toric::{Fan, PolarizedToric, ToricDivisor};
use kstab::{Error, Q};
use serde::{Deserialize, Serialize};

use crate::rat::{qs, Rat};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub variety: VarietySpec,
    pub degeneration: DegenerationSpec,
    #[serde(default = "default_tasks")]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub options: Options,
}

/// Either `polytope` (lattice vertices; `L` is the polytope) or `fan` plus `l`.
/// `t` and `d` are ray coefficients in the order of the fan's rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Rat>>,
    #[serde(default = "one")]
    pub r: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub rays: Vec<Vec<Rat>>,
    pub cones: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DegenerationSpec {
    PlFunction(PlSpec),
    FlagIdeal(FlagSpec),
}

/// `f = max_i (<gradient_i, x> + constant_i)` with ceiling `C >= max f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlSpec {
    pub pieces: Vec<PieceSpec>,
    pub ceiling: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub gradient: Vec<Rat>,
    pub constant: Rat,
}

/// `I_0 + t I_1 + ... + t^(n-1) I_(n-1) + (t^n)`, each level a list of
/// exponent vectors indexed by the rays of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagSpec {
    pub n: u64,
    pub levels: Vec<Vec<Vec<Rat>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Df,
    Norms,
    Twisted,
    Log,
    Criteria,
    Oracle,
}

impl std::str::FromStr for Task {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.trim().to_string())).map_err(|_| format!("unknown task `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionName {
    GeneralType,
    CalabiYau,
    Alpha,
    Inequalities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaKindSpec {
    Exact,
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaSpec {
    pub value: Rat,
    #[serde(default = "lower")]
    pub kind: AlphaKindSpec,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria: Option<Vec<CriterionName>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaSpec>,
    /// Nef divisors `R` for the intersection inequalities; default `L` and `0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nef: Option<Vec<Vec<Rat>>>,
}

fn one() -> u64 {
    1
}

fn lower() -> AlphaKindSpec {
    AlphaKindSpec::Lower
}

pub fn default_tasks() -> Vec<Task> {
    vec![Task::Df, Task::Norms]
}

/// A degeneration ready for evaluation.
#[derive(Debug, Clone)]
pub enum Degeneration {
    Config(ToricTestConfig<Q>),
    Flag(BlowupModel<Q>),
}

/// Validated, typed form of a [`ProblemSpec`].
#[derive(Debug, Clone)]
pub struct Problem {
    pub x: PolarizedToric<Q>,
    pub t: Option<ToricDivisor<Q>>,
    pub d: Option<ToricDivisor<Q>>,
    pub r: u64,
    pub degeneration: Degeneration,
}

/// Parses a problem file, reporting the offending field and position.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: ProblemSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        format!("{path}: {inner}")
    })?;
    if spec.schema_version != SCHEMA_VERSION {
        return Err(format!("schema_version: expected {SCHEMA_VERSION}, got {}", spec.schema_version));
    }
    Ok(spec)
}

fn divisor(field: &str, v: &[Rat], len: usize) -> Result<ToricDivisor<Q>, Error> {
    if v.len() != len {
        return Err(Error::Invalid(format!("{field}: expected {len} ray coefficients, got {}", v.len())));
    }
    Ok(ToricDivisor::new(qs(v)))
}

impl VarietySpec {
    pub fn build(&self) -> Result<PolarizedToric<Q>, Error> {
        match (&self.polytope, &self.fan) {
            (Some(vs), None) => {
                if self.l.is_some() {
                    return Err(Error::Invalid("variety.l: the polytope already fixes L".into()));
                }
                let dim = vs.first().map_or(0, Vec::len);
                let pts: Vec<Vec<Q>> = vs.iter().map(|v| qs(v)).collect();
                PolarizedToric::from_polytope(&RationalPolytope::from_vertices(dim, &pts)?)
            }
            (None, Some(f)) => {
                let dim = f.rays.first().map_or(0, Vec::len);
                let fan = Fan::new(dim, f.rays.iter().map(|r| qs(r)).collect(), f.cones.clone())?;
                let l = self.l.as_ref().ok_or_else(|| Error::Invalid("variety.l: required with a fan".into()))?;
                let l = divisor("variety.l", l, fan.rays().len())?;
                PolarizedToric::new(fan, l)
            }
            _ => Err(Error::Invalid("variety: give exactly one of `polytope` and `fan`".into())),
        }
    }

    pub fn divisors(&self, x: &PolarizedToric<Q>) -> Result<(Option<ToricDivisor<Q>>, Option<ToricDivisor<Q>>), Error> {
        let m = x.fan().rays().len();
        let t = self.t.as_ref().map(|t| divisor("variety.t", t, m)).transpose()?;
        let d = self.d.as_ref().map(|d| divisor("variety.d", d, m)).transpose()?;
        Ok((t, d))
    }
}

impl DegenerationSpec {
    pub fn build(&self, x: &PolarizedToric<Q>, r: u64) -> Result<Degeneration, Error> {
        match self {
            DegenerationSpec::PlFunction(p) => {
                let pieces = p.pieces.iter().map(|pc| AffinePiece::new(qs(&pc.gradient), pc.constant.0.clone())).collect();
                let f = PLConvexFunction::new(pieces, x.moment_polytope().clone())?;
                Ok(Degeneration::Config(toric_config(x.clone(), f, p.ceiling.0.clone(), r)?))
            }
            DegenerationSpec::FlagIdeal(fl) => {
                let levels = fl.levels.iter().map(|l| l.iter().map(|e| qs(e)).collect()).collect();
                let flag = MonomialFlagIdeal::new(fl.n, levels)?;
                Ok(Degeneration::Flag(flag_blowup(x, &flag, r)?))
            }
        }
    }
}

impl ProblemSpec {
    pub fn build(&self) -> Result<Problem, Error> {
        if self.variety.r == 0 {
            return Err(Error::Invalid("variety.r: must be positive".into()));
        }
        let x = self.variety.build()?;
        let (t, d) = self.variety.divisors(&x)?;
        let degeneration = self.degeneration.build(&x, self.variety.r)?;
        Ok(Problem { x, t, d, r: self.variety.r, degeneration })
    }
}
