//! `scan`: criteria verdicts over a rational grid of `L` and `T`.

use kstab::config::{flag_blowup, MonomialFlagIdeal};
use kstab::criteria::{aubin_pair, check_alpha, check_aubin, check_calabi_yau, check_general_type};
use kstab::invariants::{df_twisted_intersection, min_norm_intersection};
use kstab::toric::{PolarizedToric, ToricDivisor};
use kstab::{Error, Field, Q};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compute::alpha_input;
use crate::problem::{AlphaSpec, CriterionName, FlagSpec, VarietySpec, SCHEMA_VERSION};
use crate::rat::{qs, Rat};

pub const DEFAULT_MAX_ROWS: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Base variety; its `l` and `t` are the values at parameter 0.
    pub variety: VarietySpec,
    pub sweep: Sweep,
    pub param: Grid,
    #[serde(default = "all_criteria")]
    pub criteria: Vec<CriterionName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaSpec>,
    /// Degenerations on which the minimum uniform margin is taken.
    #[serde(default)]
    pub degenerations: Vec<FlagSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rows: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Sweep {
    /// `L = -K_X`, `T = -((1 - β)/2) K_X` with `β` the parameter.
    Aubin,
    /// `L = L_0 + s l_dir`, `T = T_0 + s t_dir`.
    Linear {
        #[serde(default)]
        l_dir: Option<Vec<Rat>>,
        #[serde(default)]
        t_dir: Option<Vec<Rat>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: Rat,
    pub step: Rat,
    pub count: u64,
}

fn all_criteria() -> Vec<CriterionName> {
    vec![CriterionName::GeneralType, CriterionName::CalabiYau, CriterionName::Alpha]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub param: Rat,
    pub mu: Option<Rat>,
    pub general_type: Option<String>,
    pub calabi_yau: Option<String>,
    pub alpha: Option<String>,
    pub min_margin: Option<Rat>,
    pub degenerations_used: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTable {
    pub schema_version: u32,
    pub name: Option<String>,
    pub rows: Vec<ScanRow>,
}

pub fn parse_family(text: &str) -> Result<FamilySpec, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: FamilySpec =
        serde_path_to_error::deserialize(de).map_err(|e| format!("{}: {}", e.path(), e.inner()))?;
    if spec.schema_version != SCHEMA_VERSION {
        return Err(format!("schema_version: expected {SCHEMA_VERSION}, got {}", spec.schema_version));
    }
    Ok(spec)
}

fn shifted(base: &ToricDivisor<Q>, dir: &Option<Vec<Rat>>, s: &Q) -> Result<ToricDivisor<Q>, Error> {
    match dir {
        None => Ok(base.clone()),
        Some(d) if d.len() == base.coeffs.len() => Ok(base + &ToricDivisor::new(qs(d)).scale(s)),
        Some(d) => Err(Error::Invalid(format!("direction has {} coefficients, expected {}", d.len(), base.coeffs.len()))),
    }
}

fn min_margin(x: &PolarizedToric<Q>, t: &ToricDivisor<Q>, degs: &[FlagSpec]) -> Result<(Option<Q>, usize), Error> {
    let mut best: Option<Q> = None;
    let mut used = 0;
    for fl in degs {
        let levels = fl.levels.iter().map(|l| l.iter().map(|e| qs(e)).collect()).collect();
        let model = flag_blowup(x, &MonomialFlagIdeal::new(fl.n, levels)?, 1)?;
        if !model.is_semi_ample() {
            continue;
        }
        used += 1;
        let m = df_twisted_intersection(&model, t)? / min_norm_intersection(&model)?;
        best = Some(match best {
            Some(b) if b <= m => b,
            _ => m,
        });
    }
    Ok((best, used))
}

fn row(f: &FamilySpec, base: &PolarizedToric<Q>, t0: &ToricDivisor<Q>, s: Q) -> Result<ScanRow, Error> {
    let (x, t) = match &f.sweep {
        Sweep::Aubin => aubin_pair(base.fan(), &s)?,
        Sweep::Linear { l_dir, t_dir } => {
            let l = shifted(base.polarization(), l_dir, &s)?;
            if !base.fan().is_ample(&l)? {
                return Ok(ScanRow {
                    param: Rat(s),
                    mu: None,
                    general_type: None,
                    calabi_yau: None,
                    alpha: None,
                    min_margin: None,
                    degenerations_used: 0,
                    note: "L not ample".into(),
                });
            }
            (PolarizedToric::new(base.fan().clone(), l)?, shifted(t0, t_dir, &s)?)
        }
    };
    let mu = x.twisted_slope(&t)?.mu;
    let mut out = ScanRow {
        param: Rat(s.clone()),
        mu: Some(Rat(mu)),
        general_type: None,
        calabi_yau: None,
        alpha: None,
        min_margin: None,
        degenerations_used: 0,
        note: String::new(),
    };
    for c in &f.criteria {
        match c {
            CriterionName::GeneralType => out.general_type = Some(check_general_type(&x, &t)?.verdict.as_str().into()),
            CriterionName::CalabiYau => out.calabi_yau = Some(check_calabi_yau(&x, &t)?.verdict.as_str().into()),
            CriterionName::Alpha => {
                let Some(a) = &f.alpha else { continue };
                let a = alpha_input(a);
                let res = match f.sweep {
                    Sweep::Aubin => check_aubin(base.fan(), &s, &a)?,
                    Sweep::Linear { .. } => check_alpha(&x, &t, &a)?,
                };
                out.alpha = Some(res.verdict.as_str().into());
            }
            CriterionName::Inequalities => {}
        }
    }
    if !f.degenerations.is_empty() {
        let (m, used) = min_margin(&x, &t, &f.degenerations)?;
        out.min_margin = m.map(Rat);
        out.degenerations_used = used;
    }
    Ok(out)
}

/// Evaluates every grid point; rows come back in parameter order.
pub fn scan(f: &FamilySpec, max_rows: u64) -> Result<ScanTable, Error> {
    if f.param.count > max_rows {
        return Err(Error::Invalid(format!("grid has {} points, cap is {max_rows}", f.param.count)));
    }
    let base = f.variety.build()?;
    let t0 = f.variety.divisors(&base)?.0.unwrap_or_else(|| ToricDivisor::zero(base.fan().rays().len()));
    let params: Vec<Q> =
        (0..f.param.count).map(|i| f.param.start.0.clone() + f.param.step.0.clone() * Q::from_int(i as i64)).collect();
    let rows = params.into_par_iter().map(|s| row(f, &base, &t0, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(ScanTable { schema_version: SCHEMA_VERSION, name: f.name.clone(), rows })
}

pub const CSV_COLUMNS: [&str; 8] =
    ["param", "mu", "general_type", "calabi_yau", "alpha", "min_margin", "degenerations_used", "note"];

pub fn to_csv(t: &ScanTable) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)?;
    let s = |o: &Option<String>| o.clone().unwrap_or_default();
    let r = |o: &Option<Rat>| o.as_ref().map(|v| v.to_string()).unwrap_or_default();
    for row in &t.rows {
        w.write_record([
            row.param.to_string(),
            r(&row.mu),
            s(&row.general_type),
            s(&row.calabi_yau),
            s(&row.alpha),
            r(&row.min_margin),
            row.degenerations_used.to_string(),
            row.note.clone(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
