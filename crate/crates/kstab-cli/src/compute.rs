//! `compute`: evaluate one problem file into a [`Report`].

use std::time::Instant;

use kstab::config::{config_to_flag, flag_blowup, toric_config, BlowupModel, ToricTestConfig};
use kstab::criteria::{check_alpha, check_calabi_yau, check_general_type, check_inequalities, AlphaInput, AlphaKind};
use kstab::invariants::{evaluate_config, evaluate_flag, InvariantReport, Twisting};
use kstab::toric::ToricDivisor;
use kstab::{Error, Q};

use crate::oracle::oracle_table;
use crate::problem::{AlphaKindSpec, AlphaSpec, CriterionName, Degeneration, Problem, ProblemSpec, Task, SCHEMA_VERSION};
use crate::rat::qs;
use crate::report::{Criterion, Diagnostic, Invariants, Report, Timing, VarietySummary};

/// Command-line overrides applied on top of a problem file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub tasks: Option<Vec<Task>>,
    pub k_max: Option<u64>,
    pub alpha: Option<AlphaSpec>,
}

/// Effective settings after merging file options and overrides.
#[derive(Debug, Clone)]
pub struct Settings {
    pub tasks: Vec<Task>,
    pub k_max: u64,
    pub alpha: Option<AlphaSpec>,
}

pub fn settings(spec: &ProblemSpec, o: &Overrides, k_cap: u64) -> Settings {
    let mut tasks = o.tasks.clone().unwrap_or_else(|| spec.tasks.clone());
    tasks.sort();
    tasks.dedup();
    let k_max = o.k_max.or(spec.options.k_max).unwrap_or(k_cap).min(k_cap);
    Settings { tasks, k_max, alpha: o.alpha.clone().or_else(|| spec.options.alpha.clone()) }
}

pub fn alpha_input(a: &AlphaSpec) -> AlphaInput<Q> {
    let kind = match a.kind {
        AlphaKindSpec::Exact => AlphaKind::Exact,
        AlphaKindSpec::Lower => AlphaKind::LowerBound,
        AlphaKindSpec::Upper => AlphaKind::UpperBound,
    };
    AlphaInput { value: a.value.0.clone(), kind }
}

/// The flag-ideal model of a configuration, raised to the power of `L` the
/// bridge requires. `None` for the trivial configuration.
pub fn bridge(cfg: &ToricTestConfig<Q>, warnings: &mut Vec<String>) -> Result<Option<BlowupModel<Q>>, Error> {
    if cfg.is_trivial() {
        return Ok(None);
    }
    let (flag, r) = match config_to_flag(cfg) {
        Ok(fl) => (fl, cfg.exponent()),
        Err(Error::NonIntegralSlopes { required_r }) => {
            let lifted = toric_config(cfg.base().clone(), cfg.function().clone(), cfg.ceiling().clone(), required_r)?;
            warnings.push(format!("flag ideal taken at r = {required_r}"));
            (config_to_flag(&lifted)?, required_r)
        }
        Err(e) => return Err(e),
    };
    Ok(Some(flag_blowup(cfg.base(), &flag, r)?))
}

fn twisting(p: &Problem, s: &Settings) -> Result<Option<Twisting<Q>>, Error> {
    let wants_log = s.tasks.contains(&Task::Log);
    if !wants_log && !s.tasks.contains(&Task::Twisted) {
        return Ok(None);
    }
    let t = p.t.clone().ok_or_else(|| Error::Invalid("variety.t: required for twisted and log tasks".into()))?;
    let d = if wants_log {
        Some(p.d.clone().ok_or_else(|| Error::Invalid("variety.d: required for the log task".into()))?)
    } else {
        None
    };
    Ok(Some(Twisting { t, d }))
}

fn invariants(p: &Problem, s: &Settings) -> Result<InvariantReport<Q>, Error> {
    let tw = twisting(p, s)?;
    match &p.degeneration {
        Degeneration::Config(cfg) => evaluate_config(cfg, tw.as_ref(), s.k_max),
        Degeneration::Flag(m) => evaluate_flag(m, tw.as_ref(), s.k_max),
    }
}

fn criteria(spec: &ProblemSpec, p: &Problem, s: &Settings, warnings: &mut Vec<String>) -> Result<Vec<Criterion>, Error> {
    let m = p.x.fan().rays().len();
    let t = p.t.clone().unwrap_or_else(|| ToricDivisor::zero(m));
    let model = match &p.degeneration {
        Degeneration::Flag(model) => Some(model.clone()),
        Degeneration::Config(cfg) => bridge(cfg, warnings)?,
    };
    let list = match &spec.options.criteria {
        Some(l) => l.clone(),
        None => {
            let mut l = vec![CriterionName::GeneralType, CriterionName::CalabiYau];
            if s.alpha.is_some() {
                l.push(CriterionName::Alpha);
            }
            if model.is_some() {
                l.push(CriterionName::Inequalities);
            }
            l
        }
    };
    let mut out = Vec::new();
    for c in list {
        let res = match c {
            CriterionName::GeneralType => check_general_type(&p.x, &t)?,
            CriterionName::CalabiYau => check_calabi_yau(&p.x, &t)?,
            CriterionName::Alpha => {
                let a = s.alpha.as_ref().ok_or_else(|| Error::Invalid("options.alpha: required for the alpha criterion".into()))?;
                check_alpha(&p.x, &t, &alpha_input(a))?
            }
            CriterionName::Inequalities => {
                let model = model.as_ref().ok_or(Error::TrivialFlag)?;
                let nef = match &spec.options.nef {
                    Some(list) => list.iter().map(|d| ToricDivisor::new(qs(d))).collect(),
                    None => vec![p.x.polarization().clone(), ToricDivisor::zero(m)],
                };
                check_inequalities(model, &nef)?
            }
        };
        out.push(Criterion::from(&res));
    }
    Ok(out)
}

fn run(spec: &ProblemSpec, s: &Settings, rep: &mut Report) -> Result<(), Error> {
    let p = spec.build()?;
    let t0 = p.t.clone().unwrap_or_else(|| ToricDivisor::zero(p.x.fan().rays().len()));
    rep.variety = Some(VarietySummary::new(&p.x, p.x.twisted_slope(&t0)?.mu)?);
    if let Degeneration::Flag(m) = &p.degeneration {
        if !m.is_semi_ample() {
            return Err(Error::NotSemiAmple);
        }
    }
    if s.tasks.iter().any(|t| matches!(t, Task::Df | Task::Norms | Task::Twisted | Task::Log)) {
        let inv = invariants(&p, s)?;
        rep.warnings.extend(inv.warnings.iter().cloned());
        rep.invariants = Some(Invariants::from(&inv));
    }
    if s.tasks.contains(&Task::Criteria) {
        rep.criteria = criteria(spec, &p, s, &mut rep.warnings)?;
    }
    if s.tasks.contains(&Task::Oracle) {
        let table = oracle_table(&p, s.k_max, &mut rep.warnings)?;
        let ok = table.all_equal();
        rep.oracle = Some(table);
        if !ok {
            return Err(Error::CrossCheck("oracle table disagrees between paths".into()));
        }
    }
    Ok(())
}

/// Evaluates a parsed problem. Library errors are recorded in the report
/// rather than returned, so a report is always produced.
pub fn compute(spec: &ProblemSpec, s: &Settings) -> Report {
    let start = Instant::now();
    let mut input = spec.clone();
    input.tasks = s.tasks.clone();
    let mut rep = Report {
        schema_version: SCHEMA_VERSION,
        input,
        variety: None,
        invariants: None,
        criteria: Vec::new(),
        oracle: None,
        warnings: Vec::new(),
        error: None,
        timing: None,
    };
    if let Err(e) = run(spec, s, &mut rep) {
        rep.error = Some(Diagnostic::from_error(&e));
    }
    rep.timing = Some(Timing { elapsed_ms: start.elapsed().as_millis() as u64 });
    rep
}
