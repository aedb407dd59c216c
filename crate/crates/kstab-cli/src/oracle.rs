//! `oracle`: per-`k` comparison of lattice counts on both computation paths.

use kstab::config::{toric_config, BlowupModel};
use kstab::invariants::{df_twisted_intersection, df_untwisted, min_norm_components, min_norm_intersection};
use kstab::toric::ToricDivisor;
use kstab::weights::{
    interpolate, sample_blowup, sample_config, sampling_plan, sampling_plan_blowup, CoefficientBundle, WeightSample,
};
use kstab::{Error, Field, Q};

use crate::compute::bridge;
use crate::problem::{Degeneration, Problem};
use crate::rat::Rat;
use crate::report::{CoefficientCheck, Counts, OracleRow, OracleTable};

fn counts(s: &WeightSample) -> Counts {
    Counts { h: s.h.to_string(), w: s.w.to_string(), w2: s.w2.to_string() }
}

fn cmp(name: &str, left: Q, right: Q) -> CoefficientCheck {
    CoefficientCheck { name: name.to_string(), equal: left == right, left: Rat(left), right: Rat(right) }
}

fn coefficient_pairs(a: &CoefficientBundle<Q>, b: &CoefficientBundle<Q>) -> Vec<CoefficientCheck> {
    [("a0", &a.a0, &b.a0), ("a1", &a.a1, &b.a1), ("b0", &a.b0, &b.b0), ("b1", &a.b1, &b.b1), ("d0", &a.d0, &b.d0)]
        .into_iter()
        .map(|(n, x, y)| cmp(&format!("{n}: path A vs path B"), x.clone(), y.clone()))
        .collect()
}

fn intersection_checks(model: &BlowupModel<Q>, c: &CoefficientBundle<Q>, out: &mut Vec<CoefficientCheck>) -> Result<(), Error> {
    let zero = ToricDivisor::zero(model.base().fan().rays().len());
    out.push(cmp("DF: coefficients vs intersection", df_untwisted(c), df_twisted_intersection(model, &zero)?));
    let n = model.base().dim();
    let r = Q::from_int(model.exponent() as i64);
    let rn = (0..n).fold(Q::from_int(1), |a, _| a * r.clone());
    let fact = (1..=n as i64).fold(Q::from_int(1), |a, i| a * Q::from_int(i));
    out.push(cmp("a0 vs r^n L^n / n!", c.a0.clone(), rn * model.base().degree()? / fact));
    Ok(())
}

pub fn oracle_table(p: &Problem, k_max: u64, warnings: &mut Vec<String>) -> Result<OracleTable, Error> {
    let n = p.x.dim();
    match &p.degeneration {
        Degeneration::Config(cfg) => {
            let Some(model) = bridge(cfg, warnings)? else {
                let plan = sampling_plan(cfg, k_max)?;
                let series = sample_config(cfg, &plan);
                let c = interpolate::<Q>(&series, n)?;
                let rows = series
                    .samples
                    .iter()
                    .map(|s| OracleRow { k: s.k, path_a: Some(counts(s)), path_b: None, equal: None })
                    .collect();
                let coefficients = vec![
                    cmp("DF vs 0", df_untwisted(&c), Q::from_int(0)),
                    cmp("min_norm (components) vs 0", min_norm_components(&cfg.central_components()?)?, Q::from_int(0)),
                ];
                return Ok(OracleTable { r: cfg.exponent(), rows, coefficients });
            };
            let r = model.exponent();
            let lifted = if r == cfg.exponent() {
                cfg.clone()
            } else {
                toric_config(cfg.base().clone(), cfg.function().clone(), cfg.ceiling().clone(), r)?
            };
            let plan = sampling_plan(&lifted, k_max)?;
            let a = sample_config(&lifted, &plan);
            let b = sample_blowup(&model, &plan)?;
            let rows = a
                .samples
                .iter()
                .zip(&b.samples)
                .map(|(x, y)| OracleRow { k: x.k, path_a: Some(counts(x)), path_b: Some(counts(y)), equal: Some(x == y) })
                .collect();
            let ca = interpolate::<Q>(&a, n)?;
            let cb = interpolate::<Q>(&b, n)?;
            let mut coefficients = coefficient_pairs(&ca, &cb);
            if model.is_semi_ample() {
                intersection_checks(&model, &cb, &mut coefficients)?;
                coefficients.push(cmp(
                    "min_norm: components vs intersection",
                    min_norm_components(&lifted.central_components()?)?,
                    min_norm_intersection(&model)?,
                ));
            } else {
                warnings.push("bridged model is not relatively semi-ample; intersection checks skipped".into());
            }
            Ok(OracleTable { r, rows, coefficients })
        }
        Degeneration::Flag(model) => {
            let plan = sampling_plan_blowup(model, k_max)?;
            let b = sample_blowup(model, &plan)?;
            let rows = b
                .samples
                .iter()
                .map(|s| OracleRow { k: s.k, path_a: None, path_b: Some(counts(s)), equal: None })
                .collect();
            let cb = interpolate::<Q>(&b, n)?;
            let mut coefficients = Vec::new();
            intersection_checks(model, &cb, &mut coefficients)?;
            Ok(OracleTable { r: model.exponent(), rows, coefficients })
        }
    }
}
