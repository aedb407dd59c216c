use crate::config::{config_to_flag, flag_blowup, toric_config, BlowupModel, ToricTestConfig};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Field};
use crate::toric::ToricDivisor;
use crate::weights::{interpolate, sample_blowup, sample_config, sampling_plan, sampling_plan_blowup, CoefficientBundle};

use super::coefficients::{
    df_twisted_coefficients, df_untwisted, l2_norm, min_norm_components, min_norm_j_l, tilde_a0_boundary,
    tilde_b0_boundary, tilde_b0_identity,
};
use super::intersection::{
    component_in_divisor, df_log, df_twisted_intersection, hat_a0, hat_b0, j_functional, min_norm_intersection,
    s_coefficient, uniform_margin,
};

/// How a reported value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// Interpolated from exact weight counts.
    Oracle,
    /// Toric intersection numbers on the blow-up.
    Intersection,
    /// Synthesized from other values through an identity.
    Identity,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Oracle => "oracle",
            Provenance::Intersection => "intersection",
            Provenance::Identity => "identity",
        }
    }
}

/// Minimum norm as computed by each available route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinNormRoutes<F> {
    pub components: Option<F>,
    pub j_l: Option<F>,
    pub intersection: Option<F>,
}

impl<F: Field> MinNormRoutes<F> {
    fn values(&self) -> Vec<(&'static str, &F)> {
        [("components", &self.components), ("J_L", &self.j_l), ("intersection", &self.intersection)]
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
            .collect()
    }
}

/// Twisting divisor `T` on `X` and optionally an invariant `D ∈ |2T|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twisting<F> {
    pub t: ToricDivisor<F>,
    pub d: Option<ToricDivisor<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport<F> {
    pub df_untwisted: F,
    pub df_twisted: Option<F>,
    pub df_log: Option<F>,
    pub min_norm: F,
    pub min_norm_routes: MinNormRoutes<F>,
    pub l2_norm: F,
    pub slope: F,
    pub uniform_margin: Option<F>,
    pub s_coefficient: Option<F>,
    pub component_in_divisor: Option<bool>,
    pub trivial: bool,
    pub coefficients: CoefficientBundle<F>,
    pub provenance: Vec<(String, Provenance)>,
    pub warnings: Vec<String>,
}

fn power<F: Field>(x: &F, e: usize) -> F {
    (0..e).fold(F::one(), |a, _| a * x.clone())
}

fn agree<F: Field>(what: &str, a: &F, b: &F) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::CrossCheck(format!("{what}: {a} != {b}")))
    }
}

/// Intersection-path values, rescaled from the exponent of `model` to `r`.
struct IntersectionSide<F> {
    df: F,
    min_norm: F,
    j_l: F,
    df_twisted: Option<F>,
    hat_b0: Option<F>,
    df_log: Option<F>,
    contained: Option<bool>,
    s: F,
}

fn intersection_side<F: Field>(model: &BlowupModel<F>, r: u64, twist: Option<&Twisting<F>>) -> Result<IntersectionSide<F>> {
    let n = model.base().dim();
    let ratio = F::from_int(r as i64) / F::from_int(model.exponent() as i64);
    let s_n = power(&ratio, n);
    let s_n1 = s_n.clone() * ratio.clone();
    let zero = ToricDivisor::zero(model.base().fan().rays().len());
    let lr = model.base().polarization().scale(&F::from_int(model.exponent() as i64));
    let mut side = IntersectionSide {
        df: df_twisted_intersection(model, &zero)? * s_n.clone(),
        min_norm: min_norm_intersection(model)? * s_n1.clone(),
        j_l: j_functional(model, &lr)? * s_n1,
        df_twisted: None,
        hat_b0: None,
        df_log: None,
        contained: None,
        s: s_coefficient(model)?,
    };
    if let Some(tw) = twist {
        side.df_twisted = Some(df_twisted_intersection(model, &tw.t)? * s_n.clone());
        side.hat_b0 = Some(hat_b0(model, &tw.t)? * s_n.clone());
        if let Some(d) = &tw.d {
            side.df_log = Some(df_log(model, &tw.t, d)? * s_n);
            side.contained = Some(component_in_divisor(model, d)?);
        }
    }
    Ok(side)
}

/// Shared tail: twisted values, margins and the runtime assertions.
fn finish<F: Field>(
    mut rep: InvariantReport<F>,
    side: Option<IntersectionSide<F>>,
    twist: Option<&Twisting<F>>,
    hat_a0: Option<F>,
    trivial_flag: bool,
) -> Result<InvariantReport<F>> {
    if let Some(side) = side {
        agree("DF coefficient form vs intersection", &rep.df_untwisted, &side.df)?;
        agree("J_L vs intersection minimum norm", &side.j_l, &side.min_norm)?;
        rep.min_norm_routes.intersection = Some(side.min_norm);
        rep.provenance.push(("min_norm.intersection".into(), Provenance::Intersection));
        rep.s_coefficient = Some(side.s);
        rep.provenance.push(("s_coefficient".into(), Provenance::Intersection));
        if rep.min_norm_routes.j_l.is_none() {
            rep.min_norm_routes.j_l = Some(side.j_l);
            rep.provenance.push(("min_norm.J_L".into(), Provenance::Intersection));
        }
        rep.df_twisted = side.df_twisted;
        rep.df_log = side.df_log;
        rep.component_in_divisor = side.contained;
        rep.coefficients.hat_b0 = side.hat_b0;
        rep.coefficients.hat_a0 = hat_a0.filter(|_| twist.is_some());
        if let Some(dt) = &rep.df_twisted {
            rep.provenance.push(("df_twisted".into(), Provenance::Intersection));
            let coeff = df_twisted_coefficients(&rep.coefficients).expect("hat coefficients set");
            agree("twisted DF coefficient form vs intersection", &coeff, dt)?;
        }
        if rep.df_log.is_some() {
            rep.provenance.push(("df_log".into(), Provenance::Intersection));
        }
    } else if twist.is_some() {
        rep.warnings.push("twisted invariants need the intersection path, which is unavailable here".into());
    }

    let routes = rep.min_norm_routes.values();
    let (first_name, first) = routes[0];
    for (name, v) in &routes[1..] {
        agree(&format!("min_norm {first_name} vs {name}"), first, v)?;
    }
    rep.min_norm = first.clone();

    let m_zero = rep.min_norm.is_zero();
    if m_zero != rep.l2_norm.is_zero() || m_zero != trivial_flag {
        return Err(Error::CrossCheck(format!(
            "triviality: min_norm = {}, l2 = {}, trivial = {trivial_flag}",
            rep.min_norm, rep.l2_norm
        )));
    }
    if rep.min_norm.is_negative() || rep.l2_norm.is_negative() {
        return Err(Error::CrossCheck("negative norm".into()));
    }
    rep.trivial = trivial_flag;
    if trivial_flag {
        rep.warnings.push("trivial test configuration".into());
    } else {
        let df = rep.df_twisted.clone().unwrap_or_else(|| rep.df_untwisted.clone());
        rep.uniform_margin = Some(uniform_margin(&df, &rep.min_norm)?);
    }
    Ok(rep)
}

fn base_report<F: Field>(c: CoefficientBundle<F>, slope: F) -> InvariantReport<F> {
    InvariantReport {
        df_untwisted: df_untwisted(&c),
        df_twisted: None,
        df_log: None,
        min_norm: F::zero(),
        min_norm_routes: MinNormRoutes { components: None, j_l: None, intersection: None },
        l2_norm: l2_norm(&c),
        slope,
        uniform_margin: None,
        s_coefficient: None,
        component_in_divisor: None,
        trivial: false,
        coefficients: c,
        provenance: vec![
            ("df_untwisted".into(), Provenance::Oracle),
            ("l2_norm".into(), Provenance::Oracle),
        ],
        warnings: Vec::new(),
    }
}

fn slope_for<F: Field>(x: &crate::toric::PolarizedToric<F>, r: u64, twist: Option<&Twisting<F>>) -> Result<F> {
    let t = twist.map(|tw| tw.t.clone()).unwrap_or_else(|| ToricDivisor::zero(x.fan().rays().len()));
    Ok(x.twisted_slope(&t)?.mu / F::from_int(r as i64))
}

fn hat_a0_direct<F: Field>(x: &crate::toric::PolarizedToric<F>, r: u64, t: &ToricDivisor<F>) -> Result<F> {
    let n = x.dim();
    Ok(power(&F::from_int(r as i64), n - 1) * x.dot_l(t)? / factorial::<F>(n - 1))
}

/// All invariants of a toric test configuration, by lattice counting and,
/// when the configuration bridges to a flag ideal, by intersection theory.
pub fn evaluate_config<F: Field>(cfg: &ToricTestConfig<F>, twist: Option<&Twisting<F>>, k_max: u64) -> Result<InvariantReport<F>> {
    let n = cfg.dim();
    let plan = sampling_plan(cfg, k_max)?;
    let mut c = interpolate::<F>(&sample_config(cfg, &plan), n)?;
    c.components = cfg.central_components()?;
    let ta0 = F::from_int(n as i64) * c.a0.clone();
    agree("ã0 = n a0", &tilde_a0_boundary(cfg)?, &ta0)?;
    let per = tilde_b0_identity(&c.components, n);
    for (j, (a, b)) in per.iter().zip(tilde_b0_boundary(cfg)?).enumerate() {
        agree(&format!("b̃0 of component {j}"), a, &b)?;
    }
    c.tilde_a0 = Some(ta0);
    c.tilde_b0 = Some(per.into_iter().fold(F::zero(), |a, b| a + b));

    let slope = slope_for(cfg.base(), cfg.exponent(), twist)?;
    let mut rep = base_report(c, slope);
    rep.min_norm_routes.components = Some(min_norm_components(&rep.coefficients.components)?);
    rep.min_norm_routes.j_l = Some(min_norm_j_l(&rep.coefficients.components, n)?);
    rep.provenance.push(("min_norm.components".into(), Provenance::Oracle));
    rep.provenance.push(("min_norm.J_L".into(), Provenance::Identity));

    let side = if cfg.is_trivial() {
        None
    } else {
        let bridged = match config_to_flag(cfg) {
            Ok(fl) => Some((fl, cfg.exponent())),
            Err(Error::NonIntegralSlopes { required_r }) => {
                let lifted = toric_config(cfg.base().clone(), cfg.function().clone(), cfg.ceiling().clone(), required_r)?;
                rep.warnings.push(format!("intersection path evaluated at r = {required_r} and rescaled"));
                Some((config_to_flag(&lifted)?, required_r))
            }
            Err(e) => return Err(e),
        };
        match bridged {
            Some((fl, r)) => {
                let model = flag_blowup(cfg.base(), &fl, r)?;
                if model.is_semi_ample() {
                    Some(intersection_side(&model, cfg.exponent(), twist)?)
                } else {
                    rep.warnings.push("bridged model is not relatively semi-ample".into());
                    None
                }
            }
            None => None,
        }
    };
    let ha0 = match twist {
        Some(tw) => Some(hat_a0_direct(cfg.base(), cfg.exponent(), &tw.t)?),
        None => None,
    };
    finish(rep, side, twist, ha0, cfg.is_trivial())
}

/// All invariants of a flag-ideal blow-up: counts on the blow-up and
/// intersection numbers. The model must be relatively semi-ample.
pub fn evaluate_flag<F: Field>(model: &BlowupModel<F>, twist: Option<&Twisting<F>>, k_max: u64) -> Result<InvariantReport<F>> {
    let n = model.base().dim();
    let plan = sampling_plan_blowup(model, k_max)?;
    let mut c = interpolate::<F>(&sample_blowup(model, &plan)?, n)?;
    c.tilde_a0 = Some(F::from_int(n as i64) * c.a0.clone());
    c.tilde_b0 = Some(model.power_dot(model.l())? / factorial::<F>(n));
    let slope = slope_for(model.base(), model.exponent(), twist)?;
    let mut rep = base_report(c, slope);
    if !model.non_closed_levels().is_empty() {
        rep.warnings.push(format!("levels {:?} replaced by their integral closures", model.non_closed_levels()));
    }
    let side = intersection_side(model, model.exponent(), twist)?;
    let ha0 = match twist {
        Some(tw) => Some(hat_a0(model, &tw.t)?),
        None => None,
    };
    finish(rep, Some(side), twist, ha0, false)
}
