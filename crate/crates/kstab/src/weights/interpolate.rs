use num_bigint::BigInt;
use rayon::prelude::*;

use crate::config::{BlowupModel, Component, ToricTestConfig};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::scalar::Field;
use crate::toric::ToricDivisor;

use super::count::{tally, tally_restricted, RestrictedSample, WeightSample, WeightSource};

/// Default cap on sampled `k`, overridable by the caller.
pub const DEFAULT_K_MAX: u64 = 64;

/// Samples of `(h, w, w2)` at strictly increasing `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledSeries {
    pub samples: Vec<WeightSample>,
    pub source: String,
}

/// Exact leading coefficients of the Hilbert and weight polynomials.
///
/// `h(k) = a0 k^n + a1 k^(n-1) + ...`, `w(k) = b0 k^(n+1) + b1 k^n + ...`,
/// `w2(k) = d0 k^(n+2) + ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientBundle<F> {
    pub a0: F,
    pub a1: F,
    pub b0: F,
    pub b1: F,
    pub d0: F,
    pub hat_a0: Option<F>,
    pub hat_b0: Option<F>,
    pub tilde_a0: Option<F>,
    pub tilde_b0: Option<F>,
    pub components: Vec<Component<F>>,
}

/// Leading coefficients of `h_D(k) = a0 k^(n-1) + ...` and `w_D(k) = b0 k^n + ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedCoefficients<F> {
    pub a0: F,
    pub b0: F,
}

/// Which `k` to sample: `step, 2 step, ..., count * step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingPlan {
    pub step: u64,
    pub count: u64,
}

impl SamplingPlan {
    pub fn ks(&self) -> Vec<u64> {
        (1..=self.count).map(|i| i * self.step).collect()
    }
}

/// `n + 5` multiples of the period, enough for a degree `n + 2` fit and
/// two held-out checks.
pub(crate) fn plan_for<F: Field, S: WeightSource<F>>(src: &S, k_max: u64) -> Result<SamplingPlan> {
    let step = src.step()?;
    let count = src.base().dim() as u64 + 5;
    if step * count > k_max {
        return Err(Error::InsufficientSamples { need: count as usize, got: (k_max / step) as usize });
    }
    Ok(SamplingPlan { step, count })
}

pub fn sampling_plan<F: Field>(cfg: &ToricTestConfig<F>, k_max: u64) -> Result<SamplingPlan> {
    plan_for(cfg, k_max)
}

pub fn sampling_plan_blowup<F: Field>(model: &BlowupModel<F>, k_max: u64) -> Result<SamplingPlan> {
    plan_for(model, k_max)
}

fn sample<F: Field, S: WeightSource<F>>(src: &S, plan: &SamplingPlan, source: &str) -> SampledSeries {
    let samples = plan.ks().into_par_iter().map(|k| tally(src, k)).collect();
    SampledSeries { samples, source: source.to_string() }
}

pub fn sample_config<F: Field>(cfg: &ToricTestConfig<F>, plan: &SamplingPlan) -> SampledSeries {
    sample(cfg, plan, "toric configuration")
}

pub fn sample_blowup<F: Field>(model: &BlowupModel<F>, plan: &SamplingPlan) -> Result<SampledSeries> {
    if !model.is_semi_ample() {
        return Err(Error::NotSemiAmple);
    }
    Ok(sample(model, plan, "flag blow-up"))
}

pub(crate) fn sample_restricted<F: Field, S: WeightSource<F>>(
    src: &S,
    plan: &SamplingPlan,
    d: &ToricDivisor<F>,
) -> Result<Vec<RestrictedSample>> {
    plan.ks().into_par_iter().map(|k| tally_restricted(src, k, d)).collect()
}

pub fn sample_config_restricted<F: Field>(
    cfg: &ToricTestConfig<F>,
    plan: &SamplingPlan,
    d: &ToricDivisor<F>,
) -> Result<Vec<RestrictedSample>> {
    sample_restricted(cfg, plan, d)
}

pub fn sample_blowup_restricted<F: Field>(
    model: &BlowupModel<F>,
    plan: &SamplingPlan,
    d: &ToricDivisor<F>,
) -> Result<Vec<RestrictedSample>> {
    if !model.is_semi_ample() {
        return Err(Error::NotSemiAmple);
    }
    sample_restricted(model, plan, d)
}

/// Exact polynomial of degree `deg` through the first `deg + 1` points,
/// checked on at least two further points. Coefficients from the top degree down.
pub fn fit_polynomial<F: Field>(points: &[(u64, BigInt)], deg: usize, series: &'static str) -> Result<Vec<F>> {
    let need = deg + 3;
    if points.len() < need {
        return Err(Error::InsufficientSamples { need, got: points.len() });
    }
    for w in points.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(Error::Invalid("sample k values must increase".into()));
        }
    }
    let rows: Vec<Vec<F>> = points[..=deg]
        .iter()
        .map(|(k, _)| {
            let kf = F::from_int(*k as i64);
            (0..=deg).map(|p| (0..deg - p).fold(F::one(), |a, _| a * kf.clone())).collect()
        })
        .collect();
    let rhs: Vec<F> = points[..=deg].iter().map(|(_, y)| F::from_bigint(y)).collect();
    let coeffs = solve(&rows, &rhs).ok_or(Error::Invalid("degenerate sample set".into()))?;
    for (k, y) in &points[deg + 1..] {
        let kf = F::from_int(*k as i64);
        let val = coeffs.iter().fold(F::zero(), |acc, c| acc * kf.clone() + c.clone());
        if val != F::from_bigint(y) {
            return Err(Error::NotPolynomial { series, k: *k });
        }
    }
    Ok(coeffs)
}

fn coeff<F: Field>(c: &[F], i: usize) -> F {
    c.get(i).cloned().unwrap_or_else(F::zero)
}

/// Fits `h`, `w`, `w2` with degrees `n`, `n + 1`, `n + 2`.
pub fn interpolate<F: Field>(series: &SampledSeries, n: usize) -> Result<CoefficientBundle<F>> {
    let pick = |f: fn(&WeightSample) -> &BigInt| -> Vec<(u64, BigInt)> {
        series.samples.iter().map(|s| (s.k, f(s).clone())).collect()
    };
    let h = fit_polynomial::<F>(&pick(|s| &s.h), n, "h")?;
    let w = fit_polynomial::<F>(&pick(|s| &s.w), n + 1, "w")?;
    let w2 = fit_polynomial::<F>(&pick(|s| &s.w2), n + 2, "w2")?;
    Ok(CoefficientBundle {
        a0: coeff(&h, 0),
        a1: coeff(&h, 1),
        b0: coeff(&w, 0),
        b1: coeff(&w, 1),
        d0: coeff(&w2, 0),
        hat_a0: None,
        hat_b0: None,
        tilde_a0: None,
        tilde_b0: None,
        components: Vec::new(),
    })
}

/// Fits `h_D` and `w_D` with degrees `n - 1` and `n`.
pub fn interpolate_restricted<F: Field>(samples: &[RestrictedSample], n: usize) -> Result<RestrictedCoefficients<F>> {
    let h: Vec<(u64, BigInt)> = samples.iter().map(|s| (s.k, s.h.clone())).collect();
    let w: Vec<(u64, BigInt)> = samples.iter().map(|s| (s.k, s.w.clone())).collect();
    let hc = fit_polynomial::<F>(&h, n - 1, "h_D")?;
    let wc = fit_polynomial::<F>(&w, n, "w_D")?;
    Ok(RestrictedCoefficients { a0: coeff(&hc, 0), b0: coeff(&wc, 0) })
}
