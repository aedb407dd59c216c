use crate::config::BlowupModel;
use crate::error::{Error, Result};
use crate::scalar::{factorial, Field};
use crate::toric::ToricDivisor;

/// Constant relating the intersection expression to the coefficient form: `2 n!`.
pub fn normalization<F: Field>(n: usize) -> F {
    F::from_int(2) * factorial::<F>(n)
}

fn require_semi_ample<F: Field>(model: &BlowupModel<F>) -> Result<()> {
    if model.is_semi_ample() {
        Ok(())
    } else {
        Err(Error::NotSemiAmple)
    }
}

/// `[(n/(n+1)) μ (L^r - E)^(n+1) + (L^r - E)^n (K_X + 2T + K_rel)] / c_n`,
/// with `μ = μ(X, L^r, T)`.
pub fn df_twisted_intersection<F: Field>(model: &BlowupModel<F>, t: &ToricDivisor<F>) -> Result<F> {
    require_semi_ample(model)?;
    let x = model.base();
    let n = x.dim();
    let r = F::from_int(model.exponent() as i64);
    let mu = x.twisted_slope(t)?.mu / r;
    let le = model.l() - model.e();
    let top = model.power_dot(&le)?;
    let tt = model.pullback(t)?.scale(&F::from_int(2));
    let w = &(model.k_x() + &tt) + model.k_rel();
    let nf = F::from_int(n as i64);
    let value = nf.clone() / (nf + F::one()) * mu * top + model.power_dot(&w)?;
    Ok(value / normalization::<F>(n))
}

/// `J_T = DF(T) - DF(0)`.
pub fn j_functional<F: Field>(model: &BlowupModel<F>, t: &ToricDivisor<F>) -> Result<F> {
    let zero = ToricDivisor::zero(t.coeffs.len());
    Ok(df_twisted_intersection(model, t)? - df_twisted_intersection(model, &zero)?)
}

/// `(L^r - E)^n (L^r + n E) / ((n + 1) n!)`.
pub fn min_norm_intersection<F: Field>(model: &BlowupModel<F>) -> Result<F> {
    require_semi_ample(model)?;
    let n = model.base().dim();
    let nf = F::from_int(n as i64);
    let w = model.l() + &model.e().scale(&nf);
    Ok(model.power_dot(&w)? / ((nf + F::one()) * factorial::<F>(n)))
}

/// `b̂0 = (L^r - E)^n · T / n!` for the pullback of `T`.
pub fn hat_b0<F: Field>(model: &BlowupModel<F>, t: &ToricDivisor<F>) -> Result<F> {
    require_semi_ample(model)?;
    Ok(model.power_dot(&model.pullback(t)?)? / factorial::<F>(model.base().dim()))
}

/// `â0 = T · (L^r)^(n-1) / (n-1)!`.
pub fn hat_a0<F: Field>(model: &BlowupModel<F>, t: &ToricDivisor<F>) -> Result<F> {
    let x = model.base();
    let n = x.dim();
    let r = F::from_int(model.exponent() as i64);
    let rn1 = (1..n).fold(F::one(), |a, _| a * r.clone());
    Ok(rn1 * x.dot_l(t)? / factorial::<F>(n - 1))
}

/// Multiplicity of the pullback of `D × P^1` along each exceptional divisor.
pub fn exceptional_multiplicities<F: Field>(model: &BlowupModel<F>, d: &ToricDivisor<F>) -> Result<Vec<F>> {
    let pulled = model.pullback(d)?;
    Ok(model.exceptional().iter().map(|e| pulled.coeffs[e.index].clone()).collect())
}

/// Whether some exceptional divisor of the blow-up has its centre inside `D`:
/// an exceptional ray along which the pullback of `D` has positive multiplicity.
/// Every exceptional ray is a facet normal of a Newton polyhedron of the flag,
/// so each one corresponds to a component of the flag ideal.
pub fn component_in_divisor<F: Field>(model: &BlowupModel<F>, d: &ToricDivisor<F>) -> Result<bool> {
    Ok(exceptional_multiplicities(model, d)?.iter().any(|m| m.is_positive()))
}

/// Log DF of `(X, D)` for a torus-invariant `D ∈ |2T|`:
/// `DF(T) - (L^r - E)^n (2T - D') / c_n`, where `D'` is the proper transform
/// of `D × P^1` and `2T - D'` is the exceptional part of the pullback of `D`.
pub fn df_log<F: Field>(model: &BlowupModel<F>, t: &ToricDivisor<F>, d: &ToricDivisor<F>) -> Result<F> {
    let m = model.base().fan().rays().len();
    if d.coeffs.len() != m || t.coeffs.len() != m {
        return Err(Error::NotInvariant);
    }
    if d.coeffs.iter().any(|c| c.is_negative()) {
        return Err(Error::Invalid("D must be effective".into()));
    }
    if !model.base().fan().is_principal(&(&t.scale(&F::from_int(2)) - d))? {
        return Err(Error::NotInLinearSystem);
    }
    let mut exc = ToricDivisor::zero(model.fan().rays().len());
    for (e, mult) in model.exceptional().iter().zip(exceptional_multiplicities(model, d)?) {
        exc.coeffs[e.index] = mult;
    }
    let n = model.base().dim();
    Ok(df_twisted_intersection(model, t)? - model.power_dot(&exc)? / normalization::<F>(n))
}

/// Dimension of the cosupport of the flag ideal in `X`: the largest orbit
/// closure on which every generator of the first level vanishes.
pub fn support_dimension<F: Field>(model: &BlowupModel<F>) -> usize {
    let x = model.base().fan();
    let n = x.dim();
    let gens = &model.flag().levels()[0];
    let mut best = None;
    for cone in x.cones() {
        let k = cone.len();
        for mask in 0u32..(1 << k) {
            let s: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| cone[i]).collect();
            if gens.iter().all(|g| s.iter().any(|&i| g[i].is_positive())) {
                let dim = n - s.len();
                best = Some(best.map_or(dim, |b: usize| b.max(dim)));
            }
        }
    }
    best.unwrap_or(0)
}

/// `S = L^s · (-E)^(n-s) · K_rel` with `s` the dimension of the cosupport.
pub fn s_coefficient<F: Field>(model: &BlowupModel<F>) -> Result<F> {
    let n = model.base().dim();
    let s = support_dimension(model);
    let mut cartier = vec![model.l().clone(); s];
    cartier.extend(std::iter::repeat_n(-model.e(), n - s));
    model.intersect(&cartier, model.k_rel())
}

/// `DF / ‖X‖_m`.
pub fn uniform_margin<F: Field>(df: &F, min_norm: &F) -> Result<F> {
    if min_norm.is_zero() {
        return Err(Error::TrivialConfiguration);
    }
    Ok(df.clone() / min_norm.clone())
}
