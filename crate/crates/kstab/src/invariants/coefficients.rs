use crate::config::{Component, ToricTestConfig};
use crate::error::{Error, Result};
use crate::scalar::{dot, Field};
use crate::toric::facets;
use crate::weights::CoefficientBundle;

fn sum<F: Field>(it: impl Iterator<Item = F>) -> F {
    it.fold(F::zero(), |a, b| a + b)
}

/// `DF = (b0 a1 - b1 a0) / a0`.
pub fn df_untwisted<F: Field>(c: &CoefficientBundle<F>) -> F {
    (c.b0.clone() * c.a1.clone() - c.b1.clone() * c.a0.clone()) / c.a0.clone()
}

/// `‖X‖_2 = d0 - b0² / a0`.
pub fn l2_norm<F: Field>(c: &CoefficientBundle<F>) -> F {
    c.d0.clone() - c.b0.clone() * c.b0.clone() / c.a0.clone()
}

/// `Σ_j (b0j - λ_j a0j)`.
pub fn min_norm_components<F: Field>(components: &[Component<F>]) -> Result<F> {
    if components.is_empty() {
        return Err(Error::MissingComponents);
    }
    Ok(sum(components.iter().map(|c| c.b0.clone() - c.lambda.clone() * c.a0.clone())))
}

/// Per-component `b̃0j = (n + 1) b0j - λ_j a0j`.
pub fn tilde_b0_identity<F: Field>(components: &[Component<F>], n: usize) -> Vec<F> {
    let n1 = F::from_int(n as i64 + 1);
    components.iter().map(|c| n1.clone() * c.b0.clone() - c.lambda.clone() * c.a0.clone()).collect()
}

/// `(b̃0 a0 - b0 ã0) / a0` with `ã0 = n a0` and `b̃0` summed from the
/// per-component identity.
pub fn min_norm_j_l<F: Field>(components: &[Component<F>], n: usize) -> Result<F> {
    if components.is_empty() {
        return Err(Error::MissingComponents);
    }
    let a0 = sum(components.iter().map(|c| c.a0.clone()));
    let b0 = sum(components.iter().map(|c| c.b0.clone()));
    let tb0 = sum(tilde_b0_identity(components, n).into_iter());
    let ta0 = F::from_int(n as i64) * a0.clone();
    Ok((tb0 * a0.clone() - b0 * ta0) / a0)
}

/// `b̃0j` as a boundary integral: `r^(n+1) Σ_F h_F(x*) ∫_F (-f) dσ` over the
/// facets of each cell, with `x*` a vertex of `P` maximizing the cell's
/// affine piece and `h_F` the signed distance of `x*` to `F` in the facet's
/// own normalization.
pub fn tilde_b0_boundary<F: Field>(cfg: &ToricTestConfig<F>) -> Result<Vec<F>> {
    let n = cfg.dim();
    let r = F::from_int(cfg.exponent() as i64);
    let scale = (0..=n).fold(F::one(), |a, _| a * r.clone());
    let f = cfg.function();
    let mut out = Vec::new();
    for cell in f.regular_subdivision()?.cells {
        let piece = &f.pieces()[cell.piece];
        let p = &cell.polytope;
        let top = cfg.base().moment_polytope().vertices().iter().max_by_key(|v| piece.eval(v)).expect("nonempty").clone();
        let neg: Vec<F> = piece.gradient.iter().map(|g| -g.clone()).collect();
        let mut total = F::zero();
        for h in facets(p)? {
            let dist = dot(&h.normal, &top) - h.offset.clone();
            if dist.is_zero() {
                continue;
            }
            total = total + dist * p.section_integral(&h.normal, &h.offset, &neg, &-piece.constant.clone());
        }
        out.push(scale.clone() * total);
    }
    Ok(out)
}

/// `ã0` as the boundary count `Σ_F h_F(0) vol(F)` of `r P`.
pub fn tilde_a0_boundary<F: Field>(cfg: &ToricTestConfig<F>) -> Result<F> {
    let p = cfg.base().moment_polytope();
    let n = cfg.dim();
    let r = F::from_int(cfg.exponent() as i64);
    let scale = (0..n).fold(F::one(), |a, _| a * r.clone());
    let origin = vec![F::zero(); n];
    let mut total = F::zero();
    for h in facets(p)? {
        total = total + (dot(&h.normal, &origin) - h.offset.clone()) * p.section_volume(&h.normal, &h.offset);
    }
    Ok(scale * total)
}

/// `DF + (b̂0 a0 - b0 â0) / a0`.
pub fn df_twisted_coefficients<F: Field>(c: &CoefficientBundle<F>) -> Option<F> {
    let (ha0, hb0) = (c.hat_a0.clone()?, c.hat_b0.clone()?);
    Some(df_untwisted(c) + (hb0 * c.a0.clone() - c.b0.clone() * ha0) / c.a0.clone())
}
