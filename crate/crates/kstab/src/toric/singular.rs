use crate::error::{Error, Result};
use crate::geometry::RationalPolytope;
use crate::linalg::{primitive, solve};
use crate::scalar::{dot, Field};

use super::fan::Fan;

/// Discrepancy `a(v) = sum lambda_i - 1` of the divisor of `v = sum lambda_i e_i`
/// over the smooth cone `cone` of `fan`.
pub fn discrepancy<F: Field>(v: &[F], fan: &Fan<F>, cone: usize) -> Result<F> {
    let c = fan.cones().get(cone).ok_or_else(|| Error::Invalid(format!("no cone {cone}")))?;
    let n = fan.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    if c.len() != n {
        return Err(Error::NonSmoothAmbient(cone));
    }
    let cols: Vec<Vec<F>> = (0..n).map(|k| c.iter().map(|&i| fan.rays()[i][k].clone()).collect()).collect();
    let lambda = solve(&cols, v).ok_or(Error::NonSmoothAmbient(cone))?;
    if lambda.iter().any(|l| !l.is_integral()) {
        return Err(Error::NonSmoothAmbient(cone));
    }
    if lambda.iter().any(|l| l.is_negative()) {
        return Err(Error::RayOutsideCone);
    }
    Ok(lambda.into_iter().fold(-F::one(), |a, b| a + b))
}

/// Facets `<lambda, x> >= b` of the Newton polyhedron `conv(exps) + R_{>=0}^n`,
/// all with `lambda >= 0`, computed on a truncation to a large box.
pub fn newton_facets<F: Field>(exps: &[Vec<F>]) -> Result<Vec<(Vec<F>, F)>> {
    Ok(newton_truncation(exps, None)?.0)
}

/// Facets and vertices of the Newton polyhedron, truncated at a level above
/// every coordinate of `exps` and of `beyond`.
pub(crate) fn newton_truncation<F: Field>(
    exps: &[Vec<F>],
    beyond: Option<&[F]>,
) -> Result<(Vec<(Vec<F>, F)>, Vec<Vec<F>>)> {
    let n = exps.first().ok_or(Error::EmptyIdeal)?.len();
    if exps.iter().any(|e| e.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: exps.iter().map(|e| e.len()).find(|&l| l != n).unwrap_or(n) });
    }
    let top = exps
        .iter()
        .flatten()
        .chain(beyond.into_iter().flatten())
        .max()
        .cloned()
        .unwrap_or_else(F::zero)
        .max(F::zero())
        + F::one();
    let mut pts = Vec::new();
    for e in exps {
        for mask in 0u32..(1 << n) {
            let p: Vec<F> = (0..n).map(|i| if mask & (1 << i) != 0 { top.clone() } else { e[i].clone() }).collect();
            pts.push(p);
        }
    }
    let hull = RationalPolytope::from_vertices(n, &pts)?;
    let facets = hull
        .halfspaces()
        .iter()
        .filter(|h| h.normal.iter().all(|c| !c.is_negative()))
        .map(|h| {
            let a = primitive(&h.normal);
            let scale = a.iter().zip(&h.normal).find(|(_, b)| !b.is_zero()).map(|(x, y)| x.clone() / y.clone());
            let b = h.offset.clone() * scale.unwrap_or_else(F::one);
            (a, b)
        })
        .collect();
    let vertices = hull.vertices().iter().filter(|v| v.iter().all(|c| *c < top)).cloned().collect();
    Ok((facets, vertices))
}

/// Whether `x` lies in `conv(exps) + R_{>=0}^n`.
pub fn newton_contains<F: Field>(exps: &[Vec<F>], x: &[F]) -> Result<bool> {
    let (facets, _) = newton_truncation(exps, Some(x))?;
    Ok(facets.iter().all(|(a, b)| dot(a, x) >= *b))
}

/// `sup {c : (1, ..., 1) ∈ c N}` for the Newton polyhedron `N` of a monomial ideal.
pub fn lct_newton<F: Field>(exps: &[Vec<F>]) -> Result<F> {
    let facets = newton_facets(exps)?;
    let mut t = F::zero();
    for (a, b) in &facets {
        let s = a.iter().fold(F::zero(), |x, y| x + y.clone());
        if b.is_positive() && s.is_positive() {
            t = t.max(b.clone() / s);
        }
    }
    if t.is_zero() {
        return Err(Error::Invalid("unit ideal has infinite log canonical threshold".into()));
    }
    Ok(F::one() / t)
}
