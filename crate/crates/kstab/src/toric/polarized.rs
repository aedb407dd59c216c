use crate::error::{Error, Result};
use crate::geometry::{mixed_volume, sub, Halfspace, RationalPolytope};
use crate::linalg::{primitive, rank};
use crate::scalar::{dot, factorial, Field};

use super::fan::{Fan, ToricDivisor};

/// Polarized complete toric variety `(X, L)` with its moment polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedToric<F> {
    fan: Fan<F>,
    l: ToricDivisor<F>,
    polytope: RationalPolytope<F>,
}

/// Twisted slope `mu = (-K - 2T) · L^(n-1) / L^n` and `C_alpha = n mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slope<F> {
    pub mu: F,
    pub c_alpha: F,
}

/// Facets of a full-dimensional polytope as (primitive inward normal, offset),
/// in order of first appearance among its halfspaces.
pub(crate) fn facets<F: Field>(p: &RationalPolytope<F>) -> Result<Vec<Halfspace<F>>> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let mut out: Vec<Halfspace<F>> = Vec::new();
    for h in p.halfspaces() {
        let n = primitive(&h.normal);
        let scale = n.iter().zip(&h.normal).find(|(_, b)| !b.is_zero()).map(|(a, b)| a.clone() / b.clone());
        let Some(scale) = scale else { continue };
        let offset = h.offset.clone() * scale;
        let tight: Vec<&Vec<F>> = p.vertices().iter().filter(|v| dot(&n, v) == offset).collect();
        let diffs: Vec<Vec<F>> = tight.iter().skip(1).map(|v| sub(v, tight[0])).collect();
        if tight.len() >= p.dim() && rank(&diffs) == p.dim() - 1 && !out.iter().any(|f| f.normal == n) {
            out.push(Halfspace::new(n, offset));
        }
    }
    Ok(out)
}

/// Normal fan of a full-dimensional polytope: inward primitive facet normals,
/// one maximal cone per vertex.
pub fn normal_fan<F: Field>(p: &RationalPolytope<F>) -> Result<Fan<F>> {
    let fs = facets(p)?;
    let cones = p
        .vertices()
        .iter()
        .map(|v| (0..fs.len()).filter(|&i| fs[i].slack(v).is_zero()).collect())
        .collect();
    Fan::new(p.dim(), fs.into_iter().map(|h| h.normal).collect(), cones)
}

impl<F: Field> PolarizedToric<F> {
    /// Toric variety of a lattice polytope, polarized by the polytope itself.
    pub fn from_polytope(p: &RationalPolytope<F>) -> Result<Self> {
        let fs = facets(p)?;
        let fan = normal_fan(p)?;
        let l = ToricDivisor::new(fs.iter().map(|h| -h.offset.clone()).collect());
        let polytope = fan.polytope(&l)?;
        Ok(PolarizedToric { fan, l, polytope })
    }

    /// `(X, L)` from a complete fan and an ample divisor.
    pub fn new(fan: Fan<F>, l: ToricDivisor<F>) -> Result<Self> {
        if !fan.is_ample(&l)? {
            return Err(Error::Invalid("polarization is not ample".into()));
        }
        let polytope = fan.polytope(&l)?;
        Ok(PolarizedToric { fan, l, polytope })
    }

    pub fn fan(&self) -> &Fan<F> {
        &self.fan
    }

    pub fn polarization(&self) -> &ToricDivisor<F> {
        &self.l
    }

    pub fn moment_polytope(&self) -> &RationalPolytope<F> {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    /// Same variety polarized by `L^r`.
    pub fn with_power(&self, r: &F) -> Self {
        PolarizedToric { fan: self.fan.clone(), l: self.l.scale(r), polytope: self.polytope.scaled(r) }
    }

    /// `D_1 ⋯ D_n` with each `D_i = (D_i + m_i L) - m_i L` expanded and each
    /// nef product evaluated as `n! MV(P_1, ..., P_n)`.
    pub fn intersection_number(&self, divisors: &[ToricDivisor<F>]) -> Result<F> {
        let n = self.dim();
        if divisors.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: divisors.len() });
        }
        let mut parts = Vec::with_capacity(n);
        for d in divisors {
            let m = self.fan.nef_shift(d, &self.l)?;
            let a = d + &self.l.scale(&m);
            parts.push((self.fan.polytope(&a)?, m));
        }
        let pl = self.polytope.clone();
        let mut total = F::zero();
        for mask in 0u32..(1 << n) {
            let mut coeff = F::one();
            let mut ps = Vec::with_capacity(n);
            for (i, (pa, m)) in parts.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    ps.push(pa.clone());
                } else {
                    coeff = coeff * (-m.clone());
                    ps.push(pl.clone());
                }
            }
            if coeff.is_zero() {
                continue;
            }
            total = total + coeff * mixed_volume(&ps)?;
        }
        Ok(total * factorial::<F>(n))
    }

    /// `L^n`.
    pub fn degree(&self) -> Result<F> {
        self.intersection_number(&vec![self.l.clone(); self.dim()])
    }

    /// `D · L^(n-1)`.
    pub fn dot_l(&self, d: &ToricDivisor<F>) -> Result<F> {
        let mut ds = vec![self.l.clone(); self.dim()];
        ds[0] = d.clone();
        self.intersection_number(&ds)
    }

    pub fn twisted_slope(&self, t: &ToricDivisor<F>) -> Result<Slope<F>> {
        let k = self.fan.canonical_divisor();
        let num = &(-&k) - &t.scale(&F::from_int(2));
        let mu = self.dot_l(&num)? / self.degree()?;
        let c_alpha = mu.clone() * F::from_int(self.dim() as i64);
        Ok(Slope { mu, c_alpha })
    }
}

pub fn twisted_slope<F: Field>(x: &PolarizedToric<F>, t: &ToricDivisor<F>) -> Result<Slope<F>> {
    x.twisted_slope(t)
}
