use num_bigint::BigInt;
use num_traits::Zero;

use crate::config::{BlowupModel, ToricTestConfig};
use crate::error::{Error, Result};
use crate::geometry::Halfspace;
use crate::scalar::{dot, lcm_denoms, Field};
use crate::toric::{PolarizedToric, ToricDivisor};

/// `h(k)`, `w(k) = tr A_k` and `w2(k) = tr A_k^2` at one `k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightSample {
    pub k: u64,
    pub h: BigInt,
    pub w: BigInt,
    pub w2: BigInt,
}

/// `h_D(k)` and `w_D(k)` over the sections restricted to a torus-invariant `D`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RestrictedSample {
    pub k: u64,
    pub h: BigInt,
    pub w: BigInt,
}

/// Weight of the section `u` of `L^(kr)` on the central fibre.
pub(crate) trait WeightSource<F: Field>: Sync {
    fn base(&self) -> &PolarizedToric<F>;
    fn exponent(&self) -> u64;
    /// Weight function for the given `k`.
    fn weigher(&self, k: u64) -> Box<dyn Fn(&[F]) -> BigInt + '_>;
    /// `lcm` of the vertex denominators of the polytope whose lattice
    /// points encode the weights.
    fn step(&self) -> Result<u64>;
}

impl<F: Field> WeightSource<F> for ToricTestConfig<F> {
    fn base(&self) -> &PolarizedToric<F> {
        ToricTestConfig::base(self)
    }

    fn exponent(&self) -> u64 {
        ToricTestConfig::exponent(self)
    }

    fn weigher(&self, k: u64) -> Box<dyn Fn(&[F]) -> BigInt + '_> {
        let g = self.function().dilated(&F::from_int((k * self.exponent()) as i64));
        Box::new(move |u| -g.eval(u).ceil_bigint())
    }

    fn step(&self) -> Result<u64> {
        let q = self.lifted_polytope()?.scaled(&F::from_int(self.exponent() as i64));
        to_u64(lcm_denoms(q.vertices().iter().flatten()))
    }
}

impl<F: Field> WeightSource<F> for BlowupModel<F> {
    fn base(&self) -> &PolarizedToric<F> {
        BlowupModel::base(self)
    }

    fn exponent(&self) -> u64 {
        BlowupModel::exponent(self)
    }

    fn weigher(&self, k: u64) -> Box<dyn Fn(&[F]) -> BigInt + '_> {
        let kf = F::from_int(k as i64);
        let n = self.base().dim();
        let rays = upper_rays(self);
        let floor = (kf.clone() * self.n0().clone()).ceil_bigint();
        Box::new(move |u| {
            let mut j = BigInt::zero();
            for (v, w, c) in &rays {
                let need = ((kf.clone() * c.clone() - dot(&v[..n], u)) / w.clone()).ceil_bigint();
                if need > j {
                    j = need;
                }
            }
            floor.clone() - j
        })
    }

    fn step(&self) -> Result<u64> {
        let n = self.base().dim();
        let x = self.base().with_power(&F::from_int(self.exponent() as i64));
        let mut hs: Vec<Halfspace<F>> = x
            .moment_polytope()
            .halfspaces()
            .iter()
            .map(|h| {
                let mut a = h.normal.clone();
                a.push(F::zero());
                Halfspace::new(a, h.offset.clone())
            })
            .collect();
        let mut top = vec![F::zero(); n];
        top.push(-F::one());
        hs.push(Halfspace::new(top, -F::from_int(self.flag().n() as i64)));
        for (v, w, c) in upper_rays(self) {
            let mut a = v[..n].to_vec();
            a.push(w);
            hs.push(Halfspace::new(a, c));
        }
        let q = crate::geometry::RationalPolytope::from_halfspaces(n + 1, hs)?;
        to_u64(lcm_denoms(q.vertices().iter().flatten()))
    }
}

/// `(ray, w, e_rho - l_rho)` for the rays with `w > 0`.
fn upper_rays<F: Field>(m: &BlowupModel<F>) -> Vec<(Vec<F>, F, F)> {
    let n = m.base().dim();
    m.fan()
        .rays()
        .iter()
        .enumerate()
        .filter(|(_, r)| r[n].is_positive())
        .map(|(i, r)| (r.clone(), r[n].clone(), m.e().coeffs[i].clone() - m.l().coeffs[i].clone()))
        .collect()
}

fn to_u64(b: BigInt) -> Result<u64> {
    u64::try_from(b).map_err(|_| Error::Invalid("denominator too large".into()))
}

pub(crate) fn tally<F: Field, S: WeightSource<F>>(src: &S, k: u64) -> WeightSample {
    let weigh = src.weigher(k);
    let pts = src.base().moment_polytope().lattice_points(k * src.exponent());
    let mut h = BigInt::zero();
    let mut w = BigInt::zero();
    let mut w2 = BigInt::zero();
    for u in pts {
        let u: Vec<F> = u.iter().map(F::from_bigint).collect();
        let x = weigh(&u);
        h += 1;
        w2 += &x * &x;
        w += x;
    }
    WeightSample { k, h, w, w2 }
}

pub(crate) fn tally_restricted<F: Field, S: WeightSource<F>>(src: &S, k: u64, d: &ToricDivisor<F>) -> Result<RestrictedSample> {
    let x = src.base();
    if d.coeffs.len() != x.fan().rays().len() {
        return Err(Error::DimensionMismatch { expected: x.fan().rays().len(), got: d.coeffs.len() });
    }
    if d.coeffs.iter().any(|c| !c.is_integral()) {
        return Err(Error::NotInvariant);
    }
    let weigh = src.weigher(k);
    let kr = F::from_int((k * src.exponent()) as i64);
    let pts = x.moment_polytope().lattice_points(k * src.exponent());
    let mut h = BigInt::zero();
    let mut w = BigInt::zero();
    for u in pts {
        let u: Vec<F> = u.iter().map(F::from_bigint).collect();
        let mut mult = BigInt::zero();
        for ((v, l), c) in x.fan().rays().iter().zip(&x.polarization().coeffs).zip(&d.coeffs) {
            if !c.is_zero() && dot(&u, v) == -(kr.clone() * l.clone()) {
                mult += c.floor_bigint();
            }
        }
        if !mult.is_zero() {
            h += &mult;
            w += mult * weigh(&u);
        }
    }
    Ok(RestrictedSample { k, h, w })
}

/// Exact `(h, w, w2)` of a toric test configuration at `k`.
pub fn count_weights<F: Field>(cfg: &ToricTestConfig<F>, k: u64) -> WeightSample {
    tally(cfg, k)
}

/// Exact `(h, w, w2)` of the blow-up model at `k`.
pub fn count_weights_blowup<F: Field>(model: &BlowupModel<F>, k: u64) -> Result<WeightSample> {
    if !model.is_semi_ample() {
        return Err(Error::NotSemiAmple);
    }
    Ok(tally(model, k))
}

/// `(h_D, w_D)` of a toric test configuration: sections on the facets of
/// `krP` weighted by the coefficients of `D`.
pub fn count_weights_restricted<F: Field>(cfg: &ToricTestConfig<F>, k: u64, d: &ToricDivisor<F>) -> Result<RestrictedSample> {
    tally_restricted(cfg, k, d)
}

pub fn count_weights_blowup_restricted<F: Field>(
    model: &BlowupModel<F>,
    k: u64,
    d: &ToricDivisor<F>,
) -> Result<RestrictedSample> {
    if !model.is_semi_ample() {
        return Err(Error::NotSemiAmple);
    }
    tally_restricted(model, k, d)
}
