use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::primitive;
use crate::scalar::{dot, Field};
use crate::toric::{newton_truncation, Fan, PolarizedToric, ToricDivisor};

use super::flag::MonomialFlagIdeal;

/// Exceptional divisor `E_v` of the blow-up with discrepancy `a`, multiplicity
/// `b` in the pullback of `X × {0}` and coefficient `c` in `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalRay<F> {
    pub index: usize,
    pub ray: Vec<F>,
    pub a: F,
    pub b: F,
    pub c: F,
}

/// Normalized blow-up `B` of `X × P^1` along a monomial flag ideal.
///
/// Rays `0..m` are `(v_i, 0)` for the rays of `X`, ray `m` is `(0, 1)`,
/// ray `m + 1` is `(0, -1)` and exceptional rays follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupModel<F> {
    base: PolarizedToric<F>,
    flag: MonomialFlagIdeal<F>,
    r: u64,
    fan: Fan<F>,
    exceptional: Vec<ExceptionalRay<F>>,
    l: ToricDivisor<F>,
    e: ToricDivisor<F>,
    k_x: ToricDivisor<F>,
    k_rel: ToricDivisor<F>,
    fibre: ToricDivisor<F>,
    fibre_shift: Option<F>,
    anchor: ToricDivisor<F>,
    n0: F,
    non_closed: Vec<usize>,
}

/// `(cone of X, barycentric coordinates)` of `v` in the fan of `X`.
fn coordinates<F: Field>(x: &Fan<F>, v: &[F]) -> (usize, Vec<F>) {
    if v.iter().all(|c| c.is_zero()) {
        return (0, vec![F::zero(); x.dim()]);
    }
    x.locate(v).expect("complete fan")
}

impl<F: Field> BlowupModel<F> {
    pub fn base(&self) -> &PolarizedToric<F> {
        &self.base
    }

    pub fn flag(&self) -> &MonomialFlagIdeal<F> {
        &self.flag
    }

    pub fn exponent(&self) -> u64 {
        self.r
    }

    pub fn fan(&self) -> &Fan<F> {
        &self.fan
    }

    pub fn exceptional(&self) -> &[ExceptionalRay<F>] {
        &self.exceptional
    }

    /// Pullback of `L^r`.
    pub fn l(&self) -> &ToricDivisor<F> {
        &self.l
    }

    pub fn e(&self) -> &ToricDivisor<F> {
        &self.e
    }

    /// Pullback of `K_X`.
    pub fn k_x(&self) -> &ToricDivisor<F> {
        &self.k_x
    }

    /// Relative canonical divisor `K_(B / X × P^1)`.
    pub fn k_rel(&self) -> &ToricDivisor<F> {
        &self.k_rel
    }

    /// Fibre over infinity, the divisor of the ray `(0, -1)`.
    pub fn fibre(&self) -> &ToricDivisor<F> {
        &self.fibre
    }

    /// Smallest `j >= 0` with `L^r - E + j F` nef, when it exists.
    pub fn fibre_shift(&self) -> Option<&F> {
        self.fibre_shift.as_ref()
    }

    pub fn is_semi_ample(&self) -> bool {
        self.fibre_shift.is_some()
    }

    /// Ample divisor `M π^*(L ⊠ O(1)) - E` with minimal `M`.
    pub fn anchor(&self) -> &ToricDivisor<F> {
        &self.anchor
    }

    /// Order of the flag ideal along `X × {0}`.
    pub fn n0(&self) -> &F {
        &self.n0
    }

    /// Levels replaced by their integral closure.
    pub fn non_closed_levels(&self) -> &[usize] {
        &self.non_closed
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    /// Pullback of a divisor on `X` (one coefficient per ray of `X`).
    pub fn pullback(&self, d: &ToricDivisor<F>) -> Result<ToricDivisor<F>> {
        let x = self.base.fan();
        if d.coeffs.len() != x.rays().len() {
            return Err(Error::DimensionMismatch { expected: x.rays().len(), got: d.coeffs.len() });
        }
        let n = x.dim();
        Ok(ToricDivisor::new(
            self.fan
                .rays()
                .iter()
                .map(|ray| {
                    let (c, lam) = coordinates(x, &ray[..n]);
                    x.cones()[c].iter().zip(&lam).fold(F::zero(), |s, (&i, l)| s + l.clone() * d.coeffs[i].clone())
                })
                .collect(),
        ))
    }

    /// `(L^r - E)^n · W` on `B`.
    pub fn power_dot(&self, w: &ToricDivisor<F>) -> Result<F> {
        let le = &self.l - &self.e;
        self.fan.intersect(&vec![le; self.dim() - 1], w, &self.anchor)
    }

    /// `D_1 ⋯ D_n · W` on `B` for Cartier `D_i`.
    pub fn intersect(&self, cartier: &[ToricDivisor<F>], w: &ToricDivisor<F>) -> Result<F> {
        self.fan.intersect(cartier, w, &self.anchor)
    }
}

/// `ord(v, w) = min over generators of sum lambda_i a_i + w b`.
fn order<F: Field>(x: &Fan<F>, gens: &[(Vec<F>, F)], v: &[F], w: &F) -> F {
    let (c, lam) = coordinates(x, v);
    gens.iter()
        .map(|(a, b)| x.cones()[c].iter().zip(&lam).fold(w.clone() * b.clone(), |s, (&i, l)| s + l.clone() * a[i].clone()))
        .min()
        .expect("t^N is a generator")
}

/// Normalized blow-up of `X × P^1` along `flag`, polarized by `L^r - E`.
/// A model that is not relatively semi-ample is still returned.
pub fn flag_blowup<F: Field>(x: &PolarizedToric<F>, flag: &MonomialFlagIdeal<F>, r: u64) -> Result<BlowupModel<F>> {
    let xf = x.fan();
    let n = xf.dim();
    let m = xf.rays().len();
    if !xf.is_smooth() {
        let bad = xf.cones().iter().position(|c| c.len() != n).unwrap_or(0);
        return Err(Error::NonSmoothAmbient(bad));
    }
    if r == 0 {
        return Err(Error::Invalid("exponent r must be positive".into()));
    }
    if let Some(wd) = flag.width() {
        if wd != m {
            return Err(Error::DimensionMismatch { expected: m, got: wd });
        }
    }
    if flag.is_pure_power() {
        return Err(Error::TrivialFlag);
    }
    let gens = flag.generators(m);

    let lift = |v: &[F], w: F| {
        let mut r = v.to_vec();
        r.push(w);
        r
    };
    let mut rays: Vec<Vec<F>> = xf.rays().iter().map(|v| lift(v, F::zero())).collect();
    rays.push(lift(&vec![F::zero(); n], F::one()));
    rays.push(lift(&vec![F::zero(); n], -F::one()));
    let mut index: BTreeMap<Vec<F>, usize> = rays.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut cones: Vec<Vec<usize>> = Vec::new();

    for sigma in xf.cones() {
        let pts: Vec<Vec<F>> = gens
            .iter()
            .map(|(a, b)| sigma.iter().map(|&i| a[i].clone()).chain(std::iter::once(b.clone())).collect())
            .collect();
        let (facets, vertices) = newton_truncation(&pts, None)?;
        for p in &vertices {
            let mut cone = Vec::new();
            for (lam, b) in &facets {
                if dot(lam, p) != *b {
                    continue;
                }
                let mut v = vec![F::zero(); n];
                for (k, &i) in sigma.iter().enumerate() {
                    for (vc, rc) in v.iter_mut().zip(&xf.rays()[i]) {
                        *vc = vc.clone() + lam[k].clone() * rc.clone();
                    }
                }
                let ray = primitive(&lift(&v, lam[n].clone()));
                let next = rays.len();
                let id = *index.entry(ray.clone()).or_insert(next);
                if id == next {
                    rays.push(ray);
                }
                cone.push(id);
            }
            cones.push(cone);
        }
        let mut lower: Vec<usize> = sigma.clone();
        lower.push(m + 1);
        cones.push(lower);
    }
    let fan = Fan::new(n + 1, rays, cones)?;

    let mut l = Vec::new();
    let mut e = Vec::new();
    let mut k_x = Vec::new();
    let mut k_rel = Vec::new();
    let mut exceptional = Vec::new();
    let rf = F::from_int(r as i64);
    for (idx, ray) in fan.rays().iter().enumerate() {
        let (v, w) = (&ray[..n], ray[n].clone());
        if w.is_negative() {
            l.push(F::zero());
            e.push(F::zero());
            k_x.push(F::zero());
            k_rel.push(F::zero());
            continue;
        }
        let (c, lam) = coordinates(xf, v);
        let sum = lam.iter().fold(F::zero(), |s, x| s + x.clone());
        let lv = xf.cones()[c].iter().zip(&lam).fold(F::zero(), |s, (&i, t)| s + t.clone() * x.polarization().coeffs[i].clone());
        let ord = order(xf, &gens, v, &w);
        let a = sum.clone() + w.clone() - F::one();
        l.push(rf.clone() * lv);
        e.push(ord.clone());
        k_x.push(-sum);
        k_rel.push(a.clone());
        if idx >= m + 2 {
            exceptional.push(ExceptionalRay { index: idx, ray: ray.clone(), a, b: w, c: ord });
        }
    }
    if exceptional.is_empty() {
        return Err(Error::TrivialFlag);
    }
    let l = ToricDivisor::new(l);
    let e = ToricDivisor::new(e);
    let mut fibre = ToricDivisor::zero(fan.rays().len());
    fibre.coeffs[m + 1] = F::one();

    let fibre_shift = match fan.nef_shift(&(&l - &e), &fibre) {
        Ok(j) => Some(j),
        Err(Error::NoNefDecomposition(_)) => None,
        Err(err) => return Err(err),
    };

    // π^*(L ⊠ O(1)): coefficient ℓ(v) + w on upper rays.
    let base_l = ToricDivisor::new(
        fan.rays()
            .iter()
            .zip(&l.coeffs)
            .map(|(ray, lc)| lc.clone() / rf.clone() + ray[n].clone().max(F::zero()))
            .collect(),
    );
    let mut anchor = None;
    for mult in 1..=256i64 {
        let cand = &base_l.scale(&F::from_int(mult)) - &e;
        if fan.is_ample(&cand)? {
            anchor = Some(cand);
            break;
        }
    }
    let anchor = anchor.ok_or(Error::NoNefDecomposition(256))?;
    let n0 = e.coeffs[m].clone();
    let non_closed = flag.non_closed_levels()?;
    Ok(BlowupModel {
        base: x.clone(),
        flag: flag.clone(),
        r,
        fan,
        exceptional,
        l,
        e,
        k_x: ToricDivisor::new(k_x),
        k_rel: ToricDivisor::new(k_rel),
        fibre,
        fibre_shift,
        anchor,
        n0,
        non_closed,
    })
}
