use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{dot, factorial, Field};

use super::polytope::{polytope_sum, Halfspace, RationalPolytope};

/// Restricts `hs` to the hyperplane of `h` by eliminating coordinate `j`.
fn restrict<F: Field>(hs: &[Halfspace<F>], h: &Halfspace<F>, j: usize, skip: usize) -> Vec<Halfspace<F>> {
    let aj = h.normal[j].clone();
    hs.iter()
        .enumerate()
        .filter(|(l, _)| *l != skip)
        .map(|(_, g)| {
            let ratio = g.normal[j].clone() / aj.clone();
            let normal = g
                .normal
                .iter()
                .zip(&h.normal)
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, (gk, hk))| gk.clone() - ratio.clone() * hk.clone())
                .collect();
            Halfspace::new(normal, g.offset.clone() - ratio * h.offset.clone())
        })
        .collect()
}

/// Drops trivial constraints and keeps the tightest one per direction.
/// Returns `None` when some constraint `0 >= b` with `b > 0` is present.
fn tidy<F: Field>(hs: &[Halfspace<F>]) -> Option<Vec<Halfspace<F>>> {
    let mut best: BTreeMap<Vec<F>, F> = BTreeMap::new();
    for h in hs {
        match h.normalized() {
            None => {
                if h.offset.is_positive() {
                    return None;
                }
            }
            Some(n) => {
                let e = best.entry(n.normal).or_insert_with(|| n.offset.clone());
                if n.offset > *e {
                    *e = n.offset;
                }
            }
        }
    }
    Some(best.into_iter().map(|(n, b)| Halfspace::new(n, b)).collect())
}

/// Volume of a bounded H-polytope by recursive facet decomposition.
///
/// Uses `d vol(P) = sum_i (-b_i / |a_ij|) vol(pi_j(F_i))`, where `pi_j`
/// projects facet `F_i` along a coordinate with `a_ij != 0`.
pub(crate) fn lasserre<F: Field>(dim: usize, hs: &[Halfspace<F>]) -> F {
    let Some(hs) = tidy(hs) else {
        return F::zero();
    };
    if dim == 0 {
        return F::one();
    }
    if dim == 1 {
        let mut lo: Option<F> = None;
        let mut hi: Option<F> = None;
        for h in &hs {
            let v = h.offset.clone() / h.normal[0].clone();
            if h.normal[0].is_positive() {
                lo = Some(lo.map_or(v.clone(), |l| l.max(v)));
            } else {
                hi = Some(hi.map_or(v.clone(), |u| u.min(v)));
            }
        }
        let (lo, hi) = (lo.expect("bounded"), hi.expect("bounded"));
        return if hi > lo { hi - lo } else { F::zero() };
    }
    let mut total = F::zero();
    for (i, h) in hs.iter().enumerate() {
        if h.offset.is_zero() {
            continue;
        }
        let j = h.normal.iter().position(|c| !c.is_zero()).expect("normalized");
        let face = restrict(&hs, h, j, i);
        let v = lasserre(dim - 1, &face);
        if !v.is_zero() {
            total = total - h.offset.clone() / h.normal[j].abs() * v;
        }
    }
    total / F::from_int(dim as i64)
}

/// Whether a system in zero variables is satisfiable.
fn section_feasible_point<F: Field>(hs: &[Halfspace<F>]) -> bool {
    tidy(hs).is_some()
}

impl<F: Field> RationalPolytope<F> {
    /// Exact Euclidean volume; zero for lower-dimensional polytopes.
    pub fn volume(&self) -> F {
        lasserre(self.dim(), self.halfspaces())
    }

    /// Volume of the section `P ∩ {<a, x> = b}`: its projection along a
    /// coordinate `j` with `a_j != 0`, divided by `|a_j|`. For primitive
    /// integral `a` this is the lattice-normalized `(dim - 1)`-volume.
    pub fn section_volume(&self, a: &[F], b: &F) -> F {
        let dim = self.dim();
        let Some(j) = a.iter().position(|c| !c.is_zero()) else {
            return F::zero();
        };
        let h = Halfspace::new(a.to_vec(), b.clone());
        let face = restrict(self.halfspaces(), &h, j, usize::MAX);
        let v = if dim == 1 {
            if section_feasible_point(&face) { F::one() } else { F::zero() }
        } else {
            lasserre(dim - 1, &face)
        };
        v / a[j].abs()
    }

    /// `∫_P (<g, x> + c) dx`.
    pub fn integrate_affine(&self, gradient: &[F], constant: &F) -> F {
        let dim = self.dim();
        let min = self
            .vertices()
            .iter()
            .map(|v| dot(gradient, v) + constant.clone())
            .min()
            .expect("nonempty");
        let shift = if min.is_negative() { -min } else { F::zero() };
        let mut hs: Vec<Halfspace<F>> = self
            .halfspaces()
            .iter()
            .map(|h| {
                let mut n = h.normal.clone();
                n.push(F::zero());
                Halfspace::new(n, h.offset.clone())
            })
            .collect();
        let mut t = vec![F::zero(); dim];
        t.push(F::one());
        hs.push(Halfspace::new(t, F::zero()));
        let mut top: Vec<F> = gradient.to_vec();
        top.push(-F::one());
        hs.push(Halfspace::new(top, -(constant.clone() + shift.clone())));
        lasserre(dim + 1, &hs) - shift * self.volume()
    }

    /// `∫ (<g, x> + c)` over the section `P ∩ {<a, x> = b}`, in the measure
    /// of [`section_volume`](Self::section_volume). Computed on the pyramid
    /// over the section with apex at the vertex barycentre.
    pub fn section_integral(&self, a: &[F], b: &F, gradient: &[F], constant: &F) -> F {
        let dim = self.dim();
        let face: Vec<Vec<F>> = self.vertices().iter().filter(|v| dot(a, v) == *b).cloned().collect();
        if face.is_empty() || !self.is_full_dimensional() {
            return F::zero();
        }
        let count = F::from_int(self.vertices().len() as i64);
        let apex: Vec<F> = (0..dim)
            .map(|i| self.vertices().iter().fold(F::zero(), |s, v| s + v[i].clone()) / count.clone())
            .collect();
        let h = (dot(a, &apex) - b.clone()).abs();
        let mut pts = face;
        pts.push(apex.clone());
        let Ok(pyramid) = RationalPolytope::from_vertices(dim, &pts) else {
            return F::zero();
        };
        let g_apex = dot(gradient, &apex) + constant.clone();
        let n1 = F::from_int(dim as i64 + 1);
        (n1 * pyramid.integrate_affine(gradient, constant) - g_apex * pyramid.volume()) / h
    }
}

/// Mixed volume normalized so that `MV(P, ..., P) = vol(P)`, by
/// inclusion-exclusion over volumes of Minkowski sums.
pub fn mixed_volume<F: Field>(ps: &[RationalPolytope<F>]) -> Result<F> {
    let n = ps.len();
    if n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    for p in ps {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.dim() });
        }
    }
    let mut total = F::zero();
    for mask in 1u32..(1 << n) {
        let chosen: Vec<&RationalPolytope<F>> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &ps[i]).collect();
        let vol = polytope_sum(n, &chosen)?.volume();
        if (n - chosen.len()).is_multiple_of(2) {
            total = total + vol;
        } else {
            total = total - vol;
        }
    }
    Ok(total / factorial::<F>(n))
}
