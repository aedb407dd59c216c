use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::geometry::{Halfspace, RationalPolytope};
use crate::linalg::{nullspace, primitive, rank, solve};
use crate::scalar::{dot, factorial, Field};

/// Complete rational fan given by primitive integral rays and maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan<F> {
    dim: usize,
    rays: Vec<Vec<F>>,
    cones: Vec<Vec<usize>>,
    smooth: bool,
}

/// Torus-invariant Weil divisor `sum_rho d_rho D_rho`, one coefficient per ray.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ToricDivisor<F> {
    pub coeffs: Vec<F>,
}

impl<F: Field> ToricDivisor<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        ToricDivisor { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        ToricDivisor { coeffs: vec![F::zero(); len] }
    }

    pub fn scale(&self, c: &F) -> Self {
        ToricDivisor { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<F: Field> Add for &ToricDivisor<F> {
    type Output = ToricDivisor<F>;
    fn add(self, o: &ToricDivisor<F>) -> ToricDivisor<F> {
        ToricDivisor { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

impl<F: Field> Sub for &ToricDivisor<F> {
    type Output = ToricDivisor<F>;
    fn sub(self, o: &ToricDivisor<F>) -> ToricDivisor<F> {
        ToricDivisor { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() }
    }
}

impl<F: Field> Neg for &ToricDivisor<F> {
    type Output = ToricDivisor<F>;
    fn neg(self) -> ToricDivisor<F> {
        ToricDivisor { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

fn is_primitive_integral<F: Field>(v: &[F]) -> bool {
    v.iter().all(|c| c.is_integral()) && v.iter().any(|c| !c.is_zero()) && primitive(v) == v
}

fn det_is_unit<F: Field>(rows: &[Vec<F>]) -> bool {
    // Integral basis test: solving e_i in the ray basis must stay integral.
    let n = rows.len();
    let cols: Vec<Vec<F>> = (0..n).map(|i| rows.iter().map(|r| r[i].clone()).collect()).collect();
    (0..n).all(|i| {
        let mut e = vec![F::zero(); n];
        e[i] = F::one();
        solve(&cols, &e).is_some_and(|x| x.iter().all(|c| c.is_integral()))
    })
}

impl<F: Field> Fan<F> {
    /// Validates primitivity, cone dimensions and completeness.
    pub fn new(dim: usize, rays: Vec<Vec<F>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        for r in &rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
            }
            if !is_primitive_integral(r) {
                return Err(Error::Invalid(format!("ray {r:?} is not primitive integral")));
            }
        }
        let mut cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        cones.sort();
        for c in &cones {
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::Invalid("cone refers to a missing ray".into()));
            }
            let vs: Vec<Vec<F>> = c.iter().map(|&i| rays[i].clone()).collect();
            if rank(&vs) != dim {
                return Err(Error::NonCompleteFan);
            }
        }
        let smooth = cones.iter().all(|c| {
            c.len() == dim && det_is_unit(&c.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>())
        });
        let fan = Fan { dim, rays, cones, smooth };
        if !fan.walls_paired() {
            return Err(Error::NonCompleteFan);
        }
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<F>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// Facets of a maximal cone, as sorted ray-index sets.
    pub fn cone_facets(&self, cone: usize) -> Vec<Vec<usize>> {
        let c = &self.cones[cone];
        let vs: Vec<Vec<F>> = c.iter().map(|&i| self.rays[i].clone()).collect();
        let mut out = Vec::new();
        let mut idx: Vec<usize> = Vec::new();
        fn rec<F: Field>(
            start: usize,
            need: usize,
            vs: &[Vec<F>],
            c: &[usize],
            idx: &mut Vec<usize>,
            dim: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if need == 0 {
                let rows: Vec<Vec<F>> = idx.iter().map(|&i| vs[i].clone()).collect();
                let ns = nullspace(&rows, dim);
                if ns.len() != 1 {
                    return;
                }
                let n = &ns[0];
                let vals: Vec<F> = vs.iter().map(|v| dot(n, v)).collect();
                if vals.iter().all(|x| !x.is_negative()) || vals.iter().all(|x| !x.is_positive()) {
                    let face: Vec<usize> = (0..vs.len()).filter(|&i| vals[i].is_zero()).map(|i| c[i]).collect();
                    if !out.contains(&face) {
                        out.push(face);
                    }
                }
                return;
            }
            for i in start..vs.len() {
                idx.push(i);
                rec(i + 1, need - 1, vs, c, idx, dim, out);
                idx.pop();
            }
        }
        rec(0, self.dim - 1, &vs, c, &mut idx, self.dim, &mut out);
        out.sort();
        out
    }

    fn walls_paired(&self) -> bool {
        let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for i in 0..self.cones.len() {
            for f in self.cone_facets(i) {
                *count.entry(f).or_default() += 1;
            }
        }
        count.values().all(|&c| c == 2)
    }

    /// Index of a maximal cone containing `v` with the coefficients of `v`
    /// in that cone's rays (simplicial cones only).
    pub fn locate(&self, v: &[F]) -> Option<(usize, Vec<F>)> {
        for (ci, c) in self.cones.iter().enumerate() {
            if c.len() != self.dim {
                continue;
            }
            let cols: Vec<Vec<F>> = (0..self.dim).map(|k| c.iter().map(|&i| self.rays[i][k].clone()).collect()).collect();
            if let Some(l) = solve(&cols, v) {
                if l.iter().all(|x| !x.is_negative()) {
                    return Some((ci, l));
                }
            }
        }
        None
    }

    pub fn canonical_divisor(&self) -> ToricDivisor<F> {
        ToricDivisor::new(vec![-F::one(); self.rays.len()])
    }

    fn check_len(&self, d: &ToricDivisor<F>) -> Result<()> {
        if d.coeffs.len() != self.rays.len() {
            return Err(Error::DimensionMismatch { expected: self.rays.len(), got: d.coeffs.len() });
        }
        Ok(())
    }

    /// Local linear functionals `m_sigma` with `<m_sigma, v_rho> = -d_rho` on every cone.
    pub fn cartier_data(&self, d: &ToricDivisor<F>) -> Result<Vec<Vec<F>>> {
        self.check_len(d)?;
        let mut out = Vec::with_capacity(self.cones.len());
        for (ci, c) in self.cones.iter().enumerate() {
            let mut rows: Vec<Vec<F>> = Vec::new();
            let mut rhs: Vec<F> = Vec::new();
            for &i in c {
                let mut cand = rows.clone();
                cand.push(self.rays[i].clone());
                if rank(&cand) > rows.len() {
                    rows.push(self.rays[i].clone());
                    rhs.push(-d.coeffs[i].clone());
                }
                if rows.len() == self.dim {
                    break;
                }
            }
            let m = solve(&rows, &rhs).ok_or(Error::NotQCartier(ci))?;
            if c.iter().any(|&i| dot(&m, &self.rays[i]) != -d.coeffs[i].clone()) {
                return Err(Error::NotQCartier(ci));
            }
            out.push(m);
        }
        Ok(out)
    }

    /// Slacks `<m_sigma, v_rho> + d_rho` for every cone and ray.
    fn slacks(&self, d: &ToricDivisor<F>) -> Result<Vec<Vec<F>>> {
        let ms = self.cartier_data(d)?;
        Ok(ms
            .iter()
            .map(|m| self.rays.iter().zip(&d.coeffs).map(|(v, c)| dot(m, v) + c.clone()).collect())
            .collect())
    }

    /// Nef iff every local functional lies in the polytope of `d`.
    pub fn is_nef(&self, d: &ToricDivisor<F>) -> Result<bool> {
        Ok(self.slacks(d)?.iter().flatten().all(|s| !s.is_negative()))
    }

    /// Ample iff the slack is positive off each cone.
    pub fn is_ample(&self, d: &ToricDivisor<F>) -> Result<bool> {
        let s = self.slacks(d)?;
        Ok(self.cones.iter().zip(&s).all(|(c, row)| {
            row.iter().enumerate().all(|(i, x)| if c.contains(&i) { x.is_zero() } else { x.is_positive() })
        }))
    }

    /// Least slack of a local functional on a ray outside its cone:
    /// non-negative iff `d` is nef, positive iff `d` is ample.
    pub fn nef_slack(&self, d: &ToricDivisor<F>) -> Result<F> {
        let s = self.slacks(d)?;
        Ok(self
            .cones
            .iter()
            .zip(&s)
            .flat_map(|(c, row)| row.iter().enumerate().filter(move |(i, _)| !c.contains(i)).map(|(_, x)| x.clone()))
            .min()
            .unwrap_or_else(F::zero))
    }

    /// `d = div(χ^m)` for some rational `m`, i.e. `d` is numerically trivial.
    pub fn is_principal(&self, d: &ToricDivisor<F>) -> Result<bool> {
        self.check_len(d)?;
        let augmented: Vec<Vec<F>> =
            self.rays.iter().zip(&d.coeffs).map(|(v, c)| v.iter().cloned().chain([c.clone()]).collect()).collect();
        Ok(rank(&augmented) == rank(&self.rays))
    }

    /// Smallest integer `m >= 0` with `d + m * h` nef, for ample `h`.
    pub fn nef_shift(&self, d: &ToricDivisor<F>, h: &ToricDivisor<F>) -> Result<F> {
        let sd = self.slacks(d)?;
        let sh = self.slacks(h)?;
        let mut m = F::zero();
        for (rd, rh) in sd.iter().zip(&sh) {
            for (a, b) in rd.iter().zip(rh) {
                if a.is_negative() {
                    if !b.is_positive() {
                        return Err(Error::NoNefDecomposition(0));
                    }
                    let need = F::from_bigint(&(-a.clone() / b.clone()).ceil_bigint());
                    m = m.max(need);
                }
            }
        }
        Ok(m)
    }

    /// `{m : <m, v_rho> >= -d_rho}`.
    pub fn polytope(&self, d: &ToricDivisor<F>) -> Result<RationalPolytope<F>> {
        self.check_len(d)?;
        let hs = self.rays.iter().zip(&d.coeffs).map(|(v, c)| Halfspace::new(v.clone(), -c.clone())).collect();
        RationalPolytope::from_halfspaces(self.dim, hs)
    }

    /// `A^(dim-1) · W` for nef Cartier `A` and any Weil `W`, from facet volumes of `P_A`.
    pub fn nef_power_dot(&self, a: &ToricDivisor<F>, w: &ToricDivisor<F>) -> Result<F> {
        self.check_len(w)?;
        let p = self.polytope(a)?;
        let mut total = F::zero();
        for (i, v) in self.rays.iter().enumerate() {
            if w.coeffs[i].is_zero() {
                continue;
            }
            total = total + w.coeffs[i].clone() * p.section_volume(v, &(-a.coeffs[i].clone()));
        }
        Ok(total * factorial::<F>(self.dim - 1))
    }

    /// `D^(dim-1) · W` for Cartier `D`, evaluating the polynomial
    /// `s -> (D + s H)^(dim-1) · W` on the nef range and interpolating to `s = 0`.
    /// `extra` shifts the sample window without changing the result.
    pub fn power_dot(&self, d: &ToricDivisor<F>, w: &ToricDivisor<F>, anchor: &ToricDivisor<F>, extra: u32) -> Result<F> {
        self.cartier_data(d)?;
        let s0 = self.nef_shift(d, anchor)? + F::from_int(extra as i64);
        let deg = self.dim - 1;
        let xs: Vec<F> = (0..=deg).map(|i| s0.clone() + F::from_int(i as i64)).collect();
        let mut ys = Vec::with_capacity(xs.len());
        for s in &xs {
            ys.push(self.nef_power_dot(&(d + &anchor.scale(s)), w)?);
        }
        let mut total = F::zero();
        for (i, (xi, yi)) in xs.iter().zip(&ys).enumerate() {
            let mut term = yi.clone();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    term = term * (-xj.clone()) / (xi.clone() - xj.clone());
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    /// `D_1 ⋯ D_(dim-1) · W` by polarization over [`Self::power_dot`].
    pub fn intersect(&self, cartier: &[ToricDivisor<F>], w: &ToricDivisor<F>, anchor: &ToricDivisor<F>) -> Result<F> {
        self.intersect_with_shift(cartier, w, anchor, 0)
    }

    pub fn intersect_with_shift(
        &self,
        cartier: &[ToricDivisor<F>],
        w: &ToricDivisor<F>,
        anchor: &ToricDivisor<F>,
        extra: u32,
    ) -> Result<F> {
        let k = self.dim - 1;
        if cartier.len() != k {
            return Err(Error::DimensionMismatch { expected: k, got: cartier.len() });
        }
        if k == 0 {
            self.check_len(w)?;
            return Ok(w.coeffs.iter().fold(F::zero(), |a, b| a + b.clone()));
        }
        let mut total = F::zero();
        for mask in 1u32..(1 << k) {
            let mut sum = ToricDivisor::zero(self.rays.len());
            let mut size = 0;
            for (i, c) in cartier.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    sum = &sum + c;
                    size += 1;
                }
            }
            let v = self.power_dot(&sum, w, anchor, extra)?;
            total = if (k - size).is_multiple_of(2) { total + v } else { total - v };
        }
        Ok(total / factorial::<F>(k))
    }
}
