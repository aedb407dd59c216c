use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, primitive, rank};

use super::dd::extreme_rays;
use crate::scalar::{dot, Field};

/// Integer point of a lattice, one coordinate per ambient dimension.
pub type LatticeVector = Vec<BigInt>;

/// The closed halfspace `<normal, x> >= offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace<F> {
    pub normal: Vec<F>,
    pub offset: F,
}

impl<F: Field> Halfspace<F> {
    pub fn new(normal: Vec<F>, offset: F) -> Self {
        Halfspace { normal, offset }
    }

    pub fn slack(&self, x: &[F]) -> F {
        dot(&self.normal, x) - self.offset.clone()
    }

    pub fn contains(&self, x: &[F]) -> bool {
        !self.slack(x).is_negative()
    }

    /// Same halfspace scaled so the first nonzero normal entry has absolute value 1.
    pub(crate) fn normalized(&self) -> Option<Self> {
        let lead = self.normal.iter().find(|c| !c.is_zero())?.abs();
        Some(Halfspace {
            normal: self.normal.iter().map(|c| c.clone() / lead.clone()).collect(),
            offset: self.offset.clone() / lead,
        })
    }
}

/// Bounded convex polytope `{x : <a_i, x> >= b_i}` with its vertices cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope<F> {
    dim: usize,
    halfspaces: Vec<Halfspace<F>>,
    vertices: Vec<Vec<F>>,
}

impl<F: Field> RationalPolytope<F> {
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<Halfspace<F>>) -> Result<Self> {
        for h in &halfspaces {
            if h.normal.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: h.normal.len() });
            }
        }
        let vertices = vertex_enumeration(dim, &halfspaces)?;
        if vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        Ok(RationalPolytope { dim, halfspaces, vertices })
    }

    /// Convex hull of a finite point set.
    pub fn from_vertices(dim: usize, points: &[Vec<F>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
        }
        let diffs: Vec<Vec<F>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
        if rank(&diffs) < dim {
            return minkowski_hull(dim, &[points.to_vec()]);
        }
        let rows: Vec<Vec<F>> = points
            .iter()
            .map(|p| p.iter().cloned().chain(std::iter::once(F::one())).collect())
            .collect();
        let rays = extreme_rays(&rows, dim + 1).ok_or(Error::NotFullDimensional)?;
        let hs = rays
            .into_iter()
            .map(|r| Halfspace::new(r[..dim].to_vec(), -r[dim].clone()))
            .collect();
        RationalPolytope::from_halfspaces(dim, hs)
    }

    /// Axis-parallel box `prod [lo_i, hi_i]`.
    pub fn cuboid(bounds: &[(F, F)]) -> Result<Self> {
        let dim = bounds.len();
        let mut hs = Vec::with_capacity(2 * dim);
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            hs.push(Halfspace::new(unit(dim, i, F::one()), lo.clone()));
            hs.push(Halfspace::new(unit(dim, i, -F::one()), -hi.clone()));
        }
        Self::from_halfspaces(dim, hs)
    }

    /// `{x >= 0, sum x <= 1}`.
    pub fn standard_simplex(dim: usize) -> Result<Self> {
        let mut hs: Vec<_> = (0..dim)
            .map(|i| Halfspace::new(unit(dim, i, F::one()), F::zero()))
            .collect();
        hs.push(Halfspace::new(vec![-F::one(); dim], -F::one()));
        Self::from_halfspaces(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace<F>] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Vec<F>] {
        &self.vertices
    }

    pub fn contains(&self, x: &[F]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        let base = &self.vertices[0];
        let diffs: Vec<Vec<F>> = self.vertices[1..].iter().map(|v| sub(v, base)).collect();
        rank(&diffs)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    /// Dilate `k * P` for `k > 0`.
    pub fn scaled(&self, k: &F) -> Self {
        RationalPolytope {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), h.offset.clone() * k.clone()))
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|c| c.clone() * k.clone()).collect())
                .collect(),
        }
    }

    pub fn translated(&self, t: &[F]) -> Self {
        RationalPolytope {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), h.offset.clone() + dot(&h.normal, t)))
                .collect(),
            vertices: self.vertices.iter().map(|v| add(v, t)).collect(),
        }
    }

    /// Intersection with further halfspaces.
    pub fn intersect(&self, extra: &[Halfspace<F>]) -> Result<Self> {
        let mut hs = self.halfspaces.clone();
        hs.extend_from_slice(extra);
        Self::from_halfspaces(self.dim, hs)
    }

    /// Minimum of a linear functional over the polytope.
    pub fn support_min(&self, dir: &[F]) -> F {
        self.vertices
            .iter()
            .map(|v| dot(dir, v))
            .min()
            .expect("polytope has vertices")
    }

    /// Vertices attaining [`Self::support_min`].
    pub fn face_vertices(&self, dir: &[F]) -> Vec<Vec<F>> {
        let m = self.support_min(dir);
        self.vertices.iter().filter(|v| dot(dir, v) == m).cloned().collect()
    }

    /// Integer points of `k * P`, lexicographically ordered.
    pub fn lattice_points(&self, k: u64) -> Vec<LatticeVector> {
        let kf = F::from_int(k as i64);
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let coords = self.vertices.iter().map(|v| v[i].clone() * kf.clone());
            let min = coords.clone().min().expect("nonempty");
            let max = coords.max().expect("nonempty");
            lo.push(min.ceil_bigint());
            hi.push(max.floor_bigint());
        }
        let mut out = Vec::new();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return out;
        }
        let scaled: Vec<Halfspace<F>> = self
            .halfspaces
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), h.offset.clone() * kf.clone()))
            .collect();
        let mut cur = lo.clone();
        loop {
            let x: Vec<F> = cur.iter().map(F::from_bigint).collect();
            if scaled.iter().all(|h| h.contains(&x)) {
                out.push(cur.clone());
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..].clone_from_slice(&lo[i + 1..self.dim]);
                    break;
                }
            }
            if self.dim == 0 {
                return out;
            }
        }
    }
}

pub(crate) fn unit<F: Field>(dim: usize, i: usize, val: F) -> Vec<F> {
    let mut v = vec![F::zero(); dim];
    v[i] = val;
    v
}

pub(crate) fn sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub(crate) fn add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn dedup_halfspaces<F: Field>(hs: &[Halfspace<F>]) -> Vec<Halfspace<F>> {
    let set: BTreeSet<Halfspace<F>> = hs.iter().filter_map(|h| h.normalized()).collect();
    set.into_iter().collect()
}

fn subsets(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
/// Exact vertex set of a bounded H-polytope, deduplicated and sorted.
///
/// Every `dim`-subset of the constraints is solved and kept when feasible,
/// which is adequate for the small dimensions and facet counts in scope.
pub fn vertex_enumeration<F: Field>(dim: usize, hs: &[Halfspace<F>]) -> Result<Vec<Vec<F>>> {
    let hs = dedup_halfspaces(hs);
    if dim == 0 {
        return Ok(if hs.iter().all(|h| !h.offset.is_positive()) { vec![vec![]] } else { vec![] });
    }
    let mut rows: Vec<Vec<F>> = hs
        .iter()
        .map(|h| h.normal.iter().cloned().chain(std::iter::once(-h.offset.clone())).collect())
        .collect();
    let mut t = vec![F::zero(); dim];
    t.push(F::one());
    rows.push(t);
    let rays = extreme_rays(&rows, dim + 1).ok_or(Error::UnboundedInput)?;
    let mut found = BTreeSet::new();
    for r in rays {
        let t = r[dim].clone();
        if t.is_zero() {
            return Err(Error::UnboundedInput);
        }
        found.insert(r[..dim].iter().map(|c| c.clone() / t.clone()).collect::<Vec<F>>());
    }
    Ok(found.into_iter().collect())
}

/// H-representation of the Minkowski sum of the convex hulls of `summands`.
///
/// Facet normals are found among normals to `k - 1` difference directions
/// of the summands, `k` being the affine dimension, and kept when the
/// supporting face of the sum has dimension `k - 1`.
pub fn minkowski_hull<F: Field>(dim: usize, summands: &[Vec<Vec<F>>]) -> Result<RationalPolytope<F>> {
    if summands.iter().any(|s| s.is_empty()) {
        return Err(Error::EmptyPolytope);
    }
    for s in summands {
        for p in s {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
        }
    }
    let mut dirs: BTreeSet<Vec<F>> = BTreeSet::new();
    for s in summands {
        for (i, p) in s.iter().enumerate() {
            for q in &s[..i] {
                insert_direction(&mut dirs, &sub(p, q));
            }
        }
    }
    hull_from_directions(dim, summands, dirs.into_iter().collect())
}

fn insert_direction<F: Field>(dirs: &mut BTreeSet<Vec<F>>, d: &[F]) {
    if d.iter().all(|c| c.is_zero()) {
        return;
    }
    let mut d = primitive(d);
    if d.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        d = d.iter().map(|c| -c.clone()).collect();
    }
    dirs.insert(d);
}

/// Hull of `sum_i conv(summands[i])` given a set of directions containing
/// every edge direction of every summand.
fn hull_from_directions<F: Field>(
    dim: usize,
    summands: &[Vec<Vec<F>>],
    dirs: Vec<Vec<F>>,
) -> Result<RationalPolytope<F>> {
    let base: Vec<F> = summands
        .iter()
        .fold(vec![F::zero(); dim], |acc, s| add(&acc, &s[0]));
    let k = rank(&dirs);
    let complement = nullspace(&dirs, dim);
    let mut hs: Vec<Halfspace<F>> = Vec::new();
    for c in &complement {
        let c = primitive(c);
        let v = dot(&c, &base);
        hs.push(Halfspace::new(c.iter().map(|x| -x.clone()).collect(), -v.clone()));
        hs.push(Halfspace::new(c, v));
    }
    let mut normals: BTreeSet<Vec<F>> = BTreeSet::new();
    if k > 0 {
        subsets(dirs.len(), k - 1, |s| {
            let mut rows = complement.clone();
            rows.extend(s.iter().map(|&i| dirs[i].clone()));
            let ns = nullspace(&rows, dim);
            if ns.len() == 1 {
                let n = primitive(&ns[0]);
                normals.insert(n.iter().map(|c| -c.clone()).collect());
                normals.insert(n);
            }
        });
    }
    for n in normals {
        let mut offset = F::zero();
        let mut face_diffs = Vec::new();
        for pts in summands {
            let m = pts.iter().map(|p| dot(&n, p)).min().expect("nonempty");
            let face: Vec<&Vec<F>> = pts.iter().filter(|p| dot(&n, p) == m).collect();
            face_diffs.extend(face[1..].iter().map(|p| sub(p, face[0])));
            offset = offset + m;
        }
        if rank(&face_diffs) == k - 1 {
            hs.push(Halfspace::new(n, offset));
        }
    }
    RationalPolytope::from_halfspaces(dim, hs)
}

/// Hull of the Minkowski sum of polytopes, using only their edge directions.
pub(crate) fn polytope_sum<F: Field>(dim: usize, ps: &[&RationalPolytope<F>]) -> Result<RationalPolytope<F>> {
    let mut dirs: BTreeSet<Vec<F>> = BTreeSet::new();
    for p in ps {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
        }
        for d in p.edge_directions() {
            insert_direction(&mut dirs, &d);
        }
    }
    let summands: Vec<Vec<Vec<F>>> = ps.iter().map(|p| p.vertices().to_vec()).collect();
    hull_from_directions(dim, &summands, dirs.into_iter().collect())
}

impl<F: Field> RationalPolytope<F> {
    /// `q - p` for every edge `[p, q]`.
    pub(crate) fn edge_directions(&self) -> Vec<Vec<F>> {
        let tight: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| (0..self.halfspaces.len()).filter(|&i| self.halfspaces[i].slack(v).is_zero()).collect())
            .collect();
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in 0..i {
                let common: Vec<Vec<F>> = tight[i]
                    .iter()
                    .filter(|h| tight[j].contains(h))
                    .map(|&h| self.halfspaces[h].normal.clone())
                    .collect();
                if rank(&common) + 1 == self.dim {
                    out.push(sub(&self.vertices[i], &self.vertices[j]));
                }
            }
        }
        out
    }
}

/// Minkowski sum `P + Q`.
pub fn minkowski_sum<F: Field>(p: &RationalPolytope<F>, q: &RationalPolytope<F>) -> Result<RationalPolytope<F>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    polytope_sum(p.dim(), &[p, q])
}
