use crate::error::{Error, Result};
use crate::geometry::{Halfspace, PLConvexFunction, RationalPolytope};
use crate::scalar::Field;
use crate::toric::PolarizedToric;

/// Toric test configuration of `(X, L^r)` given by a convex PL function
/// `f` on the moment polytope, normalized to `min f = 0`, with ceiling `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricTestConfig<F> {
    base: PolarizedToric<F>,
    f: PLConvexFunction<F>,
    ceiling: F,
    r: u64,
    trivial: bool,
}

/// Data of one irreducible component of the central fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component<F> {
    pub a0: F,
    pub b0: F,
    pub lambda: F,
}

impl<F: Field> ToricTestConfig<F> {
    pub fn base(&self) -> &PolarizedToric<F> {
        &self.base
    }

    pub fn function(&self) -> &PLConvexFunction<F> {
        &self.f
    }

    pub fn ceiling(&self) -> &F {
        &self.ceiling
    }

    pub fn exponent(&self) -> u64 {
        self.r
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `Q = {(x, t) : x ∈ P, 0 <= t <= C - f(x)}`.
    pub fn lifted_polytope(&self) -> Result<RationalPolytope<F>> {
        let n = self.dim();
        let mut hs: Vec<Halfspace<F>> = self
            .f
            .domain()
            .halfspaces()
            .iter()
            .map(|h| {
                let mut a = h.normal.clone();
                a.push(F::zero());
                Halfspace::new(a, h.offset.clone())
            })
            .collect();
        let mut t = vec![F::zero(); n];
        t.push(F::one());
        hs.push(Halfspace::new(t, F::zero()));
        for p in self.f.pieces() {
            let mut a: Vec<F> = p.gradient.iter().map(|g| -g.clone()).collect();
            a.push(-F::one());
            hs.push(Halfspace::new(a, p.constant.clone() - self.ceiling.clone()));
        }
        RationalPolytope::from_halfspaces(n + 1, hs)
    }

    /// One entry per linearity cell `P_j` of `f`:
    /// `a0j = r^n vol(P_j)`, `b0j = -r^(n+1) ∫_{P_j} f`, `lambda_j = -r max_P f_j`
    /// where `f_j` is the cell's affine piece extended to all of `P`.
    pub fn central_components(&self) -> Result<Vec<Component<F>>> {
        let n = self.dim();
        let r = F::from_int(self.r as i64);
        let rn = (0..n).fold(F::one(), |a, _| a * r.clone());
        let sub = self.f.regular_subdivision()?;
        let top = self.base.moment_polytope().vertices();
        Ok(sub
            .cells
            .iter()
            .map(|c| {
                let piece = &self.f.pieces()[c.piece];
                let vol = c.polytope.volume();
                let int = c.polytope.integrate_affine(&piece.gradient, &piece.constant);
                Component {
                    a0: rn.clone() * vol,
                    b0: -(rn.clone() * r.clone() * int),
                    lambda: -(r.clone() * top.iter().map(|v| piece.eval(v)).max().expect("nonempty")),
                }
            })
            .collect())
    }
}

/// Validated configuration; `f` is reduced to irredundant pieces and shifted to `min f = 0`.
pub fn toric_config<F: Field>(base: PolarizedToric<F>, f: PLConvexFunction<F>, ceiling: F, r: u64) -> Result<ToricTestConfig<F>> {
    if r == 0 {
        return Err(Error::Invalid("exponent r must be positive".into()));
    }
    if f.domain() != base.moment_polytope() && f.domain().vertices() != base.moment_polytope().vertices() {
        return Err(Error::Invalid("f must be defined on the moment polytope".into()));
    }
    let f = f.irredundant().normalized();
    let max = f.max_value();
    if ceiling < max {
        return Err(Error::CeilingTooLow { ceiling: ceiling.to_string(), max: max.to_string() });
    }
    if !ceiling.is_positive() {
        return Err(Error::Invalid("a constant f needs a positive ceiling".into()));
    }
    let trivial = f.is_constant();
    Ok(ToricTestConfig { base, f, ceiling, r, trivial })
}
