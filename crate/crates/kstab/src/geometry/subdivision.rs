use crate::error::{Error, Result};
use crate::scalar::{dot, Field};

use super::polytope::{sub, Halfspace, RationalPolytope};

/// `x -> <gradient, x> + constant`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffinePiece<F> {
    pub gradient: Vec<F>,
    pub constant: F,
}

impl<F: Field> AffinePiece<F> {
    pub fn new(gradient: Vec<F>, constant: F) -> Self {
        AffinePiece { gradient, constant }
    }

    pub fn eval(&self, x: &[F]) -> F {
        dot(&self.gradient, x) + self.constant.clone()
    }
}

/// Maximum of finitely many affine functions on a polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLConvexFunction<F> {
    pieces: Vec<AffinePiece<F>>,
    domain: RationalPolytope<F>,
}

/// Maximal cell of a regular subdivision together with its active piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell<F> {
    pub polytope: RationalPolytope<F>,
    pub piece: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision<F> {
    pub cells: Vec<Cell<F>>,
}

impl<F: Field> PLConvexFunction<F> {
    pub fn new(pieces: Vec<AffinePiece<F>>, domain: RationalPolytope<F>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Invalid("piecewise-linear function has no pieces".into()));
        }
        for p in &pieces {
            if p.gradient.len() != domain.dim() {
                return Err(Error::DimensionMismatch { expected: domain.dim(), got: p.gradient.len() });
            }
        }
        Ok(PLConvexFunction { pieces, domain })
    }

    pub fn constant(value: F, domain: RationalPolytope<F>) -> Self {
        let piece = AffinePiece::new(vec![F::zero(); domain.dim()], value);
        PLConvexFunction { pieces: vec![piece], domain }
    }

    pub fn pieces(&self) -> &[AffinePiece<F>] {
        &self.pieces
    }

    pub fn domain(&self) -> &RationalPolytope<F> {
        &self.domain
    }

    pub fn eval(&self, x: &[F]) -> F {
        self.pieces.iter().map(|p| p.eval(x)).max().expect("nonempty")
    }

    /// Region of the domain where piece `i` attains the maximum.
    fn region(&self, i: usize) -> Result<RationalPolytope<F>> {
        let pi = &self.pieces[i];
        let extra: Vec<Halfspace<F>> = self
            .pieces
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, pj)| Halfspace::new(sub(&pi.gradient, &pj.gradient), pj.constant.clone() - pi.constant.clone()))
            .collect();
        self.domain.intersect(&extra)
    }

    fn region_volume(&self, i: usize) -> F {
        match self.region(i) {
            Ok(p) => p.volume(),
            Err(_) => F::zero(),
        }
    }

    /// Drops repeated pieces and pieces that are maximal only on a null set.
    pub fn irredundant(&self) -> Self {
        let mut pieces = self.pieces.clone();
        pieces.sort();
        pieces.dedup();
        let mut f = PLConvexFunction { pieces, domain: self.domain.clone() };
        let mut i = 0;
        while i < f.pieces.len() {
            if f.pieces.len() > 1 && f.region_volume(i).is_zero() {
                f.pieces.remove(i);
            } else {
                i += 1;
            }
        }
        f
    }

    /// Maximum over the domain, attained at a vertex.
    pub fn max_value(&self) -> F {
        self.domain.vertices().iter().map(|v| self.eval(v)).max().expect("nonempty")
    }

    /// Minimum over the domain, attained at a vertex of some cell.
    pub fn min_value(&self) -> F {
        (0..self.pieces.len())
            .filter_map(|i| self.region(i).ok())
            .flat_map(|c| c.vertices().iter().map(|v| self.eval(v)).collect::<Vec<_>>())
            .min()
            .expect("some region is nonempty")
    }

    /// Shift so that the minimum over the domain is zero.
    pub fn normalized(&self) -> Self {
        let m = self.min_value();
        let pieces = self
            .pieces
            .iter()
            .map(|p| AffinePiece::new(p.gradient.clone(), p.constant.clone() - m.clone()))
            .collect();
        PLConvexFunction { pieces, domain: self.domain.clone() }
    }

    /// `y -> r f(y / r)` on `r P`.
    pub fn dilated(&self, r: &F) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| AffinePiece::new(p.gradient.clone(), p.constant.clone() * r.clone()))
            .collect();
        PLConvexFunction { pieces, domain: self.domain.scaled(r) }
    }

    pub fn is_affine(&self) -> bool {
        self.irredundant().pieces.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.min_value() == self.max_value()
    }

    /// Maximal linearity cells. Fails if some piece is active only on a null set.
    pub fn regular_subdivision(&self) -> Result<Subdivision<F>> {
        let mut cells = Vec::with_capacity(self.pieces.len());
        for i in 0..self.pieces.len() {
            let polytope = self.region(i).map_err(|_| Error::DegeneratePiece(i))?;
            if polytope.volume().is_zero() {
                return Err(Error::DegeneratePiece(i));
            }
            cells.push(Cell { polytope, piece: i });
        }
        Ok(Subdivision { cells })
    }
}
