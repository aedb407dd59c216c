use crate::error::{Error, Result};
use crate::scalar::{dot, Field};
use crate::toric::{newton_contains, newton_facets};

/// Flag ideal `I_0 + t I_1 + ... + t^(N-1) I_(N-1) + (t^N)` with monomial
/// levels given by Cox exponents, one entry per ray of the base fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialFlagIdeal<F> {
    n: u64,
    levels: Vec<Vec<Vec<F>>>,
}

impl<F: Field> MonomialFlagIdeal<F> {
    /// Validates exponents and nesting `I_j ⊆ I_(j+1)` up to integral closure.
    pub fn new(n: u64, levels: Vec<Vec<Vec<F>>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("flag ideal needs N >= 1".into()));
        }
        if levels.len() as u64 != n {
            return Err(Error::DimensionMismatch { expected: n as usize, got: levels.len() });
        }
        let width = levels.iter().flatten().map(|e| e.len()).next();
        for e in levels.iter().flatten() {
            if Some(e.len()) != width {
                return Err(Error::DimensionMismatch { expected: width.unwrap_or(0), got: e.len() });
            }
            if e.iter().any(|c| c.is_negative() || !c.is_integral()) {
                return Err(Error::Invalid("exponents must be nonnegative integers".into()));
            }
        }
        for j in 0..levels.len().saturating_sub(1) {
            for g in &levels[j] {
                if levels[j + 1].is_empty() || !newton_contains(&levels[j + 1], g)? {
                    return Err(Error::NestingViolation(j));
                }
            }
        }
        Ok(MonomialFlagIdeal { n, levels })
    }

    /// Levels already known to be nested.
    pub(crate) fn nested(n: u64, levels: Vec<Vec<Vec<F>>>) -> Self {
        MonomialFlagIdeal { n, levels }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn levels(&self) -> &[Vec<Vec<F>>] {
        &self.levels
    }

    /// Number of Cox exponents per generator, if any level is nonempty.
    pub fn width(&self) -> Option<usize> {
        self.levels.iter().flatten().map(|e| e.len()).next()
    }

    /// All generators `(a, b)` of `x^a t^b`, including `t^N`.
    pub fn generators(&self, width: usize) -> Vec<(Vec<F>, F)> {
        let mut out: Vec<(Vec<F>, F)> = Vec::new();
        for (j, level) in self.levels.iter().enumerate() {
            for g in level {
                out.push((g.clone(), F::from_int(j as i64)));
            }
        }
        out.push((vec![F::zero(); width], F::from_int(self.n as i64)));
        out
    }

    /// True when every level is empty, so the ideal is `(t^N)`.
    pub fn is_pure_power(&self) -> bool {
        self.levels.iter().all(|l| l.is_empty())
    }

    /// Levels whose monomial ideal differs from its integral closure.
    pub fn non_closed_levels(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (j, level) in self.levels.iter().enumerate() {
            if !level.is_empty() && !level_closed(level)? {
                out.push(j);
            }
        }
        Ok(out)
    }
}

/// A monomial ideal is integrally closed iff every lattice point of its
/// Newton polyhedron below the generator box is divisible by a generator.
fn level_closed<F: Field>(gens: &[Vec<F>]) -> Result<bool> {
    let m = gens[0].len();
    let hi: Vec<i64> = (0..m)
        .map(|i| gens.iter().map(|g| g[i].floor_bigint()).max().expect("nonempty"))
        .map(|b| i64::try_from(b).unwrap_or(i64::MAX))
        .collect();
    let facets = newton_facets(gens)?;
    let mut cur = vec![0i64; m];
    loop {
        let x: Vec<F> = cur.iter().map(|&c| F::from_int(c)).collect();
        let divisible = gens.iter().any(|g| g.iter().zip(&x).all(|(a, b)| a <= b));
        if !divisible && facets.iter().all(|(a, b)| dot(a, &x) >= *b) {
            return Ok(false);
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}
