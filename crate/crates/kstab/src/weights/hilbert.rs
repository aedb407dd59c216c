use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{factorial, Field};
use crate::toric::{PolarizedToric, ToricDivisor};

use super::interpolate::fit_polynomial;

/// Outcome of comparing `h^0(L^k) - h^0(L^k ⊗ T^-1)` with `â0 k^(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertRelation<F> {
    pub holds: bool,
    pub fitted: F,
    pub expected: F,
}

/// Counts sections of `L^k` and `L^k ⊗ T^-1` for `k = 1..=count`, fits the
/// difference and compares its leading coefficient with `T · L^(n-1) / (n-1)!`.
pub fn hilbert_relation_check<F: Field>(x: &PolarizedToric<F>, t: &ToricDivisor<F>, count: u64) -> Result<HilbertRelation<F>> {
    let n = x.dim();
    let fan = x.fan();
    let l = x.polarization();
    if !fan.is_nef(&(l - t))? {
        return Err(Error::Invalid("L - T must be nef".into()));
    }
    let mut diffs: Vec<(u64, BigInt)> = Vec::new();
    for k in 1..=count {
        let lk = l.scale(&F::from_int(k as i64));
        let full = fan.polytope(&lk)?.lattice_points(1).len();
        let cut = fan.polytope(&(&lk - t))?.lattice_points(1).len();
        diffs.push((k, BigInt::from(full) - BigInt::from(cut)));
    }
    let c = fit_polynomial::<F>(&diffs, n - 1, "h - h_T")?;
    let fitted = c[0].clone();
    let expected = x.dot_l(t)? / factorial::<F>(n - 1);
    Ok(HilbertRelation { holds: fitted == expected, fitted, expected })
}
