use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::{dot, Field};

use super::flag::MonomialFlagIdeal;
use super::toric_config::ToricTestConfig;

/// Whether `y -> r f(y / r)` has lattice cell vertices with integral values
/// there and `r C` is integral.
fn integral_at<F: Field>(cfg: &ToricTestConfig<F>, r: u64) -> Result<bool> {
    let rf = F::from_int(r as i64);
    if !(cfg.ceiling().clone() * rf.clone()).is_integral() {
        return Ok(false);
    }
    let g = cfg.function().dilated(&rf);
    for cell in g.regular_subdivision()?.cells {
        let piece = &g.pieces()[cell.piece];
        for v in cell.polytope.vertices() {
            if v.iter().any(|c| !c.is_integral()) || !piece.eval(v).is_integral() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Flag ideal of a toric test configuration on `(X, L^r)`.
///
/// Level `j` holds the Cox exponents `a_i(u) = <u, v_i> + r l_i` of the lattice
/// points `u ∈ rP` with `r f(u / r) <= j`, and `N = r C`. Fails with the least
/// admissible multiple of `r` when `r f` has non-lattice breaks.
pub fn config_to_flag<F: Field>(cfg: &ToricTestConfig<F>) -> Result<MonomialFlagIdeal<F>> {
    let r = cfg.exponent();
    if !integral_at(cfg, r)? {
        let mut bound = F::one().denom_bigint();
        let f = cfg.function();
        bound = bound.lcm(&cfg.ceiling().denom_bigint());
        for cell in f.regular_subdivision()?.cells {
            let piece = &f.pieces()[cell.piece];
            for v in cell.polytope.vertices() {
                for c in v.iter().chain(std::iter::once(&piece.eval(v))) {
                    bound = bound.lcm(&c.denom_bigint());
                }
            }
        }
        let bound = u64::try_from(bound).map_err(|_| Error::Invalid("denominators too large".into()))?;
        let t = (1..=bound).find(|t| integral_at(cfg, r * t).unwrap_or(false)).unwrap_or(bound);
        return Err(Error::NonIntegralSlopes { required_r: r * t });
    }
    let rf = F::from_int(r as i64);
    let x = cfg.base();
    let g = cfg.function().dilated(&rf);
    let n_levels = (cfg.ceiling().clone() * rf.clone()).floor_bigint();
    let n_levels = u64::try_from(n_levels).map_err(|_| Error::Invalid("ceiling too large".into()))?;
    let mut levels: Vec<Vec<Vec<F>>> = vec![Vec::new(); n_levels as usize];
    for u in x.moment_polytope().lattice_points(r) {
        let u: Vec<F> = u.iter().map(F::from_bigint).collect();
        let a: Vec<F> = x
            .fan()
            .rays()
            .iter()
            .zip(&x.polarization().coeffs)
            .map(|(v, l)| dot(&u, v) + rf.clone() * l.clone())
            .collect();
        let j = g.eval(&u).ceil_bigint();
        let j = u64::try_from(j).map_err(|_| Error::Invalid("negative level".into()))?;
        for level in levels.iter_mut().skip(j as usize) {
            level.push(a.clone());
        }
    }
    Ok(MonomialFlagIdeal::nested(n_levels, levels))
}
