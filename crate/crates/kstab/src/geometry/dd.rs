//! Double description: extreme rays of a pointed polyhedral cone.

use crate::linalg::{primitive, rank, rref, solve};
use crate::scalar::{dot, Field};

/// Extreme rays of `{y : <a_i, y> >= 0}` as primitive vectors, or `None`
/// when the cone is not pointed (the rows do not span).
pub(crate) fn extreme_rays<F: Field>(rows: &[Vec<F>], dim: usize) -> Option<Vec<Vec<F>>> {
    let mut tr: Vec<Vec<F>> = (0..dim).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
    let basis_rows = rref(&mut tr);
    if basis_rows.len() < dim {
        return None;
    }
    // Start from the simplicial cone cut out by `dim` independent rows.
    let init: Vec<Vec<F>> = basis_rows.iter().map(|&i| rows[i].clone()).collect();
    let mut rays: Vec<Vec<F>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = vec![F::zero(); dim];
        e[j] = F::one();
        rays.push(primitive(&solve(&init, &e)?));
    }
    let mut zeros: Vec<Vec<usize>> = (0..dim).map(|j| basis_rows.iter().copied().filter(|&i| i != basis_rows[j]).collect()).collect();

    for (idx, a) in rows.iter().enumerate() {
        if basis_rows.contains(&idx) {
            continue;
        }
        let s: Vec<F> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_negative()).collect();
        let mut next_rays = Vec::new();
        let mut next_zeros = Vec::new();
        for i in 0..rays.len() {
            if !s[i].is_negative() {
                let mut z = zeros[i].clone();
                if s[i].is_zero() {
                    z.push(idx);
                }
                next_rays.push(rays[i].clone());
                next_zeros.push(z);
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = zeros[p].iter().copied().filter(|i| zeros[n].contains(i)).collect();
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|o| o == p || o == n || !common.iter().all(|i| zeros[o].contains(i)));
                if !adjacent {
                    continue;
                }
                let crow: Vec<Vec<F>> = common.iter().map(|&i| rows[i].clone()).collect();
                if rank(&crow) + 2 != dim {
                    continue;
                }
                let r: Vec<F> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(x, y)| s[p].clone() * x.clone() - s[n].clone() * y.clone())
                    .collect();
                let mut z = common;
                z.push(idx);
                next_rays.push(primitive(&r));
                next_zeros.push(z);
            }
        }
        rays = next_rays;
        zeros = next_zeros;
    }
    rays.sort();
    rays.dedup();
    Some(rays)
}
