//! Donaldson-Futaki invariants, norms and functionals of test
//! configurations, by coefficient interpolation and by intersection theory.

mod coefficients;
mod intersection;
mod report;

pub use coefficients::{
    df_twisted_coefficients, df_untwisted, l2_norm, min_norm_components, min_norm_j_l, tilde_a0_boundary,
    tilde_b0_boundary, tilde_b0_identity,
};
pub use intersection::{
    component_in_divisor, df_log, df_twisted_intersection, exceptional_multiplicities, hat_a0, hat_b0, j_functional,
    min_norm_intersection, normalization, s_coefficient, support_dimension, uniform_margin,
};
pub use report::{evaluate_config, evaluate_flag, InvariantReport, MinNormRoutes, Provenance, Twisting};
