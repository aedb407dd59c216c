//! Exact equivariant counting of section weights on the central fibre and
//! interpolation of their polynomial coefficients.

mod count;
mod hilbert;
mod interpolate;

pub use count::{
    count_weights, count_weights_blowup, count_weights_blowup_restricted, count_weights_restricted,
    RestrictedSample, WeightSample,
};
pub use hilbert::{hilbert_relation_check, HilbertRelation};
pub use interpolate::{
    fit_polynomial, interpolate, interpolate_restricted, sample_blowup, sample_blowup_restricted, sample_config,
    sample_config_restricted, sampling_plan, sampling_plan_blowup, CoefficientBundle, RestrictedCoefficients,
    SampledSeries, SamplingPlan, DEFAULT_K_MAX,
};
