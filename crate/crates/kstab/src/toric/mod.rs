//! Fans, torus-invariant divisors, nefness, intersection numbers,
//! discrepancies and twisted slopes.

mod fan;
mod polarized;
mod singular;

pub use fan::{Fan, ToricDivisor};
pub use polarized::{normal_fan, twisted_slope, PolarizedToric, Slope};
pub use singular::{discrepancy, lct_newton, newton_contains, newton_facets};
pub(crate) use polarized::facets;
pub(crate) use singular::newton_truncation;
