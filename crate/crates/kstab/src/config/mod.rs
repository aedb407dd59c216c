//! Test configurations: toric degenerations from convex PL functions and
//! normalized blow-ups of `X × P^1` along monomial flag ideals.

mod blowup;
mod bridge;
mod flag;
mod toric_config;

pub use blowup::{flag_blowup, BlowupModel, ExceptionalRay};
pub use bridge::config_to_flag;
pub use flag::MonomialFlagIdeal;
pub use toric_config::{toric_config, Component, ToricTestConfig};
