//! Exact symbolic toolkit for the Severi strata of quasihomogeneous plane
//! curve singularities.
//!
//! The pipeline runs
//! [`singularity`] → [`jacobian`] → [`period`] → [`strata`], with
//! [`groebner`] supplying bases, dimensions, degrees and free resolutions
//! and [`laurent`] the series arithmetic behind the intersection form.

pub mod arith;
pub mod error;
pub mod groebner;
pub mod jacobian;
pub mod laurent;
pub mod period;
pub mod singularity;
pub mod strata;

pub use error::{Error, Result};
