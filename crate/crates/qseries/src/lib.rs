//! Exact q-series engine.
//!
//! Expands infinite q-products as truncated Laurent series over arbitrary-
//! precision integers, provides Ramanujan theta series and bivariate
//! quadratic-form sums, extracts arithmetic progressions of coefficients,
//! and machine-checks families of vanishing and coefficient-equality
//! identities.  Every coefficient inside a result's stated window is exact.

pub mod dsl;
pub mod error;
pub mod products;
pub mod report;
pub mod rr;
pub mod series;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use series::Series;
