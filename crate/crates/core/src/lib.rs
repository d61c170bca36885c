//! Chebyshev pseudospectral line search (CPSLSM) and a modified BFGS driver.
//!
//! The crate is organized around the pieces of the method:
//!
//! - [`chebyshev`] — Chebyshev polynomials, CGL grids, discrete transforms,
//!   and closed-form evaluation of arbitrary-order Chebyshev derivatives.
//! - [`cpsdm`] — full and single-row Chebyshev pseudospectral differentiation
//!   operators built with the negative sum trick.
//! - [`cubic`] — monomial assembly of the interpolant derivative, Viete's
//!   trigonometric cubic solver, root classification, and root conditioning.
//! - [`line_search`] — the adaptive line search itself: uncertainty-interval
//!   location, one-step golden section reduction, Newton and secant inner
//!   iterations driven by row differentiation operators, and a Brent fallback.
//! - [`multivariate`] — a modified BFGS loop with Sherman-Morrison inverse
//!   updates that uses the line search for its step lengths.
//!
//! All functions are pure; constructed values are immutable and safe to share
//! across threads. The only internal mutability is a construction-time
//! coefficient cache behind a `OnceLock`.
//!
//! # Example
//!
//! ```
//! use cpslsm::line_search::{cpslsm_minimize, LineSearchConfig, Objective1D};
//!
//! let objective = Objective1D::new(|t: f64| t.cos() + (t - 2.0) * (t - 2.0));
//! let state = cpslsm_minimize(&objective, 0.0, 5.0, &LineSearchConfig::default()).unwrap();
//! assert!((state.t_star - 2.35424275822278).abs() < 1e-8);
//! ```

// index loops mirror the summation formulas throughout
#![allow(clippy::needless_range_loop)]

pub mod chebyshev;
pub mod cpsdm;
pub mod cubic;
mod error;
pub mod line_search;
pub mod multivariate;

pub use error::Error;
