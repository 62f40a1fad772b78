//! Numerical tools for the equation phi^p = K phi, where K is convolution
//! with the unit Gaussian e^{-(t-tau)^2} / sqrt(pi).

pub mod basis;
pub mod bvp;
pub mod error;
pub mod fmt;
pub mod gaussop;
pub mod heatflow;
pub mod quad;
pub mod special;
pub mod tachyon_solver;

pub use error::{Error, Result};
