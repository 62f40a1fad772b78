//! Weighted Gaussian spaces, Gauss-Hermite quadrature and Hermite algebra.

pub mod grid;
pub mod hermite;
pub mod quadrature;
pub mod series;
pub mod weight;

pub use grid::GridFunction;
pub use hermite::{coeff_c, eval_h, eval_v, inner_xm_hn};
pub use quadrature::{gauss_hermite_rule, QuadratureRule};
pub use series::{
    convert_a_to_b, convert_b_to_a, parseval_residual, project, Basis, Conversion, HermiteSeries,
};
pub use weight::{inner_product, WeightParam};
