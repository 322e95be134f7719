//! Exact arithmetic: rationals, dense matrices, sparse polynomials and
//! affine-linear forms.

pub mod linform;
pub mod matrix;
pub mod poly;
pub mod rat;

pub use linform::LinForm;
pub use matrix::{affine_rank, det_columns, RatMatrix};
pub use poly::{Monomial, Poly};
pub use rat::{format_rat, parse_rat, rat, ratio, Rat};
