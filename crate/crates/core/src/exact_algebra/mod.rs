//! Exact rational arithmetic: scalars, dense polynomials, interval
//! enclosures, matrices and real-root isolation.

pub mod interval;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod sturm;

pub use interval::RationalInterval;
pub use matrix::{char_poly, det_exact, Matrix};
pub use poly::RationalPoly;
pub use scalar::{canonical_string, decimal_string, parse_rational, ExactScalar};
pub use sturm::{refine_root, sturm_isolate, IsolatingInterval};

/// `p(x)`, exactly.
pub fn poly_eval(p: &RationalPoly, x: &ExactScalar) -> ExactScalar {
    p.eval(x)
}
