//! Exact-arithmetic tools for finite real moment sequences.
//!
//! A window `s_0, ..., s_m` is classified by the signs of its Hankel
//! determinants `D_n = det(s_{i+j})`. When the pattern is degenerate
//! (`D_n > 0` below some `n0`, zero from `n0` on) the window is the moment
//! sequence of a unique measure with `n0` atoms, which [`recovery`] can
//! reconstruct and use to extend the sequence. [`identities`] holds the
//! randomized exact checks for the determinant identities behind that result.
//!
//! Everything is computed over arbitrary-precision rationals. Irrational atoms
//! are carried as isolating intervals and reported as certified enclosures.

pub mod error;
pub mod exact_algebra;
pub mod hankel;
pub mod identities;
pub mod orthopoly;
pub mod recovery;

pub use error::{Error, Result};
pub use exact_algebra::{
    det_exact, parse_rational, poly_eval, refine_root, sturm_isolate, ExactScalar, IsolatingInterval, Matrix,
    RationalInterval, RationalPoly,
};
pub use hankel::{classify, det_sequence, hankel_matrix, is_psd, Classification, InvalidReason, MomentWindow};
pub use orthopoly::{moment_inner_product, monic_orthogonal_poly, orthogonal_poly, MomentForm};
pub use recovery::{extend, measure_moments, reconstruct, AtomValue, CertifiedValue, DiscreteMeasure, DEFAULT_DIGITS};
