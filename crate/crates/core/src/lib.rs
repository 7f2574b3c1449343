//! Exact-arithmetic toolkit for weighted blowups.
//!
//! The crate computes, with exact rational arithmetic throughout:
//!
//! * weighted-order valuations, least-weight parts, and weighted degrees of
//!   sparse multivariate polynomials ([`poly`]);
//! * certified local intersection multiplicities at the origin via Macaulay
//!   truncation with a Nakayama stopping certificate, plus an emptiness
//!   certificate for quasihomogeneous systems on weighted projective spaces
//!   ([`localmult`]);
//! * discrepancies, non-canonicity thresholds, the multiplicity
//!   decomposition with non-negative residual, contraction-weight
//!   enumeration for `cA_k` points, and the cyclic-quotient multiplicity
//!   relation ([`blowup`]);
//! * weighted projective space combinatorics: well-formedness, isolating
//!   sets and degree bounds, and point-Jacobian ranks ([`wps`]);
//! * an embedded database of index-1 Fano 3-fold weighted complete
//!   intersections whose certificate data (`−K³`, `l_ic`, `k_cA`) is
//!   recomputed from first principles and diffed against the stored values
//!   ([`fano`]);
//! * seeded random generators for the property suites ([`sampling`]).
//!
//! With the default `parallel` feature, batch verification fans out across
//! threads; disabling it gives a fully sequential build with identical
//! results.

pub mod blowup;
pub mod error;
pub mod fano;
pub mod localmult;
pub mod poly;
pub mod sampling;
pub mod wps;

pub use error::{Error, Result};
