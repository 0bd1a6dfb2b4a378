//! Exact arithmetic for norm-Euclidean real quadratic fields `Q(sqrt(m))`,
//! `m` in `{2, 3, 6, 7, 11, 19}`.
//!
//! The crate provides, without any floating point:
//!
//! * [`exact`] — radical expressions `x0 + sum c_i * sqrt(y_i)` over the
//!   rationals with a total sign oracle,
//! * [`polysign`] — the sign of a rational polynomial over an interval whose
//!   endpoints are exact numbers,
//! * [`field`] — per-field constants (Euclidean minimum, critical points,
//!   covering pairs) and the norm form `a^2 - m b^2`,
//! * [`hyperbola`] — the branch functions bounding `|norm| = M`, their exact
//!   intersections, and dominance claims reduced to polynomial sign facts,
//! * [`covering`] — covering sets, region certificates, certificate
//!   verification and a certificate search,
//! * [`division`] — rounding, division with remainder norm bounded by the
//!   Euclidean minimum, and gcd in `Z[sqrt(m)]`.
//!
//! Everything in this crate is `no_std` (with `alloc`); IO, the certificate
//! text format and the command line front end live in the companion crate.

#![cfg_attr(not(any(test, feature = "search-trace")), no_std)]

extern crate alloc;

pub mod covering;
pub mod division;
pub mod exact;
pub mod field;
pub mod hyperbola;
pub mod polysign;

pub use exact::{ExactNumber, Rat};
pub use field::FieldData;
