//! Suzuki-invariant algebraic-geometry codes.
//!
//! The Suzuki curve `y^q + y = x^q0 (x^q + x)` over F_q, q = 2q0^2 = 2^(2m+1),
//! has q^2 + 1 rational points. Taking D to be their sum and E the sum of the
//! remaining F_{q^4}-rational points, this crate builds the codes
//! C_L(E, ℓD) over F_{q^4}: field tower, point enumeration, an explicit
//! Riemann–Roch basis, generator matrices, erasure decoding, duals and
//! invariance under the affine part of the automorphism group.

pub mod automorphism;
pub mod code;
pub mod curve;
pub mod error;
pub mod gf2e;
pub mod linalg;
pub mod riemann_roch;
pub mod selftest;

pub use error::{Error, Result};
