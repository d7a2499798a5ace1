//! The Weierstrass semigroup at P∞ and an explicit basis of L(ℓD), where D is
//! the sum of all F_q-rational points.
//!
//! Since div(x^q + x) = -q^2 P∞ + (D - P∞), multiplication by (x^q + x)^ℓ maps
//! L(ℓD) onto L(ℓ(q^2+1) P∞). Every n <= ℓ(q^2+1) in the semigroup has a unique
//! representation a q + b(q+q0) + c(q+2q0) + d(q+2q0+1) + r q^2 with
//! a < q, b < 2, c < q0, d < q0 and r <= ℓ; the corresponding functions
//! x^a y^b z^c w^d (x^q+x)^(r-ℓ) form the basis.

mod basis;
mod eval;
mod semigroup;

pub use basis::{decompose, expected_dimension, Monomial, RRBasis};
pub use eval::{eval_monomial, PointCache};
pub use semigroup::Semigroup;
