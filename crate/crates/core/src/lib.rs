//! Exact arithmetic and verification for operators T on polynomial rings
//! that satisfy the Leibniz rule
//!
//! ```text
//! T(p·q) = T(p)·q + p·T(q)
//! ```
//!
//! without any linearity assumption. The crate provides:
//!
//! - a computable scalar field ℚ(i)(t1, t2, t3) with exact arithmetic
//!   ([`scalar`]),
//! - dense and factored univariate polynomials over it ([`poly`]),
//! - Leibniz mappings on scalars — maps φ with φ(ab) = aφ(b) + bφ(a),
//!   including non-additive ones ([`lmap`]),
//! - a zoo of operators on polynomials, compliant and not ([`operator`]),
//! - and analysis passes that check the rule, fingerprint compliant
//!   operators into a canonical representation, rebuild them from the
//!   fingerprint, and classify their degree behaviour ([`analysis`]).
//!
//! Everything outside the pointwise-logarithm operator is exact: no
//! floating point, no tolerances.

// Forwards an owned binary op to the by-reference implementation.
macro_rules! forward_owned_binop {
    ($ty:ty, $trait:ident, $method:ident) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: Self) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

pub mod analysis;
pub mod error;
pub mod lmap;
pub mod operator;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
