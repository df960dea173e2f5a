//! The computable scalar tower: ℚ ⊂ ℚ(i) ⊂ ℚ(i)(t1, t2, t3), plus the
//! Gaussian integers ℤ[i] that power desk-scale factorization.

pub mod elem;
pub mod gaussian;
pub mod gaussint;
pub mod mvpoly;

pub use elem::ScalarElem;
pub use gaussian::{rat, GaussianRational, Rational};
pub use gaussint::{GaussianInteger, DEFAULT_NORM_BOUND};
pub use mvpoly::{MvPoly, MAX_VARS};
