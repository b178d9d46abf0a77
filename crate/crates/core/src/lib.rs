//! Algebraic curvature tensors and their Jacobi / Szabó operators on
//! inner-product spaces of arbitrary signature `(p, q)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`space`]: signature-`(p,q)` linear algebra (bilinear inner product,
//!   unit/null samplers, indefinite Gram–Schmidt, hyperbolic boosts).
//! * [`tensors`]: dense 4- and 5-tensors with curvature symmetries,
//!   constructors, symmetry projection and Ricci contraction.
//! * [`operators`]: Jacobi, higher-order Jacobi and Szabó operators as
//!   matrices together with their spectral fingerprints.
//! * [`checks`]: sampled predicates (Einstein, k-stein, k-Osserman, Szabó,
//!   nilpotency on null vectors, ...) producing [`checks::CheckReport`]s.
//!
//! Basis convention: the timelike directions occupy indices `0..p`, the
//! spacelike ones `p..p+q`. Complex vectors are paired with the
//! complex-*bilinear* extension of the inner product, never the Hermitian one.

pub mod checks;
pub mod error;
pub mod operators;
pub mod space;
pub mod tensors;

pub use error::{CurvatureError, Result};
pub use num_complex::Complex64;
pub use space::{KPlane, Scalar, SignatureSpace};
pub use tensors::{Curv4, Curv5, SymBilinear, SymTrilinear};

/// Real coordinate vector.
pub type RealVector = nalgebra::DVector<f64>;
/// Complex coordinate vector (bilinear pairing).
pub type ComplexVector = nalgebra::DVector<Complex64>;
