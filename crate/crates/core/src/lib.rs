//! Degenerate Clifford algebras with exact arithmetic.
//!
//! A degenerate quadratic space `V` with a degenerate vector `e0` splits as
//! `W ⊥ F·e0` for any complement `W`. That split lifts to the Clifford
//! algebra: every `X ∈ Cl(V)` is uniquely `Cl(π_W)(X) + Y·e0` with both parts
//! in `Cl(W)`, the ideal `Cl(V)e0` squares to zero, and `Cl(V)` is the twisted
//! trivial extension `Cl(W) ⋉_α Cl(W)`. The same split shows up in the unit
//! group and in the Lie algebra of bivectors, which for Euclidean PGA
//! (`Cl(3,0,1)`) is `se(3)`.
//!
//! Scalars are exact rationals ([`Rational`]) or `f64`.

pub mod clifford;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod pga3d;
pub mod playfair;
pub mod quadratic_space;
pub mod scalar;
pub mod structure;
pub mod verify;

pub use clifford::{Algebra, Blade, LinearEndo, Multivector};
pub use error::{GaError, Result};
pub use quadratic_space::{Complement, QuadraticForm, Subspace, Vector};
pub use scalar::{Rational, Scalar};

/// Largest supported space dimension (4096 blades).
pub const MAX_DIM: usize = 12;
