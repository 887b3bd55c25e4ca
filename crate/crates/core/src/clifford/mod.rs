//! Blade-indexed Clifford algebra arithmetic over a diagonal working basis.

mod algebra;
mod blade;
mod endo;
mod multivector;

pub use algebra::Algebra;
pub use blade::Blade;
pub use endo::{clifford_extend, grade_involution_endo, left_mul_matrix, LinearEndo};
pub use multivector::{format_terms, Multivector};
