//! Exact arithmetic foundation: fields, dense linear algebra and
//! homogeneous polynomials.

pub mod field;
mod fraction_free;
pub mod linalg;
pub mod poly;

pub use field::{Field, FieldDescriptor, FieldKind, PrimeField, Rationals};
pub use linalg::{nullspace, quotient_dim, rref, Echelon, Matrix, Rref};
pub use poly::{poly_linear_change, power_divisibility_conditions, HomoPoly};
