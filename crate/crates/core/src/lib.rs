//! Logarithmic derivation modules of central plane arrangements in a
//! three-dimensional space, their Euler and Ziegler restriction maps, and the
//! cokernels of those maps, all computed degree by degree in exact
//! arithmetic.

pub mod combinatorics;
pub mod corpus;
pub mod error;
pub mod kernel;
pub mod logmod;
pub mod restriction;

pub use combinatorics::{char_poly, Arrangement, CharPoly};
pub use corpus::{AnyArrangement, CorpusSpec};
pub use error::{Error, Result};
pub use kernel::{Field, FieldDescriptor, PrimeField, Rationals};
pub use restriction::{analyze, Analysis, MapKind, VerifyOptions};
