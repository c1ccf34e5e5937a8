//! Arrangements, intersection lattices, characteristic polynomials and the
//! Euler and Ziegler restrictions to a plane.

pub mod arrangement;
pub mod lattice;
pub mod restrict;

pub use arrangement::{format_form, normalize, Arrangement, LinearForm};
pub use lattice::{char_poly, intersection_lattice, CharPoly, FlatLattice, LineFlat};
pub use restrict::{
    euler_restriction, lp_from_size, lp_invariant, multiplicity_of, ziegler_multiplicity, Chart,
    Multiplicity, RestrictedArrangement,
};
