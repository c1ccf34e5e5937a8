//! Graded pieces of logarithmic derivation modules, exponents of
//! two-variable multiarrangements, Saito's criterion and presentations.

pub mod derivation;
pub mod exponents;
pub mod pieces;
pub mod presentation;
pub mod saito;

pub use derivation::{pair_index, BiDerivation3, Derivation2, Derivation3};
pub use exponents::{exponents2, ExponentPair};
pub use pieces::{
    d2_piece, d2_restricted_piece, d_piece, dh_piece, dm_piece, is_bi_logarithmic, is_in_dh,
    is_logarithmic, is_multi_logarithmic, restrict_bivector, restrict_derivation, restricted_piece,
    GradedPieceBasis, LogModules, ModuleTag,
};
pub use presentation::{
    default_cap, first_syzygies, minimal_generators, presentation, presentation_with,
    regularity_bound, GeneratorSet, PresentationReport,
};
pub use saito::{coefficient_determinant, saito_check};
