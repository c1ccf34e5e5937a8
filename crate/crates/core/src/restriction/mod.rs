//! The restriction maps `ρ^H`, `π^H`, `ρ₂^H`, their graded cokernels, the
//! freeness decision through Ziegler exponents, and the comparisons between
//! all of these and the combinatorics.

pub mod coker;
pub mod freeness;
pub mod maps;
pub mod verdicts;

pub use coker::{
    coker_report, coker_with, yoshinaga_dim, yoshinaga_value, CokernelReport, DegreeRecord,
};
pub use freeness::{
    attach_saito_basis, freeness, freeness_at, freeness_from_contexts, BasisElement,
    FreenessCertificate, FreenessVerdict, NotFreeWitness,
};
pub use maps::{
    image_in_degree, pi_image, plane_context, rho2_image, rho_image, DegreeImage, MapKind,
    PlaneContext,
};
pub use verdicts::{
    analyze, free_cokernel_series, verify_theorems, Analysis, Comparison, PlaneReport, Status,
    Verdict, VerdictReport, VerifyOptions,
};
