//! Fixtures shared by the benchmarks.

use logres_core::combinatorics::Arrangement;
use logres_core::corpus::builtin;
use logres_core::kernel::field::{PrimeField, Rationals};

/// A built-in arrangement over the rationals.
pub fn rational(name: &str) -> Arrangement<Rationals> {
    let b = builtin(name).expect("known builtin");
    Arrangement::from_i64(Rationals, b.forms).expect("valid builtin")
}

/// The same coefficients reduced modulo `p`.
pub fn modular(name: &str, p: u64) -> Arrangement<PrimeField> {
    let b = builtin(name).expect("known builtin");
    Arrangement::from_i64(PrimeField::new(p).expect("prime"), b.forms).expect("valid builtin")
}
