//! Arrangement input and output: the JSON input format, built-in
//! arrangements with their known invariants, seeded random corpora and
//! report documents.

mod any;
pub mod builtins;
pub mod generate;
pub mod input;
pub mod report;

pub use any::AnyArrangement;
pub use builtins::{builtin, builtins, Builtin};
pub use generate::{random_arrangement, CorpusSpec};
pub use input::{parse_input, render_input, InputDocument};
pub use report::{
    check_expectations, observations, render_human, report_document, CorpusEntry, Mismatch,
};
