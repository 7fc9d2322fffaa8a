//! Faithful completely reducible modules for Lie algebras over prime fields.
//!
//! The crate works with exact arithmetic over `F_p`. Its building blocks are
//! dense matrices and subspaces, Lie algebras given by structure constants,
//! p-maps, p-envelopes, induced modules and a MeatAxe for decomposing
//! modules. [`pipeline`] assembles these into the two constructions, each of
//! which returns a certificate that can be checked independently.

pub mod corpus;
pub mod envelope;
pub mod error;
pub mod field;
pub mod format;
pub mod ideals;
pub mod induced;
pub mod lie;
pub mod matrix;
pub mod meataxe;
pub mod module;
pub mod parallel;
pub mod pipeline;
pub mod poly;
pub mod restricted;
pub mod subspace;

pub use error::{Error, Result};
pub use envelope::{build_envelope, verify_envelope, Envelope, EnvelopeMode};
pub use field::Fp;
pub use lie::LieAlgebra;
pub use matrix::FpMatrix;
pub use module::LieModule;
pub use parallel::Parallelism;
pub use pipeline::{faithful_cr, faithful_cr_restricted, verify_certificate, BoundKind, Certificate, PipelineConfig, SemisimpleModule};
pub use restricted::{PMap, RestrictedAlgebra};
pub use subspace::Subspace;
