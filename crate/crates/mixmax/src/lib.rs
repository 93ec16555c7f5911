//! MIXMAX matrix-recurrence random number generators over GF(p), plus the
//! analysis machinery used to qualify an operator: spectrum and entropy,
//! hyperbolicity checks, and maximal-period certification over the
//! extension field GF(p^N).
//!
//! The state is a vector of N residues evolved by `a ← A·a mod p`, where A
//! is one of three closed-form integer matrix families with determinant
//! one. Streams support O(N) stepping, jump-ahead by matrix powers for
//! provably disjoint parallel substreams, and bit-exact state
//! serialization.

pub mod dd;
pub mod eigen;
pub mod error;
pub mod factor;
pub mod field;
pub mod galois;
pub mod generator;
pub mod matrix;
pub mod operators;
pub mod scan;
pub mod spectral;
pub mod stats;

pub use error::{Error, Result};
pub use factor::FactorizationOfQ;
pub use field::{Modulus, Residue, MERSENNE61};
pub use galois::{PeriodCertificate, PolyModP};
pub use generator::GeneratorState;
pub use matrix::ResidueMatrix;
pub use operators::{Family, OperatorSpec};
pub use spectral::{EntropyReport, Spectrum};
pub use stats::{PassBand, TestResult};

/// Routes work onto a rayon pool with `n` threads.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) -> std::result::Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}
