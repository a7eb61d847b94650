//! Exact computational toolkit for flag complexes with prescribed torsion in
//! first homology.
//!
//! The crate builds the telescope-and-sphere family `X_m` (a two-dimensional
//! flag complex whose `H_1` torsion subgroup is `Z/mZ` with vertex degrees at
//! most 12), certifies every combinatorial and homological property of the
//! construction with exact integer arithmetic, computes graded Betti tables of
//! Stanley-Reisner rings over `Q` and prime fields through the induced
//! subcomplex scan, and runs seeded Monte Carlo experiments on the appearance
//! of torsion-carrying induced subcomplexes in random flag complexes.
//!
//! All linear algebra is exact: Smith normal forms over arbitrary-precision
//! integers, and Gaussian ranks generic over an exact coefficient field
//! ([`matrix::FieldOps`]), instantiated at `Q` and at `F_p` for runtime primes.

pub mod betti;
pub mod complex;
pub mod construct;
pub mod density;
pub mod experiment;
pub mod graph;
pub mod homology;
pub mod json;
pub mod matrix;
pub mod random;
pub mod reproduce;
pub mod search;
pub mod snf;

/// Arbitrary-precision integer used by every exact kernel.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Machine rational for densities and other small exact ratios.
pub type Ratio64 = num_rational::Rational64;

pub use complex::{FVector, SimplicialComplex};
pub use graph::{Graph, VertexId};
pub use homology::HomologyGroup;
pub use snf::SmithForm;

/// Errors surfaced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("input exceeds feasibility guard: {0}")]
    Guard(String),
    /// A builder's self-verification failed. Never returned silently: the
    /// offending assertion is named in the message.
    #[error("construction integrity: {0}")]
    ConstructionIntegrity(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
