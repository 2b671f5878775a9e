//! Exact construction and verification of quantum Latin squares.
//!
//! Every scalar is a [`RadExt`]: a rational combination of square roots of
//! squarefree integers, so orthonormality, phase equivalence and
//! cardinality are all decided without floating point.

pub mod algebraic;
pub mod claims;
pub mod error;
pub mod generators;
pub mod square;
pub mod synthesis;
pub mod vectors;

pub use algebraic::{Radicand, RadExt, Rational};
pub use error::{Error, Result};
pub use vectors::{CanonicalVector, QVector};
pub use generators::{GeneratorId, OrthoMatrix4};
pub use square::{CardinalityReport, ElementSet, QlsGrid, RowQlr, VerifyReport};
pub use synthesis::{CardinalityRange, Regime, SynthPlan};
pub use claims::{ClaimResult, ClaimsConfig};
