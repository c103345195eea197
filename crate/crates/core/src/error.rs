//! Shared error type for carrier construction and checked operations.

use thiserror::Error;

/// Errors raised by constructors and checked operations.
///
/// Law violations discovered by the checkers are *not* errors; they are
/// reported as data in [`crate::report::LawReport`] / [`crate::report::DomainReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MvError {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("invalid unit: {0}")]
    InvalidUnit(String),
    #[error("{value} is not a member of {carrier}")]
    NotAMember { carrier: String, value: String },
    #[error("unsupported carrier for {operation}: {carrier}")]
    UnsupportedCarrier {
        operation: &'static str,
        carrier: String,
    },
    #[error("not a module: scalar {scalar} maps group generator {generator} outside the carrier")]
    NotAModule { scalar: String, generator: String },
    #[error("not a homomorphism: {0}")]
    NotAHom(String),
    #[error("carrier is not product-closed: {0}")]
    NotProductClosed(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("restriction error: {0}")]
    Restriction(String),
    #[error("universal property violated: {0}")]
    UniversalProperty(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, MvError>;
