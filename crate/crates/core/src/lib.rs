//! Exact computations on triple systems with a multiplicative basis:
//! identity checks, the Lie-deviation ideal, connections of basis indices,
//! the induced direct-sum decomposition and minimality.
//!
//! Everything is generic over an exact field [`Scalar`]; [`Rational`] is the
//! arbitrary-precision default and [`Rational64`] a fast fixed-width variant.

pub mod catalog;
pub mod cli;
pub mod connect;
pub mod decompose;
pub mod error;
pub mod format;
pub mod identities;
pub mod jideal;
pub mod leibniz;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod system;
mod union_find;

pub use connect::{ConnectionMode, ConnectionWitness, MarkedIndex, Partition};
pub use decompose::{Component, DecompositionReport, MinimalityVerdict, Verdict};
pub use error::{ConnectError, DecomposeError, ExactError, FormatError, SplitError, SystemError};
pub use identities::{Family, IdentityReport};
pub use jideal::{IdealWitness, SplitMode, SplitSystem};
pub use leibniz::BilinearTable;
pub use linalg::{RowSpace, Vector};
pub use scalar::Scalar;
pub use system::{Entry, Product, Slot, Triple, TripleSystem};

pub type Rational = num_rational::BigRational;
pub type Rational64 = num_rational::Rational64;
