//! Exact-arithmetic toolkit for Lefschetz coincidence invariants of
//! simplicial maps into triangulated compact oriented manifolds.
//!
//! The crate computes rational homology of simplicial pairs with explicit
//! cycle representatives, Poincare-Lefschetz duality, the transfer
//! homomorphism, Lefschetz numbers (plain and generalized), and the
//! coincidence index, all over exact rationals. The coincidence index and
//! the Lefschetz number are computed through independent pipelines so that
//! their equality is a genuine cross-check rather than a tautology.

pub mod coincidence;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod format;
pub mod homology;
pub mod linalg;
pub mod rational;
pub mod simplicial;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
