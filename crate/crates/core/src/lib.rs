//! Exact construction of nilpotent Lie algebras and decision procedures for
//! the existence of ad-invariant metrics on them.

pub mod analysis;
pub mod forms;
pub mod graphs;
pub mod hall;
pub mod iso;
pub mod lie;
pub mod linalg;
mod modular;
pub mod obstructions;
pub mod parabolic;
mod poly;
pub mod roots;
pub mod scan;

pub use hall::free_nilpotent;
pub use lie::{direct_sum, BracketEntry, LieAlgebra, LieError, SeriesReport};
pub use linalg::{MatrixQ, Rational, Subspace};
