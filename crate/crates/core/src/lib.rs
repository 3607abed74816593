//! Exact symbolic construction and randomized verification of nongraded
//! infinite-dimensional Lie (super)algebras built from semigroup algebras
//! over rational lattices.

pub mod block;
pub mod error;
pub mod expr;
pub mod family;
pub mod grpalg;
pub mod iso;
pub mod ham_contact;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod specfile;
pub mod verify;
pub mod weyl;
pub mod witt;

pub use error::{Error, Result};
