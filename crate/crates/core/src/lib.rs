//! Exact computation of the filtered sl(n) Gornik-class invariant of knots.

pub mod chain;
pub mod cube;
pub mod error;
pub mod filtration;
pub mod knots;
pub mod linalg;
pub mod pl;
pub mod poly;
pub mod reduce;
pub mod verify;

pub use error::{Error, Result};
