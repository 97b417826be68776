//! Exact intersection numbers on complete intersections in projective space
//! and on their jet towers, with positivity certificates and effective degree
//! bounds.

pub mod acceptance;
pub mod bounds;
pub mod chow;
pub mod cli;
pub mod error;
pub mod jet;
pub mod poly;
pub mod ring;
pub mod schur;
pub mod vecfields;

pub use error::{Error, Result};
pub use poly::{Degree, MultidegreePoly};
