//! Exact computations with MV-algebras over truncated local scalar rings.

pub mod composed;
pub mod error;
pub mod graded;
pub mod json;
pub mod linalg;
pub mod mvcat;
pub mod qme;
pub mod report;
pub mod scalars;
pub mod symalg;

pub use error::{Error, Result};
