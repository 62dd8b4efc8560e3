//! Quantum cohomology of complex Grassmannians over exact fields.

pub mod degree_zero;
pub mod diagram;
pub mod error;
pub mod exactfield;
pub mod gelfand_cetlin;
pub mod mpoly;
pub mod numtheory;
pub mod presentation;
pub mod qh;

pub use error::{Error, Result};
