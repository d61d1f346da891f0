//! Distance-spectral sufficient conditions for graph factors, checked
//! against exact combinatorial oracles.

pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod quotient;
pub mod certify;
pub mod cli;
pub mod enumerate;
pub mod factors;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::Graph;
