pub mod error;
pub mod grading;
pub mod groebner;
mod lp;
pub mod polyring;
pub mod scalars;

pub use error::{Error, Result};
pub mod linalg;
pub mod resolutions;
pub mod pieces;
pub mod complexes;
pub mod localcohomology;
pub mod duality;
pub mod instance;
pub mod cli;
