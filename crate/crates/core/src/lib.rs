pub mod check;
pub mod cli;
pub mod coloured;
pub mod cone;
pub mod criteria;
pub mod error;
pub mod fantastack;
pub mod lattice;
pub mod stacky;

mod linalg;

pub use error::{Error, Result};
