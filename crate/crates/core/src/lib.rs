pub mod construct;
pub mod digraph;
pub mod experiments;
pub mod error;
pub mod f2;
pub mod par;
pub mod solver;

pub use error::{Error, Result};
