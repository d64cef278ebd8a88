pub mod chain_complex;
pub mod ccz;
pub mod chain_map;
pub mod codes;
pub mod error;
pub mod f2_linalg;
pub mod group_algebra;
pub mod report;
pub mod sim;

pub use error::{Error, Result};
