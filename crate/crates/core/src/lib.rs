//! Characteristic matrices of small covers over products of simplices,
//! their mod-2 cohomology, and Stiefel–Whitney class computations.

pub mod cli;
pub mod error;
pub mod gf2;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod swclosed;
pub mod verify;
pub mod wdigraph;

pub use error::{Error, Result};
