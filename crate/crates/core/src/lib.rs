pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod cycle;
pub mod monoid;
pub mod reversing;
pub mod solution;
pub mod thompson;
