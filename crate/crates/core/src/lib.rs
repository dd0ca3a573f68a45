pub mod error;
pub use error::{Error, Result};
pub mod beukers;
pub mod cli;
pub mod expr;
pub mod hyperterm;
pub mod linalg;
mod modp;
pub mod numeric;
pub mod poly;
pub mod potential;
pub mod qseries;
pub mod summation;
pub mod upoly;
