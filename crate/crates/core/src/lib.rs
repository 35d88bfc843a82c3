pub mod cli;
pub mod ellcurve;
pub mod error;
pub mod exactring;
pub mod family;
pub mod glueconstruct;
pub mod projline;

pub use error::{Error, Result};
