pub mod alexander;
pub mod braid;
pub mod checks;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod links;
pub mod meta;
pub mod ring;
pub mod tmva;

pub use error::{Error, Result};
