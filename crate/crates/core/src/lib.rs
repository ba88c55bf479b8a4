pub mod cli;
pub mod config;
pub mod error;
pub mod field;
pub mod ideals;
pub mod irreducible;
pub mod poly;
pub mod quadlat;
pub mod rings;
pub mod stci;
pub mod verify;

pub use config::Config;
pub use error::{Error, Outcome, Result};
