pub mod classunit;
pub mod error;
pub mod exactmath;
pub mod fltscreen;
pub mod idealarith;
pub mod numfield;
pub mod pomeyfrey;

pub use error::{Error, Result};
