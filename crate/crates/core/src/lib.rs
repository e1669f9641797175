pub mod error;
pub mod extensions;
pub mod fields;
pub mod filtration;
pub mod modulus;
pub mod symbols;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
