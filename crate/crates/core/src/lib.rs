pub mod error;
pub mod gowers;
pub mod nilgroup;
pub mod nilseq;
pub mod pipeline;
pub mod polyalg;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
