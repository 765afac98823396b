pub mod algebra;
pub mod error;
pub mod exec;
pub mod families;
pub mod family;
pub mod monic;
pub mod pde;
pub mod relations;
pub mod rodrigues;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
