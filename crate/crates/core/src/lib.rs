pub mod error;
pub mod exactalg;
pub mod quadform;
pub mod corr;
pub mod residue;
pub mod cancel;
pub mod par;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
