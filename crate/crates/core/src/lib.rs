pub mod characters;
pub mod error;
pub mod exactnum;
pub mod groups;
pub mod induction;
pub mod mckay;
pub mod reference;
pub mod spectra;
pub mod theorems;

pub use error::{Error, Result};
