pub mod bm;
pub mod cartan;
pub mod cli;
pub mod crdaha;
pub mod error;
pub mod hecke;
pub mod koszul;
pub mod linalg;
pub mod moment;
pub mod poly;
pub mod weyl;

pub use error::{Error, Result};
