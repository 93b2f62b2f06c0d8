pub mod covers;
pub mod error;
pub mod group_theory;
pub mod matrix_fp;
pub mod poly_factor;
pub mod prime_field;

pub use error::{Error, Result};
