//! Prime fields F_q, dense polynomials and truncated power series over them.

mod fp;
mod nt;
mod poly;
mod series;

pub use fp::FpElem;
pub use nt::{inv_mod, is_prime, mul_mod, ord_mod, pow_mod, prime_divisors, Prime};
pub use poly::{cyclotomic_mod, poly_gcd, poly_powmod, PolyFp};
pub use series::{binomial_series, SeriesFp};
