use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::nt::{inv_mod, mul_mod, pow_mod, Prime};
use crate::error::{Error, Result};

/// An element of the prime field F_q, carrying its modulus.
///
/// The binary operators panic when the moduli differ; the `try_*` forms
/// report the mismatch as an error instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: Prime,
}

impl FpElem {
    pub fn new(value: u64, modulus: Prime) -> Self {
        FpElem {
            value: value % modulus.get(),
            modulus,
        }
    }

    /// Reduces a signed integer into `[0, q)`.
    pub fn from_i64(value: i64, modulus: Prime) -> Self {
        let q = modulus.get() as i128;
        FpElem {
            value: (value as i128).rem_euclid(q) as u64,
            modulus,
        }
    }

    pub fn zero(modulus: Prime) -> Self {
        FpElem { value: 0, modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        FpElem::new(1, modulus)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: FpElem) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(())
    }

    pub fn try_add(self, other: FpElem) -> Result<FpElem> {
        self.check(other)?;
        let q = self.modulus.get();
        let s = self.value as u128 + other.value as u128;
        Ok(FpElem::new((s % q as u128) as u64, self.modulus))
    }

    pub fn try_sub(self, other: FpElem) -> Result<FpElem> {
        self.check(other)?;
        self.try_add(-other)
    }

    pub fn try_mul(self, other: FpElem) -> Result<FpElem> {
        self.check(other)?;
        let q = self.modulus.get();
        Ok(FpElem::new(
            mul_mod(self.value, other.value, q),
            self.modulus,
        ))
    }

    pub fn inv(self) -> Result<FpElem> {
        inv_mod(self.value, self.modulus.get())
            .map(|v| FpElem::new(v, self.modulus))
            .ok_or(Error::DivisionByZero(self.modulus.get()))
    }

    pub fn try_div(self, other: FpElem) -> Result<FpElem> {
        self.check(other)?;
        self.try_mul(other.inv()?)
    }

    pub fn pow(self, e: u64) -> FpElem {
        FpElem::new(pow_mod(self.value, e, self.modulus.get()), self.modulus)
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        self.try_add(rhs).expect("F_q addition")
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        self.try_sub(rhs).expect("F_q subtraction")
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        self.try_mul(rhs).expect("F_q multiplication")
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        let q = self.modulus.get();
        FpElem::new(
            if self.value == 0 { 0 } else { q - self.value },
            self.modulus,
        )
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}
