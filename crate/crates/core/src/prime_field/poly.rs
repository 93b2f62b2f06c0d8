use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::FpElem;
use super::nt::{inv_mod, mul_mod, Prime};
use crate::error::{Error, Result};

/// Dense polynomial over F_q, coefficients lowest degree first.
///
/// Always kept in normal form: no trailing zero coefficients, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    coeffs: Vec<u64>,
    modulus: Prime,
}

impl PolyFp {
    pub fn new(coeffs: Vec<u64>, modulus: Prime) -> Self {
        let q = modulus.get();
        let mut p = PolyFp {
            coeffs: coeffs.into_iter().map(|c| c % q).collect(),
            modulus,
        };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64], modulus: Prime) -> Self {
        let c = coeffs
            .iter()
            .map(|&c| FpElem::from_i64(c, modulus).value())
            .collect();
        PolyFp::new(c, modulus)
    }

    pub fn from_elems(coeffs: &[FpElem], modulus: Prime) -> Result<Self> {
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.modulus() != modulus {
                return Err(Error::ModulusMismatch {
                    left: modulus.get(),
                    right: c.modulus().get(),
                });
            }
            out.push(c.value());
        }
        Ok(PolyFp::new(out, modulus))
    }

    pub fn zero(modulus: Prime) -> Self {
        PolyFp {
            coeffs: Vec::new(),
            modulus,
        }
    }

    pub fn one(modulus: Prime) -> Self {
        PolyFp::constant(1, modulus)
    }

    pub fn constant(c: u64, modulus: Prime) -> Self {
        PolyFp::new(vec![c], modulus)
    }

    /// The indeterminate `t`.
    pub fn t(modulus: Prime) -> Self {
        PolyFp::monomial(1, 1, modulus)
    }

    pub fn monomial(c: u64, degree: usize, modulus: Prime) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        PolyFp::new(coeffs, modulus)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    #[inline]
    fn q(&self) -> u64 {
        self.modulus.get()
    }

    /// Raw coefficient values, lowest degree first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FpElem {
        FpElem::new(self.coeffs.get(i).copied().unwrap_or(0), self.modulus)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that have excluded zero.
    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> PolyFp {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.q()).expect("nonzero leading coefficient");
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: u64) -> PolyFp {
        let q = self.q();
        PolyFp::new(
            self.coeffs.iter().map(|&a| mul_mod(a, c % q, q)).collect(),
            self.modulus,
        )
    }

    fn same_field(&self, other: &PolyFp) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.q(),
                right: other.q(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyFp) -> Result<PolyFp> {
        self.same_field(other)?;
        let q = self.q();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                ((a as u128 + b as u128) % q as u128) as u64
            })
            .collect();
        Ok(PolyFp::new(coeffs, self.modulus))
    }

    pub fn try_sub(&self, other: &PolyFp) -> Result<PolyFp> {
        self.same_field(other)?;
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &PolyFp) -> Result<PolyFp> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(PolyFp::zero(self.modulus));
        }
        let q = self.q() as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % q;
            }
        }
        Ok(PolyFp::new(
            acc.into_iter().map(|c| c as u64).collect(),
            self.modulus,
        ))
    }

    /// Euclidean division: `self = quotient * divisor + remainder` with `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &PolyFp) -> Result<(PolyFp, PolyFp)> {
        self.same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero(self.q()));
        }
        let q = self.q();
        let dd = divisor.deg();
        if self.coeffs.len() <= dd {
            return Ok((PolyFp::zero(self.modulus), self.clone()));
        }
        let lc_inv = inv_mod(divisor.leading(), q).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], lc_inv, q);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let sub = mul_mod(c, b, q);
                rem[k + j] = (rem[k + j] + q - sub) % q;
            }
        }
        rem.truncate(dd);
        Ok((
            PolyFp::new(quot, self.modulus),
            PolyFp::new(rem, self.modulus),
        ))
    }

    pub fn rem(&self, divisor: &PolyFp) -> Result<PolyFp> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; fails unless `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &PolyFp) -> Result<PolyFp> {
        let (quot, rem) = self.div_rem(divisor)?;
        if !rem.is_zero() {
            return Err(Error::CheckFailed(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(quot)
    }

    pub fn divides(&self, other: &PolyFp) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &PolyFp) -> Result<PolyFp> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, u, v)` with `g = u*self + v*other` and `g` monic.
    pub fn ext_gcd(&self, other: &PolyFp) -> Result<(PolyFp, PolyFp, PolyFp)> {
        self.same_field(other)?;
        let m = self.modulus;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyFp::one(m), PolyFp::zero(m));
        let (mut t0, mut t1) = (PolyFp::zero(m), PolyFp::one(m));
        while !r1.is_zero() {
            let (quot, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&quot * &s1);
            let t = &t0 - &(&quot * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = inv_mod(r0.leading(), self.q()).expect("nonzero");
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn lcm(&self, other: &PolyFp) -> Result<PolyFp> {
        if self.is_zero() || other.is_zero() {
            return Ok(PolyFp::zero(self.modulus));
        }
        let g = self.gcd(other)?;
        Ok((&self.exact_div(&g)? * other).monic())
    }

    pub fn derivative(&self) -> PolyFp {
        let q = self.q();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % q, q))
            .collect();
        PolyFp::new(coeffs, self.modulus)
    }

    /// For `f` with `f' = 0`, the unique `g` with `g^q = f`.
    ///
    /// Over a prime field the Frobenius fixes every coefficient, so this only
    /// rescales exponents.
    pub fn qth_root(&self) -> Result<PolyFp> {
        if !self.derivative().is_zero() {
            return Err(Error::CheckFailed(
                "q-th root of a polynomial with f' != 0".into(),
            ));
        }
        let q = self.q() as usize;
        let coeffs = self.coeffs.iter().step_by(q).copied().collect();
        Ok(PolyFp::new(coeffs, self.modulus))
    }

    pub fn eval(&self, x: FpElem) -> FpElem {
        let q = self.q();
        let x = x.value() % q;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (mul_mod(acc, x, q) + c) % q);
        FpElem::new(v, self.modulus)
    }

    pub fn mul_mod(&self, other: &PolyFp, m: &PolyFp) -> Result<PolyFp> {
        self.try_mul(other)?.rem(m)
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, m: &PolyFp) -> Result<PolyFp> {
        self.same_field(m)?;
        if m.is_constant() {
            return Err(Error::ConstantModulus);
        }
        let mut base = self.rem(m)?;
        let mut acc = PolyFp::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> PolyFp {
        let mut acc = PolyFp::one(self.modulus);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self^(q^k) mod m`, iterating the Frobenius `k` times.
    pub fn frobenius_mod(&self, k: usize, m: &PolyFp) -> Result<PolyFp> {
        let q = self.q();
        let mut acc = self.rem(m)?;
        for _ in 0..k {
            acc = acc.pow_mod(q, m)?;
        }
        Ok(acc)
    }

    pub fn to_elems(&self) -> Vec<FpElem> {
        self.coeffs
            .iter()
            .map(|&c| FpElem::new(c, self.modulus))
            .collect()
    }
}

/// Canonical order: by degree, then lexicographically on the lowest-first coefficient tuple.
impl Ord for PolyFp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for PolyFp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &PolyFp {
    type Output = PolyFp;
    fn neg(self) -> PolyFp {
        let q = self.q();
        PolyFp::new(
            self.coeffs.iter().map(|&c| (q - c) % q).collect(),
            self.modulus,
        )
    }
}

impl Add for &PolyFp {
    type Output = PolyFp;
    fn add(self, rhs: &PolyFp) -> PolyFp {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &PolyFp {
    type Output = PolyFp;
    fn sub(self, rhs: &PolyFp) -> PolyFp {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &PolyFp {
    type Output = PolyFp;
    fn mul(self, rhs: &PolyFp) -> PolyFp {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over F_{}", self, self.modulus)
    }
}

/// Monic gcd of two polynomials over the same field.
pub fn poly_gcd(f: &PolyFp, g: &PolyFp) -> Result<PolyFp> {
    f.gcd(g)
}

/// `f^e mod m`; `m` must be nonconstant.
pub fn poly_powmod(f: &PolyFp, e: u64, m: &PolyFp) -> Result<PolyFp> {
    f.pow_mod(e, m)
}

/// `1 + t + ... + t^(p-1)` over F_l.
pub fn cyclotomic_mod(p: Prime, l: Prime) -> Result<PolyFp> {
    if p == l {
        return Err(Error::EqualPrimes(p.get()));
    }
    Ok(PolyFp::new(vec![1; p.get() as usize], l))
}
