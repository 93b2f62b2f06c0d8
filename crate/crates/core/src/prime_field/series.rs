use super::fp::FpElem;
use super::nt::{inv_mod, mul_mod, Prime};
use crate::error::{Error, Result};

/// Power series over F_p truncated after degree `N`; always stores exactly `N + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesFp {
    coeffs: Vec<u64>,
    modulus: Prime,
}

impl SeriesFp {
    pub fn new(mut coeffs: Vec<u64>, truncation_order: usize, modulus: Prime) -> Self {
        let q = modulus.get();
        coeffs.resize(truncation_order + 1, 0);
        coeffs.iter_mut().for_each(|c| *c %= q);
        SeriesFp { coeffs, modulus }
    }

    pub fn zero(truncation_order: usize, modulus: Prime) -> Self {
        SeriesFp::new(Vec::new(), truncation_order, modulus)
    }

    pub fn one(truncation_order: usize, modulus: Prime) -> Self {
        SeriesFp::new(vec![1], truncation_order, modulus)
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FpElem {
        FpElem::new(self.coeffs.get(k).copied().unwrap_or(0), self.modulus)
    }

    fn check(&self, other: &SeriesFp) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "truncation orders {} and {}",
                self.truncation_order(),
                other.truncation_order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SeriesFp) -> Result<SeriesFp> {
        self.check(other)?;
        let q = self.modulus.get();
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        Ok(SeriesFp::new(c, self.truncation_order(), self.modulus))
    }

    pub fn sub(&self, other: &SeriesFp) -> Result<SeriesFp> {
        self.check(other)?;
        let q = self.modulus.get();
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + q - b) % q)
            .collect();
        Ok(SeriesFp::new(c, self.truncation_order(), self.modulus))
    }

    pub fn mul(&self, other: &SeriesFp) -> Result<SeriesFp> {
        self.check(other)?;
        let q = self.modulus.get();
        let n = self.coeffs.len();
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, q)) % q;
            }
        }
        Ok(SeriesFp::new(out, n - 1, self.modulus))
    }

    pub fn pow(&self, e: u32) -> SeriesFp {
        let mut acc = SeriesFp::one(self.truncation_order(), self.modulus);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field and order");
        }
        acc
    }

    /// Substitutes `x -> x^k`, keeping the truncation order.
    pub fn substitute_power(&self, k: usize) -> SeriesFp {
        let n = self.truncation_order();
        let mut out = vec![0u64; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(k) {
                Some(d) if d <= n => out[d] = c,
                _ => break,
            }
        }
        SeriesFp::new(out, n, self.modulus)
    }

    /// Multiplies by `x^k`, dropping terms beyond the truncation order.
    pub fn shift(&self, k: usize) -> SeriesFp {
        let n = self.truncation_order();
        let mut out = vec![0u64; k.min(n + 1)];
        out.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)));
        SeriesFp::new(out, n, self.modulus)
    }

    /// Index of the first nonzero coefficient, if any survives truncation.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }
}

/// Base-p digits of the p-adic integer `num/den`, lowest first.
fn padic_digits(num: i64, den: i64, p: u64, count: usize) -> Vec<u64> {
    let pi = p as i128;
    let den_inv = inv_mod((den as i128).rem_euclid(pi) as u64, p).expect("den prime to p") as i128;
    let mut n = num as i128;
    let d = den as i128;
    let mut digits = Vec::with_capacity(count);
    for _ in 0..count {
        let digit = (n.rem_euclid(pi) * den_inv).rem_euclid(pi);
        digits.push(digit as u64);
        // exact: n - digit*den is divisible by p
        n = (n - digit * d) / pi;
    }
    digits
}

/// `C(a, b) mod p` for `0 <= a, b < p`, by the falling-factorial product.
fn small_binomial(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let mut c = 1u64;
    for j in 0..b {
        c = mul_mod(c, a - j, p);
        c = mul_mod(c, inv_mod(j + 1, p).expect("j + 1 < p"), p);
    }
    c
}

/// `(1 + x)^(num/den)` over F_p, truncated after degree `n`.
///
/// The exponent is read as a p-adic integer. Below degree `p` the coefficients
/// are the falling-factorial binomials of `num * den^-1 mod p`; from degree `p`
/// on Lucas' theorem is applied to the p-adic digits of the exponent, which is
/// where the naive recurrence would divide by zero.
pub fn binomial_series(num: i64, den: i64, p: Prime, n: usize) -> Result<SeriesFp> {
    let q = p.get();
    if den == 0 || (den as i128).rem_euclid(q as i128) == 0 {
        return Err(Error::DenominatorDivisibleByP { den, p: q });
    }
    let mut digit_count = 1;
    let mut reach = q as u128;
    while reach <= n as u128 {
        reach *= q as u128;
        digit_count += 1;
    }
    let alpha = padic_digits(num, den, q, digit_count);
    let coeffs = (0..=n as u64)
        .map(|k| {
            let mut k = k;
            let mut c = 1u64;
            for &a in &alpha {
                c = mul_mod(c, small_binomial(a, k % q, q), q);
                k /= q;
                if c == 0 || k == 0 {
                    break;
                }
            }
            c
        })
        .collect();
    Ok(SeriesFp::new(coeffs, n, p))
}
