//! Elementary number theory on machine integers.

use crate::error::{Error, Result};

/// A verified prime, used as the modulus of every field type in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(n: u64) -> Result<Self> {
        if is_prime(n) {
            Ok(Prime(n))
        } else {
            Err(Error::NotPrime(n))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime `m`, or `None` for zero.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let a = a % m;
    if a == 0 {
        return None;
    }
    // extended Euclid on signed 128-bit values
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin; the witness set is exact for every n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `l` modulo the prime `p`: the least `a >= 1` with `l^a = 1 (mod p)`.
///
/// The order divides `p - 1`, so it is found by stripping prime factors off `p - 1`.
pub fn ord_mod(l: Prime, p: Prime) -> Result<u64> {
    if l == p {
        return Err(Error::EqualPrimes(l.get()));
    }
    let (l, p) = (l.get(), p.get());
    let mut order = p - 1;
    for q in prime_divisors(p - 1) {
        while order % q == 0 && pow_mod(l, order / q, p) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..n)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    fn naive_order(l: u64, p: u64) -> u64 {
        let mut x = l % p;
        let mut k = 1;
        while x != 1 {
            x = x * l % p;
            k += 1;
        }
        k
    }

    #[test]
    fn primality_small_cases() {
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(2_147_483_647));
        assert!(is_prime(18_446_744_073_709_551_557));
        // strong pseudoprime to bases 2..=11
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(4_294_967_297));
    }

    #[test]
    fn order_examples() {
        let pr = |n| Prime::new(n).unwrap();
        assert_eq!(ord_mod(pr(2), pr(7)).unwrap(), 3);
        assert_eq!(ord_mod(pr(2), pr(3)).unwrap(), 2);
        assert_eq!(ord_mod(pr(11), pr(5)).unwrap(), 1);
        assert_eq!(ord_mod(pr(5), pr(5)), Err(Error::EqualPrimes(5)));
    }

    #[test]
    fn order_matches_naive_and_divides() {
        let primes: Vec<u64> = (2..60).filter(|&n| trial_division(n)).collect();
        for &p in &primes {
            for &l in &primes {
                if l == p {
                    continue;
                }
                let a = ord_mod(Prime::new(l).unwrap(), Prime::new(p).unwrap()).unwrap();
                assert_eq!(a, naive_order(l, p));
                assert_eq!((p - 1) % a, 0);
            }
        }
    }

    #[test]
    fn inverses() {
        for a in 1..13 {
            let inv = inv_mod(a, 13).unwrap();
            assert_eq!(a * inv % 13, 1);
        }
        assert_eq!(inv_mod(0, 13), None);
    }
}
