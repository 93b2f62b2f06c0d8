//! Factorization of polynomials over prime fields.
//!
//! The pipeline is squarefree reduction, distinct-degree splitting via
//! `gcd(f, t^(q^d) - t)`, then randomized equal-degree splitting. All
//! randomness comes from a caller-supplied seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::prime_field::{prime_divisors, PolyFp, Prime};

/// Monic irreducible factors with multiplicities, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(PolyFp, u32)>,
    modulus: Prime,
}

impl Factorization {
    pub fn factors(&self) -> &[(PolyFp, u32)] {
        &self.factors
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    /// Product of `factor^multiplicity`; equals the monic input.
    pub fn product(&self) -> PolyFp {
        self.factors
            .iter()
            .fold(PolyFp::one(self.modulus), |acc, (f, m)| &acc * &f.pow(*m))
    }

    pub fn irreducibles(&self) -> impl Iterator<Item = &PolyFp> {
        self.factors.iter().map(|(f, _)| f)
    }

    pub fn degree_sum(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, m)| f.degree().unwrap_or(0) * *m as usize)
            .sum()
    }
}

fn nonconstant(f: &PolyFp) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(())
}

/// Monic product of the distinct irreducible factors of `f`.
pub fn squarefree_part(f: &PolyFp) -> Result<PolyFp> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    radical(&f.monic())
}

fn radical(f: &PolyFp) -> Result<PolyFp> {
    if f.is_constant() {
        return Ok(PolyFp::one(f.modulus()));
    }
    let df = f.derivative();
    if df.is_zero() {
        return radical(&f.qth_root()?);
    }
    let g = f.gcd(&df)?;
    // w carries every factor whose multiplicity is prime to q
    let w = f.exact_div(&g)?;
    let mut rest = g;
    loop {
        let y = rest.gcd(&w)?;
        if y.is_constant() {
            break;
        }
        rest = rest.exact_div(&y)?;
    }
    // what remains has all multiplicities divisible by q
    let tail = if rest.is_constant() {
        PolyFp::one(f.modulus())
    } else {
        radical(&rest.qth_root()?)?
    };
    Ok((&w * &tail).monic())
}

fn require_squarefree(f: &PolyFp) -> Result<()> {
    if !f.gcd(&f.derivative())?.is_one() {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// Splits a squarefree monic `f` into `(d, product of its degree-d irreducible factors)`.
pub fn distinct_degree_factorize(f: &PolyFp) -> Result<Vec<(usize, PolyFp)>> {
    nonconstant(f)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    require_squarefree(f)?;
    let m = f.modulus();
    let t = PolyFp::t(m);
    let q = m.get();
    let mut rest = f.clone();
    let mut h = t.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((deg, rest.clone()));
            }
            break;
        }
        d += 1;
        h = h.pow_mod(q, &rest)?;
        let g = rest.gcd(&(&h - &t))?;
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((d, g));
        }
    }
    Ok(out)
}

fn random_poly(rng: &mut ChaCha8Rng, below_degree: usize, m: Prime) -> PolyFp {
    let coeffs = (0..below_degree)
        .map(|_| rng.gen_range(0..m.get()))
        .collect();
    PolyFp::new(coeffs, m)
}

/// One splitting attempt; returns a proper nontrivial divisor of `f` or `None`.
fn split_once(f: &PolyFp, d: usize, rng: &mut ChaCha8Rng) -> Result<Option<PolyFp>> {
    let m = f.modulus();
    let q = m.get();
    let n = f.degree().unwrap_or(0);
    let a = random_poly(rng, n, m);
    if a.is_constant() {
        return Ok(None);
    }
    let candidate = if q == 2 {
        // trace map a + a^2 + ... + a^(2^(d-1)): F_{2^d} -> F_2
        let mut term = a.rem(f)?;
        let mut trace = term.clone();
        for _ in 1..d {
            term = term.mul_mod(&term, f)?;
            trace = &trace + &term;
        }
        trace
    } else {
        // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
        let mut frob = a.rem(f)?;
        let mut norm = frob.clone();
        for _ in 1..d {
            frob = frob.pow_mod(q, f)?;
            norm = norm.mul_mod(&frob, f)?;
        }
        &norm.pow_mod((q - 1) / 2, f)? - &PolyFp::one(m)
    };
    let g = f.gcd(&candidate)?;
    if g.is_constant() || g.degree() == f.degree() {
        return Ok(None);
    }
    Ok(Some(g))
}

fn equal_degree_with_rng(f: &PolyFp, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<PolyFp>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    // each attempt succeeds with probability about 1/2
    for _ in 0..4096 {
        if let Some(g) = split_once(f, d, rng)? {
            let h = f.exact_div(&g)?;
            let mut out = equal_degree_with_rng(&g, d, rng)?;
            out.extend(equal_degree_with_rng(&h, d, rng)?);
            return Ok(out);
        }
    }
    Err(Error::CheckFailed(format!(
        "equal-degree splitting of {f} made no progress"
    )))
}

/// Splits a squarefree monic `f` whose irreducible factors all have degree `d`.
///
/// Cantor-Zassenhaus for odd q, the trace map for q = 2. Factors are returned
/// in canonical order; the random draws are fixed by `seed`.
pub fn equal_degree_factorize(f: &PolyFp, d: usize, seed: u64) -> Result<Vec<PolyFp>> {
    nonconstant(f)?;
    let n = f.degree().unwrap_or(0);
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::MixedDegrees {
            degree: n,
            factor_degree: d,
        });
    }
    let f = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = equal_degree_with_rng(&f, d, &mut rng)?;
    out.sort();
    Ok(out)
}

/// Complete factorization of a nonconstant polynomial into monic irreducibles.
pub fn factor(f: &PolyFp, seed: u64) -> Result<Factorization> {
    nonconstant(f)?;
    let m = f.modulus();
    let target = f.monic();
    let rad = squarefree_part(f)?;
    let mut irreducibles = Vec::new();
    for (i, (d, part)) in distinct_degree_factorize(&rad)?.into_iter().enumerate() {
        let part_seed = seed.wrapping_add(i as u64);
        irreducibles.extend(equal_degree_factorize(&part, d, part_seed)?);
    }
    irreducibles.sort();

    let mut factors = Vec::with_capacity(irreducibles.len());
    let mut rest = target.clone();
    for g in irreducibles {
        let mut mult = 0;
        while g.divides(&rest) {
            rest = rest.exact_div(&g)?;
            mult += 1;
        }
        factors.push((g, mult));
    }
    let fz = Factorization {
        factors,
        modulus: m,
    };
    if !rest.is_one() || fz.product() != target {
        return Err(Error::CheckFailed(format!(
            "factorization of {target} does not multiply back"
        )));
    }
    Ok(fz)
}

/// Rabin's test: `t^(q^n) = t mod f` and `gcd(f, t^(q^(n/r)) - t) = 1` for each prime `r | n`.
pub fn is_irreducible(f: &PolyFp) -> Result<bool> {
    nonconstant(f)?;
    let f = f.monic();
    let n = f.degree().unwrap_or(0);
    let t = PolyFp::t(f.modulus());
    for r in prime_divisors(n as u64) {
        let h = t.frobenius_mod(n / r as usize, &f)?;
        if !f.gcd(&(&h - &t))?.is_one() {
            return Ok(false);
        }
    }
    Ok(t.frobenius_mod(n, &f)? == t.rem(&f)?)
}

/// Trial division by every monic polynomial in increasing canonical order.
///
/// Exponential; intended as an independent oracle for small inputs. Returns
/// `BudgetExceeded` when more than `budget` candidate divisors would be needed.
pub fn trial_division_factor(f: &PolyFp, budget: u128) -> Result<Factorization> {
    nonconstant(f)?;
    let m = f.modulus();
    let q = m.get() as u128;
    let mut rest = f.monic();
    let mut factors: Vec<(PolyFp, u32)> = Vec::new();
    let mut spent = 0u128;
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        let count = q.checked_pow(d as u32).unwrap_or(u128::MAX);
        spent = spent.saturating_add(count);
        if spent > budget {
            return Err(Error::BudgetExceeded {
                needed: spent,
                budget,
            });
        }
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                coeffs.push((x % q) as u64);
                x /= q;
            }
            coeffs.push(1);
            let g = PolyFp::new(coeffs, m);
            let mut mult = 0;
            while g.divides(&rest) {
                rest = rest.exact_div(&g)?;
                mult += 1;
            }
            if mult > 0 {
                factors.push((g, mult));
            }
        }
        d += 1;
    }
    if !rest.is_constant() {
        // a leftover of degree < 2d has no factor of degree < d, so it is irreducible
        match factors.iter_mut().find(|(g, _)| *g == rest) {
            Some(entry) => entry.1 += 1,
            None => factors.push((rest, 1)),
        }
    }
    factors.sort();
    Ok(Factorization {
        factors,
        modulus: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_field::{cyclotomic_mod, ord_mod};

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn poly(c: &[i64], q: u64) -> PolyFp {
        PolyFp::from_i64s(c, pr(q))
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(
            squarefree_part(&poly(&[1, -2, 1], 3)).unwrap(),
            poly(&[-1, 1], 3)
        );
        let phi7 = cyclotomic_mod(pr(7), pr(2)).unwrap();
        assert_eq!(squarefree_part(&phi7).unwrap(), phi7);
        assert_eq!(
            squarefree_part(&poly(&[0, 0, 1], 2)).unwrap(),
            poly(&[0, 1], 2)
        );
        assert_eq!(
            squarefree_part(&PolyFp::zero(pr(2))),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree_with_qth_power_parts() {
        // (t+1)^3 (t+2)^4 t over F_3: multiplicity 3 needs the root extraction
        let f = &(&poly(&[1, 1], 3).pow(3) * &poly(&[2, 1], 3).pow(4)) * &poly(&[0, 1], 3);
        let expected = &(&poly(&[1, 1], 3) * &poly(&[2, 1], 3)) * &poly(&[0, 1], 3);
        assert_eq!(squarefree_part(&f).unwrap(), expected);
    }

    #[test]
    fn ddf_examples() {
        let phi7 = cyclotomic_mod(pr(7), pr(2)).unwrap();
        assert_eq!(distinct_degree_factorize(&phi7).unwrap(), vec![(3, phi7)]);
        let phi3 = cyclotomic_mod(pr(3), pr(2)).unwrap();
        assert_eq!(distinct_degree_factorize(&phi3).unwrap(), vec![(2, phi3)]);
        let f = poly(&[0, 1, 1], 2);
        assert_eq!(distinct_degree_factorize(&f).unwrap(), vec![(1, f)]);
        assert_eq!(
            distinct_degree_factorize(&poly(&[1, 0, 1], 2)),
            Err(Error::NotSquarefree)
        );
    }

    #[test]
    fn edf_examples() {
        let phi7 = cyclotomic_mod(pr(7), pr(2)).unwrap();
        assert_eq!(
            equal_degree_factorize(&phi7, 3, 0).unwrap(),
            vec![poly(&[1, 0, 1, 1], 2), poly(&[1, 1, 0, 1], 2)]
        );
        let phi3 = poly(&[1, 1, 1], 2);
        assert_eq!(equal_degree_factorize(&phi3, 2, 0).unwrap(), vec![phi3]);
        // primitive 5th roots of unity in F_11 are 3, 4, 5, 9
        let phi5 = cyclotomic_mod(pr(5), pr(11)).unwrap();
        let roots: Vec<PolyFp> = [3, 4, 5, 9].iter().map(|&r| poly(&[-r, 1], 11)).collect();
        let mut expected = roots;
        expected.sort();
        assert_eq!(equal_degree_factorize(&phi5, 1, 0).unwrap(), expected);
        assert_eq!(
            equal_degree_factorize(&phi7, 4, 0),
            Err(Error::MixedDegrees {
                degree: 6,
                factor_degree: 4
            })
        );
    }

    #[test]
    fn factor_examples() {
        let phi7 = cyclotomic_mod(pr(7), pr(2)).unwrap();
        let fz = factor(&phi7, 0).unwrap();
        assert_eq!(
            fz.factors(),
            &[(poly(&[1, 0, 1, 1], 2), 1), (poly(&[1, 1, 0, 1], 2), 1)]
        );
        let phi5 = cyclotomic_mod(pr(5), pr(2)).unwrap();
        let fz = factor(&phi5, 0).unwrap();
        assert_eq!(fz.factors(), &[(phi5, 1)]);
        for p in [2u64, 3, 5, 7] {
            let mut c = vec![0i64; p as usize + 1];
            c[1] = -1;
            c[p as usize] = 1;
            let fz = factor(&poly(&c, p), 0).unwrap();
            assert_eq!(fz.factors().len(), p as usize);
            assert!(fz.irreducibles().all(|g| g.degree() == Some(1)));
        }
    }

    #[test]
    fn factor_with_multiplicities() {
        let f = &(&poly(&[1, 1], 2).pow(5) * &poly(&[1, 1, 1], 2).pow(2)) * &poly(&[1, 0, 1, 1], 2);
        let fz = factor(&f, 3).unwrap();
        assert_eq!(
            fz.factors(),
            &[
                (poly(&[1, 1], 2), 5),
                (poly(&[1, 1, 1], 2), 2),
                (poly(&[1, 0, 1, 1], 2), 1)
            ]
        );
        assert_eq!(fz.product(), f);
        assert_eq!(fz.degree_sum(), 12);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&poly(&[1, 1, 1], 2)).unwrap());
        assert!(!is_irreducible(&poly(&[1, 0, 1], 2)).unwrap());
        assert!(is_irreducible(&poly(&[1, 1, 0, 1], 2)).unwrap());
        assert!(!is_irreducible(&cyclotomic_mod(pr(7), pr(2)).unwrap()).unwrap());
    }

    #[test]
    fn cyclotomic_factor_degrees_small_grid() {
        for p in [3u64, 5, 7, 11, 13] {
            for l in [2u64, 3, 5] {
                if p == l {
                    continue;
                }
                let a = ord_mod(pr(l), pr(p)).unwrap() as usize;
                let fz = factor(&cyclotomic_mod(pr(p), pr(l)).unwrap(), 0).unwrap();
                assert_eq!(fz.factors().len(), (p as usize - 1) / a);
                assert!(fz.irreducibles().all(|g| g.degree() == Some(a)));
            }
        }
    }

    #[test]
    fn trial_division_agrees() {
        let f = poly(&[1, 2, 0, 1, 1, 0, 2, 1], 3);
        assert_eq!(
            trial_division_factor(&f, 1 << 20).unwrap(),
            factor(&f, 0).unwrap()
        );
        assert!(matches!(
            trial_division_factor(&cyclotomic_mod(pr(23), pr(13)).unwrap(), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
