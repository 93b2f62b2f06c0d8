//! Enumeration of `M`-invariant subspaces of a fixed dimension.
//!
//! For semisimple `M` every invariant subspace is a direct sum of pieces, one
//! from each primary component `ker f_i(M)`. On a component the action of `M`
//! makes it a vector space over the residue field `K_i = F_l[t]/(f_i)`, and its
//! invariant subspaces are exactly the `K_i`-subspaces. The algebraic mode
//! enumerates those directly; the brute-force mode walks every RREF basis of
//! the requested dimension and keeps the invariant ones.

use super::matrix::MatrixFp;
use super::spectral::{kernel, semisimple_factorization};
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::prime_field::{mul_mod, PolyFp, Prime};

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    Algebraic,
    BruteForce,
}

/// Number of `d`-dimensional subspaces of `F_q^n` (the Gaussian binomial), saturating.
pub fn gaussian_binomial(n: usize, d: usize, q: u128) -> u128 {
    if d > n {
        return 0;
    }
    // prod_{i<d} (q^(n-i) - 1) / (q^(i+1) - 1), evaluated through the recurrence
    // [n, d] = [n-1, d-1] + q^d [n-1, d]
    let mut row = vec![0u128; d + 1];
    row[0] = 1;
    for m in 1..=n {
        for k in (1..=d.min(m)).rev() {
            let qk = q.checked_pow(k as u32).unwrap_or(u128::MAX);
            row[k] = row[k - 1].saturating_add(qk.saturating_mul(row[k]));
        }
    }
    row[d]
}

/// Every RREF `d x n` matrix over F_q, passed row-wise to `visit`.
fn for_each_rref<F>(n: usize, d: usize, q: u64, mut visit: F) -> Result<()>
where
    F: FnMut(&[Vec<u64>]) -> Result<()>,
{
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        // free slots: (row, col) right of the row's pivot and not a pivot column
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut rows = vec![vec![0u64; n]; d];
        for (r, &c) in pivots.iter().enumerate() {
            rows[r][c] = 1;
        }
        let mut digits = vec![0u64; free.len()];
        loop {
            for (&(r, c), &x) in free.iter().zip(&digits) {
                rows[r][c] = x;
            }
            visit(&rows)?;
            // odometer increment
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
        // next pivot combination in lexicographic order
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if pivots[i] < n - d + i {
                pivots[i] += 1;
                for j in i + 1..d {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn brute_force(m: &MatrixFp, d: usize, budget: u128) -> Result<Vec<Subspace>> {
    let n = m.require_square()?;
    let modulus = m.modulus();
    if d > n {
        return Ok(Vec::new());
    }
    let needed = gaussian_binomial(n, d, modulus.get() as u128);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if d == 0 {
        return Ok(vec![Subspace::zero(n, modulus)]);
    }
    let mut out = Vec::new();
    for_each_rref(n, d, modulus.get(), |rows| {
        let s = Subspace::span(rows.to_vec(), n, modulus)?;
        if s.is_invariant_under(m)? {
            out.push(s);
        }
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

/// A primary component viewed as `K^mult` with `K = F_l[t]/(f)`.
struct IsotypicComponent {
    factor: PolyFp,
    /// Krylov blocks `[v_j, M v_j, ..., M^(e-1) v_j]` for a K-basis `v_1, ..., v_mult`.
    krylov: Vec<Vec<Vec<u64>>>,
}

impl IsotypicComponent {
    fn build(m: &MatrixFp, factor: PolyFp, space: &Subspace) -> Result<Self> {
        let e = factor.degree().unwrap_or(0);
        let n = m.cols();
        let mut covered = Subspace::zero(n, m.modulus());
        let mut krylov = Vec::new();
        for b in space.basis() {
            if covered.contains(b) {
                continue;
            }
            // in an isotypic semisimple module the cyclic span of b is a K-line
            // meeting the span so far trivially
            let mut block = vec![b.clone()];
            for _ in 1..e {
                let next = m.mul_vec(block.last().expect("nonempty"))?;
                block.push(next);
            }
            covered = covered.sum(&Subspace::span(block.clone(), n, m.modulus())?)?;
            krylov.push(block);
        }
        if covered != *space {
            return Err(Error::CheckFailed(
                "primary component is not spanned by cyclic K-lines".into(),
            ));
        }
        Ok(IsotypicComponent { factor, krylov })
    }

    fn degree(&self) -> usize {
        self.factor.degree().unwrap_or(0)
    }

    fn multiplicity(&self) -> usize {
        self.krylov.len()
    }

    /// The F_l-vector `sum_j c_j(M) v_j` for a row `c` of residue-field elements.
    fn realize(&self, row: &[PolyFp], n: usize, q: u64) -> Vec<u64> {
        let mut v = vec![0u64; n];
        for (c, block) in row.iter().zip(&self.krylov) {
            for (&coef, vec) in c.coeffs().iter().zip(block) {
                for (x, &y) in v.iter_mut().zip(vec) {
                    *x = (*x + mul_mod(coef, y, q)) % q;
                }
            }
        }
        v
    }

    /// All invariant subspaces of F_l-dimension `k * degree` inside the component.
    fn subspaces(&self, m: &MatrixFp, k: usize, budget: u128) -> Result<Vec<Subspace>> {
        let n = m.cols();
        let modulus = m.modulus();
        let q = modulus.get();
        let e = self.degree();
        let field_size = (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
        let needed = gaussian_binomial(self.multiplicity(), k, field_size);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        if k == 0 {
            return Ok(vec![Subspace::zero(n, modulus)]);
        }
        let residue = ResidueField::new(&self.factor);
        let mut out = Vec::new();
        residue.for_each_rref(self.multiplicity(), k, |rows| {
            let mut vectors = Vec::with_capacity(k * e);
            for row in rows {
                let mut u = self.realize(row, n, q);
                for _ in 0..e {
                    let next = m.mul_vec(&u)?;
                    vectors.push(std::mem::replace(&mut u, next));
                }
            }
            let s = Subspace::span(vectors, n, modulus)?;
            debug_assert_eq!(s.dim(), k * e);
            out.push(s);
            Ok(())
        })?;
        Ok(out)
    }
}

/// The field F_l[t]/(f) for an irreducible `f`, elements indexed by their base-l digits.
struct ResidueField {
    base: Prime,
    degree: usize,
}

impl ResidueField {
    fn new(f: &PolyFp) -> Self {
        ResidueField {
            base: f.modulus(),
            degree: f.degree().unwrap_or(0),
        }
    }

    fn element(&self, mut index: u128) -> PolyFp {
        let q = self.base.get() as u128;
        let coeffs = (0..self.degree)
            .map(|_| {
                let c = (index % q) as u64;
                index /= q;
                c
            })
            .collect();
        PolyFp::new(coeffs, self.base)
    }

    fn size(&self) -> u128 {
        (self.base.get() as u128).pow(self.degree as u32)
    }

    fn for_each_rref<F>(&self, n: usize, d: usize, mut visit: F) -> Result<()>
    where
        F: FnMut(&[Vec<PolyFp>]) -> Result<()>,
    {
        let size = self.size();
        if size > u64::MAX as u128 {
            return Err(Error::BudgetExceeded {
                needed: size,
                budget: u64::MAX as u128,
            });
        }
        // an RREF over K is an RREF over the index set, with index 1 the unit of K
        for_each_rref(n, d, size as u64, |index_rows| {
            let rows: Vec<Vec<PolyFp>> = index_rows
                .iter()
                .map(|r| r.iter().map(|&x| self.element(x as u128)).collect())
                .collect();
            visit(&rows)
        })
    }
}

fn algebraic(m: &MatrixFp, d: usize, budget: u128) -> Result<Vec<Subspace>> {
    let n = m.require_square()?;
    let modulus = m.modulus();
    if d > n {
        return Ok(Vec::new());
    }
    if d == 0 {
        return Ok(vec![Subspace::zero(n, modulus)]);
    }
    let fz = semisimple_factorization(m)?;
    let mut components = Vec::new();
    for f in fz.irreducibles() {
        let space = kernel(&m.eval_poly(f)?);
        components.push(IsotypicComponent::build(m, f.clone(), &space)?);
    }

    // choose k_i per component with sum k_i * deg f_i = d
    let mut results = Vec::new();
    let mut choice = vec![0usize; components.len()];
    fn search(
        idx: usize,
        remaining: usize,
        comps: &[IsotypicComponent],
        choice: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if idx == comps.len() {
            if remaining == 0 {
                out.push(choice.clone());
            }
            return;
        }
        let e = comps[idx].degree();
        for k in 0..=comps[idx].multiplicity().min(remaining / e) {
            choice[idx] = k;
            search(idx + 1, remaining - k * e, comps, choice, out);
        }
        choice[idx] = 0;
    }
    let mut shapes = Vec::new();
    search(0, d, &components, &mut choice, &mut shapes);

    let mut total = 0u128;
    for shape in shapes {
        let count = shape
            .iter()
            .zip(&components)
            .map(|(&k, c)| {
                let size = (modulus.get() as u128)
                    .checked_pow(c.degree() as u32)
                    .unwrap_or(u128::MAX);
                gaussian_binomial(c.multiplicity(), k, size)
            })
            .fold(1u128, |a, b| a.saturating_mul(b));
        total = total.saturating_add(count);
        if total > budget {
            return Err(Error::BudgetExceeded {
                needed: total,
                budget,
            });
        }
        let mut partial = vec![Subspace::zero(n, modulus)];
        for (&k, comp) in shape.iter().zip(&components) {
            let pieces = comp.subspaces(m, k, budget)?;
            let mut next = Vec::with_capacity(partial.len() * pieces.len());
            for s in &partial {
                for piece in &pieces {
                    next.push(s.sum(piece)?);
                }
            }
            partial = next;
        }
        results.extend(partial);
    }
    results.sort();
    Ok(results)
}

/// All `d`-dimensional `M`-invariant subspaces, sorted canonically.
///
/// `budget` caps the number of candidate bases (brute force) or of produced
/// subspaces (algebraic).
pub fn invariant_subspaces_of_dim(
    m: &MatrixFp,
    d: usize,
    mode: EnumerationMode,
    budget: u128,
) -> Result<Vec<Subspace>> {
    match mode {
        EnumerationMode::Algebraic => algebraic(m, d, budget),
        EnumerationMode::BruteForce => brute_force(m, d, budget),
    }
}
