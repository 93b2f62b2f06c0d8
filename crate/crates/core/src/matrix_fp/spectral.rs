use super::matrix::MatrixFp;
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::poly_factor::{factor, Factorization};
use crate::prime_field::{inv_mod, mul_mod, PolyFp};

/// Companion matrix of a monic `f`: ones on the subdiagonal, `-f_0, ..., -f_(n-1)` in the last column.
pub fn companion_matrix(f: &PolyFp) -> Result<MatrixFp> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let m = f.modulus();
    let q = m.get();
    let mut c = MatrixFp::zeros(n, n, m);
    for i in 1..n {
        c.set(i, i - 1, 1);
    }
    for i in 0..n {
        c.set(i, n - 1, (q - f.coeffs()[i]) % q);
    }
    Ok(c)
}

/// Right null space `{v : Mv = 0}`.
pub fn kernel(m: &MatrixFp) -> Subspace {
    let q = m.modulus().get();
    let (r, pivots) = m.rref();
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; m.cols()];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (q - r.get(row, free)) % q;
        }
        basis.push(v);
    }
    Subspace::span(basis, m.cols(), m.modulus()).expect("kernel vectors have the right length")
}

/// `det(tI - M)` via reduction to upper Hessenberg form.
pub fn characteristic_polynomial(m: &MatrixFp) -> Result<PolyFp> {
    let n = m.require_square()?;
    let modulus = m.modulus();
    let q = modulus.get();
    let mut h = m.to_rows();
    let sub = |a: u64, b: u64| (a + q - b) % q;

    for col in 0..n.saturating_sub(2) {
        let piv_row = col + 1;
        let Some(i) = (piv_row..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if i != piv_row {
            h.swap(i, piv_row);
            for row in h.iter_mut() {
                row.swap(i, piv_row);
            }
        }
        let inv = inv_mod(h[piv_row][col], q).expect("nonzero pivot");
        for i in piv_row + 1..n {
            let u = mul_mod(h[i][col], inv, q);
            if u == 0 {
                continue;
            }
            // similarity transform: row_i -= u row_p, then col_p += u col_i
            let pivot = h[piv_row].clone();
            for (x, &y) in h[i].iter_mut().zip(&pivot) {
                *x = sub(*x, mul_mod(u, y, q));
            }
            for row in h.iter_mut() {
                row[piv_row] = (row[piv_row] + mul_mod(u, row[i], q)) % q;
            }
        }
    }

    // p_k = (t - h_kk) p_(k-1) - sum_i h_ik (prod_{j=i+1..k} h_(j,j-1)) p_(i-1)
    let t = PolyFp::t(modulus);
    let mut p: Vec<PolyFp> = vec![PolyFp::one(modulus)];
    for k in 0..n {
        let mut acc = &(&t - &PolyFp::constant(h[k][k], modulus)) * &p[k];
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = mul_mod(prod, h[i + 1][i], q);
            if prod == 0 {
                break;
            }
            let c = mul_mod(h[i][k], prod, q);
            acc = &acc - &p[i].scale(c);
        }
        p.push(acc);
    }
    Ok(p.pop().expect("at least p_0"))
}

/// Minimal polynomial of `v` under `M`, from a Krylov sequence reduced on the fly.
fn local_minimal_polynomial(m: &MatrixFp, v: &[u64]) -> Result<PolyFp> {
    let modulus = m.modulus();
    let q = modulus.get();
    // reduced Krylov vectors with their pivot and the polynomial producing them
    let mut stored: Vec<(Vec<u64>, usize, PolyFp)> = Vec::new();
    let mut w = v.to_vec();
    let mut k = 0usize;
    loop {
        let mut r = w.clone();
        let mut c = PolyFp::monomial(1, k, modulus);
        for (sv, pivot, sc) in &stored {
            let f = r[*pivot];
            if f == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(sv) {
                *x = (*x + q - mul_mod(f, y, q)) % q;
            }
            c = &c - &sc.scale(f);
        }
        match r.iter().position(|&x| x != 0) {
            None => return Ok(c.monic()),
            Some(pivot) => {
                let inv = inv_mod(r[pivot], q).expect("nonzero");
                r.iter_mut().for_each(|x| *x = mul_mod(*x, inv, q));
                // keep stored vectors reduced against the new pivot
                for (sv, _, sc) in stored.iter_mut() {
                    let f = sv[pivot];
                    if f == 0 {
                        continue;
                    }
                    for (x, &y) in sv.iter_mut().zip(&r) {
                        *x = (*x + q - mul_mod(f, y, q)) % q;
                    }
                    *sc = &*sc - &c.scale(mul_mod(f, inv, q));
                }
                stored.push((r, pivot, c.scale(inv)));
            }
        }
        w = m.mul_vec(&w)?;
        k += 1;
    }
}

/// `f(M) v` by Horner's rule on the vector.
pub(crate) fn apply_poly(m: &MatrixFp, f: &PolyFp, v: &[u64]) -> Result<Vec<u64>> {
    let q = m.modulus().get();
    let mut acc = vec![0u64; v.len()];
    for &c in f.coeffs().iter().rev() {
        acc = m.mul_vec(&acc)?;
        for (x, &y) in acc.iter_mut().zip(v) {
            *x = (*x + mul_mod(c, y, q)) % q;
        }
    }
    Ok(acc)
}

/// Monic least-degree annihilator of `M`, as the lcm of the local minimal
/// polynomials of the standard basis vectors. Verified by substitution.
pub fn minimal_polynomial(m: &MatrixFp) -> Result<PolyFp> {
    let n = m.require_square()?;
    let modulus = m.modulus();
    let mut acc = PolyFp::one(modulus);
    for i in 0..n {
        let mut e = vec![0u64; n];
        e[i] = 1;
        // skip vectors already killed by the running lcm
        if apply_poly(m, &acc, &e)?.iter().all(|&x| x == 0) {
            continue;
        }
        acc = acc.lcm(&local_minimal_polynomial(m, &e)?)?;
    }
    if !m.eval_poly(&acc)?.is_zero() {
        return Err(Error::CheckFailed(format!(
            "minimal polynomial {acc} does not annihilate the matrix"
        )));
    }
    Ok(acc)
}

/// One isotypic piece of a semisimple matrix: an irreducible factor `f` of the
/// minimal polynomial and the invariant subspace `ker f(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub factor: PolyFp,
    pub subspace: Subspace,
}

/// Factors the minimal polynomial; fails with `NotSemisimple` on a repeated factor.
pub(crate) fn semisimple_factorization(m: &MatrixFp) -> Result<Factorization> {
    let minpoly = minimal_polynomial(m)?;
    if minpoly.is_constant() {
        // the 0x0 matrix
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let fz = factor(&minpoly, 0)?;
    if fz.factors().iter().any(|(_, mult)| *mult > 1) {
        return Err(Error::NotSemisimple);
    }
    Ok(fz)
}

/// `ker f_i(M)` for each irreducible factor `f_i` of the squarefree minimal polynomial,
/// in canonical factor order.
pub fn primary_decomposition(m: &MatrixFp) -> Result<Vec<PrimaryComponent>> {
    m.require_square()?;
    let fz = semisimple_factorization(m)?;
    let mut out = Vec::new();
    for f in fz.irreducibles() {
        let subspace = kernel(&m.eval_poly(f)?);
        out.push(PrimaryComponent {
            factor: f.clone(),
            subspace,
        });
    }
    Ok(out)
}

/// True iff `M` fixes a nonzero vector.
pub fn has_eigenvalue_one(m: &MatrixFp) -> Result<bool> {
    let n = m.require_square()?;
    let shifted = m.sub(&MatrixFp::identity(n, m.modulus()))?;
    Ok(!kernel(&shifted).is_zero())
}
