//! Semidirect products `(Z/lZ)^b x| Z/pZ` given by an action matrix of order dividing p.
//!
//! Elements are pairs `(v, c)` with `v` in F_l^b and `c` in Z/pZ, multiplied as
//! `(v1, c1)(v2, c2) = (v1 + A^c1 v2, c1 + c2)`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::matrix_fp::{companion_matrix, MatrixFp};
use crate::poly_factor::factor;
use crate::prime_field::{cyclotomic_mod, ord_mod, pow_mod, Prime};

pub const DEFAULT_GROUP_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub vector: Vec<u64>,
    pub twist: u64,
}

#[derive(Clone, Debug)]
pub struct SemidirectDescriptor {
    l: Prime,
    p: Prime,
    action: MatrixFp,
    /// `action^c` for `c = 0..p`
    powers: Vec<MatrixFp>,
}

impl SemidirectDescriptor {
    pub fn new(l: Prime, p: Prime, action: MatrixFp) -> Result<Self> {
        if l == p {
            return Err(Error::EqualPrimes(l.get()));
        }
        if action.modulus() != l {
            return Err(Error::ModulusMismatch {
                left: l.get(),
                right: action.modulus().get(),
            });
        }
        let b = action.rows();
        if !action.is_square() || b == 0 {
            return Err(Error::DimensionMismatch(format!(
                "action must be a nonempty square matrix, got {}x{}",
                action.rows(),
                action.cols()
            )));
        }
        let mut powers = Vec::with_capacity(p.get() as usize);
        let mut acc = MatrixFp::identity(b, l);
        for _ in 0..p.get() {
            powers.push(acc.clone());
            acc = acc.mul(&action)?;
        }
        if acc != MatrixFp::identity(b, l) {
            return Err(Error::CheckFailed(format!(
                "action matrix does not satisfy A^{p} = I"
            )));
        }
        Ok(SemidirectDescriptor {
            l,
            p,
            action,
            powers,
        })
    }

    /// `(Z/lZ)^b x Z/pZ` with trivial action.
    pub fn direct_product(l: Prime, b: usize, p: Prime) -> Result<Self> {
        SemidirectDescriptor::new(l, p, MatrixFp::identity(b, l))
    }

    pub fn l(&self) -> Prime {
        self.l
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &MatrixFp {
        &self.action
    }

    pub fn is_direct_product(&self) -> bool {
        self.action == MatrixFp::identity(self.rank(), self.l)
    }

    /// `|G| = l^b * p`, saturating.
    pub fn order(&self) -> u128 {
        (self.l.get() as u128)
            .checked_pow(self.rank() as u32)
            .and_then(|v| v.checked_mul(self.p.get() as u128))
            .unwrap_or(u128::MAX)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            vector: vec![0; self.rank()],
            twist: 0,
        }
    }

    /// The generator `(0, 1)` of the Z/pZ factor.
    pub fn tau(&self) -> GroupElement {
        GroupElement {
            vector: vec![0; self.rank()],
            twist: 1 % self.p.get(),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.vector.len() == self.rank()
            && g.twist < self.p.get()
            && g.vector.iter().all(|&x| x < self.l.get())
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let q = self.l.get();
        let moved = self.powers[g.twist as usize]
            .mul_vec(&h.vector)
            .expect("vector length matches rank");
        GroupElement {
            vector: g
                .vector
                .iter()
                .zip(&moved)
                .map(|(&a, &b)| (a + b) % q)
                .collect(),
            twist: (g.twist + h.twist) % self.p.get(),
        }
    }

    /// `(v, c)^-1 = (-A^-c v, -c)`.
    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let q = self.l.get();
        let p = self.p.get();
        let back = (p - g.twist) % p;
        let moved = self.powers[back as usize]
            .mul_vec(&g.vector)
            .expect("vector length matches rank");
        GroupElement {
            vector: moved.into_iter().map(|x| (q - x) % q).collect(),
            twist: back,
        }
    }

    pub fn pow(&self, g: &GroupElement, mut e: u64) -> GroupElement {
        let mut base = g.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Dense index in `0..|G|`: the twist is the most significant digit.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        let q = self.l.get() as usize;
        let v = g
            .vector
            .iter()
            .rev()
            .fold(0usize, |acc, &x| acc * q + x as usize);
        g.twist as usize * q.pow(self.rank() as u32) + v
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let q = self.l.get() as usize;
        let base_size = q.pow(self.rank() as u32);
        let twist = (index / base_size) as u64;
        index %= base_size;
        let vector = (0..self.rank())
            .map(|_| {
                let x = (index % q) as u64;
                index /= q;
                x
            })
            .collect();
        GroupElement { vector, twist }
    }

    fn check_cap(&self, cap: u128) -> Result<usize> {
        let order = self.order();
        if order > cap || order > usize::MAX as u128 {
            return Err(Error::GroupTooLarge { order, cap });
        }
        Ok(order as usize)
    }

    pub fn elements(&self, cap: u128) -> Result<impl Iterator<Item = GroupElement> + '_> {
        let n = self.check_cap(cap)?;
        Ok((0..n).map(move |i| self.element_at(i)))
    }

    /// Size of the subgroup generated by `gens`, by breadth-first closure.
    pub fn closure_size(&self, gens: &[GroupElement], cap: u128) -> Result<usize> {
        Ok(self.closure(gens, cap)?.iter().filter(|&&x| x).count())
    }

    fn closure(&self, gens: &[GroupElement], cap: u128) -> Result<Vec<bool>> {
        let n = self.check_cap(cap)?;
        let mut seen = vec![false; n];
        let start = self.identity();
        seen[self.index_of(&start)] = true;
        let mut queue = VecDeque::from([start]);
        // finite group: right multiplication by the generators reaches every word
        while let Some(g) = queue.pop_front() {
            for s in gens {
                let h = self.mul(&g, s);
                let i = self.index_of(&h);
                if !seen[i] {
                    seen[i] = true;
                    queue.push_back(h);
                }
            }
        }
        Ok(seen)
    }
}

/// Least `n >= 1` with `g^n = 1`.
pub fn element_order(g: &GroupElement, group: &SemidirectDescriptor) -> u64 {
    let e = group.identity();
    let mut x = g.clone();
    let mut n = 1;
    while x != e {
        x = group.mul(&x, g);
        n += 1;
    }
    n
}

fn has_order_p(g: &GroupElement, group: &SemidirectDescriptor) -> bool {
    // order p forces a nonzero twist since the translation part has l-power order
    g.twist != 0 && group.pow(g, group.p.get()) == group.identity()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuasiPReport {
    pub is_quasi_p: bool,
    /// Order of the subgroup generated by all elements of order p.
    pub closure_size: u128,
    pub group_order: u128,
}

/// Checks that the elements of order p (hence the Sylow p-subgroups) generate the whole group.
pub fn quasi_p_check(group: &SemidirectDescriptor, cap: u128) -> Result<QuasiPReport> {
    let n = group.check_cap(cap)?;
    let mut gens: Vec<GroupElement> = Vec::new();
    let mut current = group.closure(&gens, cap)?;
    let mut size = 1usize;
    for i in 0..n {
        if size == n {
            break;
        }
        if current[i] {
            continue;
        }
        let g = group.element_at(i);
        if !has_order_p(&g, group) {
            continue;
        }
        gens.push(g);
        current = group.closure(&gens, cap)?;
        size = current.iter().filter(|&&x| x).count();
    }
    Ok(QuasiPReport {
        is_quasi_p: size == n,
        closure_size: size as u128,
        group_order: n as u128,
    })
}

/// Whether the group has a nontrivial quotient of order prime to p.
///
/// Such a quotient has l-power order, and a nontrivial l-group maps onto Z/lZ,
/// so it suffices to look for a nonzero homomorphism `G -> Z/lZ`. Candidate
/// values on the generators `(e_i, 0)` and `(0, 1)` are enumerated and
/// extended along the Cayley graph; inconsistent extensions are rejected.
/// Exponential in the rank; meant for small groups.
pub fn has_coprime_quotient(group: &SemidirectDescriptor, cap: u128) -> Result<bool> {
    let n = group.check_cap(cap)?;
    let b = group.rank();
    let l = group.l.get();
    let mut gens: Vec<GroupElement> = (0..b)
        .map(|i| {
            let mut v = vec![0; b];
            v[i] = 1;
            GroupElement {
                vector: v,
                twist: 0,
            }
        })
        .collect();
    gens.push(group.tau());
    let combos = (l as u128).pow(gens.len() as u32);
    for code in 1..combos {
        let mut c = code;
        let values: Vec<u64> = gens
            .iter()
            .map(|_| {
                let x = (c % l as u128) as u64;
                c /= l as u128;
                x
            })
            .collect();
        let mut phi: Vec<Option<u64>> = vec![None; n];
        let e = group.identity();
        phi[group.index_of(&e)] = Some(0);
        let mut queue = VecDeque::from([e]);
        let mut consistent = true;
        'bfs: while let Some(g) = queue.pop_front() {
            let pg = phi[group.index_of(&g)].expect("visited");
            for (s, &vs) in gens.iter().zip(&values) {
                let h = group.mul(&g, s);
                let i = group.index_of(&h);
                let target = (pg + vs) % l;
                match phi[i] {
                    None => {
                        phi[i] = Some(target);
                        queue.push_back(h);
                    }
                    Some(x) if x != target => {
                        consistent = false;
                        break 'bfs;
                    }
                    Some(_) => {}
                }
            }
        }
        if consistent {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `|GL_b(F_l)|` is divisible by p iff `l^i = 1 (mod p)` for some `1 <= i <= b`.
pub fn gl_has_order_p_element(l: Prime, b: usize, p: Prime) -> bool {
    (1..=b as u64).any(|i| pow_mod(l.get(), i, p.get()) == 1)
}

/// A `b x b` matrix over F_l of exact order p, or `None` when `b < ord_p(l)`.
///
/// Built as `diag(companion(f_1), I)` with `f_1` the first irreducible factor of
/// `Phi_p mod l` in canonical order.
pub fn order_p_element_glb(l: Prime, b: usize, p: Prime) -> Result<Option<MatrixFp>> {
    let a = ord_mod(l, p)? as usize;
    if b < a || b == 0 {
        return Ok(None);
    }
    let fz = factor(&cyclotomic_mod(p, l)?, 0)?;
    let f1 = fz
        .irreducibles()
        .next()
        .ok_or_else(|| Error::CheckFailed("empty cyclotomic factorization".into()))?;
    let mut blocks = vec![companion_matrix(f1)?];
    if b > a {
        blocks.push(MatrixFp::identity(b - a, l));
    }
    let m = MatrixFp::block_diag(&blocks)?;
    let id = MatrixFp::identity(b, l);
    if m.pow(p.get())? != id || m == id {
        return Err(Error::CheckFailed(format!(
            "constructed matrix does not have order {p}"
        )));
    }
    Ok(Some(m))
}

/// The least rank b admitting a quasi-p semidirect product, `ord_p(l)`.
pub fn minimal_rank(l: Prime, p: Prime) -> Result<usize> {
    let a = ord_mod(l, p)? as usize;
    if order_p_element_glb(l, a, p)?.is_none() || (a > 1 && gl_has_order_p_element(l, a - 1, p)) {
        return Err(Error::CheckFailed(format!(
            "rank {a} is not the threshold for order-{p} elements in GL_b(F_{l})"
        )));
    }
    Ok(a)
}

/// The canonical semidirect product of rank `b`: the order-p action when one exists,
/// otherwise the direct product.
pub fn canonical_group(l: Prime, b: usize, p: Prime) -> Result<SemidirectDescriptor> {
    match order_p_element_glb(l, b, p)? {
        Some(action) => SemidirectDescriptor::new(l, p, action),
        None => SemidirectDescriptor::direct_product(l, b, p),
    }
}
