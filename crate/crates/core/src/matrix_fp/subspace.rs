use super::matrix::{rref_rows, MatrixFp};
use crate::error::{Error, Result};
use crate::prime_field::Prime;

/// A subspace of F_l^n stored by its reduced row-echelon basis.
///
/// Because the RREF basis is canonical, two subspaces are equal exactly when
/// their bases are equal, and the derived ordering is a total order on subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<u64>>,
    modulus: Prime,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, modulus: Prime) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            modulus,
        }
    }

    pub fn full(ambient_dim: usize, modulus: Prime) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![0; ambient_dim];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            modulus,
        }
    }

    /// The span of arbitrary vectors of length `ambient_dim`.
    pub fn span(vectors: Vec<Vec<u64>>, ambient_dim: usize, modulus: Prime) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in F^{ambient_dim}",
                v.len()
            )));
        }
        let q = modulus.get();
        let mut rows: Vec<Vec<u64>> = vectors
            .into_iter()
            .map(|v| v.into_iter().map(|x| x % q).collect())
            .collect();
        let rank = rref_rows(&mut rows, q).len();
        rows.truncate(rank);
        Ok(Subspace {
            ambient_dim,
            basis: rows,
            modulus,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref_rows(&mut rows, self.modulus.get()).len() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::span(vectors, self.ambient_dim, self.modulus)
    }

    pub fn intersects_trivially(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim() + other.dim())
    }

    /// True when `m` maps every basis vector back into the subspace.
    pub fn is_invariant_under(&self, m: &MatrixFp) -> Result<bool> {
        for v in &self.basis {
            if !self.contains(&m.mul_vec(v)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
