use std::fmt;

use crate::error::{Error, Result};
use crate::prime_field::{inv_mod, mul_mod, FpElem, PolyFp, Prime};

/// Dense row-major matrix over F_l.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    modulus: Prime,
}

impl MatrixFp {
    pub fn new(rows: usize, cols: usize, entries: Vec<u64>, modulus: Prime) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let q = modulus.get();
        Ok(MatrixFp {
            rows,
            cols,
            entries: entries.into_iter().map(|e| e % q).collect(),
            modulus,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>], modulus: Prime) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&e| FpElem::from_i64(e, modulus).value())
            .collect();
        MatrixFp::new(rows.len(), cols, entries, modulus)
    }

    pub fn zeros(rows: usize, cols: usize, modulus: Prime) -> Self {
        MatrixFp {
            rows,
            cols,
            entries: vec![0; rows * cols],
            modulus,
        }
    }

    pub fn identity(n: usize, modulus: Prime) -> Self {
        MatrixFp::scalar(n, 1, modulus)
    }

    pub fn scalar(n: usize, c: u64, modulus: Prime) -> Self {
        let mut m = MatrixFp::zeros(n, n, modulus);
        for i in 0..n {
            m.entries[i * n + i] = c % modulus.get();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.modulus.get();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    fn same_shape(&self, other: &MatrixFp) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixFp) -> Result<MatrixFp> {
        self.same_shape(other)?;
        let q = self.modulus.get();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        MatrixFp::new(self.rows, self.cols, entries, self.modulus)
    }

    pub fn sub(&self, other: &MatrixFp) -> Result<MatrixFp> {
        self.same_shape(other)?;
        let q = self.modulus.get();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + q - b) % q)
            .collect();
        MatrixFp::new(self.rows, self.cols, entries, self.modulus)
    }

    pub fn mul(&self, other: &MatrixFp) -> Result<MatrixFp> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let q = self.modulus.get() as u128;
        let mut out = vec![0u64; self.rows * other.cols];
        let mut acc = vec![0u128; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u128;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u128) % q;
                }
            }
            for j in 0..other.cols {
                out[i * other.cols + j] = acc[j] as u64;
            }
        }
        MatrixFp::new(self.rows, other.cols, out, self.modulus)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let q = self.modulus.get();
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + mul_mod(a, b, q)) % q)
            })
            .collect())
    }

    pub fn scale(&self, c: u64) -> MatrixFp {
        let q = self.modulus.get();
        MatrixFp {
            entries: self.entries.iter().map(|&e| mul_mod(e, c % q, q)).collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, mut e: u64) -> Result<MatrixFp> {
        let n = self.require_square()?;
        let mut base = self.clone();
        let mut acc = MatrixFp::identity(n, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `f(M)` by Horner's rule.
    pub fn eval_poly(&self, f: &PolyFp) -> Result<MatrixFp> {
        let n = self.require_square()?;
        if f.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: f.modulus().get(),
            });
        }
        let mut acc = MatrixFp::zeros(n, n, self.modulus);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&MatrixFp::scalar(n, c, self.modulus))?;
        }
        Ok(acc)
    }

    pub fn block_diag(blocks: &[MatrixFp]) -> Result<MatrixFp> {
        let modulus = match blocks.first() {
            Some(b) => b.modulus,
            None => return Err(Error::DimensionMismatch("no blocks".into())),
        };
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = MatrixFp::zeros(n, m, modulus);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.modulus != modulus {
                return Err(Error::ModulusMismatch {
                    left: modulus.get(),
                    right: b.modulus.get(),
                });
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (MatrixFp, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.modulus.get());
        let entries = rows.into_iter().flatten().collect();
        let m = MatrixFp::new(self.rows, self.cols, entries, self.modulus).expect("same shape");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

/// In-place Gauss-Jordan elimination over F_q; returns the pivot column of each nonzero row.
pub(crate) fn rref_rows(rows: &mut [Vec<u64>], q: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], q).expect("nonzero pivot");
        rows[r].iter_mut().for_each(|x| *x = mul_mod(*x, inv, q));
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + q - mul_mod(f, y, q)) % q;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Display for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.modulus.get() - 1).to_string().len();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| format!("{e:>width$}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MatrixFp({}x{} over F_{}):\n{}",
            self.rows, self.cols, self.modulus, self
        )
    }
}
