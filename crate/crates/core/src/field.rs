//! Prime-field arithmetic and dense matrices over F_q.
//!
//! Elements are plain `u32` values in `[0, q)`. The modulus is carried by a
//! [`Field`] handle so vectors and matrices stay lightweight. All row
//! reduction is fully deterministic: pivots are chosen left to right, and the
//! pivot row is always the first row (top to bottom) with a nonzero entry in
//! the pivot column.

use crate::error::{Error, Result};

/// A prime field F_q with q < 2^16.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    q: u32,
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    if q.is_multiple_of(2) {
        return q == 2;
    }
    let mut i = 3u32;
    while i.checked_mul(i).is_some_and(|sq| sq <= q) {
        if q.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

impl Field {
    /// Creates F_q. Errors with `CompositeModulus` unless q is prime, and
    /// rejects q >= 2^16 so element products always fit in u64.
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::CompositeModulus { q });
        }
        if q >= 1 << 16 {
            return Err(Error::InvalidParameter(format!(
                "field size {q} must be below 2^16"
            )));
        }
        Ok(Field { q })
    }

    /// The field size.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Reduces an arbitrary signed integer into `[0, q)`.
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.q as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        debug_assert!(a < self.q);
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// a^e by binary exponentiation, with 0^0 = 1.
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        debug_assert!(a < self.q);
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat (q is prime).
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

/// Dense row-major matrix over a prime field.
///
/// The struct itself does not pin a modulus; operations that need arithmetic
/// take the [`Field`] explicitly. Entries must already be reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction: the reduced matrix, its rank, and the pivot
/// columns in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    /// All-zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; errors with `LengthMismatch` if ragged.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::LengthMismatch { expected: c, got: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Builds a matrix from a flat row-major slice.
    pub fn from_flat(rows: usize, cols: usize, data: &[u32]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { rows, cols, data: data.to_vec() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `self` to the left of `other` (same row count).
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::LengthMismatch { expected: self.rows, got: other.rows });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix { rows: self.rows, cols, data })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix, f: &Field) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v` (v as a column).
    pub fn mul_vec(&self, v: &[u32], f: &Field) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = vec![0u32; self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (a, b) in self.row(r).iter().zip(v) {
                acc += *a as u64 * *b as u64;
            }
            *slot = (acc % f.q() as u64) as u32;
        }
        Ok(out)
    }

    /// Vector-matrix product `v * self` (v as a row).
    pub fn vec_mul(&self, v: &[u32], f: &Field) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, got: v.len() });
        }
        let mut out = vec![0u32; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = f.add(*slot, f.mul(a, self.get(r, c)));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form.
    pub fn rref(&self, f: &Field) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for col in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(hit) = (pr..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if hit != pr {
                for c in 0..m.cols {
                    let a = m.get(pr, c);
                    let b = m.get(hit, c);
                    m.set(pr, c, b);
                    m.set(hit, c, a);
                }
            }
            let inv = f.inv(m.get(pr, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                m.set(pr, c, f.mul(inv, m.get(pr, c)));
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(pr, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pr += 1;
        }
        Rref { rank: pivots.len(), pivots, matrix: m }
    }

    /// Rank over F_q.
    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).rank
    }

    /// Basis of the right kernel `{v : self * v = 0}`, one basis vector per
    /// row, ordered by ascending free column. `cols - rank` rows.
    pub fn kernel_basis(&self, f: &Field) -> Matrix {
        let Rref { matrix: r, rank, pivots } = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zero(free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, 1);
            for (j, &p) in pivots.iter().enumerate().take(rank) {
                out.set(i, p, f.neg(r.get(j, fc)));
            }
        }
        out
    }

    /// Nonzero rows of the rref: a canonical full-rank basis of the row space.
    pub fn row_basis(&self, f: &Field) -> Matrix {
        let Rref { matrix: m, rank, .. } = self.rref(f);
        let mut data = Vec::with_capacity(rank * self.cols);
        for r in 0..rank {
            data.extend_from_slice(m.row(r));
        }
        Matrix { rows: rank, cols: self.cols, data }
    }
}
