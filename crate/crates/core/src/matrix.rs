//! Dense matrices over F_p.
//!
//! Matrices act on column vectors: `(m · v)[i] = Σ_j m[i][j] v[j]`.

use std::fmt;

use crate::field::{is_zero, Fp};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.field.p())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(field: Fp, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().map(|&x| x % field.p()));
        }
        FpMatrix { field, rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(field: Fp, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in 0..rows {
                m.data[i * m.cols + j] = c[i] % field.p();
            }
        }
        m
    }

    pub fn from_flat(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FpMatrix { field, rows, cols, data }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = self.field;
        let n = other.cols;
        let mut out = FpMatrix::zeros(f, self.rows, n);
        let mut acc = vec![0u64; n];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (acc_j, &b) in acc.iter_mut().zip(orow) {
                    *acc_j += a * b as u64;
                }
            }
            let orow = out.row_mut(r);
            for (o, &a) in orow.iter_mut().zip(&acc) {
                *o = f.reduce(a);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    /// Row vector times matrix: `v · m`.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![0u32; self.cols];
        for (r, &a) in v.iter().enumerate() {
            self.field.axpy(&mut out, a, self.row(r));
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.field.add_vec(&self.data, &other.data);
        FpMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.field.sub_vec(&self.data, &other.data);
        FpMatrix { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        FpMatrix { data: self.field.scale(c, &self.data), ..*self }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: u32, other: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    /// Commutator `ab − ba`.
    pub fn commutator(&self, other: &FpMatrix) -> FpMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(src) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if src != r {
                for j in 0..cols {
                    self.data.swap(src * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            let pivot_row: Vec<u32> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let a = self.data[i * cols + c];
                if a == 0 {
                    continue;
                }
                let na = f.neg(a);
                let row = &mut self.data[i * cols + c..(i + 1) * cols];
                f.axpy(row, na, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : m·x = 0}`, one vector per free column.
    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `m·x = b`, taking every free variable to be zero; `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = self.field;
        let mut aug = FpMatrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.data[i * (self.cols + 1) + self.cols] = b[i] % f.p();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.field, n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: Fp, blocks: &[&FpMatrix]) -> FpMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = FpMatrix::zeros(field, n, n);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square());
            for i in 0..b.rows {
                m.row_mut(off + i)[off..off + b.cols].copy_from_slice(b.row(i));
            }
            off += b.rows;
        }
        m
    }

    /// Sub-block `rows × cols` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            m.row_mut(i).copy_from_slice(&self.row(r0 + i)[c0..c0 + cols]);
        }
        m
    }
}
