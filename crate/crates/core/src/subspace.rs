//! Subspaces of F_p^n kept in reduced row echelon form.

use crate::error::{Error, Result};
use crate::field::{is_zero, Fp};
use crate::matrix::FpMatrix;

/// A subspace of `F_p^ambient`. The basis rows are in reduced row echelon
/// form, so two subspaces are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace { basis: FpMatrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Subspace { basis: FpMatrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(field: Fp, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Self::from_matrix(&FpMatrix::from_rows(field, ambient, vectors))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &FpMatrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.block(0, 0, pivots.len(), m.cols());
        Subspace { basis, pivots }
    }

    /// Right null space `{x : m·x = 0}`.
    pub fn kernel(m: &FpMatrix) -> Self {
        Self::span(m.field(), m.cols(), &m.kernel_vectors())
    }

    pub fn field(&self) -> Fp {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }
    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }
    pub fn basis_vector(&self, i: usize) -> &[u32] {
        self.basis.row(i)
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Indices of the standard basis vectors that complete this subspace's
    /// pivots to a basis of the ambient space, in increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Reduces `v` modulo this subspace: the result vanishes on every pivot
    /// column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let a = out[pc];
            if a != 0 {
                f.axpy(&mut out, f.neg(a), self.basis.row(i));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient_dim(), "vector length mismatch");
        is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` with respect to the RREF basis, or `None` if `v`
    /// is not in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Element with the given coordinates.
    pub fn combination(&self, coords: &[u32]) -> Vec<u32> {
        self.basis.vec_mul(coords)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Ok(Subspace::span(self.field(), self.ambient_dim(), &rows))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        let (a, b) = (self.dim(), other.dim());
        // Columns: coefficients of self's basis then of other's basis.
        let mut cols = Vec::with_capacity(a + b);
        for i in 0..a {
            cols.push(self.basis.row(i).to_vec());
        }
        for j in 0..b {
            cols.push(other.basis.row(j).iter().map(|&x| f.neg(x)).collect());
        }
        let m = FpMatrix::from_cols(f, self.ambient_dim(), &cols);
        let vecs: Vec<Vec<u32>> = m
            .kernel_vectors()
            .into_iter()
            .map(|k| self.combination(&k[..a]))
            .collect();
        Ok(Subspace::span(f, self.ambient_dim(), &vecs))
    }

    pub fn with_vector(&self, v: &[u32]) -> Subspace {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    /// Adds `v` to the subspace in place, keeping the basis in RREF. Returns
    /// whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field();
        let mut r = self.reduce(v);
        let Some(c) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[c]);
        r.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        let n = self.ambient_dim();
        let k = self.dim();
        let mut rows = Vec::with_capacity(k + 1);
        for i in 0..k {
            let mut row = self.basis.row(i).to_vec();
            let a = row[c];
            if a != 0 {
                f.axpy(&mut row, f.neg(a), &r);
            }
            rows.push(row);
        }
        let pos = self.pivots.partition_point(|&pc| pc < c);
        rows.insert(pos, r);
        self.pivots.insert(pos, c);
        self.basis = FpMatrix::from_flat(f, k + 1, n, rows.concat());
        true
    }

    /// `{w : w·v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Subspace {
        Subspace::kernel(&self.basis)
    }

    /// Image of this subspace under `m` (acting on columns).
    pub fn image_under(&self, m: &FpMatrix) -> Subspace {
        let vecs: Vec<Vec<u32>> = (0..self.dim()).map(|i| m.mul_vec(self.basis.row(i))).collect();
        Subspace::span(self.field(), m.rows(), &vecs)
    }

    /// Whether `m` maps the subspace into itself.
    pub fn is_invariant_under(&self, m: &FpMatrix) -> bool {
        (0..self.dim()).all(|i| self.contains(&m.mul_vec(self.basis.row(i))))
    }

    /// Projection onto the complement coordinates: the linear map
    /// `F_p^n → F_p^(n − dim)` sending `v` to the entries of `reduce(v)` at
    /// the complement indices. Its rows are indexed by the complement.
    pub fn quotient_projection(&self) -> FpMatrix {
        let f = self.field();
        let n = self.ambient_dim();
        let comp = self.complement_indices();
        let mut proj = FpMatrix::zeros(f, comp.len(), n);
        for j in 0..n {
            let red = self.reduce(&crate::field::unit_vector(n, j));
            for (r, &c) in comp.iter().enumerate() {
                proj.set(r, j, red[c]);
            }
        }
        proj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn sum_of_two_lines() {
        let a = Subspace::span(f2(), 3, &[vec![1, 0, 0]]);
        let b = Subspace::span(f2(), 3, &[vec![0, 1, 0]]);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
    }

    #[test]
    fn intersect_planes() {
        let a = Subspace::span(f2(), 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(f2(), 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::span(f2(), 3, &[vec![0, 1, 0]]));
    }

    #[test]
    fn kernel_of_row() {
        let m = FpMatrix::from_rows(f2(), 2, &[vec![1, 1]]);
        assert_eq!(Subspace::kernel(&m), Subspace::span(f2(), 2, &[vec![1, 1]]));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(f2(), 2);
        let b = Subspace::zero(f2(), 3);
        assert!(matches!(a.sum(&b), Err(Error::AmbientMismatch { left: 2, right: 3 })));
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn coordinates_and_membership() {
        let f5 = Fp::new(5).unwrap();
        let s = Subspace::span(f5, 3, &[vec![1, 2, 0], vec![0, 0, 1]]);
        let v = vec![3, 1, 4];
        assert_eq!(s.coordinates(&v), Some(vec![3, 4]));
        assert_eq!(s.combination(&[3, 4]), v);
        assert_eq!(s.coordinates(&[0, 1, 0]), None);
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let f3 = Fp::new(3).unwrap();
        let s = Subspace::span(f3, 3, &[vec![1, 1, 0]]);
        let proj = s.quotient_projection();
        assert_eq!(proj.rows(), 2);
        assert_eq!(proj.mul_vec(&[1, 1, 0]), vec![0, 0]);
        assert_eq!(proj.mul_vec(&[0, 1, 0]), vec![1, 0]);
    }
}
