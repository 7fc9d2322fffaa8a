//! Lie algebras given by structure constants.

use crate::error::{Error, Result};
use crate::field::{is_zero, unit_vector, Fp};
use crate::matrix::FpMatrix;
use crate::module::LieModule;
use crate::subspace::Subspace;

/// An `n`-dimensional Lie algebra over F_p with basis `e_0, …, e_{n-1}`.
///
/// The full table of basis brackets is stored; antisymmetry is enforced at
/// construction, the Jacobi identity is checked by [`LieAlgebra::verify_jacobi`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    field: Fp,
    dim: usize,
    /// `table[i * dim + j] = [e_i, e_j]`
    table: Vec<Vec<u32>>,
}

impl LieAlgebra {
    pub fn abelian(field: Fp, dim: usize) -> Self {
        LieAlgebra { field, dim, table: vec![vec![0; dim]; dim * dim] }
    }

    /// Builds an algebra from the brackets `[e_i, e_j]` with `i < j`; omitted
    /// pairs are zero.
    pub fn from_brackets(field: Fp, dim: usize, brackets: &[(usize, usize, Vec<u32>)]) -> Result<Self> {
        let mut alg = Self::abelian(field, dim);
        for (i, j, v) in brackets {
            alg.set_bracket(*i, *j, v)?;
        }
        Ok(alg)
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = −v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[u32]) -> Result<()> {
        let n = self.dim;
        if i >= n || j >= n || v.len() != n {
            return Err(Error::DimensionMismatch(format!("bracket ({i}, {j}) in dimension {n}")));
        }
        if i == j {
            if !is_zero(v) {
                return Err(Error::DimensionMismatch(format!("[e_{i}, e_{i}] must vanish")));
            }
            return Ok(());
        }
        let f = self.field;
        let v: Vec<u32> = v.iter().map(|&x| x % f.p()).collect();
        self.table[j * n + i] = v.iter().map(|&x| f.neg(x)).collect();
        self.table[i * n + j] = v;
        Ok(())
    }

    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn p(&self) -> u32 {
        self.field.p()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[u32] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let n = self.dim;
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 || i == j {
                    continue;
                }
                f.axpy(&mut out, f.mul(xi, yj), &self.table[i * n + j]);
            }
        }
        out
    }

    /// `ad(x)` as an `n × n` matrix; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[u32]) -> FpMatrix {
        let n = self.dim;
        let f = self.field;
        let mut m = FpMatrix::zeros(f, n, n);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..n {
                let col = &self.table[i * n + j];
                for r in 0..n {
                    if col[r] != 0 {
                        m.set(r, j, f.add(m.get(r, j), f.mul(xi, col[r])));
                    }
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> FpMatrix {
        self.ad(&unit_vector(self.dim, i))
    }

    /// The first basis triple `(i, j, k)`, `i < j < k`, violating the Jacobi
    /// identity.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let f = self.field;
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.basis_bracket(i, j).to_vec();
                for k in j + 1..n {
                    let jk = self.basis_bracket(j, k).to_vec();
                    let ki = self.basis_bracket(k, i).to_vec();
                    let ek = unit_vector(n, k);
                    let ei = unit_vector(n, i);
                    let ej = unit_vector(n, j);
                    let a = self.bracket(&ij, &ek);
                    let b = self.bracket(&jk, &ei);
                    let c = self.bracket(&ki, &ej);
                    if !is_zero(&f.add_vec(&f.add_vec(&a, &b), &c)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn verify_jacobi(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    pub fn check_jacobi(&self) -> Result<()> {
        match self.jacobi_violation() {
            None => Ok(()),
            Some((i, j, k)) => Err(Error::Jacobi(i, j, k)),
        }
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    pub fn span(&self, vectors: &[Vec<u32>]) -> Subspace {
        Subspace::span(self.field, self.dim, vectors)
    }

    /// `[S, T]`, the span of brackets of basis pairs.
    pub fn bracket_subspaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in s.basis_vectors() {
            for b in t.basis_vectors() {
                let c = self.bracket(&a, &b);
                if !is_zero(&c) {
                    vecs.push(c);
                }
            }
        }
        self.span(&vecs)
    }

    pub fn derived(&self) -> Subspace {
        self.bracket_subspaces(&self.full(), &self.full())
    }

    /// `{x : [x, s] = 0 for all s in S}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim;
        // x ↦ ([x, s_1], …, [x, s_k]) as a (k·n) × n matrix.
        let basis = s.basis_vectors();
        let mut m = FpMatrix::zeros(self.field, basis.len() * n, n);
        for (b, sv) in basis.iter().enumerate() {
            for i in 0..n {
                let col = self.bracket(&unit_vector(n, i), sv);
                for r in 0..n {
                    m.set(b * n + r, i, col[r]);
                }
            }
        }
        Subspace::kernel(&m)
    }

    pub fn centre(&self) -> Subspace {
        self.centralizer(&self.full())
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.ambient_dim() == self.dim && self.bracket_subspaces(&self.full(), s).is_subspace_of(s)
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        self.bracket_subspaces(s, s).is_zero()
    }

    /// Smallest ideal containing the given vectors.
    pub fn ideal_closure_of(&self, vectors: &[Vec<u32>]) -> Subspace {
        self.adjoint_module().spin(vectors)
    }

    pub fn ideal_closure(&self, v: &[u32]) -> Subspace {
        self.ideal_closure_of(&[v.to_vec()])
    }

    /// `L / I` on the co-basis of standard vectors completing the pivots of
    /// `I`, together with the projection matrix `(n − dim I) × n`.
    pub fn quotient_algebra(&self, ideal: &Subspace) -> Result<(LieAlgebra, FpMatrix)> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let proj = ideal.quotient_projection();
        let cobasis = ideal.complement_indices();
        let k = cobasis.len();
        let mut q = LieAlgebra::abelian(self.field, k);
        for a in 0..k {
            for b in a + 1..k {
                let br = self.basis_bracket(cobasis[a], cobasis[b]);
                q.set_bracket(a, b, &proj.mul_vec(br))?;
            }
        }
        Ok((q, proj))
    }

    pub fn adjoint_module(&self) -> LieModule {
        let action = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        LieModule::new(self.field, self.dim, self.dim, action)
    }

    /// Structure constants with respect to a new basis, given as the columns
    /// of an invertible matrix `t` (in old coordinates).
    pub fn change_basis(&self, t: &FpMatrix) -> Result<LieAlgebra> {
        let n = self.dim;
        let inv = t.inverse().ok_or_else(|| Error::DimensionMismatch("basis change is singular".into()))?;
        let cols: Vec<Vec<u32>> = (0..n).map(|j| t.col(j)).collect();
        let mut out = LieAlgebra::abelian(self.field, n);
        for a in 0..n {
            for b in a + 1..n {
                let br = self.bracket(&cols[a], &cols[b]);
                out.set_bracket(a, b, &inv.mul_vec(&br))?;
            }
        }
        Ok(out)
    }

    /// Whether a subspace is a subalgebra.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.bracket_subspaces(s, s).is_subspace_of(s)
    }
}
