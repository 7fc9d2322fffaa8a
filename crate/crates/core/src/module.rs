//! Matrix representations of Lie algebras and the standard constructions on
//! them.

use crate::error::{Error, Result};
use crate::field::{is_zero, unit_vector, Fp};
use crate::lie::LieAlgebra;
use crate::matrix::FpMatrix;
use crate::subspace::Subspace;

/// A representation of an `algdim`-dimensional Lie algebra on `F_p^dim`,
/// given by the images of the basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieModule {
    field: Fp,
    algdim: usize,
    dim: usize,
    action: Vec<FpMatrix>,
}

impl LieModule {
    pub fn new(field: Fp, algdim: usize, dim: usize, action: Vec<FpMatrix>) -> Self {
        assert_eq!(action.len(), algdim, "one action matrix per basis element");
        for m in &action {
            assert_eq!((m.rows(), m.cols()), (dim, dim), "action matrices must be dim × dim");
        }
        LieModule { field, algdim, dim, action }
    }

    /// The zero-dimensional module.
    pub fn zero(field: Fp, algdim: usize) -> Self {
        Self::new(field, algdim, 0, vec![FpMatrix::zeros(field, 0, 0); algdim])
    }

    /// The `dim`-dimensional module on which everything acts as zero.
    pub fn trivial(field: Fp, algdim: usize, dim: usize) -> Self {
        Self::new(field, algdim, dim, vec![FpMatrix::zeros(field, dim, dim); algdim])
    }

    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn p(&self) -> u32 {
        self.field.p()
    }
    pub fn algdim(&self) -> usize {
        self.algdim
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self) -> &[FpMatrix] {
        &self.action
    }

    /// `ρ(x)` for `x = Σ x_i e_i`.
    pub fn act(&self, x: &[u32]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.field, self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            m.add_scaled(c, &self.action[i]);
        }
        m
    }

    /// The first basis pair violating `ρ([e_i, e_j]) = [ρ(e_i), ρ(e_j)]`.
    pub fn law_violation(&self, alg: &LieAlgebra) -> Option<(usize, usize)> {
        if alg.dim() != self.algdim {
            return Some((0, 0));
        }
        for i in 0..self.algdim {
            for j in i + 1..self.algdim {
                let lhs = self.act(alg.basis_bracket(i, j));
                let rhs = self.action[i].commutator(&self.action[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn verify(&self, alg: &LieAlgebra) -> bool {
        self.law_violation(alg).is_none()
    }

    pub fn check(&self, alg: &LieAlgebra) -> Result<()> {
        match self.law_violation(alg) {
            None => Ok(()),
            Some((i, j)) => Err(Error::NotAModule(i, j)),
        }
    }

    /// `{x ∈ L : ρ(x) = 0}`.
    pub fn kernel(&self) -> Subspace {
        let m2 = self.dim * self.dim;
        let mut sys = FpMatrix::zeros(self.field, m2, self.algdim);
        for (i, a) in self.action.iter().enumerate() {
            for (r, &v) in a.data().iter().enumerate() {
                sys.set(r, i, v);
            }
        }
        Subspace::kernel(&sys)
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().is_zero()
    }

    /// Whether the subspace `ideal` of the algebra acts as zero.
    pub fn annihilated_by(&self, ideal: &Subspace) -> bool {
        ideal.basis_vectors().iter().all(|a| self.act(a).is_zero())
    }

    /// Least invariant subspace containing the vectors.
    pub fn spin(&self, vectors: &[Vec<u32>]) -> Subspace {
        spin_under(self.field, self.dim, &self.action, vectors)
    }

    pub fn is_invariant(&self, s: &Subspace) -> bool {
        self.action.iter().all(|a| s.is_invariant_under(a))
    }

    /// The action on `S`, in coordinates of the RREF basis of `S`.
    pub fn sub_module(&self, s: &Subspace) -> Result<LieModule> {
        if s.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch { left: s.ambient_dim(), right: self.dim });
        }
        let k = s.dim();
        let mut action = Vec::with_capacity(self.algdim);
        for a in &self.action {
            let mut m = FpMatrix::zeros(self.field, k, k);
            for c in 0..k {
                let img = a.mul_vec(s.basis_vector(c));
                let coords = s.coordinates(&img).ok_or(Error::NotInvariant)?;
                for r in 0..k {
                    m.set(r, c, coords[r]);
                }
            }
            action.push(m);
        }
        Ok(LieModule::new(self.field, self.algdim, k, action))
    }

    /// The action on `V / S`, in coordinates of the standard vectors
    /// completing the pivots of `S`.
    pub fn quotient_module(&self, s: &Subspace) -> Result<LieModule> {
        if s.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch { left: s.ambient_dim(), right: self.dim });
        }
        if !self.is_invariant(s) {
            return Err(Error::NotInvariant);
        }
        let proj = s.quotient_projection();
        let comp = s.complement_indices();
        let k = comp.len();
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = FpMatrix::zeros(self.field, k, k);
                for (c, &j) in comp.iter().enumerate() {
                    let img = proj.mul_vec(&a.col(j));
                    for r in 0..k {
                        m.set(r, c, img[r]);
                    }
                }
                m
            })
            .collect();
        Ok(LieModule::new(self.field, self.algdim, k, action))
    }

    pub fn direct_sum(field: Fp, algdim: usize, parts: &[&LieModule]) -> LieModule {
        if parts.is_empty() {
            return LieModule::zero(field, algdim);
        }
        let dim = parts.iter().map(|m| m.dim).sum();
        let action = (0..algdim)
            .map(|i| {
                let blocks: Vec<&FpMatrix> = parts.iter().map(|m| &m.action[i]).collect();
                FpMatrix::block_diag(field, &blocks)
            })
            .collect();
        LieModule::new(field, algdim, dim, action)
    }

    /// Pulls a module of `L / I` back to `L` along the projection
    /// `(n − dim I) × n`.
    pub fn inflate(&self, projection: &FpMatrix) -> LieModule {
        assert_eq!(projection.rows(), self.algdim);
        let n = projection.cols();
        let action = (0..n).map(|i| self.act(&projection.col(i))).collect();
        LieModule::new(self.field, n, self.dim, action)
    }

    /// Restriction to the subalgebra spanned by the given vectors (in the
    /// acting algebra's coordinates); the result is a module for an algebra
    /// whose basis is exactly those vectors.
    pub fn restrict(&self, basis: &[Vec<u32>]) -> LieModule {
        let action = basis.iter().map(|b| self.act(b)).collect();
        LieModule::new(self.field, basis.len(), self.dim, action)
    }

    /// Module given by the transposed matrices. Its invariant subspaces are
    /// the annihilators of the invariant subspaces of `self`.
    pub fn transposed(&self) -> LieModule {
        let action = self.action.iter().map(|a| a.transpose()).collect();
        LieModule::new(self.field, self.algdim, self.dim, action)
    }
}

/// Spinning closure of `vectors` under a set of matrices.
pub fn spin_under(field: Fp, dim: usize, gens: &[FpMatrix], vectors: &[Vec<u32>]) -> Subspace {
    let mut space = Subspace::zero(field, dim);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for v in vectors {
        let r = space.reduce(v);
        if !is_zero(&r) {
            space.insert(&r);
            queue.push(r);
        }
    }
    while let Some(v) = queue.pop() {
        if space.is_full() {
            break;
        }
        for g in gens {
            let w = g.mul_vec(&v);
            let r = space.reduce(&w);
            if !is_zero(&r) {
                space.insert(&r);
                queue.push(r);
            }
        }
    }
    space
}

/// The one-dimensional module of a one-dimensional algebra on which the
/// basis element acts as `1`.
pub fn scalar_line(field: Fp) -> LieModule {
    LieModule::new(field, 1, 1, vec![FpMatrix::identity(field, 1)])
}

/// Standard basis vector of the module, convenience for tests and callers.
pub fn module_vector(m: &LieModule, i: usize) -> Vec<u32> {
    unit_vector(m.dim(), i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn adjoint_satisfies_law() {
        let sl2 = corpus::sl2(5);
        assert!(sl2.adjoint_module().verify(&sl2));
    }

    #[test]
    fn zero_action_is_a_module_and_corruption_is_caught() {
        let sl2 = corpus::sl2(5);
        assert!(LieModule::trivial(sl2.field(), 3, 1).verify(&sl2));
        let na2 = corpus::na2(3);
        let adj = na2.adjoint_module();
        let mut action = adj.action().to_vec();
        action[1] = FpMatrix::identity(na2.field(), 2);
        let bad = LieModule::new(na2.field(), 2, 2, action);
        assert!(!bad.verify(&na2));
        assert_eq!(bad.check(&na2), Err(Error::NotAModule(0, 1)));
    }

    #[test]
    fn spins() {
        let na2 = corpus::na2(2);
        let adj = na2.adjoint_module();
        assert!(adj.spin(&[vec![0, 0]]).is_zero());
        assert!(adj.spin(&[vec![1, 0]]).is_full());
        let h3 = corpus::h3(2);
        let adj = h3.adjoint_module();
        assert_eq!(adj.spin(&[vec![0, 1, 0]]), h3.span(&[vec![0, 1, 0], vec![0, 0, 1]]));
    }

    #[test]
    fn kernels() {
        let h3 = corpus::h3(3);
        assert_eq!(h3.adjoint_module().kernel(), h3.span(&[vec![0, 0, 1]]));
        let triv = LieModule::trivial(h3.field(), 3, 2);
        assert!(triv.kernel().is_full());
    }

    #[test]
    fn direct_sum_blocks() {
        let f = Fp::new(3).unwrap();
        let a = LieModule::trivial(f, 1, 2);
        let b = LieModule::new(f, 1, 3, vec![FpMatrix::identity(f, 3)]);
        let s = LieModule::direct_sum(f, 1, &[&a, &b]);
        assert_eq!(s.dim(), 5);
        assert_eq!(s.action()[0].get(0, 0), 0);
        assert_eq!(s.action()[0].get(4, 4), 1);
        assert_eq!(s.action()[0].get(0, 4), 0);
    }

    #[test]
    fn quotient_and_inflation() {
        let na2 = corpus::na2(5);
        let adj = na2.adjoint_module();
        let y = na2.span(&[vec![0, 1]]);
        let q = adj.quotient_module(&y).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.action()[0].is_zero());
        assert!(q.verify(&na2));
        let sub = adj.sub_module(&y).unwrap();
        assert_eq!(sub.dim() + q.dim(), 2);
        assert!(sub.verify(&na2));

        let (quot, proj) = na2.quotient_algebra(&y).unwrap();
        let line = LieModule::new(na2.field(), 1, 1, vec![FpMatrix::identity(na2.field(), 1)]);
        assert!(line.verify(&quot));
        let inflated = line.inflate(&proj);
        assert!(inflated.verify(&na2));
        assert!(inflated.action()[1].is_zero());
        assert_eq!(inflated.action()[0].get(0, 0), 1);

        assert_eq!(adj.quotient_module(&na2.span(&[vec![1, 0]])), Err(Error::NotInvariant));
    }
}
