//! Modules induced from a one-dimensional representation of an abelian
//! ideal.
//!
//! Let `A` be an abelian ideal on which the p-map vanishes and `c` a linear
//! form on `L`. The induced module has basis `e_1^{r_1} ⋯ e_k^{r_k} ⊗ w`
//! with `0 ≤ r_i < p`, where `e_1, …, e_k` are the standard co-basis vectors
//! of `A`. A basis element acting on a monomial is moved to its normal
//! position with `b e_j = e_j b + [b, e_j]`, an exponent reaching `p` is
//! rewritten by `e^p = e^{[p]} + c(e)^p`, and elements of `A` act on `w` by
//! the scalar `c`.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::field::{is_zero, unit_vector, Fp};
use crate::matrix::FpMatrix;
use crate::module::LieModule;
use crate::restricted::RestrictedAlgebra;
use crate::subspace::Subspace;

/// Default cap on induced and pipeline module dimensions.
pub const DEFAULT_MAX_MODULE_DIM: usize = 4096;

/// A linear form on `L`, stored by its values on the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub values: Vec<u32>,
}

impl Character {
    pub fn eval(&self, f: Fp, x: &[u32]) -> u32 {
        f.dot(&self.values, x)
    }
}

/// The form equal to `1` on the first basis vector of `A` and `0` on the
/// remaining basis vectors of `A` and on the standard co-basis.
pub fn choose_character(r: &RestrictedAlgebra, a: &Subspace) -> Result<Character> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let n = r.dim();
    let k = n - a.dim();
    let t = adapted_basis(r.algebra().field(), n, a);
    let t_inv = t.inverse().expect("adapted basis is a basis");
    Ok(Character { values: t_inv.row(k).to_vec() })
}

/// Columns: the standard co-basis of `a`, then the RREF basis of `a`.
fn adapted_basis(f: Fp, n: usize, a: &Subspace) -> FpMatrix {
    let mut cols: Vec<Vec<u32>> = a.complement_indices().iter().map(|&j| unit_vector(n, j)).collect();
    cols.extend(a.basis_vectors());
    FpMatrix::from_cols(f, n, &cols)
}

/// The induced module together with bookkeeping from its construction.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub module: LieModule,
    /// Indices of the standard co-basis vectors `e_1, …, e_k`.
    pub cobasis: Vec<usize>,
    /// Deepest nesting reached while normalising products.
    pub max_depth: usize,
}

impl InducedModule {
    /// Exponent vector of the `idx`-th basis monomial.
    pub fn exponents(&self, idx: usize) -> Vec<usize> {
        decode(self.module.p() as usize, self.cobasis.len(), idx)
    }
}

type Sparse = Vec<(usize, u32)>;

fn decode(p: usize, k: usize, mut idx: usize) -> Vec<usize> {
    let mut e = vec![0; k];
    for i in (0..k).rev() {
        e[i] = idx % p;
        idx /= p;
    }
    e
}

fn encode(p: usize, e: &[usize]) -> usize {
    e.iter().fold(0, |acc, &r| acc * p + r)
}

fn sparse(v: &[u32]) -> Sparse {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

struct Straightener {
    f: Fp,
    p: usize,
    k: usize,
    letters: usize,
    size: usize,
    /// `[b_s, b_t]` in letter coordinates.
    brackets: Vec<Vec<Sparse>>,
    /// `e_j^{[p]}` in letter coordinates, co-basis letters only.
    powers: Vec<Sparse>,
    /// `c(b_s)`.
    chi: Vec<u32>,
    memo: Vec<Option<Rc<Sparse>>>,
    busy: Vec<bool>,
    depth: usize,
    max_depth: usize,
}

impl Straightener {
    fn add_into(&self, acc: &mut BTreeMap<usize, u32>, coeff: u32, v: &[(usize, u32)]) {
        if coeff == 0 {
            return;
        }
        for &(i, c) in v {
            let e = acc.entry(i).or_insert(0);
            *e = self.f.add(*e, self.f.mul(coeff, c));
        }
    }

    fn finish(acc: BTreeMap<usize, u32>) -> Sparse {
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// Action of a combination of letters on one monomial.
    fn act_element(&mut self, elem: &[(usize, u32)], m: usize) -> Sparse {
        let mut acc = BTreeMap::new();
        for &(b, c) in elem {
            let v = self.act(b, m);
            self.add_into(&mut acc, c, &v);
        }
        Self::finish(acc)
    }

    /// Action of one letter on a vector of monomials.
    fn act_vector(&mut self, b: usize, v: &[(usize, u32)]) -> Sparse {
        let mut acc = BTreeMap::new();
        for &(m, c) in v {
            let w = self.act(b, m);
            self.add_into(&mut acc, c, &w);
        }
        Self::finish(acc)
    }

    fn act(&mut self, b: usize, m: usize) -> Rc<Sparse> {
        let key = b * self.size + m;
        if let Some(v) = &self.memo[key] {
            return Rc::clone(v);
        }
        assert!(!self.busy[key], "normalising letter {b} against monomial {m} recursed into itself");
        self.busy[key] = true;
        self.depth += 1;
        self.max_depth = self.max_depth.max(self.depth);
        let result = self.compute(b, m);
        self.depth -= 1;
        self.busy[key] = false;
        let rc = Rc::new(result);
        self.memo[key] = Some(Rc::clone(&rc));
        rc
    }

    fn compute(&mut self, b: usize, m: usize) -> Sparse {
        let (p, k) = (self.p, self.k);
        let mut e = decode(p, k, m);
        let Some(j) = e.iter().position(|&r| r > 0) else {
            // 1 ⊗ w
            return if b < k {
                let mut mono = vec![0; k];
                mono[b] = 1;
                vec![(encode(p, &mono), 1)]
            } else if self.chi[b] != 0 {
                vec![(m, self.chi[b])]
            } else {
                Vec::new()
            };
        };
        if b < j {
            e[b] = 1;
            return vec![(encode(p, &e), 1)];
        }
        if b == j {
            if e[j] + 1 < p {
                e[j] += 1;
                return vec![(encode(p, &e), 1)];
            }
            e[j] = 0;
            let rest = encode(p, &e);
            let power = self.powers[j].clone();
            let mut acc = BTreeMap::new();
            let v = self.act_element(&power, rest);
            self.add_into(&mut acc, 1, &v);
            let c = self.f.frobenius(self.chi[j]);
            self.add_into(&mut acc, c, &[(rest, 1)]);
            return Self::finish(acc);
        }
        // b e_j m' = e_j (b m') + [b, e_j] m'
        e[j] -= 1;
        let tail = encode(p, &e);
        let moved = self.act(b, tail);
        let first = self.act_vector(j, &moved);
        let comm = self.brackets[b][j].clone();
        let second = self.act_element(&comm, tail);
        let mut acc = BTreeMap::new();
        self.add_into(&mut acc, 1, &first);
        self.add_into(&mut acc, 1, &second);
        Self::finish(acc)
    }
}

/// Builds the induced module, refusing dimensions above `max_dim`.
pub fn induced_module(r: &RestrictedAlgebra, a: &Subspace, c: &Character, max_dim: usize) -> Result<InducedModule> {
    let alg = r.algebra();
    let f = alg.field();
    let n = alg.dim();
    let p = f.p() as usize;
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if !alg.is_ideal(a) {
        return Err(Error::NotAnIdeal);
    }
    if !alg.is_abelian_subspace(a) {
        return Err(Error::NotAbelian);
    }
    if a.basis_vectors().iter().any(|v| !is_zero(&r.p_power(v))) {
        return Err(Error::BadCharacter("the p-map does not vanish on the ideal".into()));
    }
    if a.basis_vectors().iter().all(|v| c.eval(f, v) == 0) {
        return Err(Error::BadCharacter("the character vanishes on the ideal".into()));
    }
    let k = n - a.dim();
    let size = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > max_dim as u128 {
        return Err(Error::ModuleTooLarge { dim: size, max: max_dim });
    }
    let size = size as usize;

    let t = adapted_basis(f, n, a);
    let t_inv = t.inverse().expect("adapted basis is a basis");
    let letter_vecs: Vec<Vec<u32>> = (0..n).map(|s| t.col(s)).collect();
    let brackets = (0..n)
        .map(|s| (0..n).map(|u| sparse(&t_inv.mul_vec(&alg.bracket(&letter_vecs[s], &letter_vecs[u])))).collect())
        .collect();
    let powers = (0..k).map(|j| sparse(&t_inv.mul_vec(&r.p_power(&letter_vecs[j])))).collect();
    let chi = letter_vecs.iter().map(|v| c.eval(f, v)).collect();

    let mut st = Straightener {
        f,
        p,
        k,
        letters: n,
        size,
        brackets,
        powers,
        chi,
        memo: vec![None; n * size],
        busy: vec![false; n * size],
        depth: 0,
        max_depth: 0,
    };
    let mut letter_mats = Vec::with_capacity(n);
    for b in 0..st.letters {
        let mut mat = FpMatrix::zeros(f, size, size);
        for m in 0..size {
            for &(row, val) in st.act(b, m).iter() {
                mat.set(row, m, val);
            }
        }
        letter_mats.push(mat);
    }
    let action: Vec<FpMatrix> = (0..n)
        .map(|i| {
            let mut acc = FpMatrix::zeros(f, size, size);
            for (b, mat) in letter_mats.iter().enumerate() {
                acc.add_scaled(t_inv.get(b, i), mat);
            }
            acc
        })
        .collect();
    let module = LieModule::new(f, n, size, action);
    module.check(alg).map_err(|e| Error::Construction(format!("induced module: {e}")))?;
    Ok(InducedModule { module, cobasis: a.complement_indices(), max_depth: st.max_depth })
}
