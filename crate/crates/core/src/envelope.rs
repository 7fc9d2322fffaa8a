//! p-envelopes built from structure constants.
//!
//! The input basis is first rearranged so that the abelian ideal `A` spans
//! the last `d` coordinates. For every remaining basis vector `x` the
//! operators `D_t = ad(x)^{p^t}` restricted to `L` are computed until the
//! first linear dependency
//!
//! ```text
//! D_{r+1} = λ_0 D_0 + … + λ_r D_r.
//! ```
//!
//! Each adjoined symbol stands for a power `x^{p^t}` in the enveloping
//! algebra. Brackets between symbols are evaluated inside `L` by
//! `[x^{p^j}, z] = ad(x)^{p^j − 1}([x, z])`, where `[x, z]` lies in `L`
//! whenever `z` is a power of a basis vector.

use crate::error::{Error, Result};
use crate::field::{is_zero, unit_vector, Fp};
use crate::lie::LieAlgebra;
use crate::matrix::FpMatrix;
use crate::restricted::{PMap, RestrictedAlgebra};
use crate::subspace::Subspace;

/// How powers of generators are realised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum EnvelopeMode {
    /// Always adjoin `x^{[p]}` for a non-central generator, then continue
    /// the chain up to the first operator dependency.
    #[default]
    Paper,
    /// Reuse an existing element whenever one has the required adjoint
    /// action on `L`; adjoin a symbol only when none does.
    Compact,
}

impl std::str::FromStr for EnvelopeMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paper" => Ok(EnvelopeMode::Paper),
            "compact" => Ok(EnvelopeMode::Compact),
            other => Err(format!("unknown envelope mode `{other}` (expected paper or compact)")),
        }
    }
}

impl std::fmt::Display for EnvelopeMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EnvelopeMode::Paper => "paper",
            EnvelopeMode::Compact => "compact",
        })
    }
}

/// Powers adjoined for one generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeChain {
    /// Index of the generator in the rearranged basis of `L`.
    pub generator: usize,
    /// Host indices of the symbols `x^{p}, x^{p^2}, …`.
    pub symbols: Vec<usize>,
    /// Dependency coefficients `λ_0, …, λ_r` (paper mode, non-central
    /// generators only).
    pub lambda: Vec<u32>,
    /// p-th power of the last element of the chain, in host coordinates.
    pub closure: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Envelope {
    pub host: RestrictedAlgebra,
    pub mode: EnvelopeMode,
    pub original_dim: usize,
    pub ideal_dim: usize,
    pub chains: Vec<EnvelopeChain>,
    /// `A` in host coordinates.
    pub abelian_ideal: Subspace,
    /// `N × n`; column `i` holds the host coordinates of the input basis
    /// vector `e_i`.
    pub embedding: FpMatrix,
}

impl Envelope {
    pub fn dim(&self) -> usize {
        self.host.dim()
    }

    /// `n (n − d + 1)`.
    pub fn bound(&self) -> usize {
        self.original_dim * (self.original_dim - self.ideal_dim + 1)
    }

    /// The image of `L` in the host.
    pub fn lie_part(&self) -> Subspace {
        let n = self.original_dim;
        let vectors: Vec<Vec<u32>> = (0..n).map(|i| self.embedding.col(i)).collect();
        self.host.algebra().span(&vectors)
    }

    /// Host coordinates of a vector of `L`.
    pub fn embed(&self, v: &[u32]) -> Vec<u32> {
        self.embedding.mul_vec(v)
    }
}

fn flatten(m: &FpMatrix) -> Vec<u32> {
    m.data().to_vec()
}

/// Solves `Σ c_j ops[j] = target` for the first solution, if any.
fn combination_of(field: Fp, ops: &[FpMatrix], target: &FpMatrix) -> Option<Vec<u32>> {
    let rows = target.rows() * target.cols();
    if ops.is_empty() {
        return if target.is_zero() { Some(Vec::new()) } else { None };
    }
    let cols: Vec<Vec<u32>> = ops.iter().map(flatten).collect();
    FpMatrix::from_cols(field, rows, &cols).solve(&flatten(target))
}

/// One symbol: a power `x_i^{p^t}` with `t ≥ 1`.
struct Symbol {
    generator: usize,
    /// `D_t = ad(x)^{p^t}` on `L`.
    op: FpMatrix,
    /// `ad(x)^{p^t − 1}` on `L`.
    op_minus_one: FpMatrix,
}

/// `ad(x)^{p^t}` for `t = 0, 1, …, len − 1`.
fn power_ops(d0: &FpMatrix, p: u64, len: usize) -> Vec<FpMatrix> {
    let mut out = vec![d0.clone()];
    while out.len() < len {
        let next = out.last().unwrap().pow(p);
        out.push(next);
    }
    out
}

/// `ad(x)^{p^t − 1} = Π_{s<t} (ad(x)^{p^s})^{p−1}`.
fn op_minus_one(ops: &[FpMatrix], t: usize, p: u64) -> FpMatrix {
    let n = ops[0].rows();
    let mut acc = FpMatrix::identity(ops[0].field(), n);
    for op in &ops[..t] {
        acc = acc.mul(&op.pow(p - 1));
    }
    acc
}

/// Builds a p-envelope of `alg` in which the abelian ideal `a` has zero
/// p-th powers.
pub fn build_envelope(alg: &LieAlgebra, a: &Subspace, mode: EnvelopeMode) -> Result<Envelope> {
    if !alg.is_ideal(a) {
        return Err(Error::NotAnIdeal);
    }
    if !alg.is_abelian_subspace(a) {
        return Err(Error::NotAbelian);
    }
    let f = alg.field();
    let p = f.p() as u64;
    let n = alg.dim();
    let d = a.dim();
    let k = n - d;

    // rearranged basis: standard co-basis of A, then the RREF basis of A
    let mut new_basis: Vec<Vec<u32>> = a.complement_indices().iter().map(|&j| unit_vector(n, j)).collect();
    new_basis.extend(a.basis_vectors());
    let t = FpMatrix::from_cols(f, n, &new_basis);
    let l = alg.change_basis(&t)?;
    let t_inv = t.inverse().expect("co-basis completes the ideal basis");

    // Operators of the elements adjoined so far, indexed by host coordinate.
    let mut host_ops: Vec<FpMatrix> = (0..n).map(|i| l.ad_basis(i)).collect();
    let mut symbols: Vec<Symbol> = Vec::new();
    let mut chains: Vec<EnvelopeChain> = Vec::new();
    // p-th power of each L generator, as a host vector (padded later)
    let mut gen_images: Vec<Vec<u32>> = vec![Vec::new(); k];
    // p-th power of each symbol: either the next symbol or the closure
    let mut sym_images: Vec<Vec<u32>> = Vec::new();

    for i in 0..k {
        let d0 = l.ad_basis(i);
        if d0.is_zero() {
            gen_images[i] = vec![0; n];
            chains.push(EnvelopeChain { generator: i, symbols: Vec::new(), lambda: Vec::new(), closure: vec![0; n] });
            continue;
        }
        match mode {
            EnvelopeMode::Paper => {
                let mut ops = vec![d0];
                let lambda = loop {
                    let next = ops.last().unwrap().pow(p);
                    if let Some(l) = combination_of(f, &ops, &next) {
                        break l;
                    }
                    ops.push(next);
                    if ops.len() > n * n + 1 {
                        return Err(Error::Construction("operator chain does not become dependent".into()));
                    }
                };
                let r = lambda.len() - 1;
                let count = r.max(1);
                let all_ops = power_ops(&ops[0], p, count + 1);
                let first = n + symbols.len();
                let idx: Vec<usize> = (first..first + count).collect();
                for s in 1..=count {
                    symbols.push(Symbol {
                        generator: i,
                        op: all_ops[s].clone(),
                        op_minus_one: op_minus_one(&all_ops, s, p),
                    });
                    host_ops.push(all_ops[s].clone());
                }
                // closure: with r = 0, (x^p)^p = λ_0^p x^p; otherwise
                // x^{p^{r+1}} = Σ λ_t x^{p^t} modulo a central element
                let mut closure = vec![0u32; first + count];
                if r == 0 {
                    closure[idx[0]] = f.frobenius(lambda[0]);
                } else {
                    closure[i] = lambda[0];
                    for s in 1..=r {
                        closure[idx[s - 1]] = lambda[s];
                    }
                }
                gen_images[i] = unit_vector(first + count, idx[0]);
                for s in 0..count - 1 {
                    sym_images.push(unit_vector(first + count, idx[s + 1]));
                }
                sym_images.push(closure.clone());
                chains.push(EnvelopeChain { generator: i, symbols: idx, lambda, closure });
            }
            EnvelopeMode::Compact => {
                let mut ops = vec![d0];
                let mut idx: Vec<usize> = Vec::new();
                let closure = loop {
                    let next = ops.last().unwrap().pow(p);
                    if let Some(w) = combination_of(f, &host_ops, &next) {
                        break w;
                    }
                    if idx.len() >= n {
                        return Err(Error::Construction("compact chain longer than dim L".into()));
                    }
                    let s = ops.len();
                    ops.push(next.clone());
                    idx.push(n + symbols.len());
                    symbols.push(Symbol { generator: i, op: next.clone(), op_minus_one: op_minus_one(&ops, s, p) });
                    host_ops.push(next);
                };
                let width = host_ops.len();
                match idx.first() {
                    None => gen_images[i] = closure.clone(),
                    Some(&g) => {
                        gen_images[i] = unit_vector(width, g);
                        for s in 0..idx.len() - 1 {
                            sym_images.push(unit_vector(width, idx[s + 1]));
                        }
                        sym_images.push(closure.clone());
                    }
                }
                chains.push(EnvelopeChain { generator: i, symbols: idx, lambda: Vec::new(), closure });
            }
        }
    }

    let big_n = n + symbols.len();
    let pad = |v: &[u32]| {
        let mut out = v.to_vec();
        out.resize(big_n, 0);
        out
    };
    for c in &mut chains {
        c.closure = pad(&c.closure);
    }

    let mut host = LieAlgebra::abelian(f, big_n);
    for x in 0..n {
        for y in x + 1..n {
            host.set_bracket(x, y, &pad(l.basis_bracket(x, y)))?;
        }
    }
    for (s, sym) in symbols.iter().enumerate() {
        let hs = n + s;
        for u in 0..n {
            // [u, s] = −D_s(u)
            let v = f.scale(f.neg(1), &sym.op.col(u));
            host.set_bracket(u, hs, &pad(&v))?;
        }
    }
    let sym_bracket = |a: &Symbol, b: &Symbol| -> Vec<u32> {
        // [x^{p^j}, z] = ad(x)^{p^j − 1}(−[z, x])
        let zx = b.op.col(a.generator);
        a.op_minus_one.mul_vec(&f.scale(f.neg(1), &zx))
    };
    for s in 0..symbols.len() {
        for t in s + 1..symbols.len() {
            let st = sym_bracket(&symbols[s], &symbols[t]);
            let ts = sym_bracket(&symbols[t], &symbols[s]);
            if f.add_vec(&st, &ts).iter().any(|&c| c != 0) {
                return Err(Error::Construction(format!("symbol brackets {s}, {t} are not antisymmetric")));
            }
            host.set_bracket(n + s, n + t, &pad(&st))?;
        }
    }

    let mut images: Vec<Vec<u32>> = Vec::with_capacity(big_n);
    for g in &gen_images {
        images.push(pad(g));
    }
    for _ in k..n {
        images.push(vec![0; big_n]);
    }
    for v in &sym_images {
        images.push(pad(v));
    }
    let host = RestrictedAlgebra::new_unchecked(host, PMap::new(images));

    let mut embedding = FpMatrix::zeros(f, big_n, n);
    for r in 0..n {
        for c in 0..n {
            embedding.set(r, c, t_inv.get(r, c));
        }
    }
    let a_host = host.algebra().span(&(k..n).map(|j| unit_vector(big_n, j)).collect::<Vec<_>>());
    let env = Envelope {
        host,
        mode,
        original_dim: n,
        ideal_dim: d,
        chains,
        abelian_ideal: a_host,
        embedding,
    };
    let report = verify_envelope(&env, &[]);
    if !report.passed() {
        return Err(Error::Construction(format!("envelope failed its checks: {}", report.failures().join(", "))));
    }
    Ok(env)
}

/// Named outcome of each envelope check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeReport {
    pub checks: Vec<(&'static str, bool)>,
}

impl EnvelopeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }
}

/// Re-checks an envelope. `ideals` are ideals of `L` in input coordinates
/// that must remain ideals of the host.
pub fn verify_envelope(env: &Envelope, ideals: &[Subspace]) -> EnvelopeReport {
    let host = env.host.algebra();
    let lie = env.lie_part();
    let jacobi = host.verify_jacobi();
    let pmap = jacobi && env.host.verify_p_map();
    let subalgebra = lie.dim() == env.original_dim && host.is_subalgebra(&lie);
    let derived = host.derived().is_subspace_of(&lie);
    let bound = env.dim() <= env.bound();
    let ideal_zero = env.abelian_ideal.basis_vectors().iter().all(|a| is_zero(&env.host.p_power(a)));
    let lifted = ideals.iter().all(|i| {
        let vs: Vec<Vec<u32>> = i.basis_vectors().iter().map(|v| env.embed(v)).collect();
        host.is_ideal(&host.span(&vs))
    });
    EnvelopeReport {
        checks: vec![
            ("jacobi", jacobi),
            ("p-map", pmap),
            ("subalgebra", subalgebra),
            ("derived-in-L", derived),
            ("dimension-bound", bound),
            ("ideal-p-powers-zero", ideal_zero),
            ("ideals-lift", lifted),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn env(alg: &LieAlgebra, a: &[Vec<u32>], mode: EnvelopeMode) -> Envelope {
        build_envelope(alg, &alg.span(a), mode).unwrap()
    }

    #[test]
    fn na2_paper_mode() {
        for p in [2, 3, 5] {
            let e = env(&corpus::na2(p), &[vec![0, 1]], EnvelopeMode::Paper);
            assert_eq!(e.dim(), 3);
            assert_eq!(e.chains[0].lambda, vec![1]);
            // g^[p] = g
            assert_eq!(e.host.p_power(&[0, 0, 1]), vec![0, 0, 1]);
        }
    }

    #[test]
    fn h3_modes() {
        let h3 = corpus::h3(2);
        let a = [vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(env(&h3, &a, EnvelopeMode::Paper).dim(), 4);
        assert_eq!(env(&h3, &a, EnvelopeMode::Compact).dim(), 3);
    }

    #[test]
    fn nr3_both_modes() {
        let nr3 = corpus::nr3();
        let a = [vec![0, 1, 0], vec![0, 0, 1]];
        for mode in [EnvelopeMode::Paper, EnvelopeMode::Compact] {
            let e = env(&nr3, &a, mode);
            assert_eq!(e.dim(), 4, "{mode}");
            let x = e.embed(&[1, 0, 0]);
            // x^{[p]^2} = x
            assert_eq!(e.host.p_power_iter(&x, 2), x);
        }
    }

    #[test]
    fn compact_is_trivial_on_restrictable() {
        for alg in [corpus::sl2(5), corpus::w15(), corpus::abelian(3, 2)] {
            let e = build_envelope(&alg, &alg.zero_subspace(), EnvelopeMode::Compact).unwrap();
            assert_eq!(e.dim(), alg.dim());
        }
    }

    #[test]
    fn ideal_is_moved_to_the_tail() {
        let na2 = corpus::na2(3);
        let e = env(&na2, &[vec![0, 1]], EnvelopeMode::Paper);
        assert_eq!(e.embed(&[0, 1]), vec![0, 1, 0]);
        assert_eq!(e.abelian_ideal, e.host.algebra().span(&[vec![0, 1, 0]]));
    }

    #[test]
    fn rejects_non_abelian_or_non_ideal() {
        let sl2 = corpus::sl2(5);
        assert_eq!(build_envelope(&sl2, &sl2.full(), EnvelopeMode::Paper).unwrap_err(), Error::NotAbelian);
        let na2 = corpus::na2(2);
        assert_eq!(build_envelope(&na2, &na2.span(&[vec![1, 0]]), EnvelopeMode::Paper).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn corrupted_host_fails_jacobi() {
        let h3 = corpus::h3(2);
        let mut e = env(&h3, &[vec![0, 1, 0], vec![0, 0, 1]], EnvelopeMode::Paper);
        let mut alg = e.host.algebra().clone();
        alg.set_bracket(1, 2, &[0, 1, 0, 0]).unwrap();
        e.host = RestrictedAlgebra::new_unchecked(alg, e.host.pmap().clone());
        let r = verify_envelope(&e, &[]);
        assert!(r.failures().contains(&"jacobi"));
    }
}
