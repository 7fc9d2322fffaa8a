#![allow(dead_code)]

use modlie::corpus::{self, CorpusEntry};
use modlie::envelope::{build_envelope, EnvelopeMode};
use modlie::restricted::adjust_p_map_on_asoc;
use modlie::{LieAlgebra, LieModule, RestrictedAlgebra};

/// Every restricted algebra the property suites run over: the corpus
/// structures, their asoc-adjusted variants and the hosts of both envelope
/// constructions.
pub fn restricted_zoo() -> Vec<(String, RestrictedAlgebra)> {
    let mut out = Vec::new();
    for e in corpus::corpus() {
        if let Some(r) = &e.restricted {
            out.push((e.name.clone(), r.clone()));
            let (adj, _) = adjust_p_map_on_asoc(r, 1).expect("adjust");
            out.push((format!("{}-adjusted", e.name), adj));
        }
        for mode in [EnvelopeMode::Paper, EnvelopeMode::Compact] {
            let env = build_envelope(&e.algebra, &e.abelian_ideal, mode).expect("envelope");
            out.push((format!("{}-env-{mode}", e.name), env.host));
        }
    }
    out
}

pub fn entries() -> Vec<CorpusEntry> {
    corpus::corpus()
}

/// Reduces raw integers into a vector of `F_p^n`.
pub fn vector(raw: &[u32], p: u32, n: usize) -> Vec<u32> {
    raw.iter().take(n).map(|x| x % p).collect()
}

/// Plain `u64` modular helpers kept separate from the library field type.
pub fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn powmod(a: u32, e: u32, p: u32) -> u32 {
    (0..e).fold(1 % p, |acc, _| mulmod(acc, a, p))
}

/// Naive bracket straight from the structure constants.
pub fn naive_bracket(alg: &LieAlgebra, x: &[u32], y: &[u32]) -> Vec<u32> {
    let p = alg.p();
    let n = alg.dim();
    let mut out = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            let c = mulmod(x[i], y[j], p);
            if c == 0 {
                continue;
            }
            for (k, &s) in alg.basis_bracket(i, j).iter().enumerate() {
                out[k] = (out[k] + mulmod(c, s, p) as u64) % p as u64;
            }
        }
    }
    out.into_iter().map(|v| v as u32).collect()
}

// ---- an exhaustive composition-factor oracle ----------------------------

/// Dense matrices over F_p as nested vectors, acting on column vectors.
type Mat = Vec<Vec<u32>>;

fn apply(m: &Mat, v: &[u32], p: u32) -> Vec<u32> {
    m.iter().map(|row| row.iter().zip(v).fold(0u32, |acc, (&a, &b)| (acc + mulmod(a, b, p)) % p)).collect()
}

/// Row-reduces `rows` in place and returns the pivot columns.
fn echelon(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(s) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, s);
        let inv = powmod(rows[r][c], p - 2, p);
        for x in rows[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..cols {
                    rows[i][k] = (rows[i][k] + p - mulmod(f, rows[r][k], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn reduce_by(rows: &[Vec<u32>], pivots: &[usize], v: &[u32], p: u32) -> Vec<u32> {
    let mut v = v.to_vec();
    for (row, &c) in rows.iter().zip(pivots) {
        let f = v[c];
        if f != 0 {
            for k in 0..v.len() {
                v[k] = (v[k] + p - mulmod(f, row[k], p)) % p;
            }
        }
    }
    v
}

/// Dimension of the submodule generated by `v`, with its echelon basis.
fn spin(mats: &[Mat], v: &[u32], p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut rows = vec![v.to_vec()];
    let mut piv = echelon(&mut rows, p);
    let mut queue = rows.clone();
    while let Some(w) = queue.pop() {
        for m in mats {
            let u = apply(m, &w, p);
            let red = reduce_by(&rows, &piv, &u, p);
            if red.iter().any(|&x| x != 0) {
                rows.push(red.clone());
                piv = echelon(&mut rows, p);
                queue.push(red);
            }
        }
    }
    (rows, piv)
}

fn all_vectors(dim: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(dim as u32);
    (1..total).map(move |mut idx| {
        let mut v = vec![0; dim];
        for x in v.iter_mut() {
            *x = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        v
    })
}

/// Composition-factor dimensions found by brute force: the smallest cyclic
/// submodule over all nonzero vectors is irreducible, so split it off and
/// recurse on the quotient.
pub fn oracle_factor_dims(m: &LieModule) -> Vec<usize> {
    let p = m.p();
    let mats: Vec<Mat> = m.action().iter().map(|a| a.row_vecs()).collect();
    let mut dims = oracle_rec(mats, m.dim(), p);
    dims.sort_unstable();
    dims
}

fn oracle_rec(mats: Vec<Mat>, dim: usize, p: u32) -> Vec<usize> {
    if dim == 0 {
        return vec![];
    }
    let (rows, piv) = all_vectors(dim, p)
        .map(|v| spin(&mats, &v, p))
        .min_by_key(|(rows, _)| rows.len())
        .expect("nonzero space");
    let d = rows.len();
    if d == dim {
        return vec![dim];
    }
    let rest: Vec<usize> = (0..dim).filter(|c| !piv.contains(c)).collect();
    let quotient: Vec<Mat> = mats
        .iter()
        .map(|m| {
            let mut q = vec![vec![0; rest.len()]; rest.len()];
            for (j, &cj) in rest.iter().enumerate() {
                let mut e = vec![0; dim];
                e[cj] = 1;
                let img = reduce_by(&rows, &piv, &apply(m, &e, p), p);
                for (i, &ci) in rest.iter().enumerate() {
                    q[i][j] = img[ci];
                }
            }
            q
        })
        .collect();
    let mut out = vec![d];
    out.extend(oracle_rec(quotient, dim - d, p));
    out
}

// ---- module collections shared by the oracle suites ---------------------

use modlie::envelope::Envelope;
use modlie::induced::{choose_character, induced_module, Character, DEFAULT_MAX_MODULE_DIM};
use modlie::pipeline::{faithful_cr, faithful_cr_restricted, PipelineConfig};
use modlie::restricted::zero_p_map_on_abelian_ideal;
use modlie::Subspace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Modules over F_2 of dimension at most 8 built from the corpus: pipeline
/// outputs, adjoint modules, induced modules, envelope adjoints, their
/// duals and small direct sums.
pub fn f2_modules() -> Vec<(String, LieModule)> {
    let cfg = PipelineConfig::default();
    let mut base: Vec<(String, LieModule)> = Vec::new();
    for e in corpus::corpus().into_iter().filter(|e| e.algebra.p() == 2) {
        let (m, _) = faithful_cr(&e.algebra, &cfg).unwrap();
        base.push((format!("{}-general", e.name), m.module()));
        base.push((format!("{}-adjoint", e.name), e.algebra.adjoint_module()));
        if let Some(r) = &e.restricted {
            let (m, _) = faithful_cr_restricted(r, &cfg).unwrap();
            base.push((format!("{}-restricted", e.name), m.module()));
        }
        for (label, r, a) in induced_cases_for(&e) {
            let c = choose_character(&r, &a).unwrap();
            let v = induced_module(&r, &a, &c, DEFAULT_MAX_MODULE_DIM).unwrap();
            base.push((format!("{}-induced-{label}", e.name), v.module));
        }
        let env = build_envelope(&e.algebra, &e.abelian_ideal, EnvelopeMode::Paper).unwrap();
        base.push((format!("{}-envelope-adjoint", e.name), env.host.algebra().adjoint_module()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xF2);
    for i in 0..12 {
        let alg = corpus::random_algebra(2, 1 + i % 4, &mut rng);
        base.push((format!("random{i}-adjoint"), alg.adjoint_module()));
        let (m, _) = faithful_cr(&alg, &cfg).unwrap();
        base.push((format!("random{i}-general"), m.module()));
    }
    let mut out: Vec<(String, LieModule)> = Vec::new();
    for (name, m) in &base {
        out.push((name.clone(), m.clone()));
        out.push((format!("{name}-dual"), m.transposed()));
    }
    let sums: Vec<(String, LieModule)> = base
        .iter()
        .zip(base.iter().skip(1))
        .filter(|((_, a), (_, b))| a.algdim() == b.algdim() && a.dim() + b.dim() <= 8)
        .map(|((na, a), (nb, b))| (format!("{na}+{nb}"), LieModule::direct_sum(a.field(), a.algdim(), &[a, b])))
        .collect();
    out.extend(sums);
    out.retain(|(_, m)| m.dim() >= 1 && m.dim() <= 8);
    out
}

/// `(label, restricted structure with p-map zero on A, A)` for every
/// abelian ideal of a corpus entry worth inducing from.
pub fn induced_cases_for(e: &CorpusEntry) -> Vec<(String, RestrictedAlgebra, Subspace)> {
    let Some(r) = &e.restricted else { return vec![] };
    let alg = &e.algebra;
    let n = alg.dim();
    let mut ideals: Vec<(String, Subspace)> = Vec::new();
    let asoc = modlie::ideals::abelian_socle(alg, 1).unwrap();
    if !asoc.is_zero() {
        ideals.push(("asoc".into(), asoc));
    }
    if !e.abelian_ideal.is_zero() {
        ideals.push(("designated".into(), e.abelian_ideal.clone()));
    }
    if e.name.starts_with("H3") {
        ideals.push(("z".into(), alg.span(&[modlie::field::unit_vector(n, 2)])));
    }
    ideals
        .into_iter()
        .map(|(label, a)| {
            let r0 = zero_p_map_on_abelian_ideal(r, &a).unwrap();
            (label, r0, a)
        })
        .collect()
}

/// A random character that is nonzero somewhere on `a`.
pub fn random_character(a: &Subspace, p: u32, n: usize, rng: &mut ChaCha8Rng) -> Character {
    loop {
        let values: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let c = Character { values };
        if a.basis_vectors().iter().any(|v| c.eval(a.field(), v) != 0) {
            return c;
        }
    }
}

/// The envelopes of every corpus entry in both modes.
pub fn all_envelopes() -> Vec<(CorpusEntry, EnvelopeMode, Envelope)> {
    let mut out = Vec::new();
    for e in corpus::corpus() {
        for mode in [EnvelopeMode::Paper, EnvelopeMode::Compact] {
            let env = build_envelope(&e.algebra, &e.abelian_ideal, mode).unwrap();
            out.push((e.clone(), mode, env));
        }
    }
    out
}

/// Rank of the span of the flattened action matrices; equals `n` exactly
/// when the representation is faithful.
pub fn action_rank(m: &LieModule) -> usize {
    let mut rows: Vec<Vec<u32>> = m.action().iter().map(|a| a.data().to_vec()).collect();
    if m.dim() == 0 {
        return 0;
    }
    echelon(&mut rows, m.p()).len()
}

/// The representation law checked entry by entry.
pub fn law_holds(alg: &LieAlgebra, m: &LieModule) -> bool {
    let p = m.p();
    let d = m.dim();
    let mats: Vec<Mat> = m.action().iter().map(|a| a.row_vecs()).collect();
    let mul = |a: &Mat, b: &Mat| -> Mat {
        (0..d)
            .map(|i| (0..d).map(|j| (0..d).fold(0, |acc, k| (acc + mulmod(a[i][k], b[k][j], p)) % p)).collect())
            .collect()
    };
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let ab = mul(&mats[i], &mats[j]);
            let ba = mul(&mats[j], &mats[i]);
            let c = alg.basis_bracket(i, j);
            for r in 0..d {
                for s in 0..d {
                    let lhs = (0..alg.dim()).fold(0, |acc, k| (acc + mulmod(c[k], mats[k][r][s], p)) % p);
                    if lhs != (ab[r][s] + p - ba[r][s]) % p {
                        return false;
                    }
                }
            }
        }
    }
    true
}
