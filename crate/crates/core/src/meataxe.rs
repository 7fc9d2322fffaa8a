//! Submodule search and irreducibility certification.
//!
//! `chop` draws random elements of the associative algebra generated by the
//! action matrices, factors their characteristic polynomials and spins null
//! vectors. When a factor `f` has `nullity f(θ) = deg f`, Norton's criterion
//! decides irreducibility by spinning one null vector of `f(θ)` and one of
//! `f(θ)ᵀ`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::FpMatrix;
use crate::module::{spin_under, LieModule};
use crate::poly::{char_poly, irreducible_factors, Poly};
use crate::subspace::Subspace;

/// Random elements tried before giving up.
pub const CHOP_BUDGET: usize = 64;

const MAX_WORD_LEN: usize = 4;
const WORDS_PER_ELEMENT: usize = 3;

/// Evidence that a module is irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IrreducibleWitness {
    /// Modules of dimension one have no proper nonzero subspaces.
    OneDimensional,
    /// Norton's criterion succeeded for the element `word` (deterministic
    /// from `seed` and `attempt`) and the irreducible factor `factor` of its
    /// characteristic polynomial.
    Norton { seed: u64, attempt: usize, word: String, factor: String, nullity: usize },
}

impl fmt::Display for IrreducibleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleWitness::OneDimensional => write!(f, "dimension one"),
            IrreducibleWitness::Norton { seed, attempt, word, factor, nullity } => write!(
                f,
                "norton seed={seed} attempt={attempt} element=[{word}] factor=[{factor}] nullity={nullity}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChopResult {
    ProperSubmodule(Subspace),
    Irreducible(IrreducibleWitness),
}

/// An irreducible module together with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub module: LieModule,
    pub witness: IrreducibleWitness,
}

/// Derives an independent seed for a sub-computation.
pub fn derive_seed(seed: u64, branch: u64) -> u64 {
    // splitmix64 finaliser over the pair
    let mut z = seed ^ branch.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x632B_E59B_D9B4_E019);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct RandomElement {
    matrix: FpMatrix,
    description: String,
}

fn random_element<R: Rng>(m: &LieModule, rng: &mut R) -> RandomElement {
    let f = m.field();
    let p = f.p();
    let d = m.dim();
    let gens = m.action();
    let c0 = rng.gen_range(0..p);
    let mut theta = FpMatrix::scalar(f, d, c0);
    let mut terms = vec![format!("{c0}*I")];
    if !gens.is_empty() {
        for _ in 0..WORDS_PER_ELEMENT {
            let coeff = rng.gen_range(1..p.max(2));
            let len = rng.gen_range(1..=MAX_WORD_LEN);
            let idx: Vec<usize> = (0..len).map(|_| rng.gen_range(0..gens.len())).collect();
            let mut w = gens[idx[0]].clone();
            for &i in &idx[1..] {
                w = w.mul(&gens[i]);
            }
            theta.add_scaled(coeff % p, &w);
            let name: Vec<String> = idx.iter().map(|i| format!("g{i}")).collect();
            terms.push(format!("{}*{}", coeff % p, name.join("")));
        }
    }
    RandomElement { matrix: theta, description: terms.join(" + ") }
}

/// Finds a proper nonzero submodule or certifies irreducibility.
pub fn chop(m: &LieModule, seed: u64) -> Result<ChopResult> {
    assert!(m.dim() >= 1, "chop needs a nonzero module");
    if m.dim() == 1 {
        return Ok(ChopResult::Irreducible(IrreducibleWitness::OneDimensional));
    }
    let f = m.field();
    let transposed = m.transposed();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..CHOP_BUDGET {
        let elt = random_element(m, &mut rng);
        let chi = char_poly(&elt.matrix);
        for factor in irreducible_factors(&chi, f, &mut rng) {
            let nf = factor.eval_matrix(&elt.matrix);
            let null = nf.kernel_vectors();
            let v = &null[0];
            let s = m.spin(std::slice::from_ref(v));
            if !s.is_full() {
                return Ok(ChopResult::ProperSubmodule(s));
            }
            if null.len() != factor.degree() {
                continue;
            }
            let null_t = nf.transpose().kernel_vectors();
            let t = transposed.spin(std::slice::from_ref(&null_t[0]));
            if !t.is_full() {
                return Ok(ChopResult::ProperSubmodule(t.annihilator()));
            }
            return Ok(ChopResult::Irreducible(IrreducibleWitness::Norton {
                seed,
                attempt,
                word: elt.description,
                factor: factor_display(&factor),
                nullity: null.len(),
            }));
        }
    }
    Err(Error::BudgetExhausted { seed, attempts: CHOP_BUDGET })
}

fn factor_display(f: &Poly) -> String {
    f.display()
}

/// Factors of a composition series, bottom first. Each factor carries its own
/// irreducibility certificate.
pub fn composition_factors(m: &LieModule, seed: u64) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    collect_factors(m, seed, &mut out)?;
    Ok(out)
}

fn collect_factors(m: &LieModule, seed: u64, out: &mut Vec<Factor>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    match chop(m, seed)? {
        ChopResult::Irreducible(witness) => {
            out.push(Factor { module: m.clone(), witness });
            Ok(())
        }
        ChopResult::ProperSubmodule(s) => {
            let sub = m.sub_module(&s)?;
            let quo = m.quotient_module(&s)?;
            collect_factors(&sub, derive_seed(seed, 1), out)?;
            collect_factors(&quo, derive_seed(seed, 2), out)
        }
    }
}

/// An irreducible submodule, found by descending into proper submodules.
/// The subspace is returned in the coordinates of `m`.
pub fn irreducible_submodule(m: &LieModule, seed: u64) -> Result<(Subspace, Factor)> {
    assert!(m.dim() >= 1, "irreducible_submodule needs a nonzero module");
    let f = m.field();
    // Basis of the current submodule, as vectors of m.
    let mut embed: Vec<Vec<u32>> = (0..m.dim()).map(|i| crate::field::unit_vector(m.dim(), i)).collect();
    let mut current = m.clone();
    let mut s = seed;
    loop {
        match chop(&current, s)? {
            ChopResult::Irreducible(witness) => {
                let sub = Subspace::span(f, m.dim(), &embed);
                return Ok((sub, Factor { module: current, witness }));
            }
            ChopResult::ProperSubmodule(sp) => {
                embed = sp
                    .basis_vectors()
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u32; m.dim()];
                        for (k, &ck) in c.iter().enumerate() {
                            f.axpy(&mut v, ck, &embed[k]);
                        }
                        v
                    })
                    .collect();
                current = current.sub_module(&sp)?;
                s = derive_seed(s, 1);
            }
        }
    }
}

/// Basis of `Hom_L(S, M)`: matrices `φ` (`dim M × dim S`) with
/// `ρ_M(e_i) φ = φ ρ_S(e_i)` for every basis element.
pub fn hom_space(s: &LieModule, m: &LieModule) -> Vec<FpMatrix> {
    let f = m.field();
    let (ds, dm) = (s.dim(), m.dim());
    let total = ds * dm;
    if total == 0 {
        return Vec::new();
    }
    // Columns of `params` span the solution space found so far.
    let mut basis: Vec<Vec<u32>> = (0..total).map(|i| crate::field::unit_vector(total, i)).collect();
    for (rs, rm) in s.action().iter().zip(m.action()) {
        if basis.is_empty() {
            break;
        }
        let images: Vec<Vec<u32>> = basis
            .iter()
            .map(|v| {
                let phi = FpMatrix::from_flat(f, dm, ds, v.clone());
                rm.mul(&phi).sub(&phi.mul(rs)).data().to_vec()
            })
            .collect();
        let sys = FpMatrix::from_cols(f, total, &images);
        let kernel = sys.kernel_vectors();
        basis = kernel
            .iter()
            .map(|k| {
                let mut v = vec![0u32; total];
                for (j, &c) in k.iter().enumerate() {
                    f.axpy(&mut v, c, &basis[j]);
                }
                v
            })
            .collect();
    }
    basis.into_iter().map(|v| FpMatrix::from_flat(f, dm, ds, v)).collect()
}

/// Column space of a matrix.
pub fn image(phi: &FpMatrix) -> Subspace {
    Subspace::from_matrix(&phi.transpose())
}

/// One isomorphism type of irreducible submodule of a module.
#[derive(Clone, Debug)]
pub struct SocleType {
    pub factor: Factor,
    /// Basis of `Hom(factor, M)`; every nonzero combination is injective and
    /// its image is a minimal submodule.
    pub homs: Vec<FpMatrix>,
}

/// The socle of a module: its minimal submodules grouped by type.
#[derive(Clone, Debug)]
pub struct Socle {
    pub types: Vec<SocleType>,
    /// Distinct images of the Hom basis vectors, each a minimal submodule;
    /// `(type index, subspace)`. Their sum is the socle.
    pub pieces: Vec<(usize, Subspace)>,
    pub socle: Subspace,
}

/// Socle of `m`, using its composition factors as candidate types (every
/// minimal submodule is isomorphic to some composition factor).
pub fn socle(m: &LieModule, seed: u64) -> Result<Socle> {
    let f = m.field();
    let factors = composition_factors(m, seed)?;
    let mut types: Vec<SocleType> = Vec::new();
    let mut seen: Vec<Factor> = Vec::new();
    for fac in factors {
        let duplicate = seen
            .iter()
            .any(|g| g.module.dim() == fac.module.dim() && !hom_space(&g.module, &fac.module).is_empty());
        if duplicate {
            continue;
        }
        seen.push(fac.clone());
        let homs = hom_space(&fac.module, m);
        if !homs.is_empty() {
            types.push(SocleType { factor: fac, homs });
        }
    }
    let mut pieces: Vec<(usize, Subspace)> = Vec::new();
    let mut total = Subspace::zero(f, m.dim());
    for (t, ty) in types.iter().enumerate() {
        for phi in &ty.homs {
            let im = image(phi);
            if !pieces.iter().any(|(_, s)| *s == im) {
                total = total.sum(&im)?;
                pieces.push((t, im));
            }
        }
    }
    Ok(Socle { types, pieces, socle: total })
}

impl Socle {
    /// Number of distinct minimal submodules of type `t`, i.e. the number of
    /// distinct images of nonzero combinations of its Hom basis. Bounded by
    /// the size of the projective space on the Hom basis.
    pub fn projective_count(&self, t: usize, p: u32) -> u128 {
        let h = self.types[t].homs.len() as u32;
        let q = p as u128;
        (q.pow(h) - 1) / (q - 1)
    }

    /// All minimal submodules of type `t`, by enumerating the projective
    /// space of Hom combinations.
    pub fn enumerate_type(&self, t: usize, field: Fp) -> Vec<Subspace> {
        let homs = &self.types[t].homs;
        let h = homs.len();
        let p = field.p() as u64;
        let mut out: Vec<Subspace> = Vec::new();
        let count = p.pow(h as u32);
        for idx in 1..count {
            let mut coeffs = Vec::with_capacity(h);
            let mut x = idx;
            for _ in 0..h {
                coeffs.push((x % p) as u32);
                x /= p;
            }
            // Normalize: first nonzero coefficient (from the top) is one.
            let lead = *coeffs.iter().rev().find(|&&c| c != 0).unwrap();
            if lead != 1 {
                continue;
            }
            let mut phi = FpMatrix::zeros(field, homs[0].rows(), homs[0].cols());
            for (c, hm) in coeffs.iter().zip(homs) {
                phi.add_scaled(*c, hm);
            }
            let im = image(&phi);
            if !out.contains(&im) {
                out.push(im);
            }
        }
        out
    }
}

/// Transposed-action spin, exposed for tests.
pub fn spin_transposed(m: &LieModule, v: &[u32]) -> Subspace {
    let gens: Vec<FpMatrix> = m.action().iter().map(|a| a.transpose()).collect();
    spin_under(m.field(), m.dim(), &gens, &[v.to_vec()])
}
