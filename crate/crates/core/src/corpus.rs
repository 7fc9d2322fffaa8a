//! Named algebras used by the CLI `corpus` command and by the test suites.

use rand::Rng;

use crate::field::Fp;
use crate::lie::LieAlgebra;
use crate::restricted::{PMap, RestrictedAlgebra};
use crate::subspace::Subspace;

fn field(p: u32) -> Fp {
    Fp::new(p).expect("corpus moduli are prime")
}

/// The `n`-dimensional abelian algebra.
pub fn abelian(p: u32, n: usize) -> LieAlgebra {
    LieAlgebra::abelian(field(p), n)
}

/// The non-abelian two-dimensional algebra, basis `x, y`, `[x, y] = y`.
pub fn na2(p: u32) -> LieAlgebra {
    LieAlgebra::from_brackets(field(p), 2, &[(0, 1, vec![0, 1])]).unwrap()
}

/// The Heisenberg algebra, basis `x, y, z`, `[x, y] = z`.
pub fn h3(p: u32) -> LieAlgebra {
    LieAlgebra::from_brackets(field(p), 3, &[(0, 1, vec![0, 0, 1])]).unwrap()
}

/// `sl_2`, basis `h, e, f`, `[h, e] = 2e`, `[h, f] = −2f`, `[e, f] = h`.
pub fn sl2(p: u32) -> LieAlgebra {
    let f = field(p);
    LieAlgebra::from_brackets(
        f,
        3,
        &[(0, 1, vec![0, 2 % p, 0]), (0, 2, vec![0, 0, f.from_i64(-2)]), (1, 2, vec![1, 0, 0])],
    )
    .unwrap()
}

/// A non-restrictable algebra over F_2: basis `x, a1, a2`, `[x, a1] = a2`,
/// `[x, a2] = a1 + a2`, with `⟨a1, a2⟩` an abelian ideal.
pub fn nr3() -> LieAlgebra {
    LieAlgebra::from_brackets(field(2), 3, &[(0, 1, vec![0, 0, 1]), (0, 2, vec![0, 1, 1])]).unwrap()
}

/// The Witt algebra W(1;1) over F_5: basis `e_{-1}, …, e_3` (indices 0..=4)
/// with `[e_i, e_j] = (j − i) e_{i+j}`.
pub fn w15() -> LieAlgebra {
    let p = 5u32;
    let f = field(p);
    let n = p as usize;
    let mut alg = LieAlgebra::abelian(f, n);
    for a in 0..n {
        for b in a + 1..n {
            let (i, j) = (a as i64 - 1, b as i64 - 1);
            let k = i + j;
            let mut v = vec![0u32; n];
            if (-1..=p as i64 - 2).contains(&k) {
                v[(k + 1) as usize] = f.from_i64(j - i);
            }
            alg.set_bracket(a, b, &v).unwrap();
        }
    }
    alg
}

fn restricted(alg: LieAlgebra, images: Vec<Vec<u32>>) -> RestrictedAlgebra {
    let pmap = PMap::new(images);
    RestrictedAlgebra::new(alg, pmap).expect("corpus p-maps satisfy the axioms")
}

pub fn na2_restricted(p: u32) -> RestrictedAlgebra {
    restricted(na2(p), vec![vec![1, 0], vec![0, 0]])
}

pub fn h3_restricted(p: u32) -> RestrictedAlgebra {
    restricted(h3(p), vec![vec![0; 3]; 3])
}

pub fn sl2_restricted(p: u32) -> RestrictedAlgebra {
    restricted(sl2(p), vec![vec![1, 0, 0], vec![0; 3], vec![0; 3]])
}

pub fn w15_restricted() -> RestrictedAlgebra {
    let mut images = vec![vec![0u32; 5]; 5];
    images[1][1] = 1;
    restricted(w15(), images)
}

pub fn abelian_restricted(p: u32, n: usize) -> RestrictedAlgebra {
    restricted(abelian(p, n), vec![vec![0; n]; n])
}

/// One named corpus algebra and the facts its runs must reproduce.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    /// Restricted structure, when the algebra is restrictable and the corpus
    /// fixes one.
    pub restricted: Option<RestrictedAlgebra>,
    /// The abelian ideal handed to the envelope construction.
    pub abelian_ideal: Subspace,
    /// Dimension of the general construction's output.
    pub expected_general_dim: usize,
    /// Branch taken at the top level of the general construction.
    pub expected_top_branch: &'static str,
}

fn entry(
    name: &str,
    algebra: LieAlgebra,
    restricted: Option<RestrictedAlgebra>,
    ideal: &[Vec<u32>],
    dim: usize,
    branch: &'static str,
) -> CorpusEntry {
    let abelian_ideal = algebra.span(ideal);
    CorpusEntry {
        name: name.to_string(),
        algebra,
        restricted,
        abelian_ideal,
        expected_general_dim: dim,
        expected_top_branch: branch,
    }
}

/// The full corpus, in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let full: Vec<Vec<u32>> = (0..n).map(|i| crate::field::unit_vector(n, i)).collect();
        let (dim, branch) = match n {
            1 => (1, "base"),
            2 => (2, "two-minimal-ideals"),
            _ => (4, "two-minimal-ideals"),
        };
        out.push(entry(&format!("Ab{n}"), abelian(2, n), Some(abelian_restricted(2, n)), &full, dim, branch));
    }
    for p in [2, 3, 5] {
        out.push(entry(
            &format!("NA2_p{p}"),
            na2(p),
            Some(na2_restricted(p)),
            &[vec![0, 1]],
            p as usize,
            "abelian-unique-minimal-ideal",
        ));
    }
    for p in [2, 3] {
        out.push(entry(
            &format!("H3_p{p}"),
            h3(p),
            Some(h3_restricted(p)),
            &[vec![0, 1, 0], vec![0, 0, 1]],
            p as usize,
            "abelian-unique-minimal-ideal",
        ));
    }
    out.push(entry("SL2_p5", sl2(5), Some(sl2_restricted(5)), &[], 3, "non-abelian-unique-minimal-ideal"));
    out.push(entry("NR3_p2", nr3(), None, &[vec![0, 1, 0], vec![0, 0, 1]], 4, "abelian-unique-minimal-ideal"));
    out.push(entry("W15", w15(), Some(w15_restricted()), &[], 5, "non-abelian-unique-minimal-ideal"));
    out
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// A random Lie algebra of dimension `n` over `F_p`, found by rejection
/// sampling on the Jacobi identity. Each bracket of basis vectors is zero
/// with probability one half, which keeps the acceptance rate usable.
pub fn random_algebra<R: Rng>(p: u32, n: usize, rng: &mut R) -> LieAlgebra {
    let f = field(p);
    loop {
        let mut alg = LieAlgebra::abelian(f, n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    let v: Vec<u32> = (0..n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..p) } else { 0 }).collect();
                    alg.set_bracket(i, j, &v).expect("indices in range");
                }
            }
        }
        if alg.verify_jacobi() {
            return alg;
        }
    }
}
