//! p-operations on Lie algebras.
//!
//! A p-map is stored by its values on the standard basis. Values on other
//! elements come from folding the sum and scalar axioms over the
//! coordinates, with the correction terms `s_i(a, b)` read off from
//! `ad(a⊗X + b⊗1)^(p−1)(a⊗1)` in `L ⊗ F[X]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{is_zero, unit_vector};
use crate::ideals::{abelian_part, adjoint_socle};
use crate::lie::LieAlgebra;
use crate::matrix::FpMatrix;
use crate::subspace::Subspace;

/// Cap on the number of minimal ideals enumerated when a p-map does not
/// vanish on the abelian socle.
pub const MAX_ENUMERATED_IDEALS: u128 = 1 << 16;

/// Random vectors checked by [`RestrictedAlgebra::verify_p_map`] in addition to
/// all basis pairs.
const VERIFY_SAMPLES: usize = 8;

/// Images of the standard basis vectors under the p-operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PMap {
    images: Vec<Vec<u32>>,
}

impl PMap {
    pub fn new(images: Vec<Vec<u32>>) -> Self {
        PMap { images }
    }
    pub fn zero(n: usize) -> Self {
        PMap { images: vec![vec![0; n]; n] }
    }
    pub fn images(&self) -> &[Vec<u32>] {
        &self.images
    }
    pub fn image(&self, i: usize) -> &[u32] {
        &self.images[i]
    }
}

/// `s_1(a, b), …, s_{p−1}(a, b)`.
pub fn s_terms(alg: &LieAlgebra, a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
    let f = alg.field();
    let p = alg.p() as usize;
    let n = alg.dim();
    // coeffs[k] is the coefficient of X^k
    let mut coeffs: Vec<Vec<u32>> = vec![vec![0; n]; p];
    coeffs[0] = a.to_vec();
    for _ in 0..p - 1 {
        let mut next = vec![vec![0u32; n]; p];
        for k in 0..p {
            if !is_zero(&coeffs[k]) {
                let bb = alg.bracket(b, &coeffs[k]);
                next[k] = f.add_vec(&next[k], &bb);
                if k + 1 < p {
                    let ab = alg.bracket(a, &coeffs[k]);
                    next[k + 1] = f.add_vec(&next[k + 1], &ab);
                }
            }
        }
        coeffs = next;
    }
    (1..p).map(|i| f.scale(f.inv(i as u32), &coeffs[i - 1])).collect()
}

/// Sum of the `s_i(a, b)`.
pub fn s_sum(alg: &LieAlgebra, a: &[u32], b: &[u32]) -> Vec<u32> {
    let f = alg.field();
    s_terms(alg, a, b).iter().fold(vec![0; alg.dim()], |acc, s| f.add_vec(&acc, s))
}

/// Evaluates the p-map determined by `values[k] = basis[k]^[p]` at
/// `Σ coords[k] basis[k]`, adding terms in the given order.
pub fn fold_p_power(
    alg: &LieAlgebra,
    basis: &[Vec<u32>],
    values: &[Vec<u32>],
    coords: &[u32],
    order: &[usize],
) -> Vec<u32> {
    let f = alg.field();
    let n = alg.dim();
    let mut u = vec![0u32; n];
    let mut up = vec![0u32; n];
    for &k in order {
        let lam = coords[k];
        if lam == 0 {
            continue;
        }
        let t = f.scale(lam, &basis[k]);
        let tp = f.scale(f.frobenius(lam), &values[k]);
        let corr = s_sum(alg, &u, &t);
        up = f.add_vec(&f.add_vec(&up, &tp), &corr);
        u = f.add_vec(&u, &t);
    }
    up
}

/// A Lie algebra with a p-operation satisfying the restricted axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RestrictedAlgebra {
    algebra: LieAlgebra,
    pmap: PMap,
}

impl RestrictedAlgebra {
    /// Checks the axioms before accepting the p-map.
    pub fn new(algebra: LieAlgebra, pmap: PMap) -> Result<Self> {
        let r = Self::new_unchecked(algebra, pmap);
        r.check_p_map()?;
        Ok(r)
    }

    pub fn new_unchecked(algebra: LieAlgebra, pmap: PMap) -> Self {
        assert_eq!(pmap.images.len(), algebra.dim(), "one p-map image per basis vector");
        RestrictedAlgebra { algebra, pmap }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }
    pub fn pmap(&self) -> &PMap {
        &self.pmap
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn p_power(&self, x: &[u32]) -> Vec<u32> {
        let order: Vec<usize> = (0..self.dim()).collect();
        self.p_power_ordered(x, &order)
    }

    /// `x^[p]` folding the coordinates in the given order.
    pub fn p_power_ordered(&self, x: &[u32], order: &[usize]) -> Vec<u32> {
        let n = self.dim();
        let basis: Vec<Vec<u32>> = (0..n).map(|i| unit_vector(n, i)).collect();
        fold_p_power(&self.algebra, &basis, &self.pmap.images, x, order)
    }

    /// `(x^[p])^[p]…`, `r` times.
    pub fn p_power_iter(&self, x: &[u32], r: usize) -> Vec<u32> {
        (0..r).fold(x.to_vec(), |acc, _| self.p_power(&acc))
    }

    pub fn verify_p_map(&self) -> bool {
        self.check_p_map().is_ok()
    }

    /// The three restricted axioms: `ad(e_i^[p]) = ad(e_i)^p` for the basis,
    /// and the sum and scalar axioms (plus `ad(x^[p]) = ad(x)^p`) on all basis
    /// pairs and a fixed pseudo-random sample.
    pub fn check_p_map(&self) -> Result<()> {
        let alg = &self.algebra;
        let f = alg.field();
        let p = alg.p() as u64;
        let n = alg.dim();
        for i in 0..n {
            if self.pmap.images[i].len() != n {
                return Err(Error::InvalidPMap(format!("image {i} has the wrong length")));
            }
            if alg.ad(&self.pmap.images[i]) != alg.ad_basis(i).pow(p) {
                return Err(Error::InvalidPMap(format!("ad(e_{i}^[p]) != ad(e_{i})^p")));
            }
        }
        let mut pairs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((unit_vector(n, i), unit_vector(n, j)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..VERIFY_SAMPLES {
            let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..f.p())).collect();
            let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..f.p())).collect();
            pairs.push((a, b));
        }
        for (a, b) in &pairs {
            let lhs = self.p_power(&f.add_vec(a, b));
            let rhs = f.add_vec(&f.add_vec(&self.p_power(a), &self.p_power(b)), &s_sum(alg, a, b));
            if lhs != rhs {
                return Err(Error::InvalidPMap(format!("sum axiom fails at {a:?}, {b:?}")));
            }
            let lam = (a.iter().sum::<u32>() % f.p()).max(1);
            if self.p_power(&f.scale(lam, a)) != f.scale(f.frobenius(lam), &self.p_power(a)) {
                return Err(Error::InvalidPMap(format!("scalar axiom fails at {a:?}")));
            }
            if alg.ad(&self.p_power(a)) != alg.ad(a).pow(p) {
                return Err(Error::InvalidPMap(format!("ad(x^[p]) != ad(x)^p at {a:?}")));
            }
        }
        Ok(())
    }

    /// Least `[p]`-ideal containing `s`.
    pub fn p_ideal_closure(&self, s: &Subspace) -> Subspace {
        let alg = &self.algebra;
        let mut cur = alg.ideal_closure_of(&s.basis_vectors());
        loop {
            let mut next = cur.clone();
            for v in cur.basis_vectors() {
                next.insert(&self.p_power(&v));
            }
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = alg.ideal_closure_of(&next.basis_vectors());
        }
    }

    pub fn is_p_ideal(&self, s: &Subspace) -> bool {
        self.algebra.is_ideal(s) && s.basis_vectors().iter().all(|v| s.contains(&self.p_power(v)))
    }

    /// `R / I` with `(x + I)^[p] = x^[p] + I` on the co-basis, and the
    /// projection.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(RestrictedAlgebra, FpMatrix)> {
        if !self.is_p_ideal(ideal) {
            return Err(if self.algebra.is_ideal(ideal) { Error::NotPIdeal } else { Error::NotAnIdeal });
        }
        let (q, proj) = self.algebra.quotient_algebra(ideal)?;
        let images = ideal
            .complement_indices()
            .iter()
            .map(|&j| proj.mul_vec(&self.p_power(&unit_vector(self.dim(), j))))
            .collect();
        let r = RestrictedAlgebra::new_unchecked(q, PMap::new(images));
        r.check_p_map().map_err(|e| Error::Construction(format!("quotient p-map: {e}")))?;
        Ok((r, proj))
    }
}

/// A p-map on `L` if one exists: `b_i` with `ad(b_i) = ad(e_i)^p`, taking
/// the first solution of each linear system.
pub fn solve_restriction(alg: &LieAlgebra) -> Option<PMap> {
    let n = alg.dim();
    let p = alg.p() as u64;
    let f = alg.field();
    // Columns: vec(ad(e_j)).
    let cols: Vec<Vec<u32>> = (0..n).map(|j| alg.ad_basis(j).data().to_vec()).collect();
    let sys = FpMatrix::from_cols(f, n * n, &cols);
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let target = alg.ad_basis(i).pow(p);
        images.push(sys.solve(target.data())?);
    }
    Some(PMap::new(images))
}

/// Replaces the p-map by one vanishing on the abelian ideal `a`, keeping the
/// values on the standard co-basis of `a`.
pub fn zero_p_map_on_abelian_ideal(r: &RestrictedAlgebra, a: &Subspace) -> Result<RestrictedAlgebra> {
    let alg = r.algebra();
    if !alg.is_ideal(a) {
        return Err(Error::NotAnIdeal);
    }
    if !alg.is_abelian_subspace(a) {
        return Err(Error::NotAbelian);
    }
    let n = alg.dim();
    let f = alg.field();
    let cobasis = a.complement_indices();
    let mut basis: Vec<Vec<u32>> = cobasis.iter().map(|&j| unit_vector(n, j)).collect();
    let mut values: Vec<Vec<u32>> = basis.iter().map(|b| r.p_power(b)).collect();
    for v in a.basis_vectors() {
        basis.push(v);
        values.push(vec![0; n]);
    }
    let t = FpMatrix::from_cols(f, n, &basis);
    let tinv = t.inverse().expect("co-basis and ideal basis span L");
    let order: Vec<usize> = (0..n).collect();
    let images = (0..n)
        .map(|i| {
            let coords = tinv.mul_vec(&unit_vector(n, i));
            fold_p_power(alg, &basis, &values, &coords, &order)
        })
        .collect();
    let out = RestrictedAlgebra::new_unchecked(alg.clone(), PMap::new(images));
    out.check_p_map().map_err(|e| Error::Construction(format!("zeroed p-map: {e}")))?;
    Ok(out)
}

/// Makes the p-map vanish on the abelian socle, so that every abelian minimal
/// ideal becomes a `[p]`-ideal. Returns the new algebra and the abelian socle.
pub fn adjust_p_map_on_asoc(r: &RestrictedAlgebra, seed: u64) -> Result<(RestrictedAlgebra, Subspace)> {
    let asoc = crate::ideals::abelian_socle(r.algebra(), seed)?;
    Ok((zero_p_map_on_abelian_ideal(r, &asoc)?, asoc))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalPIdeals {
    Unique(Subspace),
    Two(Subspace, Subspace),
}

/// Two distinct minimal `[p]`-ideals, or the unique one. Every minimal
/// `[p]`-ideal is the closure of a minimal ideal; when the p-map vanishes on
/// the abelian socle the abelian minimal ideals are already closed, otherwise
/// the abelian minimal ideals are enumerated.
pub fn minimal_p_ideals(r: &RestrictedAlgebra, seed: u64) -> Result<MinimalPIdeals> {
    let alg = r.algebra();
    assert!(alg.dim() >= 1, "minimal [p]-ideals of the zero algebra");
    let f = alg.field();
    let soc = adjoint_socle(alg, seed)?;
    let asoc = abelian_part(alg, &soc)?;
    let zero_on_asoc = asoc.basis_vectors().iter().all(|v| is_zero(&r.p_power(v)));

    let mut candidates: Vec<Subspace> = Vec::new();
    let push = |s: Subspace, c: &mut Vec<Subspace>| {
        if !c.contains(&s) {
            c.push(s);
        }
    };
    let abelian_pieces: Vec<&(usize, Subspace)> =
        soc.pieces.iter().filter(|(_, s)| alg.is_abelian_subspace(s)).collect();
    if zero_on_asoc {
        if abelian_pieces.len() >= 2 {
            return Ok(MinimalPIdeals::Two(abelian_pieces[0].1.clone(), abelian_pieces[1].1.clone()));
        }
        for (_, s) in &abelian_pieces {
            push(s.clone(), &mut candidates);
        }
    } else {
        let mut types: Vec<usize> = abelian_pieces.iter().map(|(t, _)| *t).collect();
        types.dedup();
        let total: u128 = types.iter().map(|&t| soc.projective_count(t, f.p())).sum();
        if total > MAX_ENUMERATED_IDEALS {
            return Err(Error::TooManyCandidates(total));
        }
        for t in types {
            for s in soc.enumerate_type(t, f) {
                push(r.p_ideal_closure(&s), &mut candidates);
            }
        }
    }
    for (_, s) in soc.pieces.iter().filter(|(_, s)| !alg.is_abelian_subspace(s)) {
        push(r.p_ideal_closure(s), &mut candidates);
    }
    let minimal: Vec<Subspace> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d != *c && d.is_subspace_of(c)))
        .cloned()
        .collect();
    Ok(match minimal.len() {
        0 => unreachable!("a nonzero algebra has a minimal [p]-ideal"),
        1 => MinimalPIdeals::Unique(minimal[0].clone()),
        _ => MinimalPIdeals::Two(minimal[0].clone(), minimal[1].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::Fp;

    #[test]
    fn s_terms_p2_is_bracket_b_a() {
        let na2 = corpus::na2(2);
        let (x, y) = (vec![1, 0], vec![0, 1]);
        assert_eq!(s_terms(&na2, &x, &y), vec![na2.bracket(&y, &x)]);
    }

    #[test]
    fn s_terms_vanish_on_commuting_pair() {
        let h3 = corpus::h3(5);
        let s = s_terms(&h3, &[1, 0, 2], &[3, 0, 1]);
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|v| is_zero(v)));
    }

    #[test]
    fn s_terms_p3_heisenberg() {
        let h3 = corpus::h3(3);
        let s = s_terms(&h3, &[1, 0, 0], &[0, 1, 0]);
        assert_eq!(s, vec![vec![0; 3], vec![0; 3]]);
    }

    #[test]
    fn p3_s_terms_match_nested_brackets() {
        // s_1(a, b) = [b, [b, a]], s_2(a, b) = 2^{-1} [a, [b, a]] for p = 3
        let sl2 = corpus::sl2(3);
        let f = sl2.field();
        let (a, b) = (vec![1, 2, 0], vec![0, 1, 1]);
        let ba = sl2.bracket(&b, &a);
        let s = s_terms(&sl2, &a, &b);
        assert_eq!(s[0], sl2.bracket(&b, &ba));
        assert_eq!(s[1], f.scale(f.inv(2), &sl2.bracket(&a, &ba)));
    }

    #[test]
    fn scalar_multiple_of_basis_vector() {
        let r = corpus::sl2_restricted(5);
        let f = Fp::new(5).unwrap();
        assert_eq!(r.p_power(&[3, 0, 0]), f.scale(f.frobenius(3), r.pmap().image(0)));
    }

    #[test]
    fn na2_sum_over_f2() {
        let r = corpus::na2_restricted(2);
        assert_eq!(r.p_power(&[1, 1]), vec![1, 1]);
    }

    #[test]
    fn verify_examples() {
        assert!(corpus::abelian_restricted(3, 3).verify_p_map());
        assert!(corpus::na2_restricted(2).verify_p_map());
        let bad = RestrictedAlgebra::new_unchecked(corpus::na2(2), PMap::new(vec![vec![0, 1], vec![0, 0]]));
        assert!(!bad.verify_p_map());
        assert!(RestrictedAlgebra::new(corpus::na2(2), PMap::new(vec![vec![0, 1], vec![0, 0]])).is_err());
    }

    #[test]
    fn solve_restriction_examples() {
        for p in [2, 3, 5] {
            let pm = solve_restriction(&corpus::na2(p)).unwrap();
            assert_eq!(pm.images(), &[vec![1, 0], vec![0, 0]]);
        }
        let pm = solve_restriction(&corpus::abelian(3, 2)).unwrap();
        assert!(pm.images().iter().all(|v| is_zero(v)));
        assert!(solve_restriction(&corpus::nr3()).is_none());
        for alg in [corpus::sl2(5), corpus::w15(), corpus::h3(3)] {
            let pm = solve_restriction(&alg).unwrap();
            assert!(RestrictedAlgebra::new(alg, pm).is_ok());
        }
    }

    #[test]
    fn zeroing_on_abelian_ideals() {
        let r = corpus::na2_restricted(2);
        let y = r.algebra().span(&[vec![0, 1]]);
        let z = zero_p_map_on_abelian_ideal(&r, &y).unwrap();
        assert_eq!(z.pmap().images(), &[vec![1, 0], vec![0, 0]]);

        let h = corpus::h3_restricted(2);
        let a = h.algebra().span(&[vec![0, 1, 0], vec![0, 0, 1]]);
        let z = zero_p_map_on_abelian_ideal(&h, &a).unwrap();
        assert!(is_zero(&z.p_power(&[0, 1, 1])));

        let ab = RestrictedAlgebra::new(corpus::abelian(2, 2), PMap::new(vec![vec![1, 0], vec![0, 1]])).unwrap();
        let z = zero_p_map_on_abelian_ideal(&ab, &ab.algebra().full()).unwrap();
        assert!(z.pmap().images().iter().all(|v| is_zero(v)));

        let sl2 = corpus::sl2_restricted(5);
        assert_eq!(zero_p_map_on_abelian_ideal(&sl2, &sl2.algebra().span(&[vec![0, 1, 0]])), Err(Error::NotAnIdeal));
        assert_eq!(zero_p_map_on_abelian_ideal(&sl2, &sl2.algebra().full()), Err(Error::NotAbelian));
    }

    #[test]
    fn adjust_on_asoc() {
        let (r, asoc) = adjust_p_map_on_asoc(&corpus::na2_restricted(3), 1).unwrap();
        assert_eq!(asoc, r.algebra().span(&[vec![0, 1]]));
        assert_eq!(r.pmap().images(), &[vec![1, 0], vec![0, 0]]);
        let sl2 = corpus::sl2_restricted(5);
        let (r, asoc) = adjust_p_map_on_asoc(&sl2, 1).unwrap();
        assert!(asoc.is_zero());
        assert_eq!(r, sl2);
        let ab = RestrictedAlgebra::new(corpus::abelian(3, 2), PMap::new(vec![vec![1, 0], vec![0, 0]])).unwrap();
        let (r, _) = adjust_p_map_on_asoc(&ab, 1).unwrap();
        assert!(r.pmap().images().iter().all(|v| is_zero(v)));
    }

    #[test]
    fn minimal_p_ideal_examples() {
        let na2 = corpus::na2_restricted(2);
        assert_eq!(minimal_p_ideals(&na2, 1).unwrap(), MinimalPIdeals::Unique(na2.algebra().span(&[vec![0, 1]])));

        let ab = RestrictedAlgebra::new(corpus::abelian(3, 2), PMap::new(vec![vec![1, 0], vec![0, 0]])).unwrap();
        let lines = [ab.algebra().span(&[vec![1, 0]]), ab.algebra().span(&[vec![0, 1]])];
        match minimal_p_ideals(&ab, 1).unwrap() {
            MinimalPIdeals::Two(a, b) => {
                assert!(lines.contains(&a) && lines.contains(&b) && a != b);
            }
            other => panic!("expected two, got {other:?}"),
        }
        // (x + z)^[p] = x, so the diagonal line closes up to everything
        assert!(ab.p_ideal_closure(&ab.algebra().span(&[vec![1, 1]])).is_full());
    }

    #[test]
    fn restricted_quotients() {
        let r = corpus::na2_restricted(3);
        let (q, proj) = r.quotient(&r.algebra().zero_subspace()).unwrap();
        assert_eq!(q, r);
        assert!(proj.is_square());
        let sl2 = corpus::sl2_restricted(5);
        assert_eq!(sl2.quotient(&sl2.algebra().span(&[vec![1, 0, 0]])).unwrap_err(), Error::NotAnIdeal);
        // ⟨x⟩ is an ideal of Ab(2) but not closed when x^[p] = z
        let ab = RestrictedAlgebra::new(corpus::abelian(2, 2), PMap::new(vec![vec![0, 1], vec![0, 0]])).unwrap();
        assert_eq!(ab.quotient(&ab.algebra().span(&[vec![1, 0]])).unwrap_err(), Error::NotPIdeal);
    }
}
