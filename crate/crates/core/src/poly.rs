//! Univariate polynomials over F_p and their factorization into distinct
//! irreducible factors (square-free decomposition, distinct-degree and
//! equal-degree splitting).

use rand::Rng;

use crate::field::Fp;
use crate::matrix::FpMatrix;

/// Coefficients from the constant term upwards, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<u32>);

impl Poly {
    pub fn new(mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }
    pub fn zero() -> Self {
        Poly(Vec::new())
    }
    pub fn one() -> Self {
        Poly(vec![1])
    }
    /// The monomial `x`.
    pub fn x() -> Self {
        Poly(vec![0, 1])
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    /// Degree; the zero polynomial reports `usize::MAX`.
    pub fn degree(&self) -> usize {
        self.0.len().wrapping_sub(1)
    }
    pub fn lead(&self) -> u32 {
        *self.0.last().unwrap_or(&0)
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, o: &Poly, f: Fp) -> Poly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| f.add(*self.0.get(i).unwrap_or(&0), *o.0.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(c)
    }

    pub fn sub(&self, o: &Poly, f: Fp) -> Poly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| f.sub(*self.0.get(i).unwrap_or(&0), *o.0.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(c)
    }

    pub fn mul(&self, o: &Poly, f: Fp) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0u64; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                c[i + j] = (c[i + j] + a as u64 * b as u64) % f.p() as u64;
            }
        }
        Poly::new(c.into_iter().map(|x| x as u32).collect())
    }

    pub fn scale(&self, a: u32, f: Fp) -> Poly {
        Poly::new(f.scale(a, &self.0))
    }

    pub fn monic(&self, f: Fp) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lead()), f)
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn divrem(&self, d: &Poly, f: Fp) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.0.len() < d.0.len() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let dl = d.0.len();
        let inv = f.inv(d.lead());
        let mut q = vec![0u32; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dl - 1], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (j, &dj) in d.0.iter().enumerate() {
                r[k + j] = f.add(r[k + j], f.mul(nc, dj));
            }
        }
        r.truncate(dl - 1);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: Fp) -> Poly {
        self.divrem(d, f).1
    }

    pub fn gcd(&self, o: &Poly, f: Fp) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: Fp) -> Poly {
        let c = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, (i as u64 % f.p() as u64) as u32))
            .collect();
        Poly::new(c)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Poly, f: Fp) -> Poly {
        let mut base = self.rem(m, f);
        let mut acc = Poly::one().rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f).rem(m, f);
            }
        }
        acc
    }

    /// Value at a square matrix, by Horner's rule.
    pub fn eval_matrix(&self, a: &FpMatrix) -> FpMatrix {
        let f = a.field();
        let n = a.rows();
        let mut acc = FpMatrix::zeros(f, n, n);
        for &c in self.0.iter().rev() {
            acc = acc.mul(a);
            for i in 0..n {
                acc.set(i, i, f.add(acc.get(i, i), c));
            }
        }
        acc
    }

    /// Substitutes `x ↦ x^(1/p)` coefficientwise; valid when only exponents
    /// divisible by `p` occur (F_p is perfect, so coefficients are fixed).
    fn pth_root(&self, f: Fp) -> Poly {
        let p = f.p() as usize;
        Poly::new(self.0.iter().step_by(p).copied().collect())
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

/// Square-free decomposition: monic square-free polynomials whose product of
/// powers is the monic part of `g`. Only the set of irreducible divisors is
/// preserved by the output, which is all the callers need.
fn squarefree_parts(g: &Poly, f: Fp) -> Vec<Poly> {
    let g = g.monic(f);
    if g.degree() == 0 || g.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let d = g.derivative(f);
    if d.is_zero() {
        return squarefree_parts(&g.pth_root(f), f);
    }
    let c = g.gcd(&d, f);
    let mut w = g.divrem(&c, f).0;
    let mut c = c;
    while w.degree() > 0 {
        let y = w.gcd(&c, f);
        let z = w.divrem(&y, f).0;
        if z.degree() > 0 {
            out.push(z.monic(f));
        }
        w = y;
        c = c.divrem(&w, f).0;
    }
    if c.degree() > 0 && c.degree() != usize::MAX {
        out.extend(squarefree_parts(&c.pth_root(f), f));
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// pairs `(d, product of all irreducible factors of degree d)`.
fn distinct_degree(g: &Poly, f: Fp) -> Vec<(usize, Poly)> {
    let p = f.p() as u128;
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut h = Poly::x().rem(&rest, f);
    let mut d = 0;
    while rest.degree() != usize::MAX && rest.degree() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(p, &rest, f);
        let fac = rest.gcd(&h.sub(&Poly::x(), f), f);
        if fac.degree() > 0 {
            out.push((d, fac.clone()));
            rest = rest.divrem(&fac, f).0;
            h = h.rem(&rest, f);
        }
    }
    if rest.degree() > 0 && rest.degree() != usize::MAX {
        out.push((rest.degree(), rest.monic(f)));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` (Cantor–Zassenhaus).
fn equal_degree<R: Rng>(g: &Poly, d: usize, f: Fp, rng: &mut R) -> Vec<Poly> {
    if g.degree() == d {
        return vec![g.monic(f)];
    }
    let p = f.p();
    let n = g.degree();
    loop {
        let a = Poly::new((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 || a.is_zero() {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + … + a^(2^(d-1)).
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul(&t, f).rem(g, f);
                acc = acc.add(&t, f);
            }
            acc
        } else {
            // a^((p^d − 1)/2) as (a^(1 + p + … + p^(d−1)))^((p − 1)/2)
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                t = t.powmod(p as u128, g, f);
                norm = norm.mul(&t, f).rem(g, f);
            }
            norm.powmod(((p - 1) / 2) as u128, g, f).sub(&Poly::one(), f)
        };
        let h = g.gcd(&b, f);
        if h.degree() > 0 && h.degree() < n {
            let other = g.divrem(&h, f).0;
            let mut out = equal_degree(&h, d, f, rng);
            out.extend(equal_degree(&other.monic(f), d, f, rng));
            return out;
        }
    }
}

/// The distinct monic irreducible factors of `g`, sorted by degree then
/// coefficients.
pub fn irreducible_factors<R: Rng>(g: &Poly, f: Fp, rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    for part in squarefree_parts(g, f) {
        for (d, prod) in distinct_degree(&part, f) {
            out.extend(equal_degree(&prod, d, f, rng));
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// Characteristic polynomial, as the product of relative minimal polynomials
/// of a chain of cyclic subspaces.
pub fn char_poly(a: &FpMatrix) -> Poly {
    let f = a.field();
    let n = a.rows();
    let mut acc = Poly::one();
    let mut span = crate::subspace::Subspace::zero(f, n);
    for start in 0..n {
        let e = crate::field::unit_vector(n, start);
        if span.contains(&e) {
            continue;
        }
        // Krylov sequence relative to the current span.
        let base_dim = span.dim();
        let mut krylov: Vec<Vec<u32>> = Vec::new();
        let mut local = span.clone();
        let mut v = e;
        loop {
            if local.contains(&v) {
                break;
            }
            local.insert(&v);
            krylov.push(v.clone());
            v = a.mul_vec(&v);
        }
        let k = krylov.len();
        // Express A^k e modulo the old span in terms of the Krylov vectors:
        // solve Σ c_i A^i e ≡ A^k e (mod span).
        let cols: Vec<Vec<u32>> = krylov.iter().map(|w| span.reduce(w)).collect();
        let target = span.reduce(&v);
        let m = FpMatrix::from_cols(f, n, &cols);
        let c = m.solve(&target).expect("Krylov relation must exist");
        let mut coeffs: Vec<u32> = c.iter().map(|&x| f.neg(x)).collect();
        coeffs.push(1);
        acc = acc.mul(&Poly::new(coeffs), f);
        span = local;
        debug_assert_eq!(span.dim(), base_dim + k);
        if span.is_full() {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn expand(factors: &[Poly], f: Fp) -> Poly {
        factors.iter().fold(Poly::one(), |acc, g| acc.mul(g, f))
    }

    /// Brute-force irreducibility: no monic factor of degree 1..=deg/2.
    fn brute_irreducible(g: &Poly, f: Fp) -> bool {
        let n = g.degree();
        for d in 1..=n / 2 {
            let count = (f.p() as usize).pow(d as u32);
            for idx in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut x = idx;
                for _ in 0..d {
                    c.push((x % f.p() as usize) as u32);
                    x /= f.p() as usize;
                }
                c.push(1);
                if g.rem(&Poly::new(c), f).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factors_of_x_pow_minus_x() {
        for p in [2u32, 3, 5] {
            let f = Fp::new(p).unwrap();
            // x^(p^2) − x is the product of all monic irreducibles of degree 1 and 2.
            let q = (p * p) as usize;
            let mut c = vec![0u32; q + 1];
            c[q] = 1;
            c[1] = f.neg(1);
            let g = Poly::new(c);
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let fs = irreducible_factors(&g, f, &mut rng);
            assert!(fs.iter().all(|h| brute_irreducible(h, f)));
            assert_eq!(expand(&fs, f), g);
        }
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f = Fp::new(3).unwrap();
        // (x + 1)^3 (x^2 + 1)^2 over F_3
        let a = Poly::new(vec![1, 1]);
        let b = Poly::new(vec![1, 0, 1]);
        let g = a.mul(&a, f).mul(&a, f).mul(&b, f).mul(&b, f);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = irreducible_factors(&g, f, &mut rng);
        assert_eq!(fs, vec![a, b]);
    }

    #[test]
    fn char_poly_matches_cayley_hamilton() {
        let f = Fp::new(2).unwrap();
        let m = FpMatrix::from_rows(f, 2, &[vec![0, 1], vec![1, 1]]);
        let c = char_poly(&m);
        assert_eq!(c, Poly::new(vec![1, 1, 1]));
        assert!(c.eval_matrix(&m).is_zero());
        let f5 = Fp::new(5).unwrap();
        let m = FpMatrix::from_rows(f5, 3, &[vec![1, 2, 0], vec![0, 1, 0], vec![3, 0, 4]]);
        let c = char_poly(&m);
        assert_eq!(c.degree(), 3);
        assert!(c.eval_matrix(&m).is_zero());
    }
}
