//! Arithmetic in the prime field F_p.

use crate::error::{Error, Result};

/// Largest modulus accepted. Products of two residues then fit in a `u32`
/// and dot products of length < 2^32 accumulate in a `u64` without overflow.
pub const MAX_MODULUS: u32 = 65521;

/// The prime field F_p. Elements are plain `u32` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p as u64));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    /// Maps a signed integer to its residue.
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// The Frobenius map x ↦ x^p (the identity on F_p, kept explicit where
    /// formulas call for λ^p).
    #[inline]
    pub fn frobenius(self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn axpy(self, y: &mut [u32], a: u32, x: &[u32]) {
        if a == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = self.reduce(*yi as u64 + a as u64 * xi as u64);
        }
    }

    pub fn scale(self, a: u32, x: &[u32]) -> Vec<u32> {
        x.iter().map(|&xi| self.mul(a, xi)).collect()
    }

    pub fn add_vec(self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.add(a, b)).collect()
    }

    pub fn sub_vec(self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.sub(a, b)).collect()
    }

    pub fn dot(self, x: &[u32], y: &[u32]) -> u32 {
        let s: u64 = x.iter().zip(y).map(|(&a, &b)| a as u64 * b as u64).sum();
        self.reduce(s)
    }
}

#[inline]
pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_huge_moduli() {
        assert!(matches!(Fp::new(4), Err(Error::NotPrime(4))));
        assert!(matches!(Fp::new(1), Err(Error::NotPrime(1))));
        assert!(matches!(Fp::new(65537), Err(Error::ModulusTooLarge(_))));
    }

    #[test]
    fn every_nonzero_residue_is_invertible() {
        for p in [2, 3, 5, 7, 13] {
            let f = Fp::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.frobenius(a), a);
            }
        }
    }

    #[test]
    fn signed_residues() {
        let f = Fp::new(5).unwrap();
        assert_eq!(f.from_i64(-2), 3);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.sub(1, 3), 3);
    }
}
