//! Minimal ideals and the socle of the adjoint module.
//!
//! Minimal ideals are exactly the irreducible submodules of the adjoint
//! module. The socle is computed from Hom spaces out of each composition
//! factor type, which gives both a certificate for every minimal ideal and a
//! direct test for "unique or at least two".

use crate::error::Result;
use crate::lie::LieAlgebra;
use crate::meataxe::{socle, Socle};
use crate::subspace::Subspace;

/// Seed used when callers do not thread one through.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalIdeals {
    Unique(Subspace),
    Two(Subspace, Subspace),
}

#[derive(Clone, Debug)]
pub struct IdealReport {
    /// Sum of all minimal ideals.
    pub socle: Subspace,
    pub witnesses: MinimalIdeals,
    /// Every distinct minimal ideal found as the image of a Hom basis vector.
    /// All minimal ideals lie in their sum.
    pub pieces: Vec<Subspace>,
}

pub fn adjoint_socle(alg: &LieAlgebra, seed: u64) -> Result<Socle> {
    socle(&alg.adjoint_module(), seed)
}

/// Either two distinct minimal ideals or the unique one. Requires `dim ≥ 1`.
pub fn minimal_ideal_report(alg: &LieAlgebra, seed: u64) -> Result<IdealReport> {
    assert!(alg.dim() >= 1, "minimal ideals of the zero algebra");
    let soc = adjoint_socle(alg, seed)?;
    let pieces: Vec<Subspace> = soc.pieces.iter().map(|(_, s)| s.clone()).collect();
    let first = pieces[0].clone();
    let witnesses = match pieces.iter().find(|s| **s != first) {
        Some(second) => MinimalIdeals::Two(first, second.clone()),
        None => MinimalIdeals::Unique(first),
    };
    Ok(IdealReport { socle: soc.socle, witnesses, pieces })
}

/// Sum of the abelian minimal ideals.
pub fn abelian_socle(alg: &LieAlgebra, seed: u64) -> Result<Subspace> {
    let soc = adjoint_socle(alg, seed)?;
    abelian_part(alg, &soc)
}

pub(crate) fn abelian_part(alg: &LieAlgebra, soc: &Socle) -> Result<Subspace> {
    let mut acc = alg.zero_subspace();
    for (_, s) in &soc.pieces {
        if alg.is_abelian_subspace(s) {
            acc = acc.sum(s)?;
        }
    }
    Ok(acc)
}
