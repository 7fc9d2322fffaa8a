use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported maximum")]
    ModulusTooLarge(u64),
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("ideal is not abelian")]
    NotAbelian,
    #[error("subspace is not a [p]-ideal")]
    NotPIdeal,
    #[error("the abelian ideal is zero; no character can be chosen")]
    ZeroIdeal,
    #[error("character is unusable: {0}")]
    BadCharacter(String),
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error("Jacobi identity fails for basis triple (e{}, e{}, e{})", .0 + 1, .1 + 1, .2 + 1)]
    Jacobi(usize, usize, usize),
    #[error("p-map fails the restricted axioms: {0}")]
    InvalidPMap(String),
    #[error("representation law fails for basis pair ({0}, {1})")]
    NotAModule(usize, usize),
    #[error("no decision after {attempts} random elements (seed {seed}); retry with another seed")]
    BudgetExhausted { seed: u64, attempts: usize },
    #[error("module dimension {dim} exceeds the limit {max}")]
    ModuleTooLarge { dim: u128, max: usize },
    #[error("too many minimal ideals to enumerate ({0})")]
    TooManyCandidates(u128),
    #[error("internal consistency check failed: {0}")]
    Construction(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with [`Error::Construction`] unless `cond` holds.
pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Construction(what()))
    }
}
