use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The `L`/`C` lattice only exists on surfaces of degree at least 2.
    #[error("intersection lattice undefined on a degree-{k} surface (needs k >= 2)")]
    LatticeUndefined { k: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("outside the formula's regime: {0}")]
    OutOfRegime(String),

    #[error("unsupported rank {0}")]
    UnsupportedRank(u32),

    /// The parameters do not describe a bundle the requested formula covers
    /// (wrong family, unstable, unresolved stability, ...).
    #[error("not admissible: {0}")]
    NotAdmissible(String),

    /// Two exact evaluations that must agree did not. Never expected on a
    /// correct build; surfaces as exit status 1 in the CLI.
    #[error("arithmetic fault: {0}")]
    ArithmeticFault(String),
}

impl Error {
    pub fn is_fault(&self) -> bool {
        matches!(self, Error::ArithmeticFault(_))
    }
}
