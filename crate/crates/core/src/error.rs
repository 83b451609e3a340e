use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("not in the positive root lattice: {0}")]
    NotInPositiveLattice(String),
    #[error("element does not normalize the subspace")]
    NotNormalizing,
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("subspaces have different parents")]
    ParentMismatch,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("h + p_min is not the whole algebra (dimension {0} of {1})")]
    NotSpherical(usize, usize),
    #[error("no adapted parabolic subset satisfies the local structure conditions")]
    NoAdaptedParabolic,
    #[error("monoid generator {0} does not vanish on a_H")]
    GeneratorNotVanishingOnAH(String),
    #[error("sign assignment is not a character of the spherical root lattice")]
    InconsistentSign,
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("the pair is not wavefront")]
    NotWavefront,
    #[error("no positive solution: {0}")]
    NoPositiveSolution(String),
    #[error("F does not contain F_Q")]
    FQNotContained,
    #[error("the parent pair is not unimodular")]
    ParentNotUnimodular,
    #[error("exponent does not restrict to -chi on the edge")]
    EdgeMismatch,
    #[error("exponent data is not tempered")]
    NotTempered,
    #[error("unsupported catalog entry: {0}")]
    UnsupportedEntry(String),
    #[error("check failed: {0}")]
    AssertionFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::AssertionFailure(what()))
    }
}
