use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("generator index {0} out of range")]
    Index(usize),
    #[error("mismatched Cartan data: {0}")]
    Mismatch(String),
    #[error("parabolic subgroup is not proper or not finite: {0}")]
    Parabolic(String),
    #[error("enumeration bound {0} exceeded")]
    Bound(usize),
    #[error("{0} is not in the required domain")]
    Domain(String),
    #[error("degree bound {0} too small for this computation")]
    DegreeOverflow(i64),
    #[error("graph is not GKM at vertex {0}")]
    NotGkm(String),
    #[error("decomposition failed: {0}")]
    Peel(String),
    #[error("negative coefficient in graded rank")]
    NegativeRank,
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
