use thiserror::Error;

/// Errors raised by the algebra, the normalizer and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("two-qubit operation needs distinct indices, got {0} twice")]
    RepeatedIndex(usize),
    #[error("matrix is singular over GF(2)")]
    Singular,
    #[error("matrix is not symmetric with zero diagonal")]
    NotAlternating,
    #[error("at least one qubit is required")]
    NoQubits,
    #[error("{what} limited to {limit} qubits, got {n}")]
    ResourceGuard { what: &'static str, limit: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_index(index: usize, n: usize) -> Result<()> {
    if index < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, n })
    }
}

pub(crate) fn check_pair(i: usize, j: usize, n: usize) -> Result<()> {
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(Error::RepeatedIndex(i));
    }
    Ok(())
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
