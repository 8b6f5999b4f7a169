use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitCount { n: usize, min: usize, max: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid Pauli string: {0}")]
    InvalidPauli(String),

    #[error("dimension mismatch: expected {expected} qubits, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("integer coefficient overflow in polynomial arithmetic")]
    CoefficientOverflow,

    #[error("{name} = {value} outside {range}")]
    Probability {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("operation requires a numeric channel; this channel is symbolic")]
    SymbolicChannel,

    #[error("no published polynomial for {family} n={n}")]
    UnsupportedFixture { family: String, n: usize },

    #[error("recovery construction failed: {0}")]
    Construction(String),

    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_qubits(n: usize, min: usize) -> Result<()> {
    if n < min || n > crate::pauli::MAX_QUBITS {
        return Err(Error::QubitCount {
            n,
            min,
            max: crate::pauli::MAX_QUBITS,
        });
    }
    Ok(())
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::Probability {
            name,
            value,
            range: "[0, 1]",
        });
    }
    Ok(())
}
