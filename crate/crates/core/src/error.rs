use thiserror::Error;

/// Failures reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("resource guard: {0}")]
    Resource(String),
    /// Flux bias sits on a singular point of the SQUID inductance.
    #[error("divergence: {0}")]
    Divergence(String),
    #[error("step size too large: {0}")]
    StepSize(String),
    #[error("charge-basis truncation not converged: {0}")]
    Truncation(String),
    /// The compiler produced something its own construction rules forbid.
    #[error("compilation invariant violated: {0}")]
    Compilation(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// True for errors caused by exceeding a size or simulation budget.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::validation("register must contain at least one qubit"));
    }
    if n > crate::MAX_DENSE_QUBITS {
        return Err(Error::resource(format!(
            "{n} qubits exceeds the dense limit of {}",
            crate::MAX_DENSE_QUBITS
        )));
    }
    Ok(())
}
