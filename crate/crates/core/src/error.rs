use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    Input(String),
    /// The request exceeds a documented size cap.
    #[error("capability exceeded: {0}")]
    Capability(String),
    /// An iteration failed to converge or a computed quantity is inconsistent.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// A polynomial that cannot come from a Tits representation.
    #[error("not a Tits polynomial: {0}")]
    NotTits(String),
    /// Independent decision criteria disagreed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Process exit code for this error under the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Capability(_) | Error::NotTits(_) => 1,
            Error::Numerical(_) | Error::Consistency(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
