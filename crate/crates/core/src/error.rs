use thiserror::Error;

/// Everything that can go wrong while loading inputs or running a solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed graph file, vertex list, or tree text.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// The input graph violates a structural invariant (self-loop, zero weight, ...).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// A solver or generator was called outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A guarded exponential routine refused an input above its cap.
    #[error("{what} is {value}, above the configured cap of {cap}")]
    TooLarge {
        what: &'static str,
        value: u64,
        cap: u64,
    },
}

impl Error {
    pub(crate) fn parse_line(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: format!("line {line}"),
            message: message.into(),
        }
    }

    pub(crate) fn parse_offset(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: format!("byte {offset}"),
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    pub(crate) fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
        if value > cap {
            Err(Error::TooLarge {
                what,
                value: value as u64,
                cap: cap as u64,
            })
        } else {
            Ok(())
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
