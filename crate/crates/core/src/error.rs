use thiserror::Error;

/// Which configurable limit a computation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    /// Number of S-pairs formed in one Gröbner basis run.
    SPairs,
    /// Total degree of a polynomial produced during a Gröbner basis run.
    Degree,
    /// Degree of a splitting field over the rationals.
    FieldDegree,
    /// Rounds of the two-group closure iteration.
    Rounds,
}

impl std::fmt::Display for Limit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Limit::SPairs => "max-spairs",
            Limit::Degree => "max-degree",
            Limit::FieldDegree => "degree-cap",
            Limit::Rounds => "max-rounds",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The Lie algebra is not closed under Jordan decomposition.
    #[error("not algebraic: {0}")]
    NotAlgebraic(String),
    #[error("resource limit {limit} exceeded: {detail}")]
    Resource { limit: Limit, detail: String },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(limit: Limit, detail: impl Into<String>) -> Self {
        Error::Resource { limit, detail: detail.into() }
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
