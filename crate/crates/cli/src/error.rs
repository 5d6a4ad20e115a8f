use forge_core::Limit;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] forge_core::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 0 is success; 1 covers domain, parse, usage and I/O errors; 2 is a
    /// resource limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource() => 2,
            _ => 1,
        }
    }

    pub fn report(&self) -> String {
        match self {
            CliError::Core(forge_core::Error::Resource { limit, detail }) => {
                format!("resource limit --{limit} ({}) exceeded: {detail}", describe(*limit))
            }
            other => other.to_string(),
        }
    }
}

fn describe(limit: Limit) -> &'static str {
    match limit {
        Limit::SPairs => "S-pair cap",
        Limit::Degree => "polynomial degree cap",
        Limit::FieldDegree => "splitting-field degree cap",
        Limit::Rounds => "closure round cap",
    }
}
