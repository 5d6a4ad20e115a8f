use forge_core::group::Limits;

use crate::error::CliError;

/// Caps given on the command line; unset ones fall back to `FORGE_LIMITS`
/// and then to the library defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LimitOverrides {
    pub degree_cap: Option<usize>,
    pub max_rounds: Option<usize>,
    pub max_spairs: Option<usize>,
    pub max_degree: Option<usize>,
}

impl LimitOverrides {
    /// Parses `key=value` pairs separated by commas or whitespace, e.g.
    /// `max-spairs=5000,degree-cap=32`.
    pub fn from_env_value(text: &str) -> Result<Self, CliError> {
        let mut out = LimitOverrides::default();
        for item in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("FORGE_LIMITS: expected key=value, found {item:?}")))?;
            let value = positive(value.trim(), &format!("FORGE_LIMITS {key}"))?;
            let slot = match key.trim() {
                "degree-cap" => &mut out.degree_cap,
                "max-rounds" => &mut out.max_rounds,
                "max-spairs" => &mut out.max_spairs,
                "max-degree" => &mut out.max_degree,
                other => return Err(CliError::Usage(format!("FORGE_LIMITS: unknown limit {other:?}"))),
            };
            *slot = Some(value);
        }
        Ok(out)
    }

    /// `self` wins over `fallback` field by field.
    pub fn or(self, fallback: LimitOverrides) -> LimitOverrides {
        LimitOverrides {
            degree_cap: self.degree_cap.or(fallback.degree_cap),
            max_rounds: self.max_rounds.or(fallback.max_rounds),
            max_spairs: self.max_spairs.or(fallback.max_spairs),
            max_degree: self.max_degree.or(fallback.max_degree),
        }
    }

    pub fn resolve(self) -> Limits {
        let mut l = Limits::default();
        if let Some(v) = self.degree_cap {
            l.degree_cap = v;
        }
        if let Some(v) = self.max_rounds {
            l.max_rounds = v;
        }
        if let Some(v) = self.max_spairs {
            l.groebner.max_spairs = v;
        }
        if let Some(v) = self.max_degree {
            l.groebner.max_degree = u32::try_from(v).unwrap_or(u32::MAX);
        }
        l
    }
}

pub fn positive(text: &str, what: &str) -> Result<usize, CliError> {
    match text.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(CliError::Usage(format!("{what}: expected a positive integer, found {text:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_value() {
        let l = LimitOverrides::from_env_value("max-spairs=7, degree-cap=16").unwrap();
        assert_eq!(l.max_spairs, Some(7));
        assert_eq!(l.degree_cap, Some(16));
        assert!(LimitOverrides::from_env_value("max-spairs=0").is_err());
        assert!(LimitOverrides::from_env_value("speed=3").is_err());
        assert!(LimitOverrides::from_env_value("").unwrap() == LimitOverrides::default());
    }

    #[test]
    fn precedence() {
        let flags = LimitOverrides { max_spairs: Some(1), ..Default::default() };
        let env = LimitOverrides { max_spairs: Some(9), max_rounds: Some(3), ..Default::default() };
        let l = flags.or(env).resolve();
        assert_eq!(l.groebner.max_spairs, 1);
        assert_eq!(l.max_rounds, 3);
        assert_eq!(l.degree_cap, Limits::default().degree_cap);
    }
}
