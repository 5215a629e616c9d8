//! Experiments, scenarios and report emission on top of the library.

pub mod badlocus;
pub mod builtins;
pub mod census;
pub mod lift;
pub mod report;
pub mod scenarios;

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::algebra::{make_field, parse_form, AlgebraError, FieldSpec, Form};
use crate::equivalence::EquivalenceError;
use crate::geometry::GeometryError;
use crate::padic::PadicError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Equivalence(#[from] EquivalenceError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

impl HarnessError {
    /// Exit status: 2 for bad invocations and unreadable input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) | HarnessError::Io { .. } | HarnessError::Algebra(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Tsv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "tsv" => Ok(Format::Tsv),
            _ => Err(format!("unknown format `{s}` (expected text or tsv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Tsv => "tsv",
        })
    }
}

/// GF(q) for a prime power q.
pub fn field_from_order(q: u32) -> Result<FieldSpec, HarnessError> {
    let bad = || HarnessError::Usage(format!("field order {q} is not a prime power"));
    if q < 2 {
        return Err(bad());
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(bad());
    }
    Ok(make_field(p, m)?)
}

/// Reads a surface from a file, or a built-in when written `builtin:NAME`.
pub fn load_surface(spec: &str) -> Result<Form, HarnessError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtins::builtin(name)
            .ok_or_else(|| {
                HarnessError::Usage(format!("unknown built-in `{name}` (known: {})", builtins::NAMES.join(", ")))
            })?
            .map_err(Into::into);
    }
    let text = std::fs::read_to_string(Path::new(spec))
        .map_err(|source| HarnessError::Io { path: spec.to_string(), source })?;
    Ok(parse_form(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_orders() {
        assert_eq!(field_from_order(16).unwrap().degree(), 4);
        assert_eq!(field_from_order(9).unwrap().characteristic(), 3);
        assert!(field_from_order(12).is_err());
        assert!(field_from_order(1).is_err());
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(load_surface("builtin:v1").unwrap(), builtins::v1());
        assert_eq!(load_surface("builtin:zzz").unwrap_err().exit_code(), 2);
        assert_eq!(load_surface("/no/such/file").unwrap_err().exit_code(), 2);
    }
}
