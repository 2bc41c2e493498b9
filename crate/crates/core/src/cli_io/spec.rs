//! The JSON group description dialect. The formal schema lives in
//! `schema/group-spec.schema.json` at the repository root.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::builtin::{self, NameError};
use crate::group::{FiniteGroup, GroupError, DEFAULT_ORDER_CAP};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    NotAGroup(#[from] GroupError),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

impl From<NameError> for SpecError {
    fn from(e: NameError) -> Self {
        match e {
            NameError::UnknownName(n) => SpecError::UnknownName(n),
            NameError::Group(g) => SpecError::NotAGroup(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    /// Multiplication table on `0..n`; row `a`, column `b` holds `ab`.
    Cayley {
        table: Vec<Vec<usize>>,
    },
    /// Permutations of `0..degree` given as image lists.
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default)]
        cap: Option<usize>,
    },
    Named {
        name: String,
    },
    Product {
        parts: Vec<Part>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Part {
    Name(String),
    Spec(Box<GroupSpec>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, SpecError> {
        match self {
            GroupSpec::Cayley { table } => Ok(FiniteGroup::from_cayley(table)?),
            GroupSpec::Perm {
                degree,
                generators,
                cap,
            } => Ok(FiniteGroup::from_permutations(
                *degree,
                generators,
                cap.unwrap_or(DEFAULT_ORDER_CAP),
            )?),
            GroupSpec::Named { name } => Ok(builtin::named(name)?),
            GroupSpec::Product { parts } => {
                let mut g = builtin::cyclic(1);
                for p in parts {
                    let factor = match p {
                        Part::Name(n) => builtin::named(n)?,
                        Part::Spec(s) => s.build()?,
                    };
                    g = g.direct_product(&factor);
                }
                Ok(g)
            }
        }
    }

    /// A short label for reports.
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Cayley { table } => format!("cayley({})", table.len()),
            GroupSpec::Perm { degree, generators, .. } => {
                format!("perm({degree}; {} generators)", generators.len())
            }
            GroupSpec::Named { name } => name.clone(),
            GroupSpec::Product { parts } => parts
                .iter()
                .map(|p| match p {
                    Part::Name(n) => n.clone(),
                    Part::Spec(s) => s.label(),
                })
                .collect::<Vec<_>>()
                .join("×"),
        }
    }
}

pub fn parse_spec_document(text: &str) -> Result<GroupSpec, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

pub fn parse_group_spec(text: &str) -> Result<FiniteGroup, SpecError> {
    parse_spec_document(text)?.build()
}

/// Interprets a command-line group argument: inline JSON when it starts
/// with `{`, a file when such a path exists, a builtin name otherwise.
pub fn resolve_group_arg(arg: &str) -> Result<(String, FiniteGroup), SpecError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        let spec = parse_spec_document(trimmed)?;
        return Ok((spec.label(), spec.build()?));
    }
    let path = Path::new(arg);
    if path.is_file() {
        return load_spec_file(path);
    }
    Ok((arg.to_string(), builtin::named(arg)?))
}

/// Loads a spec file; the group is labelled by the file stem.
pub fn load_spec_file(path: &Path) -> Result<(String, FiniteGroup), SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let spec = parse_spec_document(&text)?;
    let label = path
        .file_stem()
        .map_or_else(|| spec.label(), |s| s.to_string_lossy().into_owned());
    Ok((label, spec.build()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents() {
        let z2 = parse_group_spec(r#"{"kind":"named","name":"C_2"}"#).unwrap();
        assert_eq!(z2.order(), 2);
        let v4 = parse_group_spec(r#"{"kind":"product","parts":["C_2","C_2"]}"#).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian() && v4.exponent() == 2);
        let q8 = parse_group_spec(r#"{"kind":"named","name":"Q8"}"#).unwrap();
        assert_eq!((q8.order(), q8.conjugacy_classes().count()), (8, 5));
        let s3 = parse_group_spec(r#"{"kind":"perm","degree":3,"generators":[[1,0,2],[1,2,0]]}"#).unwrap();
        assert_eq!(s3.order(), 6);
        let nested =
            parse_group_spec(r#"{"kind":"product","parts":[{"kind":"cayley","table":[[0,1],[1,0]]},"C_3"]}"#).unwrap();
        assert_eq!(nested.order(), 6);
        assert!(nested.is_abelian());
    }

    #[test]
    fn errors() {
        match parse_group_spec("{\n  \"kind\": \"named\",\n  \"name\": }") {
            Err(SpecError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_group_spec(r#"{"kind":"named","name":"Monster"}"#),
            Err(SpecError::UnknownName(_))
        ));
        assert!(matches!(
            parse_group_spec(r#"{"kind":"cayley","table":[[0,1],[0,1]]}"#),
            Err(SpecError::NotAGroup(_))
        ));
        assert!(matches!(
            parse_group_spec(r#"{"kind":"torus"}"#),
            Err(SpecError::Parse { .. })
        ));
    }
}
