use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::liealg::{BracketEntry, LieAlgebra, LieError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraFileError {
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

fn parse_err(position: impl Into<String>, message: impl Into<String>) -> AlgebraFileError {
    AlgebraFileError::Parse {
        position: position.into(),
        message: message.into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpec {
    p: u64,
    #[serde(default = "one")]
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u32>>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketSpec {
    left: String,
    right: String,
    coeffs: BTreeMap<String, String>,
}

/// On-disk form: `{"field": {"p", "m", "modulus"?}, "basis": [..],
/// "brackets": [{"left", "right", "coeffs": {name: element}}]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    field: FieldSpec,
    basis: Vec<String>,
    brackets: Vec<BracketSpec>,
}

/// Loads and validates an algebra file.
pub fn parse_algebra_file(text: &str) -> Result<LieAlgebra, AlgebraFileError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
        parse_err(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let field = Field::new(file.field.p, file.field.m, file.field.modulus.as_deref())
        .map_err(|e| parse_err("field", e.to_string()))?;
    let names = file.basis;
    let lookup = |name: &str, pos: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| parse_err(pos, format!("unknown basis name {name:?}")))
    };
    let mut entries = Vec::with_capacity(file.brackets.len());
    for (i, b) in file.brackets.iter().enumerate() {
        let pos = format!("brackets[{i}]");
        let mut coeffs = Vec::with_capacity(b.coeffs.len());
        for (name, value) in &b.coeffs {
            let c = field
                .parse(value)
                .map_err(|e| parse_err(format!("{pos}.coeffs.{name}"), e.to_string()))?;
            coeffs.push((lookup(name, &pos)?, c));
        }
        entries.push(BracketEntry {
            left: lookup(&b.left, &pos)?,
            right: lookup(&b.right, &pos)?,
            coeffs,
        });
    }
    LieAlgebra::new(&field, names, &entries).map_err(|e| match e {
        LieError::DuplicateName(n) => parse_err("basis", format!("duplicate basis name {n:?}")),
        LieError::Invalid(v) => AlgebraFileError::Validation(v.to_string()),
        other => AlgebraFileError::Validation(other.to_string()),
    })
}

/// Serializes `alg`; [`parse_algebra_file`] inverts it.
pub fn emit_algebra_file(alg: &LieAlgebra) -> String {
    let f = alg.field();
    let file = AlgebraFile {
        field: FieldSpec {
            p: f.characteristic() as u64,
            m: f.degree(),
            modulus: (!f.is_prime_field()).then(|| f.modulus().to_vec()),
        },
        basis: alg.names().to_vec(),
        brackets: alg
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, coords)| BracketSpec {
                left: alg.name(i).to_string(),
                right: alg.name(j).to_string(),
                coeffs: coords
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (alg.name(k).to_string(), f.format(c)))
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}
