//! On-disk formats. Parameter files are JSON with string-valued scalars
//! (floats cannot express the entries exactly):
//!
//! ```json
//! {"n": 4, "generators": ["q"], "omega": [["1", "q"], ...], "name": "..."}
//! ```
//!
//! Entries below the diagonal may be the literal `"auto"` to be filled
//! from reciprocity; explicit values are validated instead. Formal
//! generators are taken to be multiplicatively independent of each other
//! and of all primes. Witness files carry either a permutation plus a
//! scale vector (`iso`, `graded`) or an integer matrix (`birational`).

use crate::exactnum::{parse_scalar, GeneratorBasis, GroupElement, ScalarError};
use crate::intmat::IntMat;
use crate::skewalg::{AlgebraError, GradedWitness, ParameterMatrix, Permutation};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Magnitude cap on birational witness entries, so congruence checks
/// stay comfortably inside `i128`.
pub const MAX_WITNESS_ENTRY: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("entry ({row},{col}) {text:?}: {source}")]
    Entry {
        row: usize,
        col: usize,
        text: String,
        source: ScalarError,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid witness file: {0}")]
    Witness(String),
}

/// The JSON shape of a parameter file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    pub omega: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// Parse and validate a parameter file, extending `basis` with declared
/// generators and any primes or symbols appearing in the entries.
pub fn parse_parameter_text(
    text: &str,
    basis: &mut GeneratorBasis,
) -> Result<(ParameterMatrix, ParameterFile), FileError> {
    let file: ParameterFile =
        serde_json::from_str(text).map_err(|e| FileError::Json(e.to_string()))?;
    let matrix = realize(&file, basis)?;
    Ok((matrix, file))
}

pub fn load_parameter_file(
    path: &Path,
    basis: &mut GeneratorBasis,
) -> Result<(ParameterMatrix, ParameterFile), FileError> {
    let text = std::fs::read_to_string(path).map_err(|e| FileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_parameter_text(&text, basis)
}

fn realize(file: &ParameterFile, basis: &mut GeneratorBasis) -> Result<ParameterMatrix, FileError> {
    let n = file.n;
    if n < 2 {
        return Err(FileError::Schema(format!("n must be at least 2, got {n}")));
    }
    if file.omega.len() != n || file.omega.iter().any(|row| row.len() != n) {
        return Err(FileError::Schema(format!(
            "omega must be an {n}x{n} table of strings"
        )));
    }
    for g in &file.generators {
        basis
            .intern_symbol(g)
            .map_err(|e| FileError::Schema(format!("generator {g:?}: {e}")))?;
    }
    let parse_at = |text: &str, i: usize, j: usize, basis: &mut GeneratorBasis| {
        parse_scalar(text, basis).map_err(|source| FileError::Entry {
            row: i + 1,
            col: j + 1,
            text: text.to_string(),
            source,
        })
    };
    let mut entries = vec![vec![GroupElement::one(); n]; n];
    for i in 0..n {
        let text = file.omega[i][i].trim();
        if text == "auto" {
            return Err(FileError::Schema(format!(
                "entry ({0},{0}) may not be \"auto\"",
                i + 1
            )));
        }
        let e = parse_at(text, i, i, basis)?;
        if !e.is_one() {
            return Err(FileError::Schema(format!(
                "diagonal entry ({0},{0}) must equal 1, got {text:?}",
                i + 1
            )));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let upper_text = file.omega[i][j].trim();
            if upper_text == "auto" {
                return Err(FileError::Schema(format!(
                    "entry ({},{}) is \"auto\", but only entries below the diagonal may be",
                    i + 1,
                    j + 1
                )));
            }
            let upper = parse_at(upper_text, i, j, basis)?;
            let lower_text = file.omega[j][i].trim();
            let lower = if lower_text == "auto" {
                upper.inv()
            } else {
                let explicit = parse_at(lower_text, j, i, basis)?;
                if !upper.mul(&explicit).is_one() {
                    return Err(FileError::Schema(format!(
                        "reciprocity violated at ({},{}): {:?} * {:?} != 1",
                        i + 1,
                        j + 1,
                        upper_text,
                        lower_text
                    )));
                }
                explicit
            };
            entries[i][j] = upper;
            entries[j][i] = lower;
        }
    }
    Ok(ParameterMatrix::new(entries, basis.clone())?)
}

/// Render a matrix back into the file shape (explicit lower triangle).
pub fn to_parameter_file(matrix: &ParameterMatrix, name: Option<String>) -> ParameterFile {
    let n = matrix.size();
    let basis = matrix.basis();
    let omega = (0..n)
        .map(|i| (0..n).map(|j| matrix.entry(i, j).render(basis)).collect())
        .collect();
    let generators = basis
        .generators()
        .iter()
        .filter_map(|g| match g {
            crate::exactnum::Generator::Symbol(s) => Some(s.clone()),
            crate::exactnum::Generator::Prime(_) => None,
        })
        .collect();
    ParameterFile {
        n,
        generators,
        omega,
        name,
    }
}

/// The JSON shape of a witness file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<String>>,
    #[serde(default, rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<i64>>>,
}

/// A validated witness of one of the three kinds.
#[derive(Debug, Clone)]
pub enum ParsedWitness {
    Iso(Permutation),
    Graded(GradedWitness),
    Birational(IntMat),
}

impl ParsedWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedWitness::Iso(_) => "iso",
            ParsedWitness::Graded(_) => "graded",
            ParsedWitness::Birational(_) => "birational",
        }
    }
}

pub fn parse_witness_text(
    text: &str,
    basis: &mut GeneratorBasis,
) -> Result<ParsedWitness, FileError> {
    let file: WitnessFile =
        serde_json::from_str(text).map_err(|e| FileError::Json(e.to_string()))?;
    realize_witness(&file, basis)
}

pub fn load_witness_file(
    path: &Path,
    basis: &mut GeneratorBasis,
) -> Result<ParsedWitness, FileError> {
    let text = std::fs::read_to_string(path).map_err(|e| FileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_witness_text(&text, basis)
}

fn realize_witness(
    file: &WitnessFile,
    basis: &mut GeneratorBasis,
) -> Result<ParsedWitness, FileError> {
    let sigma = || -> Result<Permutation, FileError> {
        let images = file
            .sigma
            .as_ref()
            .ok_or_else(|| FileError::Witness(format!("kind {:?} requires sigma", file.kind)))?;
        Ok(Permutation::from_one_based(images)?)
    };
    match file.kind.as_str() {
        "iso" => Ok(ParsedWitness::Iso(sigma()?)),
        "graded" => {
            let sigma = sigma()?;
            let m_texts = file
                .m
                .as_ref()
                .ok_or_else(|| FileError::Witness("kind \"graded\" requires m".into()))?;
            if m_texts.len() != sigma.size() {
                return Err(FileError::Witness(format!(
                    "m has length {}, sigma has size {}",
                    m_texts.len(),
                    sigma.size()
                )));
            }
            let mut scale = Vec::with_capacity(m_texts.len());
            for (k, text) in m_texts.iter().enumerate() {
                let e = parse_scalar(text, basis).map_err(|source| FileError::Entry {
                    row: 1,
                    col: k + 1,
                    text: text.clone(),
                    source,
                })?;
                scale.push(e);
            }
            Ok(ParsedWitness::Graded(GradedWitness { sigma, scale }))
        }
        "birational" => {
            let rows = file
                .a
                .as_ref()
                .ok_or_else(|| FileError::Witness("kind \"birational\" requires A".into()))?;
            let k = rows.len();
            if k == 0 || rows.iter().any(|r| r.len() != k) {
                return Err(FileError::Witness(
                    "A must be a nonempty square matrix".into(),
                ));
            }
            if rows.iter().flatten().any(|v| v.abs() > MAX_WITNESS_ENTRY) {
                return Err(FileError::Witness(format!(
                    "entries of A must have magnitude at most {MAX_WITNESS_ENTRY}"
                )));
            }
            let a = IntMat::from_rows(rows).map_err(|e| FileError::Witness(e.to_string()))?;
            Ok(ParsedWitness::Birational(a))
        }
        other => Err(FileError::Witness(format!(
            "unknown witness kind {other:?} (expected iso, graded or birational)"
        ))),
    }
}
