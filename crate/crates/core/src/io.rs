//! The JSON input document.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::grading::{Generator, GradingInput, Mode};
use crate::lattice::IntVec;

pub const SCHEMA_VERSION: &str = "1";

const TOP_LEVEL_FIELDS: &[&str] = &["schema_version", "lattice_rank", "generators", "mode", "f_faces", "metadata"];
const GENERATOR_FIELDS: &[&str] = &["name", "degree"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown field `{0}`")]
    UnknownField(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Suitable,
    Explicit,
}

impl std::fmt::Display for ModeName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModeName::Suitable => "suitable",
            ModeName::Explicit => "explicit",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: Vec<i64>,
}

/// The input document. `f_faces` uses 1-based generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    pub schema_version: String,
    pub lattice_rank: usize,
    pub generators: Vec<GeneratorDoc>,
    pub mode: ModeName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_faces: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub metadata: Map<String, Value>,
}

/// A parsed document together with non-fatal findings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub document: InputDocument,
    pub warnings: Vec<String>,
}

fn unknown_fields(value: &Value) -> Vec<String> {
    let mut out = Vec::new();
    if let Value::Object(top) = value {
        for key in top.keys() {
            if !TOP_LEVEL_FIELDS.contains(&key.as_str()) {
                out.push(key.clone());
            }
        }
        if let Some(Value::Array(gens)) = top.get("generators") {
            for (i, g) in gens.iter().enumerate() {
                if let Value::Object(g) = g {
                    for key in g.keys() {
                        if !GENERATOR_FIELDS.contains(&key.as_str()) {
                            out.push(format!("generators[{i}].{key}"));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Parses and schema-checks a document. Unknown fields are errors when
/// `strict` is set and warnings otherwise.
pub fn parse_input(text: &str, strict: bool) -> Result<Parsed, InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let unknown = unknown_fields(&value);
    if strict {
        if let Some(f) = unknown.first() {
            return Err(InputError::UnknownField(f.clone()));
        }
    }
    let document: InputDocument =
        serde_json::from_value(value).map_err(|e| InputError::Schema(e.to_string()))?;
    document.check()?;
    Ok(Parsed {
        document,
        warnings: unknown.into_iter().map(|f| format!("ignoring unknown field `{f}`")).collect(),
    })
}

impl InputDocument {
    fn check(&self) -> Result<(), InputError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(InputError::Schema(format!(
                "unsupported schema_version `{}` (expected `{SCHEMA_VERSION}`)",
                self.schema_version
            )));
        }
        match (self.mode, &self.f_faces) {
            (ModeName::Explicit, None) => {
                return Err(InputError::Schema("explicit mode requires `f_faces`".into()))
            }
            (ModeName::Suitable, Some(_)) => {
                return Err(InputError::Schema("`f_faces` is only allowed in explicit mode".into()))
            }
            _ => {}
        }
        for (fi, face) in self.f_faces.iter().flatten().enumerate() {
            if face.contains(&0) {
                return Err(InputError::Schema(format!(
                    "f_faces[{fi}]: generator indices are 1-based"
                )));
            }
        }
        Ok(())
    }

    /// The grading described by the document; `f_faces` become 0-based.
    pub fn to_grading(&self) -> GradingInput {
        GradingInput {
            lattice_rank: self.lattice_rank,
            generators: self
                .generators
                .iter()
                .map(|g| Generator {
                    name: g.name.clone(),
                    degree: g.degree.iter().map(|&x| x.into()).collect::<IntVec>(),
                })
                .collect(),
            mode: match self.mode {
                ModeName::Suitable => Mode::Suitable,
                ModeName::Explicit => Mode::Explicit,
            },
            f_faces: self
                .f_faces
                .iter()
                .flatten()
                .map(|f| f.iter().map(|&i| i - 1).collect())
                .collect(),
        }
    }

    /// Bunches listed under `metadata.bunches`: a map from a name to a list
    /// of cones, each cone given by generating degree vectors.
    pub fn declared_bunches(&self) -> Result<Vec<(String, Vec<Vec<IntVec>>)>, InputError> {
        let Some(b) = self.metadata.get("bunches") else {
            return Ok(Vec::new());
        };
        let parsed: std::collections::BTreeMap<String, Vec<Vec<Vec<i64>>>> = serde_json::from_value(b.clone())
            .map_err(|e| InputError::Schema(format!("metadata.bunches: {e}")))?;
        let mut out = Vec::new();
        for (name, cones) in parsed {
            for (ci, cone) in cones.iter().enumerate() {
                if let Some(v) = cone.iter().find(|v| v.len() != self.lattice_rank) {
                    return Err(InputError::Schema(format!(
                        "metadata.bunches.{name}[{ci}]: vector of length {} in rank {}",
                        v.len(),
                        self.lattice_rank
                    )));
                }
            }
            let cones = cones
                .into_iter()
                .map(|c| c.into_iter().map(|v| v.into_iter().map(Into::into).collect()).collect())
                .collect();
            out.push((name, cones));
        }
        Ok(out)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialises");
        s.push('\n');
        s
    }
}
