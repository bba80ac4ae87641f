//! Reading fans from the catalog or from JSON fan files.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;
use toriq::{catalog, Fan};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("no catalog fan or file named {0:?}; catalog: {names}", names = catalog::NAMES.join(", "))]
    Unknown(String),
}

/// On-disk fan description. Cone entries are 1-based ray indices.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default)]
    pub name: Option<String>,
}

/// A validated fan and the name to report it under.
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub fan: Fan,
}

/// Resolves a catalog name or a path to a fan file.
pub fn ingest(spec: &str) -> Result<Input, IngestError> {
    if let Some(fan) = catalog::by_name(spec) {
        return Ok(Input { name: spec.to_string(), fan });
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(IngestError::Unknown(spec.to_string()));
    }
    let text = fs::read_to_string(path).map_err(|source| IngestError::Read { path: spec.to_string(), source })?;
    let (name, fan) = parse_fan_file(&text)?;
    let name = name.unwrap_or_else(|| path.file_stem().map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned()));
    Ok(Input { name, fan })
}

pub fn parse_fan_file(text: &str) -> Result<(Option<String>, Fan), IngestError> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| IngestError::Parse(e.to_string()))?;
    let mut cones = Vec::with_capacity(file.max_cones.len());
    for (c, cone) in file.max_cones.iter().enumerate() {
        if cone.contains(&0) {
            return Err(IngestError::Validation(format!("cone {} uses ray index 0; indices start at 1", c + 1)));
        }
        cones.push(cone.iter().map(|&r| r - 1).collect());
    }
    let fan = Fan::new(file.dim, file.rays, cones).map_err(|e| IngestError::Validation(e.to_string()))?;
    fan.validate().map_err(|e| IngestError::Validation(e.to_string()))?;
    Ok((file.name, fan))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names() {
        let f2 = ingest("F2").unwrap();
        assert_eq!(f2.fan.rays(), &[vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]]);
        assert_eq!(ingest("P2").unwrap().fan, catalog::p2());
        assert!(matches!(ingest("P7"), Err(IngestError::Unknown(_))));
    }

    #[test]
    fn file_checks() {
        let ok = r#"{"dim": 1, "rays": [[1], [-1]], "max_cones": [[1], [2]], "name": "line"}"#;
        let (name, fan) = parse_fan_file(ok).unwrap();
        assert_eq!(name.as_deref(), Some("line"));
        assert_eq!(fan, catalog::p1());

        let non_primitive = r#"{"dim": 2, "rays": [[2,0],[0,1],[-1,-1]], "max_cones": [[1,2],[2,3],[1,3]]}"#;
        let err = parse_fan_file(non_primitive).unwrap_err();
        assert!(matches!(err, IngestError::Validation(_)));
        assert!(err.to_string().contains("ray 1 is not primitive"), "{err}");

        let duplicate = r#"{"dim": 1, "rays": [[1], [1], [-1]], "max_cones": [[1], [3]]}"#;
        assert!(parse_fan_file(duplicate).unwrap_err().to_string().contains("rays 1 and 2 coincide"));

        let zero_based = r#"{"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}"#;
        assert!(matches!(parse_fan_file(zero_based), Err(IngestError::Validation(_))));

        let incomplete = r#"{"dim": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[1,2],[2,3]]}"#;
        assert!(matches!(parse_fan_file(incomplete), Err(IngestError::Validation(_))));

        assert!(matches!(parse_fan_file("{\"dim\": 1"), Err(IngestError::Parse(_))));
        assert!(matches!(parse_fan_file(r#"{"dim": 1, "rays": [], "max_cones": [], "extra": 1}"#), Err(IngestError::Parse(_))));
    }
}
