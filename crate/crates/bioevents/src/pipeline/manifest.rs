//! Input manifest: one record per biography, JSON-lines.
//!
//! A record points either at a plain-text file (segmented by the frozen
//! splitter) or at a canonical corpus file containing the document under
//! the same id (tokens and sentences reused as-is, annotations ignored).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::model::GroupLabel;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_path: Option<PathBuf>,
}

impl ManifestRecord {
    pub fn validate(&self) -> Result<(), PipelineError> {
        match (&self.text_path, &self.canonical_path) {
            (Some(_), None) | (None, Some(_)) => Ok(()),
            _ => Err(PipelineError::Manifest(format!(
                "record '{}' must set exactly one of text_path / canonical_path",
                self.id
            ))),
        }
    }
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestRecord>, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|e| PipelineError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut records = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: ManifestRecord = serde_json::from_str(line).map_err(|e| {
            PipelineError::Manifest(format!("{}:{}: {e}", path.display(), i + 1))
        })?;
        record.validate()?;
        if !seen.insert(record.id.clone()) {
            return Err(PipelineError::Manifest(format!(
                "duplicate manifest id '{}'",
                record.id
            )));
        }
        records.push(record);
    }
    Ok(records)
}

pub fn write_manifest(records: &[ManifestRecord], path: &Path) -> Result<(), PipelineError> {
    let mut out = String::new();
    for r in records {
        r.validate()?;
        out.push_str(&serde_json::to_string(r).expect("manifest serialization cannot fail"));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| PipelineError::Io {
        path: path.display().to_string(),
        source: e,
    })
}
