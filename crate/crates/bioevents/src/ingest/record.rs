//! Writer records as fetched from the knowledge base.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// One writer, with the metadata the grouping needs. Field values are raw
/// knowledge-base identifiers or labels; mapping to analysis categories
/// happens in `grouping`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersonRecord {
    pub person_id: String,
    pub name: String,
    /// Raw gender value (QID or label); `None` when the source omits it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gender: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year_of_birth: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub country_of_birth: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ethnic_group: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub occupations: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub biography_text: Option<String>,
    /// Names of fields the source failed to supply; a non-empty list
    /// excludes the record from grouping but keeps it in the manifest.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub missing_fields: Vec<String>,
}

impl PersonRecord {
    pub fn new(person_id: impl Into<String>, name: impl Into<String>) -> Self {
        PersonRecord {
            person_id: person_id.into(),
            name: name.into(),
            gender: None,
            year_of_birth: None,
            country_of_birth: None,
            ethnic_group: None,
            occupations: BTreeSet::new(),
            biography_text: None,
            missing_fields: Vec::new(),
        }
    }

    pub fn flag_missing(&mut self, field: &str) {
        if !self.missing_fields.iter().any(|f| f == field) {
            self.missing_fields.push(field.to_string());
        }
    }
}
