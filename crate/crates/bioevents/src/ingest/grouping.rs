//! Intersectional group classification.
//!
//! A writer is Transnational when born outside the configured Western
//! countries or belonging to a configured minority ethnic group; otherwise
//! Western. Gender maps to the man/woman axis of the analysis; other or
//! missing values are excluded with a counted reason so partition totals
//! always reconcile with the input.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::record::PersonRecord;
use super::IngestError;
use crate::model::{Gender, GroupLabel, Origin};

/// Earliest birth year in scope for the analysis.
pub const DEFAULT_BIRTH_YEAR_MIN: i32 = 1808;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupingConfig {
    pub western_countries: BTreeSet<String>,
    pub minority_ethnic_groups: BTreeSet<String>,
    pub birth_year_min: i32,
    /// Version strings of the two lists, embedded in downstream reports.
    pub western_version: String,
    pub minority_version: String,
}

const WESTERN_BUILTIN: &str = include_str!("../../data/western_countries.txt");
const MINORITY_BUILTIN: &str = include_str!("../../data/minority_ethnic_groups.txt");

fn parse_id_list(text: &str) -> (BTreeSet<String>, String) {
    let mut version = "unversioned".to_string();
    if let Some(first) = text.lines().next() {
        if let Some(v) = first.strip_prefix('#') {
            version = v.trim().to_string();
        }
    }
    let set = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .filter_map(|l| l.split(['#', '\t']).next())
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    (set, version)
}

impl GroupingConfig {
    pub fn builtin() -> Self {
        let (western_countries, western_version) = parse_id_list(WESTERN_BUILTIN);
        let (minority_ethnic_groups, minority_version) = parse_id_list(MINORITY_BUILTIN);
        GroupingConfig {
            western_countries,
            minority_ethnic_groups,
            birth_year_min: DEFAULT_BIRTH_YEAR_MIN,
            western_version,
            minority_version,
        }
    }

    pub fn with_lists(western: &Path, minority: &Path) -> Result<Self, IngestError> {
        let read = |p: &Path| {
            std::fs::read_to_string(p).map_err(|e| IngestError::Io {
                path: p.display().to_string(),
                source: e,
            })
        };
        let (western_countries, western_version) = parse_id_list(&read(western)?);
        let (minority_ethnic_groups, minority_version) = parse_id_list(&read(minority)?);
        if western_countries.is_empty() || minority_ethnic_groups.is_empty() {
            return Err(IngestError::Config(
                "grouping lists must be non-empty".to_string(),
            ));
        }
        Ok(GroupingConfig {
            western_countries,
            minority_ethnic_groups,
            birth_year_min: DEFAULT_BIRTH_YEAR_MIN,
            western_version,
            minority_version,
        })
    }
}

impl Default for GroupingConfig {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Map a raw knowledge-base gender value onto the analysis axis.
pub fn map_gender(raw: &str) -> Option<Gender> {
    match raw.trim() {
        "Q6581097" | "male" | "man" => Some(Gender::Man),
        "Q6581072" | "female" | "woman" => Some(Gender::Woman),
        _ => None,
    }
}

/// Classify one record. Pure: group assignment depends only on the record
/// and the configuration.
pub fn classify_group(
    record: &PersonRecord,
    config: &GroupingConfig,
) -> Result<GroupLabel, IngestError> {
    let gender_raw = record
        .gender
        .as_deref()
        .ok_or_else(|| IngestError::MissingField {
            person_id: record.person_id.clone(),
            field: "gender",
        })?;
    let country = record
        .country_of_birth
        .as_deref()
        .ok_or_else(|| IngestError::MissingField {
            person_id: record.person_id.clone(),
            field: "country_of_birth",
        })?;
    let gender = map_gender(gender_raw).ok_or_else(|| IngestError::UnmappableGender {
        person_id: record.person_id.clone(),
        value: gender_raw.to_string(),
    })?;

    let minority = record
        .ethnic_group
        .as_deref()
        .map_or(false, |e| config.minority_ethnic_groups.contains(e));
    let origin = if !config.western_countries.contains(country) || minority {
        Origin::Transnational
    } else {
        Origin::Western
    };
    Ok(GroupLabel { origin, gender })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExclusionReason {
    MissingGender,
    MissingCountry,
    UnmappableGender,
    SourceFlaggedIncomplete,
}

/// A full partition of the input: every record lands in exactly one group
/// or one exclusion bucket.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub groups: BTreeMap<GroupLabel, Vec<String>>,
    pub exclusions: BTreeMap<ExclusionReason, Vec<String>>,
    pub western_version: String,
    pub minority_version: String,
}

impl Partition {
    pub fn group_counts(&self) -> BTreeMap<GroupLabel, usize> {
        self.groups.iter().map(|(g, v)| (*g, v.len())).collect()
    }

    pub fn total(&self) -> usize {
        self.groups.values().map(Vec::len).sum::<usize>()
            + self.exclusions.values().map(Vec::len).sum::<usize>()
    }

    /// Every input accounted for exactly once.
    pub fn reconciles(&self, n_input: usize) -> bool {
        self.total() == n_input
    }
}

/// Partition a record set into the four groups plus exclusion buckets.
pub fn partition_records(records: &[PersonRecord], config: &GroupingConfig) -> Partition {
    let mut partition = Partition {
        western_version: config.western_version.clone(),
        minority_version: config.minority_version.clone(),
        ..Default::default()
    };
    for r in records {
        if !r.missing_fields.is_empty() {
            partition
                .exclusions
                .entry(ExclusionReason::SourceFlaggedIncomplete)
                .or_default()
                .push(r.person_id.clone());
            continue;
        }
        match classify_group(r, config) {
            Ok(group) => partition.groups.entry(group).or_default().push(r.person_id.clone()),
            Err(IngestError::MissingField { field, .. }) => {
                let reason = if field == "gender" {
                    ExclusionReason::MissingGender
                } else {
                    ExclusionReason::MissingCountry
                };
                partition
                    .exclusions
                    .entry(reason)
                    .or_default()
                    .push(r.person_id.clone());
            }
            Err(IngestError::UnmappableGender { .. }) => {
                partition
                    .exclusions
                    .entry(ExclusionReason::UnmappableGender)
                    .or_default()
                    .push(r.person_id.clone());
            }
            Err(_) => unreachable!("classify_group returns only field errors"),
        }
    }
    partition
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, gender: Option<&str>, country: Option<&str>, ethnic: Option<&str>) -> PersonRecord {
        let mut r = PersonRecord::new(id, id);
        r.gender = gender.map(str::to_string);
        r.country_of_birth = country.map(str::to_string);
        r.ethnic_group = ethnic.map(str::to_string);
        r
    }

    #[test]
    fn western_country_no_minority_is_western() {
        let c = GroupingConfig::builtin();
        let g = classify_group(&record("p", Some("Q6581097"), Some("Q30"), None), &c).unwrap();
        assert_eq!(g, GroupLabel::WESTERN_MEN);
    }

    #[test]
    fn minority_in_western_country_is_transnational() {
        let c = GroupingConfig::builtin();
        let g = classify_group(
            &record("p", Some("Q6581072"), Some("Q30"), Some("Q49085")),
            &c,
        )
        .unwrap();
        assert_eq!(g, GroupLabel::TRANSNATIONAL_WOMEN);
    }

    #[test]
    fn non_western_birth_is_transnational() {
        let c = GroupingConfig::builtin();
        // Q1033 = Nigeria, not in the western list
        let g = classify_group(&record("p", Some("male"), Some("Q1033"), None), &c).unwrap();
        assert_eq!(g, GroupLabel::TRANSNATIONAL_MEN);
    }

    #[test]
    fn missing_gender_is_a_field_error() {
        let c = GroupingConfig::builtin();
        assert!(matches!(
            classify_group(&record("p", None, Some("Q30"), None), &c),
            Err(IngestError::MissingField { field: "gender", .. })
        ));
    }

    #[test]
    fn partition_reconciles_every_record() {
        let c = GroupingConfig::builtin();
        let records = vec![
            record("a", Some("male"), Some("Q30"), None),
            record("b", Some("female"), Some("Q1033"), None),
            record("c", None, Some("Q30"), None),
            record("d", Some("Q48270"), Some("Q30"), None), // non-binary: excluded, counted
            record("e", Some("male"), None, None),
        ];
        let p = partition_records(&records, &c);
        assert!(p.reconciles(records.len()));
        assert_eq!(p.groups[&GroupLabel::WESTERN_MEN], vec!["a"]);
        assert_eq!(p.groups[&GroupLabel::TRANSNATIONAL_WOMEN], vec!["b"]);
        assert_eq!(p.exclusions[&ExclusionReason::MissingGender], vec!["c"]);
        assert_eq!(p.exclusions[&ExclusionReason::UnmappableGender], vec!["d"]);
        assert_eq!(p.exclusions[&ExclusionReason::MissingCountry], vec!["e"]);
    }

    #[test]
    fn config_changes_are_the_only_way_counts_change() {
        let records = vec![record("a", Some("male"), Some("Q1033"), None)];
        let base = GroupingConfig::builtin();
        let p1 = partition_records(&records, &base);
        assert_eq!(p1.group_counts()[&GroupLabel::TRANSNATIONAL_MEN], 1);

        let mut widened = base.clone();
        widened.western_countries.insert("Q1033".to_string());
        let p2 = partition_records(&records, &widened);
        assert_eq!(p2.group_counts()[&GroupLabel::WESTERN_MEN], 1);
    }

    #[test]
    fn builtin_lists_carry_versions() {
        let c = GroupingConfig::builtin();
        assert!(c.western_version.contains("western-countries"));
        assert!(c.minority_version.contains("minority-ethnic-groups"));
        assert!(!c.western_countries.is_empty());
    }
}
