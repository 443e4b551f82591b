//! Append-only per-document checkpoint log.
//!
//! Each completed document appends one tab-separated line:
//!
//! ```text
//! doc_id<TAB>output_byte_offset<TAB>sentences_before<TAB>sentences_after<TAB>events<TAB>group
//! ```
//!
//! Quarantined documents log `Q<TAB>reason` after the offset instead of
//! counts. The offset is the output file length after the document was
//! flushed, so resuming truncates the output to the last recorded offset
//! and continues; an unparseable log or an offset beyond the file length
//! means the pair is inconsistent and the run must be rebuilt.

use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;

use super::PipelineError;

#[derive(Debug, Clone, PartialEq)]
pub enum CheckpointEntry {
    Done {
        doc_id: String,
        offset: u64,
        sentences_before: usize,
        sentences_after: usize,
        events: usize,
        /// Group code or "-" for ungrouped documents.
        group: String,
    },
    Quarantined {
        doc_id: String,
        offset: u64,
        reason: String,
    },
}

impl CheckpointEntry {
    pub fn doc_id(&self) -> &str {
        match self {
            CheckpointEntry::Done { doc_id, .. } => doc_id,
            CheckpointEntry::Quarantined { doc_id, .. } => doc_id,
        }
    }

    pub fn offset(&self) -> u64 {
        match self {
            CheckpointEntry::Done { offset, .. } => *offset,
            CheckpointEntry::Quarantined { offset, .. } => *offset,
        }
    }

    fn to_line(&self) -> String {
        match self {
            CheckpointEntry::Done {
                doc_id,
                offset,
                sentences_before,
                sentences_after,
                events,
                group,
            } => format!(
                "{doc_id}\t{offset}\t{sentences_before}\t{sentences_after}\t{events}\t{group}"
            ),
            CheckpointEntry::Quarantined { doc_id, offset, reason } => {
                format!("{doc_id}\t{offset}\tQ\t{}", reason.replace(['\t', '\n'], " "))
            }
        }
    }

    fn parse(line: &str) -> Option<CheckpointEntry> {
        let cols: Vec<&str> = line.split('\t').collect();
        let offset: u64 = cols.get(1)?.parse().ok()?;
        match cols.get(2)? {
            &"Q" => Some(CheckpointEntry::Quarantined {
                doc_id: cols[0].to_string(),
                offset,
                reason: cols.get(3).unwrap_or(&"").to_string(),
            }),
            _ => {
                if cols.len() != 6 {
                    return None;
                }
                Some(CheckpointEntry::Done {
                    doc_id: cols[0].to_string(),
                    offset,
                    sentences_before: cols[2].parse().ok()?,
                    sentences_after: cols[3].parse().ok()?,
                    events: cols[4].parse().ok()?,
                    group: cols[5].to_string(),
                })
            }
        }
    }
}

/// Read an existing checkpoint log. Malformed lines or non-monotonic
/// offsets raise `RebuildRequired`: the log no longer describes the output.
pub fn read_checkpoint(path: &Path) -> Result<Vec<CheckpointEntry>, PipelineError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(path).map_err(|e| PipelineError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut entries = Vec::new();
    let mut last_offset = 0u64;
    for (i, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let entry = CheckpointEntry::parse(line).ok_or_else(|| PipelineError::RebuildRequired {
            detail: format!("{}:{}: unparseable checkpoint line", path.display(), i + 1),
        })?;
        if entry.offset() < last_offset {
            return Err(PipelineError::RebuildRequired {
                detail: format!(
                    "{}:{}: offsets go backwards ({} after {})",
                    path.display(),
                    i + 1,
                    entry.offset(),
                    last_offset
                ),
            });
        }
        last_offset = entry.offset();
        entries.push(entry);
    }
    Ok(entries)
}

pub struct CheckpointWriter {
    file: File,
}

impl CheckpointWriter {
    pub fn append_to(path: &Path) -> Result<Self, PipelineError> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| PipelineError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
        Ok(CheckpointWriter { file })
    }

    pub fn record(&mut self, entry: &CheckpointEntry) -> Result<(), PipelineError> {
        // one write call per line so a crash cannot interleave entries
        let line = format!("{}\n", entry.to_line());
        self.file
            .write_all(line.as_bytes())
            .and_then(|_| self.file.flush())
            .map_err(|e| PipelineError::Io {
                path: "checkpoint".to_string(),
                source: e,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn done(id: &str, offset: u64) -> CheckpointEntry {
        CheckpointEntry::Done {
            doc_id: id.into(),
            offset,
            sentences_before: 10,
            sentences_after: 7,
            events: 3,
            group: "TW".into(),
        }
    }

    #[test]
    fn write_read_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ckpt.log");
        let mut w = CheckpointWriter::append_to(&path).unwrap();
        w.record(&done("a", 100)).unwrap();
        w.record(&CheckpointEntry::Quarantined {
            doc_id: "b".into(),
            offset: 100,
            reason: "bad\tfile".into(),
        })
        .unwrap();
        let entries = read_checkpoint(&path).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0], done("a", 100));
        assert_eq!(entries[1].doc_id(), "b");
        assert_eq!(entries[1].offset(), 100);
    }

    #[test]
    fn garbage_line_requires_rebuild() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ckpt.log");
        std::fs::write(&path, "not a checkpoint\n").unwrap();
        assert!(matches!(
            read_checkpoint(&path),
            Err(PipelineError::RebuildRequired { .. })
        ));
    }

    #[test]
    fn backwards_offsets_require_rebuild() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ckpt.log");
        let mut w = CheckpointWriter::append_to(&path).unwrap();
        w.record(&done("a", 100)).unwrap();
        w.record(&done("b", 50)).unwrap();
        assert!(matches!(
            read_checkpoint(&path),
            Err(PipelineError::RebuildRequired { .. })
        ));
    }

    #[test]
    fn missing_file_is_a_fresh_start() {
        let dir = tempfile::tempdir().unwrap();
        assert!(read_checkpoint(&dir.path().join("none.log")).unwrap().is_empty());
    }
}
