//! Readers for the four external corpus formats.
//!
//! Every reader takes untrusted text and either produces source documents
//! or a parse error with file/line location; none of them panic on
//! malformed input (they are fuzzed under `fuzz/`).

pub mod gum;
pub mod inline_xml;
pub mod litbank;
pub mod ontonotes;

use std::fs;
use std::path::{Path, PathBuf};

use crate::adapters::source::{to_corpus, SourceDocument};
use crate::formats::CorpusFormat;
use crate::model::{Corpus, Provenance};
use crate::CoreError;

/// Read one file's worth of source documents in the given format.
pub fn parse_source_text(
    text: &str,
    format: CorpusFormat,
    path: &str,
) -> Result<Vec<SourceDocument>, CoreError> {
    match format {
        CorpusFormat::OntoNotes => ontonotes::parse(text, path),
        CorpusFormat::Gum => gum::parse(text, path),
        CorpusFormat::InlineXml => inline_xml::parse(text, path),
        CorpusFormat::LitBank => litbank::parse(text, path),
        CorpusFormat::Canonical => Err(CoreError::UnknownFormat(
            "canonical corpora load through formats::canonical".to_string(),
        )),
    }
}

/// Read a file, or every regular file in a directory (name order).
pub fn read_source_corpus(
    path: &Path,
    format: CorpusFormat,
) -> Result<Vec<SourceDocument>, CoreError> {
    let mut files: Vec<PathBuf> = Vec::new();
    if path.is_dir() {
        for entry in fs::read_dir(path).map_err(|e| CoreError::Io {
            path: path.display().to_string(),
            source: e,
        })? {
            let p = entry
                .map_err(|e| CoreError::Io {
                    path: path.display().to_string(),
                    source: e,
                })?
                .path();
            if p.is_file() {
                files.push(p);
            }
        }
        files.sort();
    } else {
        files.push(path.to_path_buf());
    }

    let mut out = Vec::new();
    for file in files {
        let display = file.display().to_string();
        let text = fs::read_to_string(&file).map_err(|e| CoreError::Io {
            path: display.clone(),
            source: e,
        })?;
        out.extend(parse_source_text(&text, format, &display)?);
    }
    Ok(out)
}

/// Structural conversion of read sources into a canonical corpus.
pub fn convert_basic(path: &Path, format: CorpusFormat, sources: &[SourceDocument]) -> Corpus {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| format.id().to_string());
    let provenance = match format {
        CorpusFormat::OntoNotes => Provenance::Ontonotes,
        CorpusFormat::Gum => Provenance::Gum,
        CorpusFormat::LitBank => Provenance::Litbank,
        CorpusFormat::InlineXml => match Provenance::from_name(&name) {
            Provenance::Synthetic => Provenance::Timebank,
            p => p,
        },
        CorpusFormat::Canonical => Provenance::from_name(&name),
    };
    to_corpus(&name, provenance, sources)
}

pub(crate) fn parse_err(path: &str, line: usize, message: impl Into<String>) -> CoreError {
    CoreError::Parse {
        path: path.to_string(),
        line,
        message: message.into(),
    }
}
