//! Corpus readers and writers.
//!
//! `canonical` is the round-trip representation. The four external reader
//! formats (bracketed trees with coreference chains, token-per-line with
//! coref columns, inline XML event markup, sentence-per-line with event
//! offsets) live under `adapters::readers` and are dispatched from
//! [`load_corpus`] here.

pub mod canonical;
pub mod token_table;

use std::path::Path;
use std::str::FromStr;

use crate::adapters::readers;
use crate::lexicon::Lexicon;
use crate::model::Corpus;
use crate::validate::validate_corpus;
use crate::CoreError;

/// Registered corpus formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorpusFormat {
    /// Line-delimited canonical records (`.jsonl`).
    Canonical,
    /// Bracketed constituency trees plus coreference-chain blocks.
    OntoNotes,
    /// Token-per-line columns with typed coreference brackets.
    Gum,
    /// Inline XML event markup (TimeBank/NewsReader style).
    InlineXml,
    /// Sentence-per-line with comma-separated event token offsets.
    LitBank,
}

impl CorpusFormat {
    pub const ALL: [CorpusFormat; 5] = [
        CorpusFormat::Canonical,
        CorpusFormat::OntoNotes,
        CorpusFormat::Gum,
        CorpusFormat::InlineXml,
        CorpusFormat::LitBank,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            CorpusFormat::Canonical => "canonical",
            CorpusFormat::OntoNotes => "ontonotes",
            CorpusFormat::Gum => "gum",
            CorpusFormat::InlineXml => "inline-xml",
            CorpusFormat::LitBank => "litbank",
        }
    }
}

impl FromStr for CorpusFormat {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "canonical" | "jsonl" | "wikibio" => Ok(CorpusFormat::Canonical),
            "ontonotes" | "onto" => Ok(CorpusFormat::OntoNotes),
            "gum" => Ok(CorpusFormat::Gum),
            "inline-xml" | "timebank" | "newsreader" | "timeml" => Ok(CorpusFormat::InlineXml),
            "litbank" => Ok(CorpusFormat::LitBank),
            other => Err(CoreError::UnknownFormat(other.to_string())),
        }
    }
}

/// Load a corpus in any registered format and validate it against the
/// scheme. External formats are converted structurally (tokens, sentences,
/// the most mentioned PERSON chain if any, event tokens); the explicit
/// harmonization and rewriting passes are separate adapter operations.
pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus, CoreError> {
    load_corpus_with(path, format, &Lexicon::builtin())
}

pub fn load_corpus_with(
    path: &Path,
    format: CorpusFormat,
    lexicon: &Lexicon,
) -> Result<Corpus, CoreError> {
    let corpus = match format {
        CorpusFormat::Canonical => canonical::read_corpus(path)?,
        CorpusFormat::OntoNotes
        | CorpusFormat::Gum
        | CorpusFormat::InlineXml
        | CorpusFormat::LitBank => {
            let sources = readers::read_source_corpus(path, format)?;
            readers::convert_basic(path, format, &sources)
        }
    };

    let reports = validate_corpus(&corpus, lexicon);
    let dirty: Vec<_> = reports.into_iter().filter(|r| !r.is_clean()).collect();
    if let Some(first) = dirty.first() {
        let total: usize = dirty.iter().map(|r| r.violations.len()).sum();
        return Err(CoreError::Validation {
            doc_id: first.doc_id.clone(),
            summary: format!(
                "{} violation(s) in {} document(s); first: {}",
                total,
                dirty.len(),
                first.violations[0].message
            ),
            report: Box::new(first.clone()),
        });
    }
    Ok(corpus)
}

/// Save a corpus. Canonical is the only writable corpus format; the token
/// table is available through [`token_table::write_token_table`].
pub fn save_corpus(corpus: &Corpus, path: &Path, format: CorpusFormat) -> Result<(), CoreError> {
    match format {
        CorpusFormat::Canonical => canonical::write_corpus(corpus, path).map(|_| ()),
        other => Err(CoreError::UnknownFormat(format!(
            "{} is read-only; save in canonical format",
            other.id()
        ))),
    }
}
