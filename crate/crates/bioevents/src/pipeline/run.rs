//! The two-stage annotation pipeline: mention detection, sentence
//! filtering, event detection — checkpointed per document so interrupted
//! runs resume without reprocessing and produce byte-identical output.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::checkpoint::{read_checkpoint, CheckpointEntry, CheckpointWriter};
use super::manifest::{read_manifest, ManifestRecord};
use super::report::{KindRecallCounts, RunReport, StageCounts};
use super::segment::{segment, SPLITTER_VERSION};
use super::PipelineError;
use crate::formats::canonical;
use crate::labels::{mentions_from_labels_direct, LabelLayer};
use crate::model::{AnnotatedDocument, EventMention, GroupLabel, Token};
use crate::tagger::{
    chunk_tokens, join_windows, predict_labels, ChunkingSpec, TokenClassifier, TokenSequence,
};

/// A biography reduced to tokens with sentence indices, ready for tagging.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentedDocument {
    pub id: String,
    pub title: String,
    pub group: Option<GroupLabel>,
    pub tokens: Vec<Token>,
    /// Gold annotations when the input was canonical; used only for the
    /// per-kind recall section of the run report.
    pub gold: Option<AnnotatedDocument>,
}

impl SegmentedDocument {
    pub fn from_text(id: &str, title: &str, group: Option<GroupLabel>, text: &str) -> Self {
        SegmentedDocument {
            id: id.to_string(),
            title: title.to_string(),
            group,
            tokens: segment(text),
            gold: None,
        }
    }

    pub fn from_annotated(doc: &AnnotatedDocument, group: Option<GroupLabel>) -> Self {
        SegmentedDocument {
            id: doc.doc_id.clone(),
            title: doc.target_entity_name.clone(),
            group: group.or(doc.group),
            tokens: doc.tokens.clone(),
            gold: Some(doc.clone()),
        }
    }

    fn n_sentences(&self) -> usize {
        self.tokens.last().map(|t| t.sentence_index + 1).unwrap_or(0)
    }

    fn sentence_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut ranges = Vec::new();
        let mut start = 0;
        for i in 1..=self.tokens.len() {
            if i == self.tokens.len()
                || self.tokens[i].sentence_index != self.tokens[start].sentence_index
            {
                ranges.push(start..i);
                start = i;
            }
        }
        ranges
    }
}

/// Document-level entity labels plus the retained sentence indices.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterOutcome {
    pub entity_labels: Vec<String>,
    pub retained: Vec<usize>,
    pub n_sentences: usize,
}

impl FilterOutcome {
    pub fn retention_ratio(&self) -> f64 {
        if self.n_sentences == 0 {
            0.0
        } else {
            self.retained.len() as f64 / self.n_sentences as f64
        }
    }
}

/// Stage one and two: tag every token with the entity model, keep exactly
/// the sentences containing at least one predicted positive token.
pub fn filter_sentences<C: TokenClassifier + ?Sized>(
    doc: &SegmentedDocument,
    entity_model: &C,
    chunking: &ChunkingSpec,
) -> Result<FilterOutcome, PipelineError> {
    let texts: Vec<String> = doc.tokens.iter().map(|t| t.text.clone()).collect();
    let windows = chunk_tokens(&doc.id, &texts, chunking);
    let labels = predict_labels(entity_model, &windows).map_err(|e| PipelineError::Model {
        doc_id: doc.id.clone(),
        message: e.to_string(),
    })?;
    let joined: Vec<(TokenSequence, Vec<String>)> = windows.into_iter().zip(labels).collect();
    let entity_labels =
        join_windows(&joined, doc.tokens.len()).map_err(|e| PipelineError::Model {
            doc_id: doc.id.clone(),
            message: e.to_string(),
        })?;

    let mut retained = Vec::new();
    for (s, range) in doc.sentence_ranges().iter().enumerate() {
        let any_positive = range
            .clone()
            .any(|i| LabelLayer::Entity.is_positive(&entity_labels[i]));
        if any_positive {
            retained.push(s);
        }
    }
    Ok(FilterOutcome {
        entity_labels,
        retained,
        n_sentences: doc.n_sentences(),
    })
}

/// Stage three: run the event model over the retained sentences only; one
/// sequence per sentence, window-chunked when a sentence exceeds the
/// window.
pub fn detect_events<C: TokenClassifier + ?Sized>(
    doc: &SegmentedDocument,
    retained: &[usize],
    event_model: &C,
    chunking: &ChunkingSpec,
) -> Result<Vec<EventMention>, PipelineError> {
    let ranges = doc.sentence_ranges();
    let mut sequences = Vec::new();
    for &s in retained {
        let range = match ranges.get(s) {
            Some(r) => r.clone(),
            None => continue,
        };
        let tokens: Vec<String> = doc.tokens[range.clone()].iter().map(|t| t.text.clone()).collect();
        for mut w in chunk_tokens(&doc.id, &tokens, chunking) {
            w.start += range.start; // sequence starts are document-level
            sequences.push(w);
        }
    }
    if sequences.is_empty() {
        return Ok(Vec::new());
    }
    let labels = predict_labels(event_model, &sequences).map_err(|e| PipelineError::Model {
        doc_id: doc.id.clone(),
        message: e.to_string(),
    })?;

    let mut events = Vec::new();
    for (seq, seq_labels) in sequences.iter().zip(&labels) {
        for (i, label) in seq_labels.iter().enumerate() {
            if label == crate::labels::LABEL_EVENT {
                events.push(EventMention::factual(seq.start + i));
            }
        }
    }
    events.sort_by_key(|e| e.token_index);
    Ok(events)
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub out_path: PathBuf,
    pub checkpoint_path: PathBuf,
    pub chunking: ChunkingSpec,
    /// Abort the run (without error) after this many newly processed
    /// documents; used to exercise resume and for incremental runs.
    pub max_docs: Option<usize>,
    /// Fail the whole run on the first bad document instead of
    /// quarantining it.
    pub strict: bool,
    /// Worker threads for document processing; output order is always
    /// manifest order regardless.
    pub workers: usize,
}

impl PipelineOptions {
    pub fn new(out_path: impl Into<PathBuf>, checkpoint_path: impl Into<PathBuf>) -> Self {
        PipelineOptions {
            out_path: out_path.into(),
            checkpoint_path: checkpoint_path.into(),
            chunking: ChunkingSpec::default(),
            max_docs: None,
            strict: false,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PipelineRun {
    pub input_manifest: Vec<String>,
    pub completed: usize,
    pub pending: usize,
    pub outputs_path: PathBuf,
    pub report: RunReport,
}

struct DocResult {
    record: ManifestRecord,
    outcome: Result<(AnnotatedDocument, StageCounts, KindRecallCounts), String>,
}

fn load_segmented(
    record: &ManifestRecord,
    canonical_cache: &HashMap<PathBuf, HashMap<String, AnnotatedDocument>>,
) -> Result<SegmentedDocument, String> {
    if let Some(text_path) = &record.text_path {
        let text = std::fs::read_to_string(text_path)
            .map_err(|e| format!("{}: {e}", text_path.display()))?;
        Ok(SegmentedDocument::from_text(
            &record.id,
            &record.title,
            record.group,
            &text,
        ))
    } else {
        let path = record.canonical_path.as_ref().expect("validated");
        let docs = canonical_cache
            .get(path)
            .ok_or_else(|| format!("{}: corpus not loaded", path.display()))?;
        let doc = docs
            .get(&record.id)
            .ok_or_else(|| format!("{}: no document '{}'", path.display(), record.id))?;
        Ok(SegmentedDocument::from_annotated(doc, record.group))
    }
}

fn process_document<C1, C2>(
    record: &ManifestRecord,
    entity_model: &C1,
    event_model: &C2,
    chunking: &ChunkingSpec,
    canonical_cache: &HashMap<PathBuf, HashMap<String, AnnotatedDocument>>,
) -> Result<(AnnotatedDocument, StageCounts, KindRecallCounts), String>
where
    C1: TokenClassifier + ?Sized,
    C2: TokenClassifier + ?Sized,
{
    let doc = load_segmented(record, canonical_cache)?;
    let filter = filter_sentences(&doc, entity_model, chunking).map_err(|e| e.to_string())?;
    let events =
        detect_events(&doc, &filter.retained, event_model, chunking).map_err(|e| e.to_string())?;

    let mut out = AnnotatedDocument::new(&record.id, &doc.title);
    out.tokens = doc.tokens.clone();
    out.entity_mentions = mentions_from_labels_direct(&filter.entity_labels);
    out.events = events;
    out.group = doc.group;

    let counts = StageCounts {
        documents: 1,
        sentences_before: filter.n_sentences,
        sentences_after: filter.retained.len(),
        events: out.events.len(),
    };
    let mut recall = KindRecallCounts::default();
    if let Some(gold) = &doc.gold {
        recall.observe(gold, &filter.entity_labels);
    }
    Ok((out, counts, recall))
}

/// Run the full pipeline over a manifest, resuming from the checkpoint when
/// one exists. Idempotent under resume: interrupted plus resumed runs write
/// byte-identical output to a single uninterrupted run.
pub fn run_corpus_pipeline<C1, C2>(
    manifest_path: &Path,
    entity_model: &C1,
    event_model: &C2,
    options: &PipelineOptions,
) -> Result<PipelineRun, PipelineError>
where
    C1: TokenClassifier + Sync + ?Sized,
    C2: TokenClassifier + Sync + ?Sized,
{
    let records = read_manifest(manifest_path)?;
    let entries = read_checkpoint(&options.checkpoint_path)?;

    // completed entries must be a prefix of the manifest
    for (entry, record) in entries.iter().zip(&records) {
        if entry.doc_id() != record.id {
            return Err(PipelineError::RebuildRequired {
                detail: format!(
                    "checkpoint document '{}' does not match manifest document '{}'",
                    entry.doc_id(),
                    record.id
                ),
            });
        }
    }
    if entries.len() > records.len() {
        return Err(PipelineError::RebuildRequired {
            detail: "checkpoint lists more documents than the manifest".to_string(),
        });
    }

    // trim the output to the last consistent offset
    let resume_offset = entries.last().map(|e| e.offset()).unwrap_or(0);
    let current_len = std::fs::metadata(&options.out_path).map(|m| m.len()).unwrap_or(0);
    if resume_offset > current_len {
        return Err(PipelineError::RebuildRequired {
            detail: format!(
                "checkpoint offset {resume_offset} exceeds output length {current_len}"
            ),
        });
    }
    let out_file = OpenOptions::new()
        .create(true)
        .write(true)
        .open(&options.out_path)
        .map_err(|e| PipelineError::Io {
            path: options.out_path.display().to_string(),
            source: e,
        })?;
    out_file
        .set_len(resume_offset)
        .map_err(|e| PipelineError::Io {
            path: options.out_path.display().to_string(),
            source: e,
        })?;
    let mut out = OpenOptions::new()
        .append(true)
        .open(&options.out_path)
        .map_err(|e| PipelineError::Io {
            path: options.out_path.display().to_string(),
            source: e,
        })?;
    let mut offset = resume_offset;
    let mut ckpt = CheckpointWriter::append_to(&options.checkpoint_path)?;

    // fold completed entries back into the report
    let mut report = RunReport {
        splitter_version: SPLITTER_VERSION.to_string(),
        entity_model: entity_model.describe(),
        event_model: event_model.describe(),
        ..Default::default()
    };
    let mut recall_counts = KindRecallCounts::default();
    for entry in &entries {
        match entry {
            CheckpointEntry::Done {
                sentences_before,
                sentences_after,
                events,
                group,
                ..
            } => {
                let counts = StageCounts {
                    documents: 1,
                    sentences_before: *sentences_before,
                    sentences_after: *sentences_after,
                    events: *events,
                };
                report.totals.add(&counts);
                report.per_group.entry(group.clone()).or_default().add(&counts);
            }
            CheckpointEntry::Quarantined { doc_id, reason, .. } => {
                report.quarantined.push((doc_id.clone(), reason.clone()));
            }
        }
    }

    // preload canonical corpora referenced by pending records
    let pending = &records[entries.len()..];
    let mut canonical_cache: HashMap<PathBuf, HashMap<String, AnnotatedDocument>> = HashMap::new();
    for r in pending {
        if let Some(path) = &r.canonical_path {
            if !canonical_cache.contains_key(path) {
                let corpus = canonical::read_corpus(path).map_err(|e| PipelineError::Manifest(
                    format!("canonical source {}: {e}", path.display()),
                ))?;
                let by_id = corpus
                    .documents
                    .into_iter()
                    .map(|d| (d.doc_id.clone(), d))
                    .collect();
                canonical_cache.insert(path.clone(), by_id);
            }
        }
    }

    let budget = options.max_docs.unwrap_or(usize::MAX);
    let parallel = options.workers > 1 && entity_model.reentrant() && event_model.reentrant();
    let mut processed = 0usize;

    let mut queue = pending.iter().take(budget).peekable();
    while queue.peek().is_some() {
        let batch: Vec<&ManifestRecord> = queue.by_ref().take(options.workers.max(1) * 4).collect();
        let results: Vec<DocResult> = if parallel {
            batch
                .par_iter()
                .map(|record| DocResult {
                    record: (*record).clone(),
                    outcome: process_document(
                        record,
                        entity_model,
                        event_model,
                        &options.chunking,
                        &canonical_cache,
                    ),
                })
                .collect()
        } else {
            batch
                .iter()
                .map(|record| DocResult {
                    record: (*record).clone(),
                    outcome: process_document(
                        record,
                        entity_model,
                        event_model,
                        &options.chunking,
                        &canonical_cache,
                    ),
                })
                .collect()
        };

        for result in results {
            match result.outcome {
                Ok((doc, counts, recall)) => {
                    let line = canonical::document_to_line(&doc);
                    out.write_all(line.as_bytes())
                        .and_then(|_| out.write_all(b"\n"))
                        .and_then(|_| out.flush())
                        .map_err(|e| PipelineError::Io {
                            path: options.out_path.display().to_string(),
                            source: e,
                        })?;
                    offset += line.len() as u64 + 1;

                    let group = doc.group.map(|g| g.code().to_string()).unwrap_or("-".into());
                    ckpt.record(&CheckpointEntry::Done {
                        doc_id: doc.doc_id.clone(),
                        offset,
                        sentences_before: counts.sentences_before,
                        sentences_after: counts.sentences_after,
                        events: counts.events,
                        group: group.clone(),
                    })?;
                    report.totals.add(&counts);
                    report.per_group.entry(group).or_default().add(&counts);
                    recall_counts.direct_total += recall.direct_total;
                    recall_counts.direct_hit += recall.direct_hit;
                    recall_counts.indirect_total += recall.indirect_total;
                    recall_counts.indirect_hit += recall.indirect_hit;
                }
                Err(message) => {
                    if options.strict {
                        return Err(PipelineError::Document {
                            doc_id: result.record.id.clone(),
                            message,
                        });
                    }
                    log::warn!("quarantined '{}': {message}", result.record.id);
                    ckpt.record(&CheckpointEntry::Quarantined {
                        doc_id: result.record.id.clone(),
                        offset,
                        reason: message.clone(),
                    })?;
                    report.quarantined.push((result.record.id.clone(), message));
                }
            }
            processed += 1;
        }
    }

    report.mention_recall_by_kind = recall_counts.into_map();
    Ok(PipelineRun {
        input_manifest: records.iter().map(|r| r.id.clone()).collect(),
        completed: entries.len() + processed,
        pending: records.len() - entries.len() - processed,
        outputs_path: options.out_path.clone(),
        report,
    })
}
