//! Corpus-level statistics: sizes, target-entity density and the ranked
//! event-lemma frequency list.
//!
//! Mention ratios count direct mentions only: indirect mentions (a work
//! standing in for its author) have no counterpart in coreference-based
//! corpora, so cross-corpus density comparisons are made on the directly
//! coreferent mentions.

use serde::{Deserialize, Serialize};

use crate::model::{Corpus, MentionKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusProfile {
    pub corpus: String,
    pub n_documents: usize,
    pub n_sentences: usize,
    pub n_tokens: usize,
    pub n_events: usize,
    pub n_entity_mentions: usize,
    pub n_links: usize,
    pub n_cont_mods: usize,
    pub n_event_sentences: usize,
    /// Direct-mention tokens over all tokens.
    pub mention_token_ratio: f64,
    /// Sentences with a direct mention over all sentences.
    pub mention_sentence_ratio: f64,
    pub avg_doc_length_tokens: f64,
    /// (lemma, relative frequency) over event tokens, descending; ties
    /// break lexicographically.
    pub top_event_lemmas: Vec<(String, f64)>,
    /// True when any event token lacked a lemma and the lowercased surface
    /// form was used instead.
    pub surface_based: bool,
}

/// Compute the profile of a corpus. `top_n` bounds the lemma list.
pub fn corpus_profile(corpus: &Corpus, top_n: usize) -> CorpusProfile {
    let n_documents = corpus.n_documents();
    let n_sentences = corpus.n_sentences();
    let n_tokens = corpus.n_tokens();

    let mut mention_tokens = 0usize;
    let mut mention_sentences = 0usize;
    let mut surface_based = false;
    let mut lemma_counts: std::collections::BTreeMap<String, usize> = Default::default();
    let mut n_events = 0usize;

    for doc in &corpus.documents {
        mention_tokens += doc
            .entity_mentions
            .iter()
            .filter(|m| m.kind == MentionKind::Direct)
            .map(|m| m.token_span.len())
            .sum::<usize>();
        mention_sentences += doc.mention_sentence_indices(Some(MentionKind::Direct)).len();
        for e in &doc.events {
            n_events += 1;
            if let Some(tok) = doc.tokens.get(e.token_index) {
                if tok.lemma.is_none() {
                    surface_based = true;
                }
                *lemma_counts.entry(tok.lemma_or_surface()).or_default() += 1;
            }
        }
    }

    let mut ranked: Vec<(String, usize)> = lemma_counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let total_events = n_events.max(1) as f64;
    let top_event_lemmas = ranked
        .into_iter()
        .take(top_n)
        .map(|(l, c)| (l, c as f64 / total_events))
        .collect();

    CorpusProfile {
        corpus: corpus.name.clone(),
        n_documents,
        n_sentences,
        n_tokens,
        n_events,
        n_entity_mentions: corpus.n_entity_mentions(),
        n_links: corpus.n_links(),
        n_cont_mods: corpus.n_cont_mods(),
        n_event_sentences: corpus.n_event_sentences(),
        mention_token_ratio: if n_tokens == 0 {
            0.0
        } else {
            mention_tokens as f64 / n_tokens as f64
        },
        mention_sentence_ratio: if n_sentences == 0 {
            0.0
        } else {
            mention_sentences as f64 / n_sentences as f64
        },
        avg_doc_length_tokens: if n_documents == 0 {
            0.0
        } else {
            n_tokens as f64 / n_documents as f64
        },
        top_event_lemmas,
        surface_based,
    }
}
