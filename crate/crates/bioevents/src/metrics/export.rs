//! CSV export of profiles and divergence matrices.

use std::path::Path;

use super::divergence::DivergenceMatrix;
use super::profile::CorpusProfile;
use super::MetricsError;

/// Matrix CSV: corpus names as both the header row and the first column.
pub fn write_matrix_csv(matrix: &DivergenceMatrix, path: &Path) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| MetricsError::Export(e.to_string()))?;
    let mut header = vec![String::new()];
    header.extend(matrix.names.iter().cloned());
    w.write_record(&header)
        .map_err(|e| MetricsError::Export(e.to_string()))?;
    for (i, name) in matrix.names.iter().enumerate() {
        let mut row = vec![name.clone()];
        row.extend(matrix.values[i].iter().map(|v| format!("{v:.6}")));
        w.write_record(&row)
            .map_err(|e| MetricsError::Export(e.to_string()))?;
    }
    w.flush().map_err(|e| MetricsError::Export(e.to_string()))?;
    Ok(())
}

pub fn write_profiles_csv(profiles: &[CorpusProfile], path: &Path) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| MetricsError::Export(e.to_string()))?;
    w.write_record([
        "corpus",
        "documents",
        "sentences",
        "tokens",
        "events",
        "entity_mentions",
        "links",
        "cont_mods",
        "event_sentences",
        "mention_token_ratio",
        "mention_sentence_ratio",
        "avg_doc_length_tokens",
        "surface_based",
        "top_event_lemmas",
    ])
    .map_err(|e| MetricsError::Export(e.to_string()))?;
    for p in profiles {
        let lemmas = p
            .top_event_lemmas
            .iter()
            .map(|(l, f)| format!("{l}:{f:.4}"))
            .collect::<Vec<_>>()
            .join(" ");
        w.write_record([
            p.corpus.clone(),
            p.n_documents.to_string(),
            p.n_sentences.to_string(),
            p.n_tokens.to_string(),
            p.n_events.to_string(),
            p.n_entity_mentions.to_string(),
            p.n_links.to_string(),
            p.n_cont_mods.to_string(),
            p.n_event_sentences.to_string(),
            format!("{:.6}", p.mention_token_ratio),
            format!("{:.6}", p.mention_sentence_ratio),
            format!("{:.2}", p.avg_doc_length_tokens),
            p.surface_based.to_string(),
            lemmas,
        ])
        .map_err(|e| MetricsError::Export(e.to_string()))?;
    }
    w.flush().map_err(|e| MetricsError::Export(e.to_string()))?;
    Ok(())
}
