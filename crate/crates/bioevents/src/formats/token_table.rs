//! Per-token tab-separated export for sequence-labeling tooling.
//!
//! Columns: `doc_id  sent_idx  tok_idx  text  entity_bio  event  link_src_of
//! contmod_value`. `event` holds the uncertainty value of an event token;
//! `link_src_of` holds the target token index when the token sources a LINK;
//! `contmod_value` holds `VALUE:target` when the token sources a CONT_MOD.
//! Empty cells are `_`. This view is write-only; the canonical format is
//! the round-trip representation.

use std::io::Write;
use std::path::Path;

use crate::labels::{to_token_labels, LabelLayer};
use crate::model::Corpus;
use crate::CoreError;

pub const HEADER: &str = "doc_id\tsent_idx\ttok_idx\ttext\tentity_bio\tevent\tlink_src_of\tcontmod_value";

pub fn write_token_table(corpus: &Corpus, path: &Path) -> Result<(), CoreError> {
    let mut out = std::fs::File::create(path).map_err(|e| CoreError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let io_err = |e: std::io::Error| CoreError::Io {
        path: path.display().to_string(),
        source: e,
    };

    writeln!(out, "{HEADER}").map_err(io_err)?;
    for doc in &corpus.documents {
        let entity = to_token_labels(doc, LabelLayer::Entity);
        for tok in &doc.tokens {
            let event = doc
                .event_at(tok.index)
                .map(|e| e.uncertainty.as_str().to_string())
                .unwrap_or_else(|| "_".to_string());
            let link = doc
                .links
                .iter()
                .find(|l| l.source_token == tok.index)
                .map(|l| l.target_token.to_string())
                .unwrap_or_else(|| "_".to_string());
            let contmod = doc
                .cont_mods
                .iter()
                .find(|c| c.source_token == tok.index)
                .map(|c| format!("{}:{}", c.value.as_str(), c.target_token))
                .unwrap_or_else(|| "_".to_string());
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                doc.doc_id,
                tok.sentence_index,
                tok.index,
                tok.text,
                entity[tok.index],
                event,
                link,
                contmod
            )
            .map_err(io_err)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;

    #[test]
    fn table_rows_cover_every_token() {
        let mut doc = AnnotatedDocument::new("d0", "Ada");
        doc.tokens.push(Token::new(0, "Ada", 0));
        doc.tokens.push(Token::new(1, "was", 0));
        doc.tokens.push(Token::new(2, "first", 0));
        doc.entity_mentions.push(EntityMention::direct(0, 0));
        doc.events.push(EventMention::factual(2));
        doc.links.push(LinkRelation {
            source_token: 1,
            target_token: 2,
        });
        let mut corpus = Corpus::new("t", Provenance::Synthetic);
        corpus.documents.push(doc);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.tsv");
        write_token_table(&corpus, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], HEADER);
        assert_eq!(lines[1], "d0\t0\t0\tAda\tB-ENT\t_\t_\t_");
        assert_eq!(lines[2], "d0\t0\t1\twas\tO\t_\t2\t_");
        assert_eq!(lines[3], "d0\t0\t2\tfirst\tO\tFACTUAL\t_\t_");
    }
}
