//! Canonical on-disk corpus format: UTF-8 line-delimited records, one
//! document object per line. Field layout follows `AnnotatedDocument`
//! exactly; token spans are `[start, end]` pairs and enums are uppercase
//! strings. Serialization is deterministic, so saving the same corpus twice
//! yields byte-identical files.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::model::{AnnotatedDocument, Corpus, Provenance};
use crate::CoreError;

/// Serialize one document to its canonical single-line form.
pub fn document_to_line(doc: &AnnotatedDocument) -> String {
    serde_json::to_string(doc).expect("document serialization cannot fail")
}

/// Parse one canonical line.
pub fn document_from_line(line: &str, path: &str, lineno: usize) -> Result<AnnotatedDocument, CoreError> {
    serde_json::from_str(line).map_err(|e| CoreError::Parse {
        path: path.to_string(),
        line: lineno,
        message: e.to_string(),
    })
}

/// Read a canonical corpus from a `.jsonl` file or from a directory of
/// `.jsonl` files (read in name order). The corpus name is the file or
/// directory stem.
pub fn read_corpus(path: &Path) -> Result<Corpus, CoreError> {
    let mut files: Vec<std::path::PathBuf> = Vec::new();
    if path.is_dir() {
        for entry in fs::read_dir(path).map_err(|e| CoreError::Io {
            path: path.display().to_string(),
            source: e,
        })? {
            let entry = entry.map_err(|e| CoreError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            let p = entry.path();
            if p.extension().map_or(false, |e| e == "jsonl") {
                files.push(p);
            }
        }
        files.sort();
    } else {
        files.push(path.to_path_buf());
    }

    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string());
    let mut corpus = Corpus::new(&name, Provenance::from_name(&name));

    for file in files {
        let display = file.display().to_string();
        let handle = fs::File::open(&file).map_err(|e| CoreError::Io {
            path: display.clone(),
            source: e,
        })?;
        for (i, line) in BufReader::new(handle).lines().enumerate() {
            let line = line.map_err(|e| CoreError::Io {
                path: display.clone(),
                source: e,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            corpus
                .documents
                .push(document_from_line(&line, &display, i + 1)?);
        }
    }
    Ok(corpus)
}

/// Write a corpus canonically. A path ending in `.jsonl` becomes a single
/// file; any other path is treated as a directory receiving `<name>.jsonl`.
pub fn write_corpus(corpus: &Corpus, path: &Path) -> Result<std::path::PathBuf, CoreError> {
    let file_path = if path.extension().map_or(false, |e| e == "jsonl") {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent).map_err(|e| CoreError::Io {
                    path: parent.display().to_string(),
                    source: e,
                })?;
            }
        }
        path.to_path_buf()
    } else {
        fs::create_dir_all(path).map_err(|e| CoreError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        path.join(format!("{}.jsonl", corpus.name))
    };

    let mut out = fs::File::create(&file_path).map_err(|e| CoreError::Io {
        path: file_path.display().to_string(),
        source: e,
    })?;
    for doc in &corpus.documents {
        writeln!(out, "{}", document_to_line(doc)).map_err(|e| CoreError::Io {
            path: file_path.display().to_string(),
            source: e,
        })?;
    }
    Ok(file_path)
}

/// In-memory canonical rendering of a whole corpus. Used for digest
/// comparisons and resume tests.
pub fn corpus_to_string(corpus: &Corpus) -> String {
    let mut s = String::new();
    for doc in &corpus.documents {
        s.push_str(&document_to_line(doc));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;

    fn tiny_corpus() -> Corpus {
        let mut doc = AnnotatedDocument::new("a", "Ada");
        doc.tokens.push(Token::new(0, "Ada", 0).with_pos("PROPN"));
        doc.tokens.push(Token::new(1, "wrote", 0).with_lemma("write"));
        doc.entity_mentions.push(EntityMention::direct(0, 0));
        doc.events.push(EventMention::factual(1));
        let mut corpus = Corpus::new("tiny", Provenance::Synthetic);
        corpus.documents.push(doc);
        corpus
    }

    #[test]
    fn round_trip_is_exact() {
        let corpus = tiny_corpus();
        let dir = tempfile::tempdir().unwrap();
        let file = write_corpus(&corpus, dir.path()).unwrap();
        let back = read_corpus(&file).unwrap();
        assert_eq!(back.documents, corpus.documents);
    }

    #[test]
    fn serialization_is_deterministic() {
        let corpus = tiny_corpus();
        assert_eq!(corpus_to_string(&corpus), corpus_to_string(&corpus.clone()));
    }

    #[test]
    fn parse_error_carries_location() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("bad.jsonl");
        std::fs::write(&file, "{\"doc_id\": \"x\"\n").unwrap();
        match read_corpus(&file) {
            Err(CoreError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_directory_loads_empty_corpus() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = read_corpus(dir.path()).unwrap();
        assert_eq!(corpus.n_documents(), 0);
    }
}
