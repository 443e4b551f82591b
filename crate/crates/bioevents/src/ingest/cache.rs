//! On-disk text cache keyed by (person id, revision).
//!
//! Layout: one `<id>@<revision>.txt` file per fetched revision plus an
//! `<id>.rev` pointer to the cached revision. Writes go through a temp
//! file and rename, so concurrent readers never observe partial content.
//! Lookups by id alone serve the pointed-to revision without any network
//! traffic; the cache never revalidates on its own.

use std::fs;
use std::path::{Path, PathBuf};

use super::IngestError;

pub struct TextCache {
    dir: PathBuf,
}

fn safe_name(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

impl TextCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, IngestError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| IngestError::Io {
            path: dir.display().to_string(),
            source: e,
        })?;
        Ok(TextCache { dir })
    }

    fn rev_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{}.rev", safe_name(id)))
    }

    fn text_path(&self, id: &str, revision: &str) -> PathBuf {
        self.dir
            .join(format!("{}@{}.txt", safe_name(id), safe_name(revision)))
    }

    fn write_atomic(&self, path: &Path, content: &str) -> Result<(), IngestError> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, content).map_err(|e| IngestError::Io {
            path: tmp.display().to_string(),
            source: e,
        })?;
        fs::rename(&tmp, path).map_err(|e| IngestError::Io {
            path: path.display().to_string(),
            source: e,
        })
    }

    pub fn store(&self, id: &str, revision: &str, text: &str) -> Result<(), IngestError> {
        self.write_atomic(&self.text_path(id, revision), text)?;
        self.write_atomic(&self.rev_path(id), revision)
    }

    /// The cached (revision, text) for an id, if any.
    pub fn lookup(&self, id: &str) -> Option<(String, String)> {
        let revision = fs::read_to_string(self.rev_path(id)).ok()?;
        let text = fs::read_to_string(self.text_path(id, &revision)).ok()?;
        Some((revision, text))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TextCache::open(dir.path()).unwrap();
        cache.store("Q42", "123", "a biography").unwrap();
        assert_eq!(
            cache.lookup("Q42"),
            Some(("123".to_string(), "a biography".to_string()))
        );
        assert_eq!(cache.lookup("Q43"), None);
    }

    #[test]
    fn ids_with_separators_are_sanitized() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TextCache::open(dir.path()).unwrap();
        cache.store("a/b c", "r/1", "text").unwrap();
        assert_eq!(cache.lookup("a/b c").unwrap().1, "text");
    }
}
