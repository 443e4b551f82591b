//! Closed set of copular/light verbs eligible as LINK sources.
//!
//! Annotation guidelines treat this as a fixed word list rather than a
//! grammatical test, so it lives in a configuration file. The built-in
//! default is embedded from `data/light_verbs.txt`.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use crate::CoreError;

const BUILTIN: &str = include_str!("../data/light_verbs.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeSet<String>,
    /// Where the entries came from, recorded in provenance output.
    pub source: String,
}

impl Lexicon {
    /// The default list shipped with the toolkit.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN, "builtin")
    }

    pub fn from_file(path: &Path) -> Result<Self, CoreError> {
        let text = fs::read_to_string(path).map_err(|e| CoreError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Ok(Self::parse(&text, &path.display().to_string()))
    }

    fn parse(text: &str, source: &str) -> Self {
        let entries = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_lowercase())
            .collect();
        Lexicon {
            entries,
            source: source.to_string(),
        }
    }

    pub fn from_words<I: IntoIterator<Item = S>, S: Into<String>>(words: I) -> Self {
        Lexicon {
            entries: words.into_iter().map(|w| w.into().to_lowercase()).collect(),
            source: "inline".to_string(),
        }
    }

    /// Membership test on lowercased surface form or lemma.
    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(&word.to_lowercase())
    }

    /// True if either the token's surface form or its lemma is listed.
    pub fn matches_token(&self, token: &crate::model::Token) -> bool {
        self.contains(&token.text)
            || token.lemma.as_deref().map_or(false, |l| self.contains(l))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }
}

impl Default for Lexicon {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_contains_copulas() {
        let lex = Lexicon::builtin();
        for w in ["was", "is", "became", "be", "made"] {
            assert!(lex.contains(w), "missing {w}");
        }
        assert!(!lex.contains("arrived"));
    }

    #[test]
    fn parse_skips_comments_and_case() {
        let lex = Lexicon::parse("# hdr\nWas\n\nseems\n", "test");
        assert_eq!(lex.len(), 2);
        assert!(lex.contains("WAS"));
    }
}
