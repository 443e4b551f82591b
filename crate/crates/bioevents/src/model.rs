//! Canonical data model for entity-linked biographical event annotation.
//!
//! A document is a flat token list with sentence indices plus four annotation
//! layers: target-entity mentions, single-token events, LINK relations
//! (copular/light verb pointing at its predicative event) and CONT_MOD
//! relations (modality marker pointing at an uncertain event). All types are
//! immutable after construction; building new documents is the only mutation
//! path, so values can be shared freely across worker threads.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One token of a document. Indices are dense: `tokens[i].index == i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub index: usize,
    pub text: String,
    pub sentence_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<String>,
}

impl Token {
    pub fn new(index: usize, text: impl Into<String>, sentence_index: usize) -> Self {
        Token {
            index,
            text: text.into(),
            sentence_index,
            lemma: None,
            pos: None,
        }
    }

    pub fn with_lemma(mut self, lemma: impl Into<String>) -> Self {
        self.lemma = Some(lemma.into());
        self
    }

    pub fn with_pos(mut self, pos: impl Into<String>) -> Self {
        self.pos = Some(pos.into());
        self
    }

    /// Lemma if present, else the lowercased surface form.
    pub fn lemma_or_surface(&self) -> String {
        match &self.lemma {
            Some(l) => l.to_lowercase(),
            None => self.text.to_lowercase(),
        }
    }
}

/// Inclusive token span `[start, end]`, serialized as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct TokenSpan {
    pub start: usize,
    pub end: usize,
}

impl TokenSpan {
    pub fn new(start: usize, end: usize) -> Self {
        TokenSpan { start, end }
    }

    pub fn single(index: usize) -> Self {
        TokenSpan {
            start: index,
            end: index,
        }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start) + 1
    }

    pub fn is_empty(&self) -> bool {
        false // inclusive spans always cover at least one token
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= self.start && index <= self.end
    }

    pub fn overlaps(&self, other: &TokenSpan) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

impl From<[usize; 2]> for TokenSpan {
    fn from(v: [usize; 2]) -> Self {
        TokenSpan {
            start: v[0],
            end: v[1],
        }
    }
}

impl From<TokenSpan> for [usize; 2] {
    fn from(s: TokenSpan) -> Self {
        [s.start, s.end]
    }
}

/// Whether a mention names the target entity directly (name, pronoun) or via
/// an associated object (e.g. a book title standing in for its author).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MentionKind {
    Direct,
    Indirect,
}

/// A mention of the document's target entity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityMention {
    pub token_span: TokenSpan,
    pub kind: MentionKind,
}

impl EntityMention {
    pub fn direct(start: usize, end: usize) -> Self {
        EntityMention {
            token_span: TokenSpan::new(start, end),
            kind: MentionKind::Direct,
        }
    }

    pub fn indirect(start: usize, end: usize) -> Self {
        EntityMention {
            token_span: TokenSpan::new(start, end),
            kind: MentionKind::Indirect,
        }
    }
}

/// Contextual-modality status of an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Uncertainty {
    Factual,
    Intention,
    NotHappened,
    Epistemic,
}

impl Uncertainty {
    pub fn as_str(&self) -> &'static str {
        match self {
            Uncertainty::Factual => "FACTUAL",
            Uncertainty::Intention => "INTENTION",
            Uncertainty::NotHappened => "NOT_HAPPENED",
            Uncertainty::Epistemic => "EPISTEMIC",
        }
    }
}

/// Modality value carried by a CONT_MOD relation. `FACTUAL` is the default
/// state of an event and is never a relation value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModalityValue {
    Intention,
    NotHappened,
    Epistemic,
}

impl ModalityValue {
    pub fn as_uncertainty(&self) -> Uncertainty {
        match self {
            ModalityValue::Intention => Uncertainty::Intention,
            ModalityValue::NotHappened => Uncertainty::NotHappened,
            ModalityValue::Epistemic => Uncertainty::Epistemic,
        }
    }

    pub fn as_str(&self) -> &'static str {
        self.as_uncertainty().as_str()
    }
}

/// A single-token event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventMention {
    pub token_index: usize,
    pub uncertainty: Uncertainty,
}

impl EventMention {
    pub fn factual(token_index: usize) -> Self {
        EventMention {
            token_index,
            uncertainty: Uncertainty::Factual,
        }
    }
}

/// Copular/light verb whose eventive content lives in its complement: the
/// verb token keeps no event tag of its own and points at the predicative
/// event token instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRelation {
    pub source_token: usize,
    pub target_token: usize,
}

/// Modality marker token pointing at the event whose reality it hedges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContModRelation {
    pub source_token: usize,
    pub target_token: usize,
    pub value: ModalityValue,
}

/// Intersectional group of a biography subject: origin crossed with gender.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Origin {
    Western,
    Transnational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Gender {
    Man,
    Woman,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupLabel {
    pub origin: Origin,
    pub gender: Gender,
}

impl GroupLabel {
    pub const WESTERN_MEN: GroupLabel = GroupLabel {
        origin: Origin::Western,
        gender: Gender::Man,
    };
    pub const WESTERN_WOMEN: GroupLabel = GroupLabel {
        origin: Origin::Western,
        gender: Gender::Woman,
    };
    pub const TRANSNATIONAL_MEN: GroupLabel = GroupLabel {
        origin: Origin::Transnational,
        gender: Gender::Man,
    };
    pub const TRANSNATIONAL_WOMEN: GroupLabel = GroupLabel {
        origin: Origin::Transnational,
        gender: Gender::Woman,
    };

    pub const ALL: [GroupLabel; 4] = [
        Self::WESTERN_MEN,
        Self::WESTERN_WOMEN,
        Self::TRANSNATIONAL_MEN,
        Self::TRANSNATIONAL_WOMEN,
    ];

    /// Two-letter code used on the command line: WM, WW, TM, TW.
    pub fn code(&self) -> &'static str {
        match (self.origin, self.gender) {
            (Origin::Western, Gender::Man) => "WM",
            (Origin::Western, Gender::Woman) => "WW",
            (Origin::Transnational, Gender::Man) => "TM",
            (Origin::Transnational, Gender::Woman) => "TW",
        }
    }

    pub fn from_code(code: &str) -> Option<GroupLabel> {
        match code.to_ascii_uppercase().as_str() {
            "WM" => Some(Self::WESTERN_MEN),
            "WW" => Some(Self::WESTERN_WOMEN),
            "TM" => Some(Self::TRANSNATIONAL_MEN),
            "TW" => Some(Self::TRANSNATIONAL_WOMEN),
            _ => None,
        }
    }

    /// Filesystem-friendly name, e.g. `transnational_women`.
    pub fn slug(&self) -> &'static str {
        match (self.origin, self.gender) {
            (Origin::Western, Gender::Man) => "western_men",
            (Origin::Western, Gender::Woman) => "western_women",
            (Origin::Transnational, Gender::Man) => "transnational_men",
            (Origin::Transnational, Gender::Woman) => "transnational_women",
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// One annotated biography.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedDocument {
    pub doc_id: String,
    pub target_entity_name: String,
    pub tokens: Vec<Token>,
    #[serde(default)]
    pub entity_mentions: Vec<EntityMention>,
    #[serde(default)]
    pub events: Vec<EventMention>,
    #[serde(default)]
    pub links: Vec<LinkRelation>,
    #[serde(default)]
    pub cont_mods: Vec<ContModRelation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupLabel>,
}

impl AnnotatedDocument {
    pub fn new(doc_id: impl Into<String>, target_entity_name: impl Into<String>) -> Self {
        AnnotatedDocument {
            doc_id: doc_id.into(),
            target_entity_name: target_entity_name.into(),
            tokens: Vec::new(),
            entity_mentions: Vec::new(),
            events: Vec::new(),
            links: Vec::new(),
            cont_mods: Vec::new(),
            group: None,
        }
    }

    pub fn n_tokens(&self) -> usize {
        self.tokens.len()
    }

    /// Number of sentences; tokens carry non-decreasing sentence indices so
    /// this is one past the last token's sentence index.
    pub fn n_sentences(&self) -> usize {
        self.tokens.last().map(|t| t.sentence_index + 1).unwrap_or(0)
    }

    /// Token index range of sentence `s` (empty range if out of bounds).
    pub fn sentence_token_range(&self, s: usize) -> std::ops::Range<usize> {
        let start = self.tokens.partition_point(|t| t.sentence_index < s);
        let end = self.tokens.partition_point(|t| t.sentence_index <= s);
        start..end
    }

    /// Sentence indices that contain at least one event token.
    pub fn event_sentence_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .events
            .iter()
            .filter_map(|e| self.tokens.get(e.token_index).map(|t| t.sentence_index))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Sentence indices containing at least one mention of the given kind
    /// (or any kind when `kind` is `None`).
    pub fn mention_sentence_indices(&self, kind: Option<MentionKind>) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .entity_mentions
            .iter()
            .filter(|m| kind.map_or(true, |k| m.kind == k))
            .filter_map(|m| self.tokens.get(m.token_span.start).map(|t| t.sentence_index))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn event_at(&self, token_index: usize) -> Option<&EventMention> {
        self.events.iter().find(|e| e.token_index == token_index)
    }

    /// Extract sentence `s` as a standalone single-sentence document.
    /// Annotations are re-indexed; relations with an endpoint outside the
    /// sentence are dropped.
    pub fn extract_sentence(&self, s: usize) -> AnnotatedDocument {
        let range = self.sentence_token_range(s);
        let offset = range.start;
        let in_range = |i: usize| range.contains(&i);

        let tokens = self.tokens[range.clone()]
            .iter()
            .enumerate()
            .map(|(i, t)| Token {
                index: i,
                text: t.text.clone(),
                sentence_index: 0,
                lemma: t.lemma.clone(),
                pos: t.pos.clone(),
            })
            .collect();
        let entity_mentions = self
            .entity_mentions
            .iter()
            .filter(|m| in_range(m.token_span.start) && in_range(m.token_span.end))
            .map(|m| EntityMention {
                token_span: TokenSpan::new(m.token_span.start - offset, m.token_span.end - offset),
                kind: m.kind,
            })
            .collect();
        let events = self
            .events
            .iter()
            .filter(|e| in_range(e.token_index))
            .map(|e| EventMention {
                token_index: e.token_index - offset,
                uncertainty: e.uncertainty,
            })
            .collect();
        let links = self
            .links
            .iter()
            .filter(|l| in_range(l.source_token) && in_range(l.target_token))
            .map(|l| LinkRelation {
                source_token: l.source_token - offset,
                target_token: l.target_token - offset,
            })
            .collect();
        let cont_mods = self
            .cont_mods
            .iter()
            .filter(|c| in_range(c.source_token) && in_range(c.target_token))
            .map(|c| ContModRelation {
                source_token: c.source_token - offset,
                target_token: c.target_token - offset,
                value: c.value,
            })
            .collect();

        AnnotatedDocument {
            doc_id: format!("{}#s{}", self.doc_id, s),
            target_entity_name: self.target_entity_name.clone(),
            tokens,
            entity_mentions,
            events,
            links,
            cont_mods,
            group: self.group,
        }
    }
}

/// Which published resource a corpus derives from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    Wikibio,
    Gum,
    Ontonotes,
    Timebank,
    Litbank,
    Newsreader,
    Synthetic,
}

impl Provenance {
    /// Guess provenance from a corpus name; unknown names are `Synthetic`.
    pub fn from_name(name: &str) -> Provenance {
        match name.to_ascii_lowercase().as_str() {
            s if s.contains("wikibio") => Provenance::Wikibio,
            s if s.contains("gum") => Provenance::Gum,
            s if s.contains("onto") => Provenance::Ontonotes,
            s if s.contains("timebank") => Provenance::Timebank,
            s if s.contains("litbank") => Provenance::Litbank,
            s if s.contains("newsreader") => Provenance::Newsreader,
            _ => Provenance::Synthetic,
        }
    }
}

/// A named collection of annotated documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub name: String,
    pub provenance: Provenance,
    pub documents: Vec<AnnotatedDocument>,
}

impl Corpus {
    pub fn new(name: impl Into<String>, provenance: Provenance) -> Self {
        Corpus {
            name: name.into(),
            provenance,
            documents: Vec::new(),
        }
    }

    pub fn n_documents(&self) -> usize {
        self.documents.len()
    }

    pub fn n_sentences(&self) -> usize {
        self.documents.iter().map(|d| d.n_sentences()).sum()
    }

    pub fn n_tokens(&self) -> usize {
        self.documents.iter().map(|d| d.n_tokens()).sum()
    }

    pub fn n_events(&self) -> usize {
        self.documents.iter().map(|d| d.events.len()).sum()
    }

    pub fn n_entity_mentions(&self) -> usize {
        self.documents.iter().map(|d| d.entity_mentions.len()).sum()
    }

    pub fn n_links(&self) -> usize {
        self.documents.iter().map(|d| d.links.len()).sum()
    }

    pub fn n_cont_mods(&self) -> usize {
        self.documents.iter().map(|d| d.cont_mods.len()).sum()
    }

    /// Sentences containing at least one event, summed over documents.
    pub fn n_event_sentences(&self) -> usize {
        self.documents
            .iter()
            .map(|d| d.event_sentence_indices().len())
            .sum()
    }

    pub fn document(&self, doc_id: &str) -> Option<&AnnotatedDocument> {
        self.documents.iter().find(|d| d.doc_id == doc_id)
    }

    /// Documents bucketed by group label; ungrouped documents are skipped.
    pub fn by_group(&self) -> BTreeMap<GroupLabel, Vec<&AnnotatedDocument>> {
        let mut out: BTreeMap<GroupLabel, Vec<&AnnotatedDocument>> = BTreeMap::new();
        for doc in &self.documents {
            if let Some(g) = doc.group {
                out.entry(g).or_default().push(doc);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_span_serializes_as_pair() {
        let m = EntityMention::direct(3, 4);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"token_span":[3,4],"kind":"DIRECT"}"#);
        let back: EntityMention = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn uppercase_enum_encoding() {
        assert_eq!(
            serde_json::to_string(&Uncertainty::NotHappened).unwrap(),
            "\"NOT_HAPPENED\""
        );
        assert_eq!(
            serde_json::to_string(&Provenance::Wikibio).unwrap(),
            "\"WIKIBIO\""
        );
        assert_eq!(
            serde_json::to_string(&GroupLabel::TRANSNATIONAL_WOMEN).unwrap(),
            r#"{"origin":"TRANSNATIONAL","gender":"WOMAN"}"#
        );
    }

    #[test]
    fn sentence_ranges_and_extraction() {
        let mut doc = AnnotatedDocument::new("d", "X Y");
        for (i, s) in [(0, 0), (1, 0), (2, 0), (3, 1), (4, 1)] {
            doc.tokens.push(Token::new(i, format!("t{i}"), s));
        }
        doc.entity_mentions.push(EntityMention::direct(3, 4));
        doc.events.push(EventMention::factual(4));
        doc.links.push(LinkRelation {
            source_token: 0,
            target_token: 4,
        });

        assert_eq!(doc.n_sentences(), 2);
        assert_eq!(doc.sentence_token_range(0), 0..3);
        assert_eq!(doc.sentence_token_range(1), 3..5);

        let s1 = doc.extract_sentence(1);
        assert_eq!(s1.tokens.len(), 2);
        assert_eq!(s1.entity_mentions[0].token_span, TokenSpan::new(0, 1));
        assert_eq!(s1.events[0].token_index, 1);
        // cross-sentence link dropped
        assert!(s1.links.is_empty());
    }

    #[test]
    fn group_codes_round_trip() {
        for g in GroupLabel::ALL {
            assert_eq!(GroupLabel::from_code(g.code()), Some(g));
        }
        assert_eq!(GroupLabel::from_code("xx"), None);
    }
}
