//! Deterministic training-set composition.
//!
//! A spec lists components (a corpus plus an exact unit count or an
//! equal-share marker) and a hard cap on total units. Equal shares are
//! resolved by largest remainder so totals hit the budget exactly; ties go
//! to the lexicographically smaller corpus name. Sampling is without
//! replacement and fully determined by the seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::AdapterError;
use crate::model::{Corpus, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitCount {
    Exact(usize),
    EqualShare,
    /// Everything the corpus has, up to whatever budget the cap leaves.
    AllAvailable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub corpus: String,
    pub count: UnitCount,
}

impl Component {
    pub fn exact(corpus: &str, n: usize) -> Self {
        Component {
            corpus: corpus.to_string(),
            count: UnitCount::Exact(n),
        }
    }

    pub fn share(corpus: &str) -> Self {
        Component {
            corpus: corpus.to_string(),
            count: UnitCount::EqualShare,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleUnit {
    Documents,
    Sentences,
}

/// Which sentences are eligible when sampling by sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentencePool {
    All,
    EventBearing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingSetSpec {
    pub name: String,
    pub components: Vec<Component>,
    pub cap: usize,
    pub unit: SampleUnit,
    pub sentence_pool: SentencePool,
}

impl TrainingSetSpec {
    pub fn new(name: &str, cap: usize, unit: SampleUnit) -> Self {
        TrainingSetSpec {
            name: name.to_string(),
            components: Vec::new(),
            cap,
            unit,
            sentence_pool: SentencePool::EventBearing,
        }
    }

    pub fn with(mut self, component: Component) -> Self {
        self.components.push(component);
        self
    }

    /// Equal-size sentence samples from all five external corpora.
    pub fn misc_01(cap: usize) -> Self {
        Self::new("misc_01", cap, SampleUnit::Sentences)
            .with(Component::share("gum"))
            .with(Component::share("litbank"))
            .with(Component::share("newsreader"))
            .with(Component::share("ontonotes"))
            .with(Component::share("timebank"))
    }

    /// misc_01 minus the most divergent corpus.
    pub fn misc_02(cap: usize) -> Self {
        Self::new("misc_02", cap, SampleUnit::Sentences)
            .with(Component::share("gum"))
            .with(Component::share("litbank"))
            .with(Component::share("ontonotes"))
            .with(Component::share("timebank"))
    }

    /// The two most similar corpora only.
    pub fn misc_03(cap: usize) -> Self {
        Self::new("misc_03", cap, SampleUnit::Sentences)
            .with(Component::share("litbank"))
            .with(Component::share("ontonotes"))
    }

    /// Append an exact-size slice (typically the target-corpus training
    /// split); equal shares shrink so the cap still holds.
    pub fn plus_slice(mut self, corpus: &str, n: usize) -> Self {
        self.name = format!("{}+{}", self.name, corpus);
        self.components.push(Component::exact(corpus, n));
        self
    }

    /// Resolved per-component counts, in component order. `AllAvailable`
    /// components need the pool sizes of their corpora.
    pub fn resolve_counts(
        &self,
        pools: Option<&std::collections::BTreeMap<String, usize>>,
    ) -> Result<Vec<(String, usize)>, AdapterError> {
        let fixed: usize = self
            .components
            .iter()
            .map(|c| match c.count {
                UnitCount::Exact(n) => n,
                _ => 0,
            })
            .sum();
        if fixed > self.cap {
            return Err(AdapterError::SpecInvalid {
                message: format!("exact counts total {fixed}, above the cap {}", self.cap),
            });
        }

        // AllAvailable components consume budget in component order
        let mut remaining = self.cap - fixed;
        let mut all_counts: std::collections::BTreeMap<&str, usize> = Default::default();
        for c in &self.components {
            if c.count == UnitCount::AllAvailable {
                let pool = pools
                    .and_then(|p| p.get(&c.corpus).copied())
                    .ok_or_else(|| AdapterError::SpecInvalid {
                        message: format!(
                            "component '{}' takes all available units; pool size unknown",
                            c.corpus
                        ),
                    })?;
                let take = pool.min(remaining);
                remaining -= take;
                all_counts.insert(c.corpus.as_str(), take);
            }
        }

        let shares: Vec<&Component> = self
            .components
            .iter()
            .filter(|c| c.count == UnitCount::EqualShare)
            .collect();
        let mut share_counts: std::collections::BTreeMap<&str, usize> = Default::default();
        if !shares.is_empty() {
            let budget = remaining;
            let base = budget / shares.len();
            let remainder = budget - base * shares.len();
            // equal quotas: largest-remainder degenerates to name order
            let mut order: Vec<&str> = shares.iter().map(|c| c.corpus.as_str()).collect();
            order.sort_unstable();
            for (i, name) in order.iter().enumerate() {
                share_counts.insert(name, base + usize::from(i < remainder));
            }
        }

        let mut resolved: Vec<(String, usize)> = Vec::new();
        for c in &self.components {
            let n = match c.count {
                UnitCount::Exact(n) => n,
                UnitCount::EqualShare => share_counts[c.corpus.as_str()],
                UnitCount::AllAvailable => all_counts[c.corpus.as_str()],
            };
            resolved.push((c.corpus.clone(), n));
        }
        Ok(resolved)
    }
}

/// Compose a training corpus by seeded sampling without replacement.
/// Single-threaded on purpose: output order and membership depend only on
/// `(spec, corpora, seed)`.
pub fn compose_training_set(
    spec: &TrainingSetSpec,
    corpora: &[&Corpus],
    seed: u64,
) -> Result<Corpus, AdapterError> {
    let mut pools: std::collections::BTreeMap<String, usize> = Default::default();
    for c in &spec.components {
        if let Some(corpus) = corpora.iter().find(|x| x.name.eq_ignore_ascii_case(&c.corpus)) {
            let size = match spec.unit {
                SampleUnit::Documents => corpus.documents.len(),
                SampleUnit::Sentences => match spec.sentence_pool {
                    SentencePool::All => corpus.n_sentences(),
                    SentencePool::EventBearing => corpus.n_event_sentences(),
                },
            };
            pools.insert(c.corpus.clone(), size);
        }
    }
    let counts = spec.resolve_counts(Some(&pools))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Corpus::new(&spec.name, Provenance::Synthetic);

    for (name, want) in counts {
        let corpus = corpora
            .iter()
            .find(|c| c.name.eq_ignore_ascii_case(&name))
            .ok_or_else(|| AdapterError::UnknownCorpus { name: name.clone() })?;

        match spec.unit {
            SampleUnit::Documents => {
                let available = corpus.documents.len();
                if available < want {
                    return Err(AdapterError::InsufficientData {
                        corpus: name,
                        requested: want,
                        available,
                        unit: "document",
                    });
                }
                let mut picked = rand::seq::index::sample(&mut rng, available, want).into_vec();
                picked.sort_unstable();
                for i in picked {
                    let mut doc = corpus.documents[i].clone();
                    doc.doc_id = format!("{}/{}", corpus.name, doc.doc_id);
                    out.documents.push(doc);
                }
            }
            SampleUnit::Sentences => {
                let mut pool: Vec<(usize, usize)> = Vec::new();
                for (di, doc) in corpus.documents.iter().enumerate() {
                    match spec.sentence_pool {
                        SentencePool::All => {
                            pool.extend((0..doc.n_sentences()).map(|s| (di, s)));
                        }
                        SentencePool::EventBearing => {
                            pool.extend(doc.event_sentence_indices().into_iter().map(|s| (di, s)));
                        }
                    }
                }
                if pool.len() < want {
                    return Err(AdapterError::InsufficientData {
                        corpus: name,
                        requested: want,
                        available: pool.len(),
                        unit: "sentence",
                    });
                }
                let mut picked = rand::seq::index::sample(&mut rng, pool.len(), want).into_vec();
                picked.sort_unstable();
                for i in picked {
                    let (di, s) = pool[i];
                    let mut sent = corpus.documents[di].extract_sentence(s);
                    sent.doc_id = format!("{}/{}", corpus.name, sent.doc_id);
                    out.documents.push(sent);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AnnotatedDocument, EventMention, Token};

    fn corpus(name: &str, docs: usize, sents_per_doc: usize) -> Corpus {
        let mut c = Corpus::new(name, Provenance::Synthetic);
        for d in 0..docs {
            let mut doc = AnnotatedDocument::new(format!("{name}_{d}"), "X");
            for s in 0..sents_per_doc {
                for k in 0..3 {
                    let i = doc.tokens.len();
                    doc.tokens.push(Token::new(i, format!("w{s}_{k}"), s));
                }
                // every sentence carries one event so pools are full
                doc.events.push(EventMention::factual(s * 3 + 1));
            }
            c.documents.push(doc);
        }
        c
    }

    #[test]
    fn misc_03_splits_the_cap_floor_ceil() {
        let spec = TrainingSetSpec::misc_03(5073);
        let counts = spec.resolve_counts(None).unwrap();
        // litbank < ontonotes lexicographically, so litbank takes the extra
        assert_eq!(counts[0], ("litbank".to_string(), 2537));
        assert_eq!(counts[1], ("ontonotes".to_string(), 2536));
    }

    #[test]
    fn misc_01_counts_sum_to_cap() {
        let counts = TrainingSetSpec::misc_01(5073).resolve_counts(None).unwrap();
        let total: usize = counts.iter().map(|(_, n)| n).sum();
        assert_eq!(total, 5073);
        // 5073 = 5*1014 + 3, extras to the first three names
        assert_eq!(counts.iter().find(|(n, _)| n == "gum").unwrap().1, 1015);
        assert_eq!(counts.iter().find(|(n, _)| n == "timebank").unwrap().1, 1014);
    }

    #[test]
    fn insufficient_documents_name_the_corpus() {
        let spec = TrainingSetSpec::new("t", 200, SampleUnit::Documents)
            .with(Component::exact("small", 100));
        let small = corpus("small", 99, 1);
        match compose_training_set(&spec, &[&small], 7) {
            Err(AdapterError::InsufficientData { corpus, requested, available, .. }) => {
                assert_eq!(corpus, "small");
                assert_eq!((requested, available), (100, 99));
            }
            other => panic!("expected InsufficientData, got {other:?}"),
        }
    }

    #[test]
    fn same_seed_same_membership() {
        let a = corpus("a", 4, 30);
        let b = corpus("b", 4, 30);
        let spec = TrainingSetSpec::new("t", 40, SampleUnit::Sentences)
            .with(Component::share("a"))
            .with(Component::share("b"));
        let one = compose_training_set(&spec, &[&a, &b], 99).unwrap();
        let two = compose_training_set(&spec, &[&a, &b], 99).unwrap();
        let ids = |c: &Corpus| c.documents.iter().map(|d| d.doc_id.clone()).collect::<Vec<_>>();
        assert_eq!(ids(&one), ids(&two));
        assert_eq!(one.documents.len(), 40);
        // no duplicate unit ids
        let mut sorted = ids(&one);
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 40);

        let three = compose_training_set(&spec, &[&a, &b], 100).unwrap();
        assert_ne!(ids(&one), ids(&three), "different seeds should differ");
    }

    #[test]
    fn output_never_exceeds_cap() {
        let a = corpus("a", 10, 50);
        let spec = TrainingSetSpec::new("t", 17, SampleUnit::Sentences).with(Component::share("a"));
        let out = compose_training_set(&spec, &[&a], 3).unwrap();
        assert!(out.documents.len() <= 17);
    }

    #[test]
    fn all_available_is_capped_by_budget() {
        let big = corpus("big", 3, 40); // 120 event sentences
        let spec = TrainingSetSpec::new("t", 50, SampleUnit::Sentences)
            .with(Component {
                corpus: "big".to_string(),
                count: UnitCount::AllAvailable,
            });
        let out = compose_training_set(&spec, &[&big], 1).unwrap();
        assert_eq!(out.documents.len(), 50);

        // with a roomy cap, takes everything
        let spec = TrainingSetSpec::new("t", 500, SampleUnit::Sentences).with(Component {
            corpus: "big".to_string(),
            count: UnitCount::AllAvailable,
        });
        let out = compose_training_set(&spec, &[&big], 1).unwrap();
        assert_eq!(out.documents.len(), 120);
    }

    #[test]
    fn exact_counts_above_cap_rejected() {
        let spec = TrainingSetSpec::new("t", 10, SampleUnit::Sentences)
            .with(Component::exact("a", 11));
        assert!(matches!(
            spec.resolve_counts(None),
            Err(AdapterError::SpecInvalid { .. })
        ));
    }

    #[test]
    fn plus_slice_shrinks_shares() {
        let spec = TrainingSetSpec::misc_03(5073).plus_slice("wikibio", 564);
        let counts = spec.resolve_counts(None).unwrap();
        let total: usize = counts.iter().map(|(_, n)| n).sum();
        assert_eq!(total, 5073);
        assert_eq!(counts.iter().find(|(n, _)| n == "wikibio").unwrap().1, 564);
    }
}
