//! Deterministic train/dev/test splits by document or by sentence.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::TaggerError;
use crate::model::{Corpus, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SplitUnit {
    Documents,
    Sentences,
}

/// Sentence-unit splits draw from event-bearing sentences by default, the
/// annotated portion of the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SplitPool {
    All,
    EventBearing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub unit: SplitUnit,
    pub train: usize,
    pub dev: usize,
    pub test: usize,
    pub pool: SplitPool,
}

impl SplitSpec {
    /// Entity-task split: 5 training, 5 development, 10 test documents.
    pub fn entity_documents() -> Self {
        SplitSpec {
            unit: SplitUnit::Documents,
            train: 5,
            dev: 5,
            test: 10,
            pool: SplitPool::All,
        }
    }

    /// Event-task split: the annotated sentences divided into three near
    /// equal sets of 564 / 563 / 564.
    pub fn event_sentences() -> Self {
        SplitSpec {
            unit: SplitUnit::Sentences,
            train: 564,
            dev: 563,
            test: 564,
            pool: SplitPool::EventBearing,
        }
    }

    pub fn total(&self) -> usize {
        self.train + self.dev + self.test
    }
}

#[derive(Debug, Clone)]
pub struct Splits {
    pub train: Corpus,
    pub dev: Corpus,
    pub test: Corpus,
}

/// Split a corpus into disjoint train/dev/test sets; membership is fully
/// determined by the seed.
pub fn build_splits(corpus: &Corpus, spec: &SplitSpec, seed: u64) -> Result<Splits, TaggerError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subcorpus = |suffix: &str| {
        Corpus::new(
            format!("{}-{suffix}", corpus.name),
            Provenance::from_name(&corpus.name),
        )
    };
    let (mut train, mut dev, mut test) =
        (subcorpus("train"), subcorpus("dev"), subcorpus("test"));

    match spec.unit {
        SplitUnit::Documents => {
            let mut order: Vec<usize> = (0..corpus.documents.len()).collect();
            if order.len() < spec.total() {
                return Err(TaggerError::InsufficientData {
                    needed: spec.total(),
                    available: order.len(),
                    unit: "document",
                });
            }
            order.shuffle(&mut rng);
            let mut take = |n: usize, bucket: &mut Corpus, order: &mut Vec<usize>| {
                let mut ids: Vec<usize> = order.drain(..n).collect();
                ids.sort_unstable();
                for i in ids {
                    bucket.documents.push(corpus.documents[i].clone());
                }
            };
            take(spec.train, &mut train, &mut order);
            take(spec.dev, &mut dev, &mut order);
            take(spec.test, &mut test, &mut order);
        }
        SplitUnit::Sentences => {
            let mut pool: Vec<(usize, usize)> = Vec::new();
            for (di, doc) in corpus.documents.iter().enumerate() {
                match spec.pool {
                    SplitPool::All => pool.extend((0..doc.n_sentences()).map(|s| (di, s))),
                    SplitPool::EventBearing => {
                        pool.extend(doc.event_sentence_indices().into_iter().map(|s| (di, s)))
                    }
                }
            }
            if pool.len() < spec.total() {
                return Err(TaggerError::InsufficientData {
                    needed: spec.total(),
                    available: pool.len(),
                    unit: "sentence",
                });
            }
            pool.shuffle(&mut rng);
            let mut take = |n: usize, bucket: &mut Corpus, pool: &mut Vec<(usize, usize)>| {
                let mut units: Vec<(usize, usize)> = pool.drain(..n).collect();
                units.sort_unstable();
                for (di, s) in units {
                    bucket.documents.push(corpus.documents[di].extract_sentence(s));
                }
            };
            take(spec.train, &mut train, &mut pool);
            take(spec.dev, &mut dev, &mut pool);
            take(spec.test, &mut test, &mut pool);
        }
    }

    Ok(Splits { train, dev, test })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AnnotatedDocument, EventMention, Token};

    fn corpus(docs: usize, sents: usize) -> Corpus {
        let mut c = Corpus::new("t", Provenance::Synthetic);
        for d in 0..docs {
            let mut doc = AnnotatedDocument::new(format!("d{d}"), "X");
            for s in 0..sents {
                for k in 0..4 {
                    let i = doc.tokens.len();
                    doc.tokens.push(Token::new(i, format!("w{d}_{s}_{k}"), s));
                }
                doc.events.push(EventMention::factual(s * 4 + 1));
            }
            c.documents.push(doc);
        }
        c
    }

    #[test]
    fn document_split_sizes_are_exact() {
        let c = corpus(20, 3);
        let s = build_splits(&c, &SplitSpec::entity_documents(), 13).unwrap();
        assert_eq!(
            (s.train.n_documents(), s.dev.n_documents(), s.test.n_documents()),
            (5, 5, 10)
        );
        // disjoint
        let mut all: Vec<String> = s
            .train
            .documents
            .iter()
            .chain(&s.dev.documents)
            .chain(&s.test.documents)
            .map(|d| d.doc_id.clone())
            .collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 20);
    }

    #[test]
    fn same_seed_reproduces_membership() {
        let c = corpus(25, 2);
        let a = build_splits(&c, &SplitSpec::entity_documents(), 7).unwrap();
        let b = build_splits(&c, &SplitSpec::entity_documents(), 7).unwrap();
        let ids = |x: &Corpus| x.documents.iter().map(|d| d.doc_id.clone()).collect::<Vec<_>>();
        assert_eq!(ids(&a.train), ids(&b.train));
        assert_eq!(ids(&a.test), ids(&b.test));
        let other = build_splits(&c, &SplitSpec::entity_documents(), 8).unwrap();
        assert_ne!(ids(&a.train), ids(&other.train));
    }

    #[test]
    fn insufficient_documents_is_an_error() {
        let c = corpus(10, 2);
        assert!(matches!(
            build_splits(&c, &SplitSpec::entity_documents(), 1),
            Err(TaggerError::InsufficientData { .. })
        ));
    }

    #[test]
    fn sentence_split_draws_event_bearing_units() {
        let c = corpus(4, 20); // 80 event sentences
        let spec = SplitSpec {
            unit: SplitUnit::Sentences,
            train: 30,
            dev: 20,
            test: 30,
            pool: SplitPool::EventBearing,
        };
        let s = build_splits(&c, &spec, 3).unwrap();
        assert_eq!(s.train.n_documents(), 30);
        assert!(s.train.documents.iter().all(|d| !d.events.is_empty()));
    }
}
