//! Train/evaluate orchestration: chunk, fit, predict, join, score, and
//! record provenance of what went into the run.

use serde::{Deserialize, Serialize};

use super::chunk::{chunk_document, chunk_tokens, join_windows};
use super::classifier::{predict_labels, Task, TokenClassifier, TokenSequence, TrainConfig};
use super::eval::{evaluate_f1, EvalScores};
use super::TaggerError;
use crate::labels::to_token_labels;
use crate::model::Corpus;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub task: Task,
    pub train: EvalScores,
    pub dev: EvalScores,
    pub test: EvalScores,
    pub n_runs: usize,
    /// (split, micro F1) triples per run, in train/dev/test order.
    pub run_scores: Vec<(String, f64)>,
    /// Names and document ids of the training material.
    pub composition: Vec<String>,
    pub seed: u64,
    pub classifier: String,
}

impl EvalReport {
    pub fn f_train(&self) -> f64 {
        self.train.micro.f1
    }

    pub fn f_dev(&self) -> f64 {
        self.dev.micro.f1
    }

    pub fn f_test(&self) -> f64 {
        self.test.micro.f1
    }

    /// The (train, dev, test) triple used in significance testing.
    pub fn triple(&self) -> [f64; 3] {
        [self.f_train(), self.f_dev(), self.f_test()]
    }
}

/// Predict a whole corpus split and score it against gold labels.
pub fn score_split<C: TokenClassifier + ?Sized>(
    classifier: &C,
    corpus: &Corpus,
    config: &TrainConfig,
) -> Result<EvalScores, TaggerError> {
    let mut gold = Vec::with_capacity(corpus.documents.len());
    let mut predictions = Vec::with_capacity(corpus.documents.len());
    for doc in &corpus.documents {
        let tokens: Vec<String> = doc.tokens.iter().map(|t| t.text.clone()).collect();
        let windows = chunk_tokens(&doc.doc_id, &tokens, &config.chunking);
        let labels = predict_labels(classifier, &windows)?;
        let joined: Vec<(TokenSequence, Vec<String>)> =
            windows.into_iter().zip(labels).collect();
        predictions.push(join_windows(&joined, doc.tokens.len())?);
        gold.push(to_token_labels(doc, config.task.layer()));
    }
    evaluate_f1(&gold, &predictions, config.task)
}

/// One full experiment: train on `training`, evaluate on all three splits.
/// Development and test material is expected to come from the target
/// corpus; the report records the training composition for provenance.
pub fn run_experiment<C: TokenClassifier + ?Sized>(
    training: &Corpus,
    dev: &Corpus,
    test: &Corpus,
    config: &TrainConfig,
    classifier: &mut C,
) -> Result<EvalReport, TaggerError> {
    let mut data = Vec::new();
    for doc in &training.documents {
        data.extend(chunk_document(doc, &config.chunking, config.task.layer()));
    }
    classifier
        .train(&data, config)
        .map_err(|e| TaggerError::ClassifierFailure {
            context: format!(
                "training on '{}' ({} docs, task {}, {} epochs, seed {})",
                training.name,
                training.n_documents(),
                config.task.name(),
                config.epochs,
                config.seed
            ),
            message: e.to_string(),
        })?;

    let train_scores = score_split(classifier, training, config)?;
    let dev_scores = score_split(classifier, dev, config)?;
    let test_scores = score_split(classifier, test, config)?;

    let composition = training
        .documents
        .iter()
        .map(|d| d.doc_id.clone())
        .collect();
    let run_scores = vec![
        ("train".to_string(), train_scores.micro.f1),
        ("dev".to_string(), dev_scores.micro.f1),
        ("test".to_string(), test_scores.micro.f1),
    ];

    Ok(EvalReport {
        task: config.task,
        train: train_scores,
        dev: dev_scores,
        test: test_scores,
        n_runs: 1,
        run_scores,
        composition,
        seed: config.seed,
        classifier: classifier.describe(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AnnotatedDocument, EventMention, Provenance, Token};
    use crate::tagger::mock::MemorizingClassifier;

    fn corpus(name: &str, docs: usize) -> Corpus {
        let mut c = Corpus::new(name, Provenance::Synthetic);
        for d in 0..docs {
            let mut doc = AnnotatedDocument::new(format!("{name}{d}"), "X");
            for i in 0..10 {
                doc.tokens.push(Token::new(i, format!("w{i}"), 0));
            }
            doc.events.push(EventMention::factual(d % 10));
            c.documents.push(doc);
        }
        c
    }

    #[test]
    fn memorizing_oracle_scores_one_on_train() {
        let train = corpus("train", 4);
        let mut clf = MemorizingClassifier::gold_replay();
        let report = run_experiment(
            &train,
            &train,
            &train,
            &TrainConfig::new(Task::Event, 1, 0),
            &mut clf,
        )
        .unwrap();
        assert_eq!(report.f_train(), 1.0);
        assert_eq!(report.f_test(), 1.0);
        assert_eq!(report.composition.len(), 4);
    }

    #[test]
    fn unseen_split_scores_zero_with_gold_replay() {
        let train = corpus("train", 3);
        let other = corpus("other", 3);
        let mut clf = MemorizingClassifier::gold_replay();
        let report = run_experiment(
            &train,
            &other,
            &other,
            &TrainConfig::new(Task::Event, 1, 0),
            &mut clf,
        )
        .unwrap();
        assert_eq!(report.f_train(), 1.0);
        assert_eq!(report.f_test(), 0.0);
    }
}
