//! Character-level boundary matching and micro-averaged evaluation.
//!
//! The correctness criterion is exact offset equality after snap
//! normalization; the end-of-text boundary every engine emits is excluded
//! from all counts.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::datasets::AnnotatedExample;
use crate::text::{snap_boundary, BoundarySet, Segmenter, TextDocument};

#[derive(Debug, Error, PartialEq)]
pub enum BenchError {
    #[error("boundary {offset} is invalid for text of length {len}")]
    InvalidBoundary { offset: usize, len: usize },
    #[error("dataset contains no examples")]
    EmptyDataset,
    #[error("no input texts")]
    EmptyInput,
    #[error("threshold list is empty")]
    EmptyThresholds,
    #[error("thresholds must be sorted and within [0, 1], got {0}")]
    BadThreshold(f64),
}

/// Counts for one document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

/// Micro-averaged result with per-example breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub per_example: Vec<(String, Counts)>,
}

fn ratio(num: usize, den: usize, fn_or_fp_absent: bool) -> f64 {
    if den == 0 {
        // Nothing predicted and nothing missed counts as perfect, matching
        // the one-sentence-document convention.
        if fn_or_fp_absent {
            1.0
        } else {
            0.0
        }
    } else {
        num as f64 / den as f64
    }
}

impl EvalResult {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize, per_example: Vec<(String, Counts)>) -> Self {
        let precision = ratio(tp, tp + fp, fn_ == 0);
        let recall = ratio(tp, tp + fn_, fp == 0);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        EvalResult { tp, fp, fn_, precision, recall, f1, per_example }
    }
}

/// Snap-then-exact matching, end-of-text boundary excluded.
pub fn match_boundaries(
    pred: &BoundarySet,
    gold: &BoundarySet,
    doc: &TextDocument,
) -> Result<Counts, BenchError> {
    let len = doc.char_len();
    let snap_set = |set: &BoundarySet| -> Result<BTreeSet<usize>, BenchError> {
        let mut out = BTreeSet::new();
        for &b in set.offsets() {
            let s = snap_boundary(doc, b)
                .map_err(|_| BenchError::InvalidBoundary { offset: b, len })?;
            if s != len {
                out.insert(s);
            }
        }
        Ok(out)
    };
    let p = snap_set(pred)?;
    let g = snap_set(gold)?;
    Ok(Counts {
        tp: p.intersection(&g).count(),
        fp: p.difference(&g).count(),
        fn_: g.difference(&p).count(),
    })
}

/// Runs a segmenter over a dataset and micro-averages the counts.
pub fn evaluate(
    segmenter: &dyn Segmenter,
    examples: &[AnnotatedExample],
) -> Result<EvalResult, BenchError> {
    if examples.is_empty() {
        return Err(BenchError::EmptyDataset);
    }
    let mut tp = 0;
    let mut fp = 0;
    let mut fn_ = 0;
    let mut per_example = Vec::with_capacity(examples.len());
    for ex in examples {
        let pred = segmenter.segment(&ex.doc);
        let c = match_boundaries(&pred, &ex.gold, &ex.doc)?;
        tp += c.tp;
        fp += c.fp;
        fn_ += c.fn_;
        per_example.push((ex.doc.id().to_string(), c));
    }
    Ok(EvalResult::from_counts(tp, fp, fn_, per_example))
}

/// Evaluates precomputed predictions; used when probabilities are computed
/// once and thresholded many times.
pub fn evaluate_predictions(
    predictions: &[(&AnnotatedExample, BoundarySet)],
) -> Result<EvalResult, BenchError> {
    if predictions.is_empty() {
        return Err(BenchError::EmptyDataset);
    }
    let mut tp = 0;
    let mut fp = 0;
    let mut fn_ = 0;
    let mut per_example = Vec::with_capacity(predictions.len());
    for (ex, pred) in predictions {
        let c = match_boundaries(pred, &ex.gold, &ex.doc)?;
        tp += c.tp;
        fp += c.fp;
        fn_ += c.fn_;
        per_example.push((ex.doc.id().to_string(), c));
    }
    Ok(EvalResult::from_counts(tp, fp, fn_, per_example))
}
