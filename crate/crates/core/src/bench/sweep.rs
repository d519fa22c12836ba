//! Threshold sweeps over the forest classifier. Probabilities are computed
//! once per document and re-thresholded, so a sweep costs one inference pass
//! regardless of grid size.

use std::sync::Arc;

use crate::charboundary::{boundaries_from_hits, CharSegmenter, ForestModel};
use crate::datasets::AnnotatedExample;
use crate::punkt::LegalKnowledgeBase;
use crate::text::BoundarySet;

use super::metrics::{evaluate_predictions, BenchError, EvalResult};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurve {
    pub points: Vec<(f64, EvalResult)>,
}

/// Predicted boundary sets per example at one threshold.
fn predictions_at<'a>(
    examples: &'a [AnnotatedExample],
    probs: &[Vec<(usize, f64)>],
    threshold: f64,
) -> Vec<(&'a AnnotatedExample, BoundarySet)> {
    examples
        .iter()
        .zip(probs)
        .map(|(ex, doc_probs)| {
            let hits = doc_probs.iter().filter(|&&(_, p)| p >= threshold).map(|&(pos, _)| pos);
            (ex, boundaries_from_hits(&ex.doc, hits))
        })
        .collect()
}

pub fn threshold_sweep(
    model: &ForestModel,
    kb: Arc<LegalKnowledgeBase>,
    examples: &[AnnotatedExample],
    thresholds: &[f64],
) -> Result<SweepCurve, BenchError> {
    if thresholds.is_empty() {
        return Err(BenchError::EmptyThresholds);
    }
    for w in thresholds.windows(2) {
        if w[1] <= w[0] {
            return Err(BenchError::BadThreshold(w[1]));
        }
    }
    for &t in thresholds {
        if !(0.0..=1.0).contains(&t) {
            return Err(BenchError::BadThreshold(t));
        }
    }
    if examples.is_empty() {
        return Err(BenchError::EmptyDataset);
    }

    let seg = CharSegmenter::new(model.clone(), kb);
    let probs: Vec<Vec<(usize, f64)>> =
        examples.iter().map(|ex| seg.candidate_probs(&ex.doc)).collect();
    for doc_probs in &probs {
        for &(_, p) in doc_probs {
            debug_assert!((0.0..=1.0).contains(&p));
        }
    }

    let mut points = Vec::with_capacity(thresholds.len());
    for &t in thresholds {
        let preds = predictions_at(examples, &probs, t);
        points.push((t, evaluate_predictions(&preds)?));
    }
    Ok(SweepCurve { points })
}

/// Boundary sets per threshold, for chain-property checks.
pub fn sweep_boundary_sets(
    model: &ForestModel,
    kb: Arc<LegalKnowledgeBase>,
    examples: &[AnnotatedExample],
    thresholds: &[f64],
) -> Vec<Vec<BoundarySet>> {
    let seg = CharSegmenter::new(model.clone(), kb);
    let probs: Vec<Vec<(usize, f64)>> =
        examples.iter().map(|ex| seg.candidate_probs(&ex.doc)).collect();
    thresholds
        .iter()
        .map(|&t| predictions_at(examples, &probs, t).into_iter().map(|(_, b)| b).collect())
        .collect()
}
