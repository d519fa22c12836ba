//! Forest-backed segmentation, training-set construction from gold
//! boundaries, and safe-point document partitioning.

use std::sync::Arc;

use thiserror::Error;

use crate::punkt::LegalKnowledgeBase;
use crate::text::{
    char_class, snap_boundary, BoundarySet, CharClass, Segmenter, SentenceSpan, TextDocument,
};

use super::features::{candidate_positions, extract_features, FeatureLayout};
use super::forest::{train_forest, ForestError, ForestModel, LabeledCandidate, ModelConfig};

#[derive(Debug, Error, PartialEq)]
pub enum PartitionError {
    #[error("max_chunk {max_chunk} is below the minimum usable size {min}")]
    ChunkTooSmall { max_chunk: usize, min: usize },
    #[error("no split point with a terminator-free neighborhood of width {window} exists")]
    NoSafeSplit { window: usize },
}

/// Character-window classifier over terminator candidates.
pub struct CharSegmenter {
    model: ForestModel,
    kb: Arc<LegalKnowledgeBase>,
}

impl CharSegmenter {
    pub fn new(model: ForestModel, kb: Arc<LegalKnowledgeBase>) -> Self {
        CharSegmenter { model, kb }
    }

    pub fn with_builtin_kb(model: ForestModel) -> Self {
        CharSegmenter { model, kb: LegalKnowledgeBase::builtin_arc() }
    }

    pub fn model(&self) -> &ForestModel {
        &self.model
    }

    /// Ensemble probability for every candidate position, in text order.
    pub fn candidate_probs(&self, doc: &TextDocument) -> Vec<(usize, f64)> {
        self.probs_for(doc, candidate_positions(doc))
    }

    fn probs_for(&self, doc: &TextDocument, positions: Vec<usize>) -> Vec<(usize, f64)> {
        positions
            .into_iter()
            .map(|pos| {
                let fv = extract_features(doc, pos, &self.kb, &self.model.layout)
                    .expect("candidate positions are terminators");
                let p = self.model.prob(&fv).expect("layout matches model");
                (pos, p)
            })
            .collect()
    }

    /// Segmentation at an explicit probability cutoff.
    pub fn segment_with_threshold(&self, doc: &TextDocument, threshold: f64) -> BoundarySet {
        boundaries_from_hits(
            doc,
            self.candidate_probs(doc)
                .into_iter()
                .filter(|&(_, p)| p >= threshold)
                .map(|(pos, _)| pos),
        )
    }

    /// Segments chunk by chunk and merges the results by offset. Each chunk's
    /// candidates are classified independently (and could be processed
    /// concurrently); features read from the shared document, so contextual
    /// scans near chunk edges see exactly what the sequential pass sees and
    /// the merged result equals whole-document segmentation. Falls back to
    /// the sequential pass when no safe split exists.
    pub fn segment_partitioned(&self, doc: &TextDocument, max_chunk: usize) -> BoundarySet {
        let chunks = match partition_document(doc, max_chunk, self.model.config.window) {
            Ok(chunks) => chunks,
            Err(_) => return self.segment(doc),
        };
        let threshold = self.model.config.threshold;
        let all_candidates = candidate_positions(doc);
        let mut hits: Vec<usize> = Vec::new();
        for (span, _) in &chunks {
            let lo = all_candidates.partition_point(|&p| p < span.start);
            let hi = all_candidates.partition_point(|&p| p < span.end);
            for (pos, p) in self.probs_for(doc, all_candidates[lo..hi].to_vec()) {
                if p >= threshold {
                    hits.push(pos);
                }
            }
        }
        boundaries_from_hits(doc, hits.into_iter())
    }
}

impl Segmenter for CharSegmenter {
    fn segment(&self, doc: &TextDocument) -> BoundarySet {
        self.segment_with_threshold(doc, self.model.config.threshold)
    }
}

/// Converts accepted candidate positions into a boundary set, extending each
/// boundary past a trailing quote/bracket run and closing with the text end.
pub fn boundaries_from_hits(doc: &TextDocument, hits: impl Iterator<Item = usize>) -> BoundarySet {
    let len = doc.char_len();
    if len == 0 {
        return BoundarySet::empty();
    }
    let mut offsets: Vec<usize> = Vec::new();
    for pos in hits {
        let mut b = pos + 1;
        while b < len {
            let c = doc.char_at(b).unwrap();
            if matches!(char_class(c), CharClass::Quote | CharClass::CloseBracket) {
                b += 1;
            } else {
                break;
            }
        }
        while b < len && doc.char_at(b).unwrap().is_whitespace() {
            b += 1;
        }
        if b < len && offsets.last() != Some(&b) {
            offsets.push(b);
        }
    }
    offsets.push(len);
    offsets.dedup();
    BoundarySet::from_sorted_unchecked(offsets)
}

/// Labels every candidate in `doc` against gold boundaries: positive when
/// the boundary the candidate would produce snaps onto a gold boundary.
pub fn label_candidates(
    doc: &TextDocument,
    gold: &BoundarySet,
    kb: &LegalKnowledgeBase,
    layout: &FeatureLayout,
) -> Vec<LabeledCandidate> {
    let len = doc.char_len();
    let gold_snapped: std::collections::BTreeSet<usize> = gold
        .offsets()
        .iter()
        .map(|&b| snap_boundary(doc, b).expect("gold boundaries are valid"))
        .collect();
    candidate_positions(doc)
        .into_iter()
        .map(|pos| {
            let mut b = pos + 1;
            while b < len {
                let c = doc.char_at(b).unwrap();
                if matches!(char_class(c), CharClass::Quote | CharClass::CloseBracket) {
                    b += 1;
                } else {
                    break;
                }
            }
            let label =
                gold_snapped.contains(&snap_boundary(doc, b).expect("candidate offset in range"));
            let features = extract_features(doc, pos, kb, layout)
                .expect("candidate positions are terminators");
            LabeledCandidate { features, label }
        })
        .collect()
}

/// Trains a forest from annotated documents.
pub fn train_charboundary(
    examples: &[(TextDocument, BoundarySet)],
    config: &ModelConfig,
    kb: &LegalKnowledgeBase,
) -> Result<ForestModel, ForestError> {
    let layout = FeatureLayout::for_window(config.window);
    let mut data = Vec::new();
    for (doc, gold) in examples {
        data.extend(label_candidates(doc, gold, kb, &layout));
    }
    train_forest(&data, config)
}

/// Splits a document into chunks of at most `max_chunk` chars. Split points
/// are safe points: positions whose neighborhood of width `window` contains
/// no terminator, so no candidate's window slots straddle a chunk edge.
/// Chunks cover the document exactly and in order.
pub fn partition_document(
    doc: &TextDocument,
    max_chunk: usize,
    window: usize,
) -> Result<Vec<(SentenceSpan, TextDocument)>, PartitionError> {
    let min = 2 * window + 1;
    if max_chunk < min {
        return Err(PartitionError::ChunkTooSmall { max_chunk, min });
    }
    let len = doc.char_len();
    let chunk = |span: SentenceSpan| {
        let text = doc.slice(span.start, span.end);
        (span, TextDocument::new(doc.id(), text))
    };
    if len <= max_chunk {
        return Ok(vec![chunk(SentenceSpan { start: 0, end: len })]);
    }
    let terms = candidate_positions(doc);
    let safe = |p: usize| -> bool {
        let lo = p.saturating_sub(window);
        let hi = p + window;
        // First terminator at or after lo; safe when it lies at or beyond hi.
        let i = terms.partition_point(|&t| t < lo);
        terms.get(i).map(|&t| t >= hi).unwrap_or(true)
    };

    let mut spans = Vec::new();
    let mut start = 0usize;
    while len - start > max_chunk {
        let target = start + max_chunk;
        let mut cut = None;
        let mut p = target;
        while p > start + 1 {
            if safe(p) {
                cut = Some(p);
                break;
            }
            p -= 1;
        }
        match cut {
            Some(p) => {
                spans.push(SentenceSpan { start, end: p });
                start = p;
            }
            None => return Err(PartitionError::NoSafeSplit { window }),
        }
    }
    spans.push(SentenceSpan { start, end: len });
    Ok(spans.into_iter().map(chunk).collect())
}
