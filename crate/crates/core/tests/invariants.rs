//! Randomized invariant checks that cut across modules.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use sbd_core::bench::{evaluate, evaluate_predictions};
use sbd_core::charboundary::{
    deserialize_model, partition_document, serialize_model, train_charboundary, CharSegmenter,
    ModelConfig,
};
use sbd_core::datasets::{generate_synthetic, SynthConfig};
use sbd_core::punkt::LegalKnowledgeBase;
use sbd_core::text::{char_class, snap_boundary, BoundarySet, Segmenter, TextDocument};

fn random_text(rng: &mut ChaCha8Rng) -> String {
    const PIECES: &[&str] =
        &["word", "No", "12", "§", "end.", "why?", "\u{201C}q\u{201D}", "(x)", "\n", "  ", "é"];
    (0..rng.random_range(1..60))
        .map(|_| PIECES[rng.random_range(0..PIECES.len())])
        .collect::<Vec<_>>()
        .join(" ")
}

#[test]
fn snap_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..2000 {
        let doc = TextDocument::new("t", random_text(&mut rng));
        for b in 1..=doc.char_len() {
            let snapped = snap_boundary(&doc, b).unwrap();
            assert_eq!(snap_boundary(&doc, snapped).unwrap(), snapped);
            assert!(snapped >= b && snapped <= doc.char_len());
        }
    }
}

#[test]
fn char_class_is_total_over_code_points() {
    // Every scalar value classifies without panicking; spot-check a dense
    // low range plus a sparse walk through the astral planes.
    for cp in 0u32..=0xFFF {
        if let Some(c) = char::from_u32(cp) {
            let _ = char_class(c);
        }
    }
    for cp in (0x1000u32..=0x10FFFF).step_by(257) {
        if let Some(c) = char::from_u32(cp) {
            let _ = char_class(c);
        }
    }
}

#[test]
fn boundary_set_construction_sorts_and_dedups() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2000 {
        let len = rng.random_range(1..200);
        let offsets: Vec<usize> =
            (0..rng.random_range(0..20)).map(|_| rng.random_range(1..=len)).collect();
        let set = BoundarySet::for_text(offsets, len).unwrap();
        let got = set.offsets();
        assert!(got.windows(2).all(|w| w[0] < w[1]), "not strictly increasing: {got:?}");
        assert_eq!(*got.last().unwrap(), len, "final boundary missing");
    }
}

#[test]
fn partition_chunks_tile_the_document() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let doc = TextDocument::new("t", random_text(&mut rng));
        let window = rng.random_range(1..10);
        let max_chunk = rng.random_range(2 * window + 1..400);
        let Ok(chunks) = partition_document(&doc, max_chunk, window) else {
            continue;
        };
        let mut cursor = 0;
        let mut rebuilt = String::new();
        for (span, chunk) in &chunks {
            assert_eq!(span.start, cursor, "chunks must tile without gaps");
            assert_eq!(chunk.text(), doc.slice(span.start, span.end));
            assert!(span.end - span.start <= max_chunk);
            cursor = span.end;
            rebuilt.push_str(chunk.text());
        }
        assert_eq!(cursor, doc.char_len());
        assert_eq!(rebuilt, doc.text());
    }
}

#[test]
fn model_serialization_round_trips_trained_forest() {
    let corpus = generate_synthetic(&SynthConfig { n_docs: 60, seed: 4, ..Default::default() });
    let pairs: Vec<_> = corpus.iter().map(|e| (e.doc.clone(), e.gold.clone())).collect();
    let config = ModelConfig { n_trees: 8, ..ModelConfig::small() };
    let model = train_charboundary(&pairs, &config, LegalKnowledgeBase::builtin()).unwrap();

    let text = serialize_model(&model);
    let back = deserialize_model(&text).unwrap();
    assert_eq!(serialize_model(&back), text, "round trip must be byte-identical");

    // The deserialized model is behaviorally identical, not just textually.
    let a = CharSegmenter::with_builtin_kb(model);
    let b = CharSegmenter::with_builtin_kb(back);
    for ex in &corpus {
        assert_eq!(a.segment(&ex.doc), b.segment(&ex.doc));
    }
}

#[test]
fn micro_average_equals_pooled_counts() {
    let corpus = generate_synthetic(&SynthConfig { n_docs: 40, seed: 5, ..Default::default() });
    let pairs: Vec<_> = corpus.iter().map(|e| (e.doc.clone(), e.gold.clone())).collect();
    let config = ModelConfig { n_trees: 8, ..ModelConfig::small() };
    let model = train_charboundary(&pairs, &config, LegalKnowledgeBase::builtin()).unwrap();
    let seg = CharSegmenter::with_builtin_kb(model);

    let whole = evaluate(&seg, &corpus).unwrap();
    let (a, b) = corpus.split_at(corpus.len() / 2);
    let ra = evaluate(&seg, a).unwrap();
    let rb = evaluate(&seg, b).unwrap();
    assert_eq!(whole.tp, ra.tp + rb.tp);
    assert_eq!(whole.fp, ra.fp + rb.fp);
    assert_eq!(whole.fn_, ra.fn_ + rb.fn_);

    // evaluate_predictions with precomputed boundary sets agrees as well.
    let preds: Vec<_> = corpus.iter().map(|ex| (ex, seg.segment(&ex.doc))).collect();
    let rp = evaluate_predictions(&preds).unwrap();
    assert_eq!((rp.tp, rp.fp, rp.fn_), (whole.tp, whole.fp, whole.fn_));
}
