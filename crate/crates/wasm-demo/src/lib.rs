//! Browser bindings for the sentence boundary detection engines.
//!
//! The exported functions return JSON strings so the page needs no generated
//! TypeScript glue beyond the standard wasm-bindgen loader. The bundled
//! model in `assets/` was produced with:
//!
//! ```text
//! sbd synth --n-docs 200 --seed 42 --out-dir synth
//! sbd train-charboundary --dataset synth/corpus.sbd --preset small --seed 17 \
//!     --out assets/charboundary-small.json
//! ```

use std::sync::OnceLock;

use wasm_bindgen::prelude::*;

use sbd_core::charboundary::{deserialize_model, CharSegmenter, ForestModel};
use sbd_core::punkt::{PunktConfig, PunktParameters, PunktSegmenter};
use sbd_core::text::{spans_from_boundaries, BoundarySet, Segmenter, TextDocument};

const MODEL_JSON: &str = include_str!("../assets/charboundary-small.json");

fn model() -> &'static ForestModel {
    static MODEL: OnceLock<ForestModel> = OnceLock::new();
    MODEL.get_or_init(|| deserialize_model(MODEL_JSON).expect("bundled model is valid"))
}

fn render(doc: &TextDocument, boundaries: &BoundarySet) -> String {
    let spans = spans_from_boundaries(doc, boundaries).expect("engine spans are valid");
    let sentences: Vec<serde_json::Value> = spans
        .iter()
        .map(|s| {
            serde_json::json!({
                "start": s.start,
                "end": s.end,
                "text": doc.slice(s.start, s.end),
            })
        })
        .collect();
    serde_json::json!({
        "boundaries": boundaries.offsets(),
        "sentences": sentences,
    })
    .to_string()
}

/// Segments with the statistical tokenizer; `kb_enabled` toggles the legal
/// knowledge base so the page can show the before/after comparison.
#[wasm_bindgen]
pub fn segment_punkt(text: &str, kb_enabled: bool) -> String {
    let doc = TextDocument::new("demo", text);
    if doc.is_empty() {
        return render(&doc, &BoundarySet::empty());
    }
    let config = PunktConfig { legal_kb_enabled: kb_enabled, ..PunktConfig::default() };
    let seg = PunktSegmenter::with_builtin_kb(PunktParameters::default(), config);
    render(&doc, &seg.segment(&doc))
}

/// Segments with the bundled random-forest model at an adjustable threshold.
#[wasm_bindgen]
pub fn segment_charboundary(text: &str, threshold: f64) -> String {
    let doc = TextDocument::new("demo", text);
    if doc.is_empty() {
        return render(&doc, &BoundarySet::empty());
    }
    let seg = CharSegmenter::with_builtin_kb(model().clone());
    let t = threshold.clamp(0.0, 1.0);
    render(&doc, &seg.segment_with_threshold(&doc, t))
}

/// Ensemble probability for every terminator candidate, for visualizing how
/// the threshold slider moves the decision boundary.
#[wasm_bindgen]
pub fn candidate_probabilities(text: &str) -> String {
    let doc = TextDocument::new("demo", text);
    let probs: Vec<serde_json::Value> = CharSegmenter::with_builtin_kb(model().clone())
        .candidate_probs(&doc)
        .into_iter()
        .map(|(pos, p)| serde_json::json!({ "pos": pos, "prob": p }))
        .collect();
    serde_json::Value::Array(probs).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_model_loads() {
        assert_eq!(model().config.window, 5);
        assert_eq!(model().config.n_trees, 32);
    }

    #[test]
    fn punkt_keeps_section_reference_together() {
        let out = segment_punkt(
            "If the bonus is payable under Sec. 4.3(c) of the Plan, the Committee shall \
             certify the result. A new sentence follows.",
            true,
        );
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["sentences"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn kb_toggle_changes_output() {
        let text = "The parties rely on Fed. R. Civ. P. 56(a) in their motion. Discovery closed.";
        let on: serde_json::Value = serde_json::from_str(&segment_punkt(text, true)).unwrap();
        let off: serde_json::Value = serde_json::from_str(&segment_punkt(text, false)).unwrap();
        assert!(
            off["sentences"].as_array().unwrap().len() > on["sentences"].as_array().unwrap().len()
        );
    }

    #[test]
    fn charboundary_threshold_extremes() {
        let text = "One sentence here. Another one there.";
        let low: serde_json::Value =
            serde_json::from_str(&segment_charboundary(text, 0.0)).unwrap();
        let high: serde_json::Value =
            serde_json::from_str(&segment_charboundary(text, 1.0)).unwrap();
        let n = |v: &serde_json::Value| v["sentences"].as_array().unwrap().len();
        assert!(n(&low) >= n(&high));
    }

    #[test]
    fn probabilities_lie_in_unit_interval() {
        let out = candidate_probabilities("Mr. Smith v. Jones was decided. End of story.");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let arr = v.as_array().unwrap();
        assert!(!arr.is_empty());
        for item in arr {
            let p = item["prob"].as_f64().unwrap();
            assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn empty_input_yields_no_sentences() {
        let v: serde_json::Value = serde_json::from_str(&segment_punkt("", true)).unwrap();
        assert!(v["sentences"].as_array().unwrap().is_empty());
    }
}
