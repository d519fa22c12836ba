//! Diagnostic over the shipped fixture corpus: per-record candidate density,
//! punkt precision with the legal KB on vs off, and protected-span checks.

use std::path::Path;

use sbd_core::bench::evaluate;
use sbd_core::charboundary::candidate_positions;
use sbd_core::datasets::load_delimited;
use sbd_core::punkt::{LegalKnowledgeBase, PunktConfig, PunktParameters, PunktSegmenter};
use sbd_core::text::Segmenter;

fn main() {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/fixtures/citations.sbd"));
    let examples = load_delimited(path).expect("fixtures load");
    println!("{} records", examples.len());

    let mut worst = (0.0f64, String::new());
    for ex in &examples {
        let density = candidate_positions(&ex.doc).len() as f64 / ex.doc.char_len() as f64;
        if density > worst.0 {
            worst = (density, ex.doc.id().to_string());
        }
        if density >= 0.05 {
            println!("DENSITY FAIL {}: {:.3}", ex.doc.id(), density);
        }
    }
    println!("worst density: {:.4} ({})", worst.0, worst.1);

    let on = PunktSegmenter::with_builtin_kb(PunktParameters::default(), PunktConfig::default());
    let off = PunktSegmenter::with_builtin_kb(
        PunktParameters::default(),
        PunktConfig { legal_kb_enabled: false, ..PunktConfig::default() },
    );
    let r_on = evaluate(&on, &examples).unwrap();
    let r_off = evaluate(&off, &examples).unwrap();
    println!(
        "KB on : P {:.4} R {:.4} F1 {:.4} (tp {} fp {} fn {})",
        r_on.precision, r_on.recall, r_on.f1, r_on.tp, r_on.fp, r_on.fn_
    );
    println!(
        "KB off: P {:.4} R {:.4} F1 {:.4} (tp {} fp {} fn {})",
        r_off.precision, r_off.recall, r_off.f1, r_off.tp, r_off.fp, r_off.fn_
    );

    // Per-record mistakes with KB on, for fixture debugging.
    for ex in &examples {
        let pred = on.segment(&ex.doc);
        if pred != ex.gold {
            println!("[{}] pred {} vs gold {}", ex.doc.id(), pred, ex.gold);
        }
    }

    // Boundaries inside protected citation spans (KB on) must not exist.
    let kb = LegalKnowledgeBase::builtin();
    let mut violations = 0;
    for ex in &examples {
        let pred = on.segment(&ex.doc);
        for &b in pred.offsets() {
            if b >= ex.doc.char_len() {
                continue;
            }
            if let Some((start, end)) = kb.match_citation(&ex.doc, b) {
                if b > start && b < end {
                    violations += 1;
                    println!(
                        "PROTECTED SPAN VIOLATION {} at {} in {:?}",
                        ex.doc.id(),
                        b,
                        ex.doc.slice(start, end)
                    );
                }
            }
        }
    }
    println!("protected-span violations: {violations}");
}
