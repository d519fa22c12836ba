//! Runtime tokenization: the statistical Punkt decision procedure extended
//! with the legal knowledge base, citation protection, enumeration guards,
//! and a fast path for terminator-free text.

use std::sync::Arc;

use memchr::memchr3_iter;

use crate::punkt::kb::LegalKnowledgeBase;
use crate::punkt::params::{ortho, PunktParameters};
use crate::punkt::tokens::{strip_final_period, token_type};
use crate::punkt::trainer::PunktConfig;
use crate::text::{char_class, BoundarySet, CharClass, Segmenter, TextDocument};

/// Returns the single-span boundary set when the text contains no terminator
/// character, skipping the full pipeline entirely.
pub fn fast_path_check(text: &TextDocument) -> Option<BoundarySet> {
    let bytes = text.text().as_bytes();
    if memchr::memchr3(b'.', b'!', b'?', bytes).is_some() {
        return None;
    }
    if text.is_empty() {
        Some(BoundarySet::empty())
    } else {
        Some(BoundarySet::from_sorted_unchecked(vec![text.char_len()]))
    }
}

/// The trained engine: learned parameters plus the optional legal KB.
pub struct PunktSegmenter {
    params: PunktParameters,
    kb: Arc<LegalKnowledgeBase>,
    config: PunktConfig,
}

impl PunktSegmenter {
    pub fn new(params: PunktParameters, kb: Arc<LegalKnowledgeBase>, config: PunktConfig) -> Self {
        PunktSegmenter { params, kb, config }
    }

    /// Engine with the bundled dictionary and default thresholds.
    pub fn with_builtin_kb(params: PunktParameters, config: PunktConfig) -> Self {
        PunktSegmenter { params, kb: LegalKnowledgeBase::builtin_arc(), config }
    }

    pub fn params(&self) -> &PunktParameters {
        &self.params
    }

    pub fn config(&self) -> &PunktConfig {
        &self.config
    }

    pub fn kb(&self) -> &LegalKnowledgeBase {
        &self.kb
    }

    /// Decides whether the terminator at char offset `pos` ends a sentence.
    fn is_boundary(&self, doc: &TextDocument, pos: usize, c: char) -> bool {
        if c != '.' {
            // '!' and '?' are unambiguous.
            return true;
        }
        let len = doc.char_len();
        // Internal periods ("3.5", "F.2d", "U.S.C.") never split mid-token.
        if let Some(next) = doc.char_at(pos + 1) {
            if !matches!(
                char_class(next),
                CharClass::Whitespace | CharClass::Quote | CharClass::CloseBracket
            ) && next != '.'
            {
                return false;
            }
            if next == '.' {
                // Interior of an ellipsis or multi-dot run.
                return false;
            }
        }

        // Preceding token.
        let mut start = pos;
        while start > 0 {
            let pc = doc.char_at(start - 1).unwrap();
            if pc.is_whitespace() {
                break;
            }
            start -= 1;
            if pos - start > 48 {
                break;
            }
        }
        let raw_token = doc.slice(start, pos + 1);
        let ty = token_type(raw_token);
        let key = strip_final_period(&ty);

        // Learned abbreviation.
        if !key.is_empty() && self.params.is_abbreviation(key) {
            return false;
        }

        let kb_enabled = self.config.legal_kb_enabled;
        if kb_enabled {
            // Curated abbreviation; matched on the folded literal token so
            // multi-period forms like "u.s.c." hit directly.
            let folded = raw_token
                .trim_start_matches(|c: char| {
                    matches!(char_class(c), CharClass::Quote | CharClass::OpenBracket)
                })
                .to_lowercase();
            if self.kb.is_abbreviation(&folded) {
                return false;
            }
            // Line-initial list markers ("1.", "iv.") do not end sentences.
            if self.kb.is_enumeration_marker(doc, pos) {
                return false;
            }
        }

        // Following token context.
        let mut npos = pos + 1;
        while npos < len {
            let nc = doc.char_at(npos).unwrap();
            if !nc.is_whitespace()
                && !matches!(char_class(nc), CharClass::Quote | CharClass::CloseBracket)
            {
                break;
            }
            npos += 1;
        }
        if npos < len {
            let nc = doc.char_at(npos).unwrap();
            let mut nend = npos;
            while nend < len {
                let ec = doc.char_at(nend).unwrap();
                if ec.is_whitespace() {
                    break;
                }
                nend += 1;
                if nend - npos > 48 {
                    break;
                }
            }
            let next_ty = token_type(doc.slice(npos, nend));
            let next_key = strip_final_period(&next_ty).to_string();

            // Collocation spanning the period vetoes the break.
            if self.params.is_collocation(key, &next_key) {
                return false;
            }

            if nc.is_lowercase() {
                // Sentences essentially never start lowercase; allow the break
                // only for statistically frequent starters with lowercase
                // sentence-initial evidence.
                let flags = self.params.ortho_flags(&next_key);
                let starts_lower = self.params.is_sentence_starter(&next_key)
                    && flags & ortho::LC_INITIAL != 0;
                if !starts_lower {
                    return false;
                }
            }
        }

        // Citation protection: the most specific evidence, checked last since
        // it is the most expensive.
        if kb_enabled {
            if let Some((_, end)) = self.kb.match_citation(doc, pos) {
                if pos + 1 < end {
                    return false;
                }
            }
        }
        true
    }
}

impl Segmenter for PunktSegmenter {
    fn segment(&self, doc: &TextDocument) -> BoundarySet {
        if let Some(fast) = fast_path_check(doc) {
            return fast;
        }
        let len = doc.char_len();
        let mut boundaries: Vec<usize> = Vec::new();
        for bpos in memchr3_iter(b'.', b'!', b'?', doc.text().as_bytes()) {
            let pos = doc.char_of_byte(bpos);
            let c = doc.char_at(pos).unwrap();
            if !self.is_boundary(doc, pos, c) {
                continue;
            }
            // Extend past an immediately following quote/bracket run, then
            // snap past whitespace so emitted boundaries are normal form.
            let mut b = pos + 1;
            while b < len {
                let bc = doc.char_at(b).unwrap();
                if matches!(char_class(bc), CharClass::Quote | CharClass::CloseBracket) {
                    b += 1;
                } else {
                    break;
                }
            }
            while b < len && doc.char_at(b).unwrap().is_whitespace() {
                b += 1;
            }
            if b < len {
                if boundaries.last() != Some(&b) {
                    boundaries.push(b);
                }
            }
        }
        boundaries.push(len);
        boundaries.dedup();
        BoundarySet::from_sorted_unchecked(boundaries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::spans_from_boundaries;

    fn engine(kb_enabled: bool) -> PunktSegmenter {
        let config = PunktConfig { legal_kb_enabled: kb_enabled, ..PunktConfig::default() };
        PunktSegmenter::with_builtin_kb(PunktParameters::default(), config)
    }

    fn sentences(seg: &PunktSegmenter, text: &str) -> Vec<String> {
        let doc = TextDocument::new("t", text);
        let b = seg.segment(&doc);
        spans_from_boundaries(&doc, &b)
            .unwrap()
            .into_iter()
            .map(|s| doc.slice(s.start, s.end).to_string())
            .collect()
    }

    #[test]
    fn fast_path_examples() {
        let doc = TextDocument::new("t", "EXHIBIT A — SCHEDULE OF ASSETS");
        let b = fast_path_check(&doc).unwrap();
        assert_eq!(b.offsets(), &[30]);

        assert!(fast_path_check(&TextDocument::new("t", "Done.")).is_none());
        assert!(fast_path_check(&TextDocument::new("t", "")).unwrap().is_empty());
    }

    #[test]
    fn fast_path_equivalence() {
        let seg = engine(true);
        for text in ["EXHIBIT A — SCHEDULE OF ASSETS", "", "no terminators here"] {
            let doc = TextDocument::new("t", text);
            if let Some(fast) = fast_path_check(&doc) {
                assert_eq!(fast, seg.segment(&doc));
            }
        }
    }

    #[test]
    fn splits_two_sentences() {
        let seg = engine(true);
        let got = sentences(&seg, "The court ruled. The case closed.");
        assert_eq!(got.len(), 2);
        assert_eq!(got[0], "The court ruled. ");
        assert_eq!(got[1], "The case closed.");
    }

    #[test]
    fn bonus_clause_is_one_sentence() {
        let seg = engine(true);
        let text = "Employee's Annual Bonus shall be calculated pursuant to Sec. 4.3(c), \
                    subject to the limitations of I.R.C. § 409A(a)(2)(B)(i) and the \
                    withholding requirements of Sec. 7.3.";
        let got = sentences(&seg, text);
        assert_eq!(got.len(), 1, "sentences: {got:?}");
    }

    #[test]
    fn citation_is_not_split() {
        let seg = engine(true);
        let text = "See United States v. Carroll Towing Co., 159 F.2d 169 (2d Cir. 1947). \
                    The standard applies.";
        let got = sentences(&seg, text);
        assert_eq!(got.len(), 2, "sentences: {got:?}");
        assert!(got[0].contains("159 F.2d 169 (2d Cir. 1947)."));
    }

    #[test]
    fn quote_run_extends_boundary() {
        let seg = engine(true);
        let got = sentences(&seg, "He said \"Stop.\" Then he left.");
        assert_eq!(got.len(), 2, "{got:?}");
        assert!(got[0].ends_with("\"Stop.\" "), "{got:?}");
    }

    #[test]
    fn exclamation_and_question_split() {
        let seg = engine(true);
        let got = sentences(&seg, "Objection! Sustained? The jury waited.");
        assert_eq!(got.len(), 3, "{got:?}");
    }

    #[test]
    fn learned_abbreviation_vetoes() {
        let mut params = PunktParameters::default();
        params.abbreviations.insert("blub".into());
        let seg = PunktSegmenter::with_builtin_kb(
            params,
            PunktConfig { legal_kb_enabled: false, ..PunktConfig::default() },
        );
        let doc = TextDocument::new("t", "The blub. 42 result held. The end came.");
        let b = seg.segment(&doc);
        // No boundary after "blub."; boundary after "held."
        assert!(!b.contains(10), "{b}");
        assert!(b.contains(26), "{b}");
    }

    #[test]
    fn kb_toggle_changes_citation_handling() {
        let text = "The award is governed by Sec. 4.3 of the plan. Nothing more follows.";
        let on = sentences(&engine(true), text);
        let off = sentences(&engine(false), text);
        assert_eq!(on.len(), 2, "{on:?}");
        assert!(off.len() > on.len(), "off: {off:?}");
    }

    #[test]
    fn enumeration_marker_not_split() {
        let seg = engine(true);
        let text = "The contract provides:\n1. The party shall pay.\n2. The party shall perform.";
        let doc = TextDocument::new("t", text);
        let b = seg.segment(&doc);
        // No boundary right after "1." or "2." markers.
        let one = text.chars().collect::<Vec<_>>();
        for (i, &c) in one.iter().enumerate() {
            if c == '.' && i >= 1 && one[i - 1].is_ascii_digit() && (i < 2 || one[i - 2] == '\n') {
                assert!(!b.contains(i + 1), "split after enumeration at {i}");
            }
        }
    }

    #[test]
    fn deterministic() {
        let seg = engine(true);
        let doc = TextDocument::new("t", "One. Two. Three v. Four, 12 U.S. 345 (1810). Five.");
        assert_eq!(seg.segment(&doc), seg.segment(&doc));
    }
}
