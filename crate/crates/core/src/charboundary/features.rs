//! Candidate selection and windowed feature extraction.
//!
//! Every contextual scan is capped (`NEWLINE_CAP`, `SCAN_CAP`,
//! `CITATION_WINDOW`) so a candidate's features depend only on a bounded
//! neighborhood; document partitioning relies on this.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::punkt::LegalKnowledgeBase;
use crate::text::{char_class, CharClass, TextDocument};

/// Reserved value for window positions beyond the text bounds.
pub const PAD: f32 = -1.0;

/// Cap on newline-distance features.
pub const NEWLINE_CAP: usize = 32;

/// Cap on the parenthesis/quote backward scans.
pub const SCAN_CAP: usize = 64;

/// Codepoints above this bucket saturate.
const CODEPOINT_BUCKET_MAX: u32 = 1023;

#[derive(Debug, Error, PartialEq)]
pub enum FeatureError {
    #[error("offset {0} is not a candidate terminator position")]
    NotACandidate(usize),
}

/// Versioned descriptor of the feature vector layout. Serialized with every
/// model so layout changes cannot silently corrupt inference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureLayout {
    pub version: u32,
    pub window: usize,
    pub n_features: usize,
}

/// Count of derived flags appended after the window slots.
const N_FLAGS: usize = 10;

impl FeatureLayout {
    pub fn for_window(window: usize) -> Self {
        FeatureLayout { version: 1, window, n_features: 4 * window + N_FLAGS }
    }

    pub fn len(&self) -> usize {
        self.n_features
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn validate(&self) -> bool {
        self.version == 1 && self.window >= 1 && self.n_features == 4 * self.window + N_FLAGS
    }
}

/// Sorted offsets of every terminator character; the only positions the
/// classifier ever evaluates.
pub fn candidate_positions(text: &TextDocument) -> Vec<usize> {
    memchr::memchr3_iter(b'.', b'!', b'?', text.text().as_bytes())
        .map(|b| text.char_of_byte(b))
        .collect()
}

fn slot(c: Option<char>) -> [f32; 2] {
    match c {
        None => [PAD, PAD],
        Some(c) => {
            let bucket = (c as u32).min(CODEPOINT_BUCKET_MAX) as f32;
            [char_class(c).code() as f32, bucket]
        }
    }
}

/// True when text just after `from` looks like the start of an enumeration
/// marker line: optional indent, then a short digit/letter/roman token
/// followed by '.' or ')'.
fn enumeration_follows(doc: &TextDocument, from: usize) -> bool {
    let len = doc.char_len();
    let mut i = from;
    while i < len && matches!(doc.char_at(i), Some(' ') | Some('\t')) {
        i += 1;
    }
    if !matches!(doc.char_at(i), Some('\n') | Some('\r')) {
        return false;
    }
    while i < len && doc.char_at(i).map(|c| c.is_whitespace()).unwrap_or(false) {
        i += 1;
    }
    if doc.char_at(i) == Some('(') {
        i += 1;
    }
    let start = i;
    while i < len && i - start < 4 {
        match doc.char_at(i) {
            Some(c) if c.is_ascii_alphanumeric() => i += 1,
            _ => break,
        }
    }
    i > start && matches!(doc.char_at(i), Some('.') | Some(')'))
}

/// Extracts the feature vector for the candidate at `pos`.
pub fn extract_features(
    doc: &TextDocument,
    pos: usize,
    kb: &LegalKnowledgeBase,
    layout: &FeatureLayout,
) -> Result<Vec<f32>, FeatureError> {
    let c = doc.char_at(pos);
    if !matches!(c, Some('.') | Some('!') | Some('?')) {
        return Err(FeatureError::NotACandidate(pos));
    }
    let len = doc.char_len();
    let w = layout.window;
    let mut fv = Vec::with_capacity(layout.n_features);

    // Left context, oldest first.
    for k in (1..=w).rev() {
        let idx = pos.checked_sub(k);
        fv.extend(slot(idx.and_then(|i| doc.char_at(i))));
    }
    // Right context.
    for k in 1..=w {
        fv.extend(slot(doc.char_at(pos + k)));
    }

    // Preceding token is a curated abbreviation.
    let mut start = pos;
    while start > 0 && pos - start <= 48 {
        let pc = doc.char_at(start - 1).unwrap();
        if pc.is_whitespace() {
            break;
        }
        start -= 1;
    }
    let token = doc.slice(start, pos + 1).to_lowercase();
    fv.push(if kb.is_abbreviation(token.trim_start_matches(|c: char| {
        matches!(char_class(c), CharClass::Quote | CharClass::OpenBracket)
    })) {
        1.0
    } else {
        0.0
    });

    // Citation context.
    fv.push(if kb.match_citation(doc, pos).is_some() { 1.0 } else { 0.0 });

    // Next non-space char class, one-hot over {Upper, Lower, Digit}.
    let mut n = pos + 1;
    while n < len && doc.char_at(n).map(|c| c.is_whitespace()).unwrap_or(false) {
        n += 1;
    }
    let next_class = doc.char_at(n).map(char_class);
    fv.push(if next_class == Some(CharClass::Upper) { 1.0 } else { 0.0 });
    fv.push(if next_class == Some(CharClass::Lower) { 1.0 } else { 0.0 });
    fv.push(if next_class == Some(CharClass::Digit) { 1.0 } else { 0.0 });

    // Inside parentheses: unmatched '(' within the scan cap.
    let scan_start = pos.saturating_sub(SCAN_CAP);
    let mut depth = 0i32;
    let mut inside_parens = false;
    for i in (scan_start..pos).rev() {
        match doc.char_at(i) {
            Some('(') => {
                if depth == 0 {
                    inside_parens = true;
                    break;
                }
                depth += 1;
            }
            Some(')') => depth -= 1,
            _ => {}
        }
    }
    fv.push(if inside_parens { 1.0 } else { 0.0 });

    // Inside a straight-quote pair: odd count of '"' in the scan window.
    let quotes = (scan_start..pos)
        .filter(|&i| doc.char_at(i) == Some('"'))
        .count();
    fv.push(if quotes % 2 == 1 { 1.0 } else { 0.0 });

    fv.push(if enumeration_follows(doc, pos + 1) { 1.0 } else { 0.0 });

    // Distance to next newline, capped.
    let mut d_next = NEWLINE_CAP;
    for k in 1..=NEWLINE_CAP {
        match doc.char_at(pos + k) {
            Some('\n') => {
                d_next = k;
                break;
            }
            None => {
                d_next = k;
                break;
            }
            _ => {}
        }
    }
    fv.push(d_next as f32);

    // Distance to previous newline, capped.
    let mut d_prev = NEWLINE_CAP;
    for k in 1..=NEWLINE_CAP {
        if k > pos {
            d_prev = k;
            break;
        }
        if doc.char_at(pos - k) == Some('\n') {
            d_prev = k;
            break;
        }
    }
    fv.push(d_prev as f32);

    debug_assert_eq!(fv.len(), layout.n_features);
    Ok(fv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kb() -> &'static LegalKnowledgeBase {
        LegalKnowledgeBase::builtin()
    }

    #[test]
    fn candidates_scan() {
        let doc = TextDocument::new("d", "a.b? c!");
        assert_eq!(candidate_positions(&doc), vec![1, 3, 6]);
        let doc = TextDocument::new("d", "no terminators here");
        assert!(candidate_positions(&doc).is_empty());
    }

    #[test]
    fn layout_length() {
        let l = FeatureLayout::for_window(5);
        assert_eq!(l.len(), 30);
        assert!(l.validate());
    }

    #[test]
    fn padding_at_text_start() {
        let doc = TextDocument::new("d", ".abc");
        let layout = FeatureLayout::for_window(5);
        let fv = extract_features(&doc, 0, kb(), &layout).unwrap();
        // All five left slots are pad pairs.
        for i in 0..5 {
            assert_eq!(fv[2 * i], PAD);
            assert_eq!(fv[2 * i + 1], PAD);
        }
    }

    #[test]
    fn kb_abbreviation_flag() {
        let doc = TextDocument::new("d", "The Corp. filed suit.");
        let layout = FeatureLayout::for_window(5);
        let pos = doc.text().find('.').unwrap();
        let fv = extract_features(&doc, doc.char_of_byte(pos), kb(), &layout).unwrap();
        assert_eq!(fv[4 * 5], 1.0); // first flag
    }

    #[test]
    fn citation_flag() {
        let doc = TextDocument::new("d", "cited at 159 F.2d 169 in the record.");
        let layout = FeatureLayout::for_window(5);
        let pos = doc.char_of_byte(doc.text().find("F.2d").unwrap()) + 1;
        let fv = extract_features(&doc, pos, kb(), &layout).unwrap();
        assert_eq!(fv[4 * 5 + 1], 1.0);
    }

    #[test]
    fn non_candidate_rejected() {
        let doc = TextDocument::new("d", "abc.");
        let layout = FeatureLayout::for_window(5);
        assert_eq!(
            extract_features(&doc, 0, kb(), &layout),
            Err(FeatureError::NotACandidate(0))
        );
    }

    #[test]
    fn enumeration_follow_flag() {
        let doc = TextDocument::new("d", "The list follows.\n1. First item here.");
        let layout = FeatureLayout::for_window(5);
        let pos = doc.char_of_byte(doc.text().find('.').unwrap());
        let fv = extract_features(&doc, pos, kb(), &layout).unwrap();
        assert_eq!(fv[4 * 5 + 7], 1.0);
    }
}
