//! Annotated-corpus loaders for the two supported gold formats: inline
//! `<|sentence|>` delimiters and explicit character-span records.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::text::{snap_boundary, spans_from_boundaries, BoundarySet, TextDocument};

/// Literal marker separating sentences in the delimited format.
pub const SENTENCE_DELIMITER: &str = "<|sentence|>";

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("record {record}: {message}")]
    Parse { record: usize, message: String },
    #[error("record {record}: delimiter at start of text")]
    DelimiterAtStart { record: usize },
    #[error("record {record}: span ({start}, {end}) out of range for text of length {len}")]
    SpanOutOfRange { record: usize, start: usize, end: usize, len: usize },
    #[error("record {record}: spans ({a_start}, {a_end}) and ({b_start}, {b_end}) overlap")]
    OverlappingSpans { record: usize, a_start: usize, a_end: usize, b_start: usize, b_end: usize },
    #[error("dataset contains no examples")]
    EmptyDataset,
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// A document paired with its gold boundaries. Gold offsets index the
/// delimiter-free text and are snap-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedExample {
    pub doc: TextDocument,
    pub gold: BoundarySet,
}

/// Parses one delimited record: markers are removed, their positions in the
/// cleaned text become gold boundaries, and the end-of-text boundary is
/// always present.
pub fn parse_delimited_record(
    id: &str,
    record_index: usize,
    raw: &str,
) -> Result<AnnotatedExample, DatasetError> {
    if raw.starts_with(SENTENCE_DELIMITER) {
        return Err(DatasetError::DelimiterAtStart { record: record_index });
    }
    let mut clean = String::with_capacity(raw.len());
    let mut marks: Vec<usize> = Vec::new();
    let mut rest = raw;
    let mut chars_so_far = 0usize;
    while let Some(idx) = rest.find(SENTENCE_DELIMITER) {
        let before = &rest[..idx];
        clean.push_str(before);
        chars_so_far += before.chars().count();
        marks.push(chars_so_far);
        rest = &rest[idx + SENTENCE_DELIMITER.len()..];
    }
    clean.push_str(rest);

    let doc = TextDocument::new(id, &clean);
    let len = doc.char_len();
    let mut offsets = Vec::with_capacity(marks.len());
    for m in marks {
        let snapped = snap_boundary(&doc, m)
            .map_err(|e| DatasetError::Parse { record: record_index, message: e.to_string() })?;
        offsets.push(snapped);
    }
    let gold = BoundarySet::for_text(offsets, len)
        .map_err(|e| DatasetError::Parse { record: record_index, message: e.to_string() })?;
    Ok(AnnotatedExample { doc, gold })
}

fn escape_record(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape_record(line: &str, record_index: usize) -> Result<String, DatasetError> {
    let mut out = String::with_capacity(line.len());
    let mut chars = line.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            other => {
                return Err(DatasetError::Parse {
                    record: record_index,
                    message: format!("bad escape \\{}", other.map(String::from).unwrap_or_default()),
                })
            }
        }
    }
    Ok(out)
}

/// Loads delimited records from a string, one escaped record per line.
/// Blank lines are malformed, not skipped.
pub fn load_delimited_str(source: &str) -> Result<Vec<AnnotatedExample>, DatasetError> {
    let mut examples = Vec::new();
    for (i, line) in source.lines().enumerate() {
        if line.is_empty() {
            return Err(DatasetError::Parse { record: i, message: "empty record".into() });
        }
        let raw = unescape_record(line, i)?;
        examples.push(parse_delimited_record(&format!("record-{i}"), i, &raw)?);
    }
    Ok(examples)
}

/// Loads a delimited corpus from a path: a file holds one escaped record per
/// line; a directory holds one raw document per file.
pub fn load_delimited(path: &Path) -> Result<Vec<AnnotatedExample>, DatasetError> {
    if path.is_dir() {
        let mut entries: Vec<_> = fs::read_dir(path)?
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .map(|e| e.path())
            .filter(|p| p.is_file())
            .collect();
        entries.sort();
        let mut examples = Vec::new();
        for (i, file) in entries.iter().enumerate() {
            let raw = fs::read_to_string(file)?;
            let id = file.file_stem().and_then(|s| s.to_str()).unwrap_or("doc");
            examples.push(parse_delimited_record(id, i, &raw)?);
        }
        Ok(examples)
    } else {
        load_delimited_str(&fs::read_to_string(path)?)
    }
}

/// Renders an example back to delimiter format: a marker at every gold
/// boundary, including the trailing one.
pub fn render_delimited(example: &AnnotatedExample) -> String {
    let doc = &example.doc;
    let mut out = String::with_capacity(doc.text().len() + 16 * example.gold.offsets().len());
    let mut prev = 0usize;
    for &b in example.gold.offsets() {
        out.push_str(doc.slice(prev, b));
        out.push_str(SENTENCE_DELIMITER);
        prev = b;
    }
    out.push_str(doc.slice(prev, doc.char_len()));
    out
}

/// Renders a corpus to the one-record-per-line container.
pub fn render_delimited_corpus(examples: &[AnnotatedExample]) -> String {
    let mut out = String::new();
    for ex in examples {
        out.push_str(&escape_record(&render_delimited(ex)));
        out.push('\n');
    }
    out
}

#[derive(Deserialize)]
struct SpanRec {
    start: usize,
    end: usize,
}

#[derive(Deserialize)]
struct SpanDocRec {
    text: String,
    spans: Vec<SpanRec>,
}

/// Loads span-annotated records: a JSON array of `{text, spans:[{start,end}]}`
/// documents. Each span's end snaps to a gold boundary.
pub fn load_span_annotated(source: &str) -> Result<Vec<AnnotatedExample>, DatasetError> {
    let records: Vec<SpanDocRec> = serde_json::from_str(source)
        .map_err(|e| DatasetError::Parse { record: 0, message: e.to_string() })?;
    let mut examples = Vec::new();
    for (i, rec) in records.iter().enumerate() {
        let doc = TextDocument::new(&format!("record-{i}"), &rec.text);
        let len = doc.char_len();
        let mut spans: Vec<(usize, usize)> = rec.spans.iter().map(|s| (s.start, s.end)).collect();
        spans.sort_unstable();
        for &(start, end) in &spans {
            if end > len || start > end || end == 0 {
                return Err(DatasetError::SpanOutOfRange { record: i, start, end, len });
            }
        }
        for w in spans.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(DatasetError::OverlappingSpans {
                    record: i,
                    a_start: w[0].0,
                    a_end: w[0].1,
                    b_start: w[1].0,
                    b_end: w[1].1,
                });
            }
        }
        let mut offsets = Vec::with_capacity(spans.len());
        for &(_, end) in &spans {
            let snapped = snap_boundary(&doc, end)
                .map_err(|e| DatasetError::Parse { record: i, message: e.to_string() })?;
            offsets.push(snapped);
        }
        let gold = BoundarySet::for_text(offsets, len)
            .map_err(|e| DatasetError::Parse { record: i, message: e.to_string() })?;
        examples.push(AnnotatedExample { doc, gold });
    }
    Ok(examples)
}

/// Corpus-level counts and means.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetStats {
    pub n_examples: usize,
    pub n_sentences: usize,
    pub mean_sentences_per_doc: f64,
    pub mean_sentence_length_chars: f64,
}

pub fn dataset_stats(examples: &[AnnotatedExample]) -> Result<DatasetStats, DatasetError> {
    if examples.is_empty() {
        return Err(DatasetError::EmptyDataset);
    }
    let mut n_sentences = 0usize;
    let mut total_len = 0usize;
    let mut n_docs = 0usize;
    for ex in examples {
        if ex.doc.is_empty() {
            continue;
        }
        n_docs += 1;
        let spans = spans_from_boundaries(&ex.doc, &ex.gold)
            .map_err(|e| DatasetError::Parse { record: 0, message: e.to_string() })?;
        n_sentences += spans.len();
        total_len += spans.iter().map(|s| s.end - s.start).sum::<usize>();
    }
    Ok(DatasetStats {
        n_examples: examples.len(),
        n_sentences,
        mean_sentences_per_doc: n_sentences as f64 / n_docs.max(1) as f64,
        mean_sentence_length_chars: total_len as f64 / n_sentences.max(1) as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delimited_record_positions() {
        let ex = parse_delimited_record(
            "t",
            0,
            "The court ruled.<|sentence|> The case closed.<|sentence|>",
        )
        .unwrap();
        assert_eq!(ex.doc.text(), "The court ruled. The case closed.");
        // The marker position snaps past the following space; the final
        // marker lands on the end of text.
        assert_eq!(ex.gold.offsets(), &[17, 33]);
    }

    #[test]
    fn record_without_delimiter_is_one_sentence() {
        let ex = parse_delimited_record("t", 0, "Only one sentence").unwrap();
        assert_eq!(ex.gold.offsets(), &[17]);
    }

    #[test]
    fn delimiter_at_start_rejected() {
        let err = parse_delimited_record("t", 3, "<|sentence|>bad").unwrap_err();
        assert!(matches!(err, DatasetError::DelimiterAtStart { record: 3 }));
    }

    #[test]
    fn round_trip() {
        let raw = "One here.<|sentence|> Two there.<|sentence|>";
        let ex = parse_delimited_record("t", 0, raw).unwrap();
        let rendered = render_delimited(&ex);
        let back = parse_delimited_record("t", 0, &rendered).unwrap();
        assert_eq!(back, ex);
    }

    #[test]
    fn corpus_container_round_trip_with_newlines() {
        let raw = "Line one.<|sentence|>\nLine two.<|sentence|>";
        let ex = parse_delimited_record("record-0", 0, raw).unwrap();
        let corpus = render_delimited_corpus(std::slice::from_ref(&ex));
        let back = load_delimited_str(&corpus).unwrap();
        assert_eq!(back, vec![ex]);
    }

    #[test]
    fn gold_is_snap_fixed() {
        let ex = parse_delimited_record("t", 0, "A b.<|sentence|>   C d.<|sentence|>").unwrap();
        for &b in ex.gold.offsets() {
            assert_eq!(crate::text::snap_boundary(&ex.doc, b).unwrap(), b);
        }
    }

    #[test]
    fn span_records() {
        let src = r#"[{"text": "Ab. Cd.", "spans": [{"start": 0, "end": 3}, {"start": 4, "end": 7}]}]"#;
        let got = load_span_annotated(src).unwrap();
        assert_eq!(got.len(), 1);
        // End 3 snaps past the space to 4.
        assert_eq!(got[0].gold.offsets(), &[4, 7]);
    }

    #[test]
    fn span_out_of_range() {
        let src = r#"[{"text": "short", "spans": [{"start": 0, "end": 99}]}]"#;
        assert!(matches!(
            load_span_annotated(src),
            Err(DatasetError::SpanOutOfRange { end: 99, len: 5, .. })
        ));
    }

    #[test]
    fn overlapping_spans_rejected() {
        let src = r#"[{"text": "Ab. Cd.", "spans": [{"start": 0, "end": 5}, {"start": 3, "end": 7}]}]"#;
        assert!(matches!(
            load_span_annotated(src),
            Err(DatasetError::OverlappingSpans { .. })
        ));
    }

    #[test]
    fn stats_arithmetic() {
        let a = parse_delimited_record("a", 0, "One.<|sentence|> Two.<|sentence|> Three.<|sentence|>").unwrap();
        let b = parse_delimited_record("b", 1, "Only sentence here.").unwrap();
        let stats = dataset_stats(&[a, b]).unwrap();
        assert_eq!(stats.n_examples, 2);
        assert_eq!(stats.n_sentences, 4);
        assert!((stats.mean_sentences_per_doc - 2.0).abs() < 1e-12);
    }

    #[test]
    fn mean_sentence_length_hand_count() {
        let src = r#"[{"text": "Hi. Yo.", "spans": [{"start": 0, "end": 3}, {"start": 4, "end": 7}]}]"#;
        let got = load_span_annotated(src).unwrap();
        let stats = dataset_stats(&got).unwrap();
        // Spans (0,4) and (4,7): lengths 4 and 3.
        assert!((stats.mean_sentence_length_chars - 3.5).abs() < 1e-12);
    }

    #[test]
    fn empty_dataset_rejected() {
        assert!(matches!(dataset_stats(&[]), Err(DatasetError::EmptyDataset)));
    }
}
