//! Corpus loading, statistics, and synthetic generation for the two
//! supported gold-annotation formats.

pub mod loader;
pub mod synth;

pub use loader::{
    dataset_stats, load_delimited, load_delimited_str, load_span_annotated,
    parse_delimited_record, render_delimited, render_delimited_corpus, AnnotatedExample,
    DatasetError, DatasetStats, SENTENCE_DELIMITER,
};
pub use synth::{generate_synthetic, SynthConfig, CITATION_TEMPLATES, FINAL_WORDS};
