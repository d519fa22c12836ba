//! Learned parameters and their versioned on-disk format
//! (`nupunkt-params/1`). Serialization is canonical (sorted sections) so
//! equal parameters always produce byte-identical documents.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// Orthographic context bit flags.
pub mod ortho {
    /// Seen uppercase in sentence-initial position.
    pub const UC_INITIAL: u8 = 0b0001;
    /// Seen uppercase sentence-internally.
    pub const UC_INTERNAL: u8 = 0b0010;
    /// Seen lowercase in sentence-initial position.
    pub const LC_INITIAL: u8 = 0b0100;
    /// Seen lowercase sentence-internally.
    pub const LC_INTERNAL: u8 = 0b1000;
}

pub const PARAMS_FORMAT: &str = "nupunkt-params/1";

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported format header {found:?} (expected {PARAMS_FORMAT:?})")]
    Version { found: String },
}

/// Everything the runtime tokenizer learned from a corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PunktParameters {
    /// Token types (case-folded, final period stripped) classified as
    /// abbreviations.
    pub abbreviations: BTreeSet<String>,
    /// Type pairs spanning a period that statistically belong together.
    pub collocations: BTreeSet<(String, String)>,
    /// Types that frequently begin sentences.
    pub sentence_starters: BTreeSet<String>,
    /// Observed casing behavior per type.
    pub ortho_context: BTreeMap<String, u8>,
}

impl PunktParameters {
    pub fn is_abbreviation(&self, key: &str) -> bool {
        self.abbreviations.contains(key)
    }

    pub fn is_collocation(&self, left: &str, right: &str) -> bool {
        self.collocations.contains(&(left.to_string(), right.to_string()))
    }

    pub fn is_sentence_starter(&self, key: &str) -> bool {
        self.sentence_starters.contains(key)
    }

    pub fn ortho_flags(&self, key: &str) -> u8 {
        self.ortho_context.get(key).copied().unwrap_or(0)
    }

    /// Renders the canonical `nupunkt-params/1` document.
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        out.push_str(PARAMS_FORMAT);
        out.push('\n');
        out.push_str("[abbreviations]\n");
        for a in &self.abbreviations {
            out.push_str(a);
            out.push('\n');
        }
        out.push_str("[collocations]\n");
        for (l, r) in &self.collocations {
            out.push_str(l);
            out.push('\t');
            out.push_str(r);
            out.push('\n');
        }
        out.push_str("[sentence_starters]\n");
        for s in &self.sentence_starters {
            out.push_str(s);
            out.push('\n');
        }
        out.push_str("[ortho]\n");
        for (t, f) in &self.ortho_context {
            out.push_str(t);
            out.push('\t');
            out.push_str(&f.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses a `nupunkt-params/1` document.
    pub fn from_document(doc: &str) -> Result<Self, ParamsError> {
        let mut lines = doc.lines().enumerate();
        let header = lines
            .next()
            .ok_or_else(|| ParamsError::Version { found: String::new() })?;
        if header.1 != PARAMS_FORMAT {
            return Err(ParamsError::Version { found: header.1.to_string() });
        }
        #[derive(PartialEq)]
        enum Section {
            None,
            Abbrev,
            Colloc,
            Starters,
            Ortho,
        }
        let mut section = Section::None;
        let mut params = PunktParameters::default();
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.is_empty() {
                continue;
            }
            match line {
                "[abbreviations]" => section = Section::Abbrev,
                "[collocations]" => section = Section::Colloc,
                "[sentence_starters]" => section = Section::Starters,
                "[ortho]" => section = Section::Ortho,
                _ => match section {
                    Section::None => {
                        return Err(ParamsError::Parse {
                            line: lineno,
                            message: format!("content before any section: {line:?}"),
                        })
                    }
                    Section::Abbrev => {
                        params.abbreviations.insert(line.to_string());
                    }
                    Section::Colloc => {
                        let (l, r) = line.split_once('\t').ok_or(ParamsError::Parse {
                            line: lineno,
                            message: "collocation line missing tab separator".into(),
                        })?;
                        params.collocations.insert((l.to_string(), r.to_string()));
                    }
                    Section::Starters => {
                        params.sentence_starters.insert(line.to_string());
                    }
                    Section::Ortho => {
                        let (t, f) = line.split_once('\t').ok_or(ParamsError::Parse {
                            line: lineno,
                            message: "ortho line missing tab separator".into(),
                        })?;
                        let flags: u8 = f.parse().map_err(|_| ParamsError::Parse {
                            line: lineno,
                            message: format!("invalid ortho flags {f:?}"),
                        })?;
                        params.ortho_context.insert(t.to_string(), flags);
                    }
                },
            }
        }
        Ok(params)
    }
}
