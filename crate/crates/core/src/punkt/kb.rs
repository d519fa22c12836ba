//! Curated legal knowledge base: the abbreviation dictionary plus compiled
//! citation and enumeration patterns. Everything is precomputed at load and
//! read-only afterwards.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use regex::Regex;
use thiserror::Error;

use crate::text::TextDocument;

#[derive(Debug, Error, PartialEq)]
pub enum KbError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbbrevCategory {
    Court,
    Statute,
    Latin,
    Corporate,
    Reporter,
    Other,
}

impl AbbrevCategory {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "court" => AbbrevCategory::Court,
            "statute" => AbbrevCategory::Statute,
            "latin" => AbbrevCategory::Latin,
            "corporate" => AbbrevCategory::Corporate,
            "reporter" => AbbrevCategory::Reporter,
            "other" => AbbrevCategory::Other,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AbbrevCategory::Court => "court",
            AbbrevCategory::Statute => "statute",
            AbbrevCategory::Latin => "latin",
            AbbrevCategory::Corporate => "corporate",
            AbbrevCategory::Reporter => "reporter",
            AbbrevCategory::Other => "other",
        }
    }
}

/// How far around a candidate the citation patterns look, in chars. Scans are
/// capped so chunked and sequential processing see identical context.
pub const CITATION_WINDOW: usize = 96;

/// How far back a line start may be for a token to count as line-initial.
const ENUM_LINE_CAP: usize = 16;

const BUILTIN_DICTIONARY: &str = include_str!("../../data/legal_abbreviations.csv");

/// Reporter abbreviations recognized inside volume-reporter-page citations.
/// Longest-first so alternation prefers the most specific form.
const REPORTERS: &[&str] = &[
    "U.S.C.A.", "U.S.C.S.", "U.S.C.", "U.S.", "S. Ct.", "S.Ct.",
    "L. Ed. 2d", "L.Ed.2d", "L. Ed.", "L.Ed.",
    "F. Supp. 3d", "F. Supp. 2d", "F. Supp.", "F.Supp.3d", "F.Supp.2d", "F.Supp.",
    "F. App'x", "Fed. App'x", "F.4th", "F.3d", "F.2d", "F.",
    "B.R.", "Fed. Cl.", "Cl. Ct.", "Fed. Reg.", "C.F.R.",
    "A.3d", "A.2d", "A.", "P.3d", "P.2d", "P.",
    "N.E.3d", "N.E.2d", "N.E.", "N.W.2d", "N.W.",
    "S.E.2d", "S.E.", "S.W.3d", "S.W.2d", "S.W.",
    "So. 3d", "So. 2d", "So.3d", "So.2d", "So.",
    "Cal. Rptr. 3d", "Cal. Rptr. 2d", "Cal. Rptr.",
    "N.Y.S.3d", "N.Y.S.2d", "N.Y.S.",
    "Ohio St. 3d", "Ohio St. 2d", "Wis. 2d", "Wn.2d", "Wash. 2d",
];

fn reporter_alternation() -> String {
    let mut parts: Vec<String> = REPORTERS
        .iter()
        .map(|r| regex::escape(r).replace("\\ ", "\\s"))
        .collect();
    // Longer patterns first so e.g. "F.2d" wins over "F.".
    parts.sort_by_key(|p| std::cmp::Reverse(p.len()));
    parts.join("|")
}

/// The curated dictionary plus compiled pattern set.
#[derive(Debug)]
pub struct LegalKnowledgeBase {
    entries: HashMap<String, AbbrevCategory>,
    /// Lookup keys: each entry as stored and with its final period stripped.
    lookup: HashSet<String>,
    citation_patterns: Vec<Regex>,
    enumeration_pattern: Regex,
}

impl LegalKnowledgeBase {
    /// Parses the abbreviation dictionary format: one `abbreviation,category`
    /// record per line, `#` comments and blank lines ignored. Entries are
    /// case-folded; duplicates collapse.
    pub fn load(source: &str) -> Result<Self, KbError> {
        let mut entries = HashMap::new();
        for (idx, raw) in source.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let (abbr, cat) = line.rsplit_once(',').ok_or(KbError::Parse {
                line: lineno,
                message: "expected `abbreviation,category`".into(),
            })?;
            let abbr = abbr.trim();
            if abbr.is_empty() {
                return Err(KbError::Parse { line: lineno, message: "empty abbreviation".into() });
            }
            if abbr.chars().any(|c| c.is_whitespace()) {
                return Err(KbError::Parse {
                    line: lineno,
                    message: format!("abbreviation {abbr:?} contains whitespace"),
                });
            }
            let category = AbbrevCategory::parse(cat.trim()).ok_or_else(|| KbError::Parse {
                line: lineno,
                message: format!("unknown category {:?}", cat.trim()),
            })?;
            entries.insert(abbr.to_lowercase(), category);
        }
        Ok(Self::from_entries(entries))
    }

    fn from_entries(entries: HashMap<String, AbbrevCategory>) -> Self {
        let mut lookup = HashSet::with_capacity(entries.len() * 2);
        for key in entries.keys() {
            lookup.insert(key.clone());
            if let Some(stripped) = key.strip_suffix('.') {
                if !stripped.is_empty() {
                    lookup.insert(stripped.to_string());
                }
            }
        }
        let rep = reporter_alternation();
        let citation_patterns = vec![
            // Volume-reporter-page with optional court/year parenthetical:
            // "159 F.2d 169 (2d Cir. 1947)".
            Regex::new(&format!(
                r"\b\d{{1,4}}\s(?:{rep})\s?\d{{1,5}}(?:,\s?\d{{1,5}})*(?:\s?\((?:[^()\n]{{0,40}}\s)?\d{{4}}\))?"
            ))
            .unwrap(),
            // Code citations: "I.R.C. § 409A(a)(2)(B)(i)", "42 U.S.C. §§ 1981-1983".
            Regex::new(
                r"\b(?:\d{1,3}\s)?[A-Z][A-Za-z.']{0,14}\.\s?§§?\s?\d[\w.()\-]*",
            )
            .unwrap(),
            // Bare section symbol references: "§ 4.3(c)".
            Regex::new(r"§§?\s?\d[\w.()\-]*").unwrap(),
            // Spelled-out section references: "Sec. 4.3(c)", "Secs. 2.1, 2.2".
            Regex::new(r"\b[Ss]ecs?\.\s?\d+(?:\.\d+)*(?:\([A-Za-z0-9]{1,4}\))*").unwrap(),
        ];
        // Line-initial list markers ending in '.': "1.", "1.2.", "a.", "B.",
        // "(c).", "iv.".
        let enumeration_pattern = Regex::new(
            r"^[ \t]{0,8}\(?(?:\d{1,3}(?:\.\d{1,3})*|[A-Za-z]|[ivxlcdm]{1,6}|[IVXLCDM]{1,6})\)?\.$",
        )
        .unwrap();
        LegalKnowledgeBase { entries, lookup, citation_patterns, enumeration_pattern }
    }

    fn builtin_cell() -> &'static Arc<LegalKnowledgeBase> {
        static KB: OnceLock<Arc<LegalKnowledgeBase>> = OnceLock::new();
        KB.get_or_init(|| {
            Arc::new(
                LegalKnowledgeBase::load(BUILTIN_DICTIONARY)
                    .expect("bundled abbreviation dictionary must parse"),
            )
        })
    }

    /// The dictionary shipped with the crate.
    pub fn builtin() -> &'static LegalKnowledgeBase {
        Self::builtin_cell()
    }

    /// Shared handle to the bundled dictionary.
    pub fn builtin_arc() -> Arc<LegalKnowledgeBase> {
        Self::builtin_cell().clone()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn category(&self, abbr: &str) -> Option<AbbrevCategory> {
        self.entries.get(abbr).copied()
    }

    /// Token-level lookup; `token` should be case-folded. Matches with or
    /// without a trailing period.
    pub fn is_abbreviation(&self, token: &str) -> bool {
        if self.lookup.contains(token) {
            return true;
        }
        match token.strip_suffix('.') {
            Some(stripped) => self.lookup.contains(stripped),
            None => false,
        }
    }

    /// Checks whether the terminator at `pos` sits inside a recognized
    /// citation. Returns the protected char-offset span `(start, end)` within
    /// which no boundary may be emitted.
    pub fn match_citation(&self, doc: &TextDocument, pos: usize) -> Option<(usize, usize)> {
        let len = doc.char_len();
        if pos >= len {
            return None;
        }
        let w0 = pos.saturating_sub(CITATION_WINDOW);
        let w1 = (pos + CITATION_WINDOW).min(len);
        let window = doc.slice(w0, w1);
        let pos_in_window_bytes = doc.byte_of_char(pos) - doc.byte_of_char(w0);
        for re in &self.citation_patterns {
            for m in re.find_iter(window) {
                if m.start() <= pos_in_window_bytes && pos_in_window_bytes < m.end() {
                    let start = w0 + window[..m.start()].chars().count();
                    let end = start + window[m.start()..m.end()].chars().count();
                    return Some((start, end));
                }
                if m.start() > pos_in_window_bytes {
                    break;
                }
            }
        }
        None
    }

    /// True iff the period at `pos` terminates a line-initial enumeration
    /// token ("1.", "(a).", "iv.", ...).
    pub fn is_enumeration_marker(&self, doc: &TextDocument, pos: usize) -> bool {
        if doc.char_at(pos) != Some('.') {
            return false;
        }
        // Find the line start, giving up beyond the cap.
        let mut start = pos;
        let mut steps = 0usize;
        loop {
            if start == 0 {
                break;
            }
            let c = doc.char_at(start - 1).unwrap();
            if c == '\n' || c == '\r' {
                break;
            }
            start -= 1;
            steps += 1;
            if steps > ENUM_LINE_CAP {
                return false;
            }
        }
        let prefix = doc.slice(start, pos + 1);
        self.enumeration_pattern.is_match(prefix)
    }
}
