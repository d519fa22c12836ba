//! Shared text primitives: character classification, boundary/span algebra,
//! and the segmenter contract every engine implements.
//!
//! All offsets anywhere in this crate count Unicode scalar values of the
//! document text, 0-based. Byte offsets never cross a module boundary.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("boundary offset {offset} invalid for text of length {len}")]
    InvalidBoundary { offset: usize, len: usize },
    #[error("boundary offsets must be strictly increasing (saw {prev} then {next})")]
    UnsortedBoundary { prev: usize, next: usize },
    #[error("offset {offset} out of range for text of length {len}")]
    OutOfRange { offset: usize, len: usize },
}

/// An immutable document plus the char-offset indexing every engine relies on.
///
/// The raw text is kept alongside a per-char byte offset table so char-offset
/// slicing stays O(1) even for multi-megabyte inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextDocument {
    id: String,
    text: String,
    chars: Vec<char>,
    /// byte offset of each char, plus a final entry equal to `text.len()`.
    byte_offsets: Vec<usize>,
}

impl TextDocument {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let mut chars = Vec::new();
        let mut byte_offsets = Vec::new();
        for (b, c) in text.char_indices() {
            byte_offsets.push(b);
            chars.push(c);
        }
        byte_offsets.push(text.len());
        TextDocument { id: id.into(), text, chars, byte_offsets }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Length in Unicode scalar values.
    pub fn char_len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn char_at(&self, i: usize) -> Option<char> {
        self.chars.get(i).copied()
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    /// Slice by char offsets. Panics if `a > b` or `b > char_len()`.
    pub fn slice(&self, a: usize, b: usize) -> &str {
        &self.text[self.byte_offsets[a]..self.byte_offsets[b]]
    }

    /// Byte offset of char offset `i` (or text length for `i == char_len()`).
    pub fn byte_of_char(&self, i: usize) -> usize {
        self.byte_offsets[i]
    }

    /// Char offset containing byte offset `b`. `b` must land on a char start
    /// or equal the text byte length.
    pub fn char_of_byte(&self, b: usize) -> usize {
        match self.byte_offsets.binary_search(&b) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }
}

/// Half-open sentence span `[start, end)` in char offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SentenceSpan {
    pub start: usize,
    pub end: usize,
}

impl SentenceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start < end);
        SentenceSpan { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Sorted set of boundary offsets, each in `(0, len]`. For non-empty text the
/// final element is always `len`, so the set is bijective with a span
/// partition of `[0, len)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundarySet {
    offsets: Vec<usize>,
}

impl BoundarySet {
    pub fn empty() -> Self {
        BoundarySet { offsets: Vec::new() }
    }

    /// Builds a set from arbitrary interior offsets, validating range and
    /// appending the final boundary at `len` for non-empty text.
    pub fn for_text(mut offsets: Vec<usize>, len: usize) -> Result<Self, TextError> {
        offsets.sort_unstable();
        offsets.dedup();
        if len == 0 {
            if let Some(&o) = offsets.first() {
                return Err(TextError::InvalidBoundary { offset: o, len });
            }
            return Ok(BoundarySet::empty());
        }
        for &o in &offsets {
            if o == 0 || o > len {
                return Err(TextError::InvalidBoundary { offset: o, len });
            }
        }
        if offsets.last() != Some(&len) {
            offsets.push(len);
        }
        Ok(BoundarySet { offsets })
    }

    /// Wraps offsets already known to be sorted, strictly increasing, in
    /// range, and ending at `len`. Validates in debug builds only.
    pub fn from_sorted_unchecked(offsets: Vec<usize>) -> Self {
        debug_assert!(offsets.windows(2).all(|w| w[0] < w[1]));
        BoundarySet { offsets }
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn contains(&self, offset: usize) -> bool {
        self.offsets.binary_search(&offset).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.iter().copied()
    }
}

impl fmt::Display for BoundarySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, o) in self.offsets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, "}}")
    }
}

/// Coarse character classes used for window features and candidate scanning.
/// Every Unicode scalar maps to exactly one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum CharClass {
    Upper = 0,
    Lower = 1,
    Digit = 2,
    Whitespace = 3,
    Terminator = 4,
    OpenBracket = 5,
    CloseBracket = 6,
    Quote = 7,
    Comma = 8,
    Hyphen = 9,
    Slash = 10,
    OtherPunct = 11,
    Other = 12,
}

impl CharClass {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// The sentence terminator inventory. ':' and ';' are deliberately excluded.
pub const TERMINATORS: [char; 3] = ['.', '!', '?'];

pub fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

pub fn char_class(c: char) -> CharClass {
    match c {
        '.' | '!' | '?' => CharClass::Terminator,
        '(' | '[' | '{' => CharClass::OpenBracket,
        ')' | ']' | '}' => CharClass::CloseBracket,
        '"' | '\'' | '\u{2018}' | '\u{2019}' | '\u{201C}' | '\u{201D}' | '\u{2032}'
        | '\u{00AB}' | '\u{00BB}' => CharClass::Quote,
        ',' => CharClass::Comma,
        '-' | '\u{2010}' | '\u{2011}' | '\u{2012}' | '\u{2013}' | '\u{2014}' | '\u{2015}' => {
            CharClass::Hyphen
        }
        '/' | '\\' => CharClass::Slash,
        _ if c.is_whitespace() => CharClass::Whitespace,
        _ if c.is_ascii_digit() => CharClass::Digit,
        _ if c.is_uppercase() => CharClass::Upper,
        _ if c.is_lowercase() => CharClass::Lower,
        _ if c.is_numeric() => CharClass::Digit,
        _ if c.is_alphabetic() => CharClass::Other,
        _ if c.is_ascii_punctuation() => CharClass::OtherPunct,
        _ => {
            // Non-ASCII punctuation and symbols (Po, Sm, So, ...) all land in
            // OtherPunct; everything else (controls, marks, unassigned) is Other.
            if c.is_control() {
                CharClass::Other
            } else if c.is_alphanumeric() {
                CharClass::Other
            } else {
                CharClass::OtherPunct
            }
        }
    }
}

/// Converts a boundary set into the span partition it induces.
///
/// Concatenating the span texts reproduces the document exactly.
pub fn spans_from_boundaries(
    text: &TextDocument,
    boundaries: &BoundarySet,
) -> Result<Vec<SentenceSpan>, TextError> {
    let len = text.char_len();
    if len == 0 {
        if boundaries.is_empty() {
            return Ok(Vec::new());
        }
        return Err(TextError::InvalidBoundary { offset: boundaries.offsets()[0], len });
    }
    let offs = boundaries.offsets();
    if offs.last() != Some(&len) {
        return Err(TextError::InvalidBoundary {
            offset: offs.last().copied().unwrap_or(0),
            len,
        });
    }
    let mut spans = Vec::with_capacity(offs.len());
    let mut prev = 0usize;
    for &o in offs {
        if o <= prev || o > len {
            if o <= prev {
                return Err(TextError::UnsortedBoundary { prev, next: o });
            }
            return Err(TextError::InvalidBoundary { offset: o, len });
        }
        spans.push(SentenceSpan::new(prev, o));
        prev = o;
    }
    Ok(spans)
}

/// Normalizes a boundary forward past whitespace: the smallest `j >= i` such
/// that `text[j]` is not whitespace, or `len`. Idempotent.
pub fn snap_boundary(text: &TextDocument, i: usize) -> Result<usize, TextError> {
    let len = text.char_len();
    if i == 0 || i > len {
        return Err(TextError::OutOfRange { offset: i, len });
    }
    let mut j = i;
    while j < len && text.char_at(j).map(|c| c.is_whitespace()).unwrap_or(false) {
        j += 1;
    }
    Ok(j)
}

/// The contract every engine implements: a deterministic map from a document
/// to the boundary set partitioning it.
pub trait Segmenter {
    fn segment(&self, text: &TextDocument) -> BoundarySet;
}
