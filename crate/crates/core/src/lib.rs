//! Sentence boundary detection for legal text.
//!
//! Two engines over shared text primitives:
//!
//! - [`punkt`]: an unsupervised statistical tokenizer that learns
//!   abbreviations, collocations, and sentence starters from raw text,
//!   extended with a curated legal knowledge base, citation protection, and
//!   enumeration guards.
//! - [`charboundary`]: a supervised random-forest classifier over character
//!   windows around terminator candidates, with runtime-adjustable decision
//!   thresholds.
//!
//! [`datasets`] loads and generates annotated corpora; [`bench`] provides
//! character-level evaluation, throughput measurement, sweeps, and reports.
//!
//! All offsets throughout the crate count Unicode scalar values, not bytes.

pub mod bench;
pub mod charboundary;
pub mod datasets;
pub mod punkt;
pub mod text;
