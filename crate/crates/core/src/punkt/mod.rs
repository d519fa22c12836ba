//! Unsupervised statistical sentence tokenizer with legal-domain extensions:
//! an abbreviation/collocation trainer, a curated legal knowledge base with
//! citation and enumeration patterns, and a fast path for terminator-free
//! text.

mod kb;
mod params;
mod segmenter;
pub mod tokens;
mod trainer;

pub use kb::{AbbrevCategory, KbError, LegalKnowledgeBase, CITATION_WINDOW};
pub use params::{ortho, ParamsError, PunktParameters, PARAMS_FORMAT};
pub use segmenter::{fast_path_check, PunktSegmenter};
pub use trainer::{
    log_likelihood, score_abbreviation, train, PunktConfig, TokenTypeStats, TrainError,
};
