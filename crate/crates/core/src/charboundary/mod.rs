//! Supervised sentence boundary classifier: a random forest over character
//! windows around terminator candidates, with versioned model serialization
//! and safe-point document partitioning.

mod features;
mod forest;
mod model_io;
mod segmenter;

pub use features::{
    candidate_positions, extract_features, FeatureError, FeatureLayout, NEWLINE_CAP, PAD, SCAN_CAP,
};
pub use forest::{
    train_forest, ForestError, ForestModel, LabeledCandidate, ModelConfig, Tree, TreeNode,
};
pub use model_io::{deserialize_model, serialize_model, ModelIoError, MODEL_FORMAT};
pub use segmenter::{
    boundaries_from_hits, label_candidates, partition_document, train_charboundary, CharSegmenter,
    PartitionError,
};
