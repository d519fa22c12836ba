//! Model artifact format `charboundary-model/1`.
//!
//! Floating-point values are written as shortest round-trip decimal strings,
//! so serialize → deserialize → serialize is byte-identical and the model is
//! reproducible across platforms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::features::FeatureLayout;
use super::forest::{ForestModel, ModelConfig, Tree, TreeNode};

pub const MODEL_FORMAT: &str = "charboundary-model/1";

#[derive(Debug, Error, PartialEq)]
pub enum ModelIoError {
    #[error("malformed model document: {0}")]
    Format(String),
    #[error("unsupported model format {found:?}, expected {MODEL_FORMAT:?}")]
    Version { found: String },
    #[error("layout does not match config: {0}")]
    LayoutMismatch(String),
}

fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn parse_f64(s: &str, what: &str) -> Result<f64, ModelIoError> {
    s.parse::<f64>()
        .map_err(|_| ModelIoError::Format(format!("bad {what} value {s:?}")))
}

#[derive(Serialize, Deserialize)]
struct ConfigRec {
    window: usize,
    n_trees: usize,
    max_depth: usize,
    threshold: String,
    seed: u64,
}

#[derive(Serialize, Deserialize)]
struct NodeRec {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    feature: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    left: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    right: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fraction: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct TreeRec {
    nodes: Vec<NodeRec>,
}

#[derive(Serialize, Deserialize)]
struct ModelRec {
    format: String,
    config: ConfigRec,
    layout: FeatureLayout,
    trees: Vec<TreeRec>,
}

pub fn serialize_model(model: &ForestModel) -> String {
    let rec = ModelRec {
        format: MODEL_FORMAT.to_string(),
        config: ConfigRec {
            window: model.config.window,
            n_trees: model.config.n_trees,
            max_depth: model.config.max_depth,
            threshold: fmt_f64(model.config.threshold),
            seed: model.config.seed,
        },
        layout: model.layout.clone(),
        trees: model
            .trees
            .iter()
            .map(|t| TreeRec {
                nodes: t
                    .nodes
                    .iter()
                    .map(|n| match n {
                        TreeNode::Split { feature, threshold, left, right } => NodeRec {
                            kind: "split".into(),
                            feature: Some(*feature),
                            threshold: Some(fmt_f64(*threshold)),
                            left: Some(*left),
                            right: Some(*right),
                            fraction: None,
                        },
                        TreeNode::Leaf { fraction } => NodeRec {
                            kind: "leaf".into(),
                            feature: None,
                            threshold: None,
                            left: None,
                            right: None,
                            fraction: Some(fmt_f64(*fraction)),
                        },
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string(&rec).expect("model record serializes")
}

pub fn deserialize_model(input: &str) -> Result<ForestModel, ModelIoError> {
    let rec: ModelRec =
        serde_json::from_str(input).map_err(|e| ModelIoError::Format(e.to_string()))?;
    if rec.format != MODEL_FORMAT {
        return Err(ModelIoError::Version { found: rec.format });
    }
    if !rec.layout.validate() {
        return Err(ModelIoError::Format("invalid feature layout".into()));
    }
    if rec.layout != FeatureLayout::for_window(rec.config.window) {
        return Err(ModelIoError::LayoutMismatch(format!(
            "layout window {} vs config window {}",
            rec.layout.window, rec.config.window
        )));
    }
    if rec.trees.len() != rec.config.n_trees {
        return Err(ModelIoError::Format(format!(
            "expected {} trees, found {}",
            rec.config.n_trees,
            rec.trees.len()
        )));
    }

    let config = ModelConfig {
        window: rec.config.window,
        n_trees: rec.config.n_trees,
        max_depth: rec.config.max_depth,
        threshold: parse_f64(&rec.config.threshold, "threshold")?,
        seed: rec.config.seed,
    };
    if !(0.0..=1.0).contains(&config.threshold) {
        return Err(ModelIoError::Format(format!(
            "threshold {} outside [0, 1]",
            config.threshold
        )));
    }

    let mut trees = Vec::with_capacity(rec.trees.len());
    for (ti, trec) in rec.trees.iter().enumerate() {
        if trec.nodes.is_empty() {
            return Err(ModelIoError::Format(format!("tree {ti} has no nodes")));
        }
        let n_nodes = trec.nodes.len();
        let mut nodes = Vec::with_capacity(n_nodes);
        for (ni, nrec) in trec.nodes.iter().enumerate() {
            match nrec.kind.as_str() {
                "split" => {
                    let feature = nrec
                        .feature
                        .ok_or_else(|| ModelIoError::Format(format!("split {ti}/{ni} lacks feature")))?;
                    if feature >= rec.layout.len() {
                        return Err(ModelIoError::Format(format!(
                            "split {ti}/{ni} feature {feature} out of range"
                        )));
                    }
                    let threshold = parse_f64(
                        nrec.threshold
                            .as_deref()
                            .ok_or_else(|| ModelIoError::Format(format!("split {ti}/{ni} lacks threshold")))?,
                        "threshold",
                    )?;
                    let left = nrec
                        .left
                        .ok_or_else(|| ModelIoError::Format(format!("split {ti}/{ni} lacks left")))?;
                    let right = nrec
                        .right
                        .ok_or_else(|| ModelIoError::Format(format!("split {ti}/{ni} lacks right")))?;
                    // Forward-pointing children guarantee the tree is acyclic.
                    if left <= ni || right <= ni || left >= n_nodes || right >= n_nodes {
                        return Err(ModelIoError::Format(format!(
                            "split {ti}/{ni} has invalid children {left}/{right}"
                        )));
                    }
                    nodes.push(TreeNode::Split { feature, threshold, left, right });
                }
                "leaf" => {
                    let fraction = parse_f64(
                        nrec.fraction
                            .as_deref()
                            .ok_or_else(|| ModelIoError::Format(format!("leaf {ti}/{ni} lacks fraction")))?,
                        "fraction",
                    )?;
                    if !(0.0..=1.0).contains(&fraction) {
                        return Err(ModelIoError::Format(format!(
                            "leaf {ti}/{ni} fraction {fraction} outside [0, 1]"
                        )));
                    }
                    nodes.push(TreeNode::Leaf { fraction });
                }
                other => {
                    return Err(ModelIoError::Format(format!(
                        "node {ti}/{ni} has unknown kind {other:?}"
                    )))
                }
            }
        }
        trees.push(Tree { nodes });
    }

    Ok(ForestModel { config, layout: rec.layout, trees })
}
