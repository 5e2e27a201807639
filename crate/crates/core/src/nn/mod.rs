//! NC-GNN and GIN layers on dense `f64` features, with hand-written
//! reverse-mode gradients.

mod embed;
mod layer;
mod matrix;
mod mlp;

pub use embed::{
    canonical_pair_order, embed_graph, embed_graph_gin, linf_distance, one_hot_features, random_layers,
    readout_sum, readout_sum_backward,
};
pub use layer::{
    backward, backward_edgefeat, gin_backward, gin_backward_edgefeat, gin_layer_forward,
    gin_layer_forward_edgefeat, nc_gnn_layer_forward, nc_gnn_layer_forward_edgefeat, EdgeFeatures,
    LayerGradients, NcGnnLayerParams,
};
pub use matrix::Matrix;
pub use mlp::MlpParams;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NnError {
    #[error("{what}: expected dimension {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("non-finite value in input")]
    NonFinite,
    #[error("node {node} has label {label}, outside 0..{num_labels}")]
    LabelOutOfRange { node: usize, label: u32, num_labels: usize },
    #[error("expected {expected} edge feature rows, got {got}")]
    MissingEdgeFeatures { expected: usize, got: usize },
}
