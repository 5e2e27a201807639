//! Color refinement engines: 1-WL, NC-1-WL and k-WL (k = 2, 3), joint
//! pairwise comparison, and a brute-force isomorphism oracle.
//!
//! HASH is exact signature interning, never a probabilistic hash: every
//! round maps each entity's canonical signature to a dense id through a
//! dictionary, so distinct signatures always receive distinct colors.

mod coloring;
mod compare;
mod iso;
mod kwl;
mod refine;

use thiserror::Error;

pub use coloring::{histogram_of, Color, Coloring, Histogram, SignatureInterner};
pub use compare::{compare, compare_with_cap, refine, refine_with_cap, Method, RefinementReport, Verdict};
pub use iso::{brute_force_isomorphic, ORACLE_MAX_NODES};
pub use kwl::{default_cap, refine_kwl, refine_kwl_with_cap, DEFAULT_CAP_K2, DEFAULT_CAP_K3};
pub use refine::{refine_1wl, refine_nc1wl};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WlError {
    #[error("{k}-WL on {node_count} nodes exceeds the node cap of {cap}")]
    TupleCapExceeded { k: usize, node_count: usize, cap: usize },
    #[error("k-WL is only implemented for k = 2 and k = 3, got k = {0}")]
    UnsupportedK(usize),
    #[error("isomorphism oracle limited to {cap} nodes, got {node_count}")]
    OracleCapExceeded { node_count: usize, cap: usize },
    #[error("unknown method {0:?} (expected 1wl, nc1wl, 2wl or 3wl)")]
    UnknownMethod(String),
}
