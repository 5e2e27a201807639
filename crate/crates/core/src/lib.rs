//! Graph refinement toolkit built around NC-1-WL, the 1-WL variant whose
//! per-node signature also includes the multiset of color pairs on edges
//! among the node's neighbors.
//!
//! * [`graph`]: simple labeled graphs, the edge-list format, neighbor edges
//!   and triangle statistics.
//! * [`wl`]: 1-WL, NC-1-WL and k-WL engines plus joint pairwise comparison.
//! * [`codec`]: exact injective encodings of multisets and multisets of
//!   multisets over the rationals.
//! * [`nn`]: NC-GNN and GIN layers with forward, backward and readout.
//! * [`corpus`]: named graph pairs with expected verdicts.
//! * [`suite`]: the corpus and random-pair property checks.

pub mod codec;
pub mod corpus;
pub mod generators;
pub mod graph;
pub mod nn;
pub mod suite;
pub mod wl;

pub use graph::{disjoint_union, parse_edge_list, Graph, GraphError, GraphStats, NeighborEdge};
pub use wl::{compare, Method, RefinementReport, Verdict};
