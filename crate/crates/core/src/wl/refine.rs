//! Node refinements (1-WL and NC-1-WL) and the iteration driver shared with
//! the tuple refinement.

use std::sync::OnceLock;

use rayon::prelude::*;

use super::coloring::{Color, Coloring, SignatureInterner};
use crate::graph::{Graph, NodeId};

/// Entities below this count are always refined sequentially.
const PARALLEL_THRESHOLD: usize = 2048;

fn parallel_enabled() -> bool {
    static ENABLED: OnceLock<bool> = OnceLock::new();
    *ENABLED.get_or_init(|| std::env::var("WL_NO_PARALLEL").map_or(true, |v| v != "1"))
}

/// One refinement scheme: how to build the initial and the per-round
/// signature of each entity. Signatures are canonical word sequences.
pub(crate) trait Refinement: Sync {
    fn entity_count(&self) -> usize;
    fn initial_signature(&self, entity: usize, buf: &mut Vec<u32>);
    fn signature(&self, entity: usize, colors: &[Color], buf: &mut Vec<u32>);
}

/// Computes every signature (possibly in parallel) and interns them in
/// entity order, so ids do not depend on scheduling.
fn intern_round<R: Refinement>(
    refinement: &R,
    sign: impl Fn(usize, &mut Vec<u32>) + Sync,
) -> Coloring {
    let n = refinement.entity_count();
    let signatures: Vec<Vec<u32>> = if parallel_enabled() && n >= PARALLEL_THRESHOLD {
        (0..n)
            .into_par_iter()
            .map(|e| {
                let mut buf = Vec::new();
                sign(e, &mut buf);
                buf
            })
            .collect()
    } else {
        (0..n)
            .map(|e| {
                let mut buf = Vec::new();
                sign(e, &mut buf);
                buf
            })
            .collect()
    };
    let mut interner = SignatureInterner::new();
    let colors = signatures.into_iter().map(|s| interner.intern(s)).collect();
    Coloring::from_dense(colors)
}

/// Runs a refinement to convergence. `keep_going` sees every coloring as it
/// is produced (initial first) and may stop the run early by returning false.
/// Returns all colorings produced; the run converged iff the last two share a
/// partition.
pub(crate) fn drive<R: Refinement>(
    refinement: &R,
    mut keep_going: impl FnMut(&Coloring) -> bool,
) -> Vec<Coloring> {
    let mut history = vec![intern_round(refinement, |e, buf| {
        refinement.initial_signature(e, buf)
    })];
    loop {
        let last = history.last().expect("history starts non-empty");
        if !keep_going(last) {
            break;
        }
        if history.len() >= 2 && last.same_partition(&history[history.len() - 2]) {
            break;
        }
        let colors = last.colors();
        let next = intern_round(refinement, |e, buf| refinement.signature(e, colors, buf));
        history.push(next);
    }
    history
}

/// Edges among neighbors, flattened per center node (CSR layout).
struct NeighborEdgeIndex {
    offsets: Vec<usize>,
    pairs: Vec<(NodeId, NodeId)>,
}

impl NeighborEdgeIndex {
    fn build(g: &Graph) -> Self {
        let mut offsets = Vec::with_capacity(g.node_count() + 1);
        let mut pairs = Vec::new();
        offsets.push(0);
        for v in 0..g.node_count() {
            g.for_each_neighbor_edge(v, |a, b| pairs.push((a, b)));
            offsets.push(pairs.len());
        }
        NeighborEdgeIndex { offsets, pairs }
    }

    fn of(&self, v: NodeId) -> &[(NodeId, NodeId)] {
        &self.pairs[self.offsets[v]..self.offsets[v + 1]]
    }
}

pub(crate) struct NodeRefinement<'g> {
    graph: &'g Graph,
    neighbor_edges: Option<NeighborEdgeIndex>,
}

impl<'g> NodeRefinement<'g> {
    pub(crate) fn one_wl(graph: &'g Graph) -> Self {
        NodeRefinement {
            graph,
            neighbor_edges: None,
        }
    }

    pub(crate) fn nc_one_wl(graph: &'g Graph) -> Self {
        NodeRefinement {
            graph,
            neighbor_edges: Some(NeighborEdgeIndex::build(graph)),
        }
    }
}

impl Refinement for NodeRefinement<'_> {
    fn entity_count(&self) -> usize {
        self.graph.node_count()
    }

    fn initial_signature(&self, v: usize, buf: &mut Vec<u32>) {
        buf.push(self.graph.label(v));
    }

    // (old color, |N(v)|, sorted neighbor colors[, |W|, sorted (min, max) pairs])
    fn signature(&self, v: usize, colors: &[Color], buf: &mut Vec<u32>) {
        let neighbors = self.graph.neighbors(v);
        buf.push(colors[v]);
        buf.push(neighbors.len() as u32);
        let start = buf.len();
        buf.extend(neighbors.iter().map(|&u| colors[u]));
        buf[start..].sort_unstable();

        if let Some(index) = &self.neighbor_edges {
            let mut pairs: Vec<(Color, Color)> = index
                .of(v)
                .iter()
                .map(|&(a, b)| {
                    let (ca, cb) = (colors[a], colors[b]);
                    (ca.min(cb), ca.max(cb))
                })
                .collect();
            pairs.sort_unstable();
            buf.push(pairs.len() as u32);
            for (a, b) in pairs {
                buf.push(a);
                buf.push(b);
            }
        }
    }
}

/// 1-WL color refinement. Returns the initial coloring followed by one
/// coloring per round; the last round reproduces the previous partition.
pub fn refine_1wl(g: &Graph) -> Vec<Coloring> {
    drive(&NodeRefinement::one_wl(g), |_| true)
}

/// NC-1-WL: 1-WL whose signature also carries the multiset of color pairs
/// on edges joining two neighbors.
pub fn refine_nc1wl(g: &Graph) -> Vec<Coloring> {
    drive(&NodeRefinement::nc_one_wl(g), |_| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, repeat, star};
    use crate::graph::disjoint_union;

    fn class_counts(history: &[Coloring]) -> Vec<usize> {
        history.iter().map(Coloring::num_classes).collect()
    }

    #[test]
    fn cycle_converges_immediately() {
        let h = refine_1wl(&cycle(6));
        assert_eq!(class_counts(&h), vec![1, 1]);
    }

    #[test]
    fn path_splits_endpoints_from_middle() {
        let h = refine_1wl(&path(3));
        assert_eq!(class_counts(&h), vec![1, 2, 2]);
        let c = h[1].colors();
        assert_eq!(c[0], c[2]);
        assert_ne!(c[0], c[1]);
    }

    #[test]
    fn star_splits_hub_from_leaves() {
        let h = refine_1wl(&star(3));
        assert_eq!(class_counts(&h), vec![1, 2, 2]);
        assert_eq!(h[1].histogram(), &vec![(0, 1), (1, 3)]);
    }

    #[test]
    fn labels_seed_initial_colors() {
        let g = path(3).with_labels(vec![5, 2, 5]).unwrap();
        let h = refine_1wl(&g);
        assert_eq!(h[0].colors(), &[0, 1, 0]);
        assert_eq!(class_counts(&h), vec![2, 2]);
    }

    #[test]
    fn nc_separates_triangle_from_cycle_nodes() {
        let (g, _) = disjoint_union(&complete(3), &cycle(6));
        let h = refine_nc1wl(&g);
        assert_eq!(h[1].num_classes(), 2);
        let c = h[1].colors();
        assert!(c[..3].iter().all(|&x| x == c[0]));
        assert!(c[3..].iter().all(|&x| x == c[3]));
        assert_ne!(c[0], c[3]);
        // plain 1-WL keeps one class on the 2-regular union
        assert_eq!(class_counts(&refine_1wl(&g)), vec![1, 1]);
    }

    #[test]
    fn nc_on_triangle_free_matches_1wl_exactly() {
        let g = disjoint_union(&path(4), &star(3)).0;
        assert_eq!(refine_1wl(&g), refine_nc1wl(&g));
    }

    #[test]
    fn k3_is_one_class_under_nc() {
        assert_eq!(class_counts(&refine_nc1wl(&complete(3))), vec![1, 1]);
        assert_eq!(class_counts(&refine_nc1wl(&repeat(&complete(3), 2))), vec![1, 1]);
    }

    #[test]
    fn empty_graph() {
        let h = refine_1wl(&Graph::empty(0));
        assert_eq!(h.len(), 2);
        assert_eq!(h[0].num_classes(), 0);
    }
}
