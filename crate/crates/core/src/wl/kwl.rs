//! k-WL over ordered k-tuples (k = 2, 3), non-folklore variant: the i-th
//! neighborhood of a tuple replaces position i with every node of the graph.

use super::coloring::{Color, Coloring};
use super::refine::{drive, Refinement};
use super::WlError;
use crate::graph::Graph;

/// Default node-count caps, keyed by k.
pub const DEFAULT_CAP_K2: usize = 128;
pub const DEFAULT_CAP_K3: usize = 32;

pub fn default_cap(k: usize) -> usize {
    if k == 2 {
        DEFAULT_CAP_K2
    } else {
        DEFAULT_CAP_K3
    }
}

struct Universe<'g> {
    graph: &'g Graph,
    /// Index of this universe's first tuple in the joint entity numbering.
    offset: usize,
    size: usize,
}

/// Tuples of one or more graphs refined together against one interner.
/// Tuple `(v_1, .., v_k)` of a graph with `n` nodes has local index
/// `sum v_i * n^(k-1-i)` (row-major).
pub(crate) struct TupleRefinement<'g> {
    k: usize,
    universes: Vec<Universe<'g>>,
}

impl<'g> TupleRefinement<'g> {
    pub(crate) fn new(graphs: &[&'g Graph], k: usize, cap: usize) -> Result<Self, WlError> {
        if !(2..=3).contains(&k) {
            return Err(WlError::UnsupportedK(k));
        }
        let mut universes = Vec::with_capacity(graphs.len());
        let mut offset = 0;
        for &graph in graphs {
            let n = graph.node_count();
            if n > cap {
                return Err(WlError::TupleCapExceeded {
                    k,
                    node_count: n,
                    cap,
                });
            }
            let size = n.pow(k as u32);
            universes.push(Universe {
                graph,
                offset,
                size,
            });
            offset += size;
        }
        Ok(TupleRefinement { k, universes })
    }

    /// Tuple counts per universe, in order.
    pub(crate) fn sizes(&self) -> Vec<usize> {
        self.universes.iter().map(|u| u.size).collect()
    }

    fn locate(&self, entity: usize) -> (&Universe<'g>, usize) {
        let u = self
            .universes
            .iter()
            .rev()
            .find(|u| u.offset <= entity)
            .expect("entity inside some universe");
        (u, entity - u.offset)
    }

    fn digits(&self, n: usize, mut local: usize) -> [usize; 3] {
        let mut out = [0; 3];
        for i in (0..self.k).rev() {
            out[i] = local % n;
            local /= n;
        }
        out
    }
}

impl Refinement for TupleRefinement<'_> {
    fn entity_count(&self) -> usize {
        self.universes.iter().map(|u| u.size).sum()
    }

    // atomic type: (labels by position, adjacency bits, equality bits) over i < j
    fn initial_signature(&self, entity: usize, buf: &mut Vec<u32>) {
        let (u, local) = self.locate(entity);
        let g = u.graph;
        let v = self.digits(g.node_count(), local);
        buf.extend((0..self.k).map(|i| g.label(v[i])));
        for i in 0..self.k {
            for j in i + 1..self.k {
                buf.push(g.has_edge(v[i], v[j]) as u32);
                buf.push((v[i] == v[j]) as u32);
            }
        }
    }

    // (old color, then per position i: sorted colors of N_{v,i})
    fn signature(&self, entity: usize, colors: &[Color], buf: &mut Vec<u32>) {
        let (u, local) = self.locate(entity);
        let n = u.graph.node_count();
        let v = self.digits(n, local);
        buf.push(colors[entity]);
        for i in 0..self.k {
            let stride = n.pow((self.k - 1 - i) as u32);
            let base = u.offset + local - v[i] * stride;
            buf.push(n as u32);
            let start = buf.len();
            buf.extend((0..n).map(|s| colors[base + s * stride]));
            buf[start..].sort_unstable();
        }
    }
}

/// k-WL refinement of a single graph with the default node cap.
pub fn refine_kwl(g: &Graph, k: usize) -> Result<Vec<Coloring>, WlError> {
    refine_kwl_with_cap(g, k, default_cap(k))
}

pub fn refine_kwl_with_cap(g: &Graph, k: usize, cap: usize) -> Result<Vec<Coloring>, WlError> {
    let refinement = TupleRefinement::new(&[g], k, cap)?;
    Ok(drive(&refinement, |_| true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};
    use crate::wl::refine_1wl;

    #[test]
    fn k2_on_single_edge_has_two_atomic_types() {
        let h = refine_kwl(&complete(2), 2).unwrap();
        let c0 = h[0].colors();
        assert_eq!(h[0].num_classes(), 2);
        // tuples (0,0),(0,1),(1,0),(1,1)
        assert_eq!(c0[0], c0[3]);
        assert_eq!(c0[1], c0[2]);
        assert_ne!(c0[0], c0[1]);
    }

    #[test]
    fn diagonal_of_2wl_tracks_1wl_partition() {
        for g in [path(5), cycle(5), path(2)] {
            let n = g.node_count();
            let tuples = refine_kwl(&g, 2).unwrap();
            let nodes = refine_1wl(&g);
            let last = tuples.last().unwrap().colors();
            let diag: Vec<Color> = (0..n).map(|v| last[v * n + v]).collect();
            let diag = Coloring::from_dense(renumber(&diag));
            assert!(diag.same_partition(nodes.last().unwrap()));
        }
    }

    fn renumber(colors: &[Color]) -> Vec<Color> {
        let mut map = std::collections::HashMap::new();
        colors
            .iter()
            .map(|c| {
                let next = map.len() as Color;
                *map.entry(*c).or_insert(next)
            })
            .collect()
    }

    #[test]
    fn cap_and_k_are_enforced() {
        assert_eq!(
            refine_kwl_with_cap(&path(5), 3, 4).unwrap_err(),
            WlError::TupleCapExceeded {
                k: 3,
                node_count: 5,
                cap: 4
            }
        );
        assert_eq!(refine_kwl(&path(2), 4).unwrap_err(), WlError::UnsupportedK(4));
    }

    #[test]
    fn three_wl_entity_layout() {
        let h = refine_kwl(&path(3), 3).unwrap();
        assert_eq!(h[0].len(), 27);
        // (0,1,2) and (2,1,0) are mirror images of the path
        let last = h.last().unwrap().colors();
        assert_eq!(last[5], last[2 * 9 + 3]);
    }
}
