//! Exhaustive isomorphism oracle for small graphs.

use super::WlError;
use crate::graph::{Graph, NodeId};

pub const ORACLE_MAX_NODES: usize = 10;

/// True iff some label- and edge-preserving bijection maps `g1` onto `g2`.
/// Backtracking search; candidates must agree on label and degree.
pub fn brute_force_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool, WlError> {
    for g in [g1, g2] {
        if g.node_count() > ORACLE_MAX_NODES {
            return Err(WlError::OracleCapExceeded {
                node_count: g.node_count(),
                cap: ORACLE_MAX_NODES,
            });
        }
    }
    if g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let key = |g: &Graph, v: NodeId| (g.label(v), g.degree(v));
    let mut k1: Vec<_> = (0..g1.node_count()).map(|v| key(g1, v)).collect();
    let mut k2: Vec<_> = (0..g2.node_count()).map(|v| key(g2, v)).collect();
    k1.sort_unstable();
    k2.sort_unstable();
    if k1 != k2 {
        return Ok(false);
    }

    // map high-degree nodes first; they prune hardest
    let mut order: Vec<NodeId> = (0..g1.node_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g1.degree(v)));
    let mut mapping = vec![usize::MAX; g1.node_count()];
    let mut used = vec![false; g2.node_count()];
    Ok(extend(g1, g2, &order, 0, &mut mapping, &mut used))
}

fn extend(
    g1: &Graph,
    g2: &Graph,
    order: &[NodeId],
    depth: usize,
    mapping: &mut [NodeId],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for p in 0..g2.node_count() {
        if used[p] || g2.label(p) != g1.label(v) || g2.degree(p) != g1.degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g1.has_edge(u, v) == g2.has_edge(mapping[u], p));
        if !consistent {
            continue;
        }
        mapping[v] = p;
        used[p] = true;
        if extend(g1, g2, order, depth + 1, mapping, used) {
            return true;
        }
        used[p] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, repeat, star};

    #[test]
    fn oracle_examples() {
        let k3 = complete(3);
        assert!(brute_force_isomorphic(&k3, &k3.permute(&[2, 0, 1])).unwrap());
        assert!(!brute_force_isomorphic(&cycle(6), &repeat(&k3, 2)).unwrap());
        assert!(brute_force_isomorphic(&path(3), &star(2)).unwrap());
        assert!(!brute_force_isomorphic(&path(4), &star(3)).unwrap());
    }

    #[test]
    fn labels_matter() {
        let a = path(3).with_labels(vec![1, 0, 0]).unwrap();
        let b = path(3).with_labels(vec![0, 1, 0]).unwrap();
        assert!(!brute_force_isomorphic(&a, &b).unwrap());
        assert!(brute_force_isomorphic(&a, &a.permute(&[2, 1, 0])).unwrap());
    }

    #[test]
    fn cap_enforced() {
        let big = cycle(11);
        assert_eq!(
            brute_force_isomorphic(&big, &big).unwrap_err(),
            WlError::OracleCapExceeded {
                node_count: 11,
                cap: 10
            }
        );
    }
}
