//! Undirected simple labeled graphs, the edge-list text format, and the
//! structural queries the refinement engines need (neighbor edges,
//! triangles, per-node neighbor-communication counts).

use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

pub type NodeId = usize;
pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: NodeId },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: NodeId, v: NodeId },
    #[error("line {line}: node id {node} out of range (node_count = {node_count})")]
    NodeOutOfRange {
        line: usize,
        node: NodeId,
        node_count: usize,
    },
    #[error("node id {node} out of range (node_count = {node_count})")]
    NoSuchNode { node: NodeId, node_count: usize },
    #[error("self-loop on node {0}")]
    SelfLoopEdge(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    ParallelEdge(NodeId, NodeId),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// An undirected simple graph with one discrete label per node.
///
/// Adjacency lists are strictly increasing and symmetric; `edges` holds
/// every edge once as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
    labels: Vec<Label>,
}

/// One edge among the neighbors of `center`, with `endpoints.0 < endpoints.1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NeighborEdge {
    pub center: NodeId,
    pub endpoints: (NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    /// Number of edges among the neighbors of each node (#Message_NC).
    pub messages_nc_per_node: Vec<usize>,
    pub avg_messages_nc: Ratio<u64>,
    pub max_messages_nc: usize,
    pub max_degree: usize,
    /// `min(m, 3T)`: extra representations an NC layer must hold.
    pub memory_bound: usize,
}

impl Graph {
    /// Graph with `node_count` isolated, unlabeled nodes.
    pub fn empty(node_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); node_count],
            edges: Vec::new(),
            labels: vec![0; node_count],
        }
    }

    /// Builds a graph from an undirected edge list. Each edge may be given in
    /// either orientation but only once.
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); node_count];
        let mut canonical = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(GraphError::NoSuchNode { node, node_count });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoopEdge(u));
            }
            canonical.push((u.min(v), u.max(v)));
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::ParallelEdge(w[0].0, w[0].1));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edges: canonical,
            labels: vec![0; node_count],
        })
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self, GraphError> {
        if labels.len() != self.node_count() {
            return Err(GraphError::LabelCount {
                expected: self.node_count(),
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> Label {
        self.labels[v]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Position of the edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn check_node(&self, v: NodeId) -> Result<(), GraphError> {
        if v >= self.node_count() {
            return Err(GraphError::NoSuchNode {
                node: v,
                node_count: self.node_count(),
            });
        }
        Ok(())
    }

    /// Edges joining two neighbors of `v`, ascending by `(u1, u2)`.
    pub fn neighbor_edges(&self, v: NodeId) -> Result<Vec<NeighborEdge>, GraphError> {
        self.check_node(v)?;
        let mut out = Vec::new();
        self.for_each_neighbor_edge(v, |u1, u2| {
            out.push(NeighborEdge {
                center: v,
                endpoints: (u1, u2),
            })
        });
        Ok(out)
    }

    /// Calls `f(u1, u2)` for every edge among the neighbors of `v` in
    /// ascending order. Merges `N(v)` with `N(u1)` restricted to ids above `u1`.
    pub(crate) fn for_each_neighbor_edge(&self, v: NodeId, mut f: impl FnMut(NodeId, NodeId)) {
        let nv = &self.adjacency[v];
        for (i, &u1) in nv.iter().enumerate() {
            let rest = &nv[i + 1..];
            let nu = &self.adjacency[u1];
            let start = nu.partition_point(|&w| w <= u1);
            merge_common(rest, &nu[start..], |u2| f(u1, u2));
        }
    }

    pub fn neighbor_edge_count(&self, v: NodeId) -> usize {
        let mut count = 0;
        self.for_each_neighbor_edge(v, |_, _| count += 1);
        count
    }

    /// Counts each triangle once, at its edge `(u, v)` with `u < v < w`.
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for &(u, v) in &self.edges {
            let nu = &self.adjacency[u];
            let nv = &self.adjacency[v];
            let a = &nu[nu.partition_point(|&w| w <= v)..];
            let b = &nv[nv.partition_point(|&w| w <= v)..];
            merge_common(a, b, |_| count += 1);
        }
        count
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.node_count();
        let per_node: Vec<usize> = (0..n).map(|v| self.neighbor_edge_count(v)).collect();
        let total: usize = per_node.iter().sum();
        let triangle_count = self.triangle_count();
        let avg = if n == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(total as u64, n as u64)
        };
        GraphStats {
            node_count: n,
            edge_count: self.edge_count(),
            triangle_count,
            max_messages_nc: per_node.iter().copied().max().unwrap_or(0),
            messages_nc_per_node: per_node,
            avg_messages_nc: avg,
            max_degree: self.max_degree(),
            memory_bound: self.edge_count().min(3 * triangle_count),
        }
    }

    /// Relabels nodes: node `v` becomes `perm[v]`. Labels travel with nodes.
    ///
    /// Panics if `perm` is not a permutation of `0..node_count`.
    pub fn permute(&self, perm: &[NodeId]) -> Graph {
        let n = self.node_count();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut seen = vec![false; n];
        for &p in perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let mut labels = vec![0; n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v];
        }
        Graph::from_edges(n, &edges)
            .and_then(|g| g.with_labels(labels))
            .expect("permutation preserves simplicity")
    }

    /// Serializes to the edge-list text format. The label section is only
    /// written when some label is nonzero.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.node_count(), self.edge_count());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        if self.labels.iter().any(|&l| l != 0) {
            out.push_str("labels\n");
            for (v, l) in self.labels.iter().enumerate() {
                let _ = writeln!(out, "{v} {l}");
            }
        }
        out
    }
}

/// Calls `f` on each element common to two strictly increasing slices.
fn merge_common(a: &[NodeId], b: &[NodeId], mut f: impl FnMut(NodeId)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// `g2`'s nodes are shifted by `g1.node_count()`, which is returned as the offset.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> (Graph, usize) {
    let offset = g1.node_count();
    let mut adjacency = g1.adjacency.clone();
    adjacency.extend(
        g2.adjacency
            .iter()
            .map(|list| list.iter().map(|&u| u + offset).collect::<Vec<_>>()),
    );
    let mut edges = g1.edges.clone();
    edges.extend(g2.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
    let mut labels = g1.labels.clone();
    labels.extend_from_slice(&g2.labels);
    (
        Graph {
            adjacency,
            edges,
            labels,
        },
        offset,
    )
}

fn strip_line(raw: &str) -> Option<&str> {
    let line = raw.trim_end_matches('\r').trim();
    if line.is_empty() || line.starts_with('#') {
        None
    } else {
        Some(line)
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), GraphError> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = fields.next().ok_or_else(|| GraphError::Malformed {
            line: lineno,
            message: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| GraphError::Malformed {
            line: lineno,
            message: format!("invalid {what} {tok:?}"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(GraphError::Malformed {
            line: lineno,
            message: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

/// Parses the edge-list format:
///
/// ```text
/// <node_count> <edge_count>
/// <u> <v>          (edge_count lines, 0-based ids)
/// labels           (optional)
/// <v> <label_id>   (node_count lines)
/// ```
///
/// Lines starting with `#` and blank lines are skipped. LF and CRLF are accepted.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .filter_map(|(i, raw)| strip_line(raw).map(|l| (i + 1, l)));

    let (hline, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        message: "missing header `<node_count> <edge_count>`".into(),
    })?;
    let (node_count, edge_count) = parse_pair(header, hline)?;
    let last_line = text.split('\n').count();

    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); node_count];
    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let (lineno, line) = lines.next().ok_or_else(|| GraphError::Malformed {
            line: last_line,
            message: format!("expected {edge_count} edges, found {}", edges.len()),
        })?;
        let (u, v) = parse_pair(line, lineno)?;
        for node in [u, v] {
            if node >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    line: lineno,
                    node,
                    node_count,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop {
                line: lineno,
                node: u,
            });
        }
        if adjacency[u].contains(&v) {
            return Err(GraphError::DuplicateEdge {
                line: lineno,
                u,
                v,
            });
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
        edges.push((u.min(v), u.max(v)));
    }

    let mut labels = vec![0; node_count];
    if let Some((lineno, line)) = lines.next() {
        if line != "labels" {
            return Err(GraphError::Malformed {
                line: lineno,
                message: format!("unexpected line {line:?} after {edge_count} edges"),
            });
        }
        let mut assigned = vec![false; node_count];
        for _ in 0..node_count {
            let (lineno, line) = lines.next().ok_or_else(|| GraphError::Malformed {
                line: last_line,
                message: format!("label section needs {node_count} lines"),
            })?;
            let (v, label) = parse_pair(line, lineno)?;
            if v >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    line: lineno,
                    node: v,
                    node_count,
                });
            }
            if assigned[v] {
                return Err(GraphError::Malformed {
                    line: lineno,
                    message: format!("node {v} labeled twice"),
                });
            }
            assigned[v] = true;
            labels[v] = Label::try_from(label).map_err(|_| GraphError::Malformed {
                line: lineno,
                message: format!("label {label} too large"),
            })?;
        }
        if let Some((lineno, line)) = lines.next() {
            return Err(GraphError::Malformed {
                line: lineno,
                message: format!("trailing content {line:?}"),
            });
        }
    }

    for list in &mut adjacency {
        list.sort_unstable();
    }
    edges.sort_unstable();
    Ok(Graph {
        adjacency,
        edges,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.labels(), &[0, 0, 0]);
    }

    #[test]
    fn parses_isolated_nodes() {
        let g = parse_edge_list("2 0").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn duplicate_edge_reports_line() {
        let err = parse_edge_list("3 2\n0 1\n0 1").unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge { line: 3, u: 0, v: 1 });
        // reversed orientation is still the same undirected edge
        let err = parse_edge_list("3 2\n0 1\n1 0").unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { line: 3, .. }));
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(
            parse_edge_list("3 1\n2 2").unwrap_err(),
            GraphError::SelfLoop { line: 2, node: 2 }
        );
        assert_eq!(
            parse_edge_list("3 1\n# c\n0 3").unwrap_err(),
            GraphError::NodeOutOfRange {
                line: 3,
                node: 3,
                node_count: 3
            }
        );
        assert!(matches!(
            parse_edge_list("3 1\n0 x").unwrap_err(),
            GraphError::Malformed { line: 2, .. }
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n").unwrap_err(),
            GraphError::Malformed { .. }
        ));
    }

    #[test]
    fn comments_crlf_and_labels() {
        let text = "# path\r\n3 2\r\n0 1\r\n# mid\r\n1 2\r\nlabels\r\n0 0\r\n1 1\r\n2 0\r\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.labels(), &[0, 1, 0]);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn label_section_must_be_complete() {
        assert!(parse_edge_list("2 1\n0 1\nlabels\n0 1\n").is_err());
        assert!(parse_edge_list("2 1\n0 1\nlabels\n0 1\n0 2\n").is_err());
        assert!(parse_edge_list("2 1\n0 1\nfoo\n").is_err());
    }

    #[test]
    fn neighbor_edges_of_k4_and_c6() {
        let k4 = generators::complete(4);
        let ne: Vec<_> = k4.neighbor_edges(0).unwrap().iter().map(|e| e.endpoints).collect();
        assert_eq!(ne, vec![(1, 2), (1, 3), (2, 3)]);
        let c6 = generators::cycle(6);
        for v in 0..6 {
            assert!(c6.neighbor_edges(v).unwrap().is_empty());
        }
        assert_eq!(
            k4.neighbor_edges(4).unwrap_err(),
            GraphError::NoSuchNode { node: 4, node_count: 4 }
        );
    }

    #[test]
    fn neighbor_edges_of_wheel_hub() {
        let w5 = generators::wheel(5);
        let ne: Vec<_> = w5.neighbor_edges(0).unwrap().iter().map(|e| e.endpoints).collect();
        assert_eq!(ne, vec![(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn stats_examples() {
        let s = generators::complete(4).stats();
        assert_eq!(s.triangle_count, 4);
        assert_eq!(s.messages_nc_per_node, vec![3, 3, 3, 3]);
        assert_eq!(s.memory_bound, 6);
        assert_eq!(s.avg_messages_nc, Ratio::from_integer(3));

        let s = generators::cycle(6).stats();
        assert_eq!(s.triangle_count, 0);
        assert_eq!(s.avg_messages_nc, Ratio::from_integer(0));
        assert_eq!(s.memory_bound, 0);

        let s = generators::wheel(5).stats();
        assert_eq!(s.triangle_count, 5);
        assert_eq!(s.messages_nc_per_node, vec![5, 2, 2, 2, 2, 2]);
        assert_eq!(s.max_degree, 5);
        assert_eq!(s.max_messages_nc, 5);
    }

    #[test]
    fn union_examples() {
        let k3 = generators::complete(3);
        let (u, off) = disjoint_union(&k3, &k3);
        assert_eq!((u.node_count(), u.edge_count(), off), (6, 6, 3));
        assert!(u.has_edge(3, 5) && !u.has_edge(2, 3));

        let (u, off) = disjoint_union(&Graph::empty(0), &k3);
        assert_eq!((u.clone(), off), (k3.clone(), 0));

        let c4 = generators::cycle(4);
        let (u, _) = disjoint_union(&c4, &c4);
        assert_eq!((u.node_count(), u.edge_count()), (8, 8));
        assert_eq!(u.stats().triangle_count, 0);
    }

    #[test]
    fn union_keeps_labels() {
        let a = generators::path(2).with_labels(vec![1, 2]).unwrap();
        let b = generators::path(2).with_labels(vec![3, 4]).unwrap();
        let (u, _) = disjoint_union(&a, &b);
        assert_eq!(u.labels(), &[1, 2, 3, 4]);
    }

    #[test]
    fn edge_index_lookup() {
        let g = generators::cycle(4);
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(g.edge_index(3, 0), Some(1));
        assert_eq!(g.edge_index(0, 2), None);
    }

    #[test]
    fn from_edges_rejects_parallel_and_loops() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::ParallelEdge(0, 1)
        );
        assert_eq!(Graph::from_edges(3, &[(1, 1)]).unwrap_err(), GraphError::SelfLoopEdge(1));
    }
}
