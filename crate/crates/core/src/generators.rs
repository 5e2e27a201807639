//! Small named graph families and seeded random graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{disjoint_union, Graph, NodeId};

fn build(n: usize, edges: &[(NodeId, NodeId)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced a simple graph")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    build(n, &edges)
}

/// `C_n` for `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    build(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build(n, &edges)
}

/// `K_{1,leaves}` with the hub at node 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    build(leaves + 1, &edges)
}

/// Hub 0 joined to the cycle `1..=rim`.
pub fn wheel(rim: usize) -> Graph {
    assert!(rim >= 3);
    let mut edges: Vec<_> = (1..=rim).map(|v| (0, v)).collect();
    edges.extend((1..=rim).map(|v| (v, v % rim + 1)));
    build(rim + 1, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    build(a + b, &edges)
}

/// Circular ladder `C_k x K_2`; `prism(3)` is the triangular prism.
pub fn prism(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    build(2 * k, &edges)
}

pub fn hypercube(dim: u32) -> Graph {
    let n = 1usize << dim;
    let mut edges = Vec::new();
    for v in 0..n {
        for bit in 0..dim {
            let u = v ^ (1 << bit);
            if v < u {
                edges.push((v, u));
            }
        }
    }
    build(n, &edges)
}

/// Disjoint union of `copies` copies of `g`.
pub fn repeat(g: &Graph, copies: usize) -> Graph {
    (0..copies).fold(Graph::empty(0), |acc, _| disjoint_union(&acc, g).0)
}

/// Uniform random permutation of `0..n`.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<NodeId> {
    let mut perm: Vec<NodeId> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, &edges)
}

/// Uniform graph with exactly `m` edges (clamped to `n(n-1)/2`).
pub fn random_gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let mut all = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            all.push((u, v));
        }
    }
    all.shuffle(rng);
    all.truncate(m);
    build(n, &all)
}

/// Random graph with `n` nodes and roughly `n * avg_degree / 2` edges,
/// sampled with replacement and deduplicated. Suited to large sparse graphs.
pub fn random_sparse<R: Rng + ?Sized>(n: usize, avg_degree: f64, rng: &mut R) -> Graph {
    let target = ((n as f64) * avg_degree / 2.0).round() as usize;
    let mut edges = Vec::with_capacity(target);
    if n >= 2 {
        while edges.len() < target {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    build(n, &edges)
}

/// Random triangle-free graph: candidate edges arrive in random order and are
/// kept with probability `p` unless they would close a triangle.
pub fn random_triangle_free<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut candidates = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            candidates.push((u, v));
        }
    }
    candidates.shuffle(rng);
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for (u, v) in candidates {
        if !rng.random_bool(p) {
            continue;
        }
        if (0..n).any(|w| adj[u][w] && adj[v][w]) {
            continue;
        }
        adj[u][v] = true;
        adj[v][u] = true;
        edges.push((u, v));
    }
    build(n, &edges)
}

/// Random disjoint union of cycles covering `n >= 3` nodes, shuffled.
pub fn random_two_regular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 3);
    let mut lengths = Vec::new();
    let mut left = n;
    while left > 0 {
        // every cycle, including the remainder, keeps at least 3 nodes
        let len = if left < 6 { left } else { rng.random_range(3..=left - 3) };
        lengths.push(len);
        left -= len;
    }
    let g = lengths
        .iter()
        .fold(Graph::empty(0), |acc, &len| disjoint_union(&acc, &cycle(len)).0);
    let perm = random_permutation(n, rng);
    g.permute(&perm)
}

/// Random simple cubic graph on an even number of nodes (pairing model with
/// rejection). Returns `None` if no simple pairing was found.
pub fn random_cubic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Option<Graph> {
    assert!(n.is_multiple_of(2) && n >= 4);
    'attempt: for _ in 0..1000 {
        let mut points: Vec<NodeId> = (0..n).flat_map(|v| [v, v, v]).collect();
        points.shuffle(rng);
        let mut edges = Vec::new();
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || edges.contains(&(u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Some(build(n, &edges));
    }
    None
}

/// Random labels drawn from `0..num_labels`.
pub fn with_random_labels<R: Rng + ?Sized>(g: Graph, num_labels: u32, rng: &mut R) -> Graph {
    let labels = (0..g.node_count()).map(|_| rng.random_range(0..num_labels)).collect();
    g.with_labels(labels).expect("label count matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_sizes() {
        assert_eq!(path(3).edge_count(), 2);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(star(3).degree(0), 3);
        assert_eq!(wheel(5).edge_count(), 10);
        assert_eq!(complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(prism(3).stats().triangle_count, 2);
        assert_eq!(hypercube(3).edge_count(), 12);
        assert_eq!(repeat(&complete(3), 2).edge_count(), 6);
    }

    #[test]
    fn random_families_have_promised_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.random_range(3..12);
            assert_eq!(random_triangle_free(n, 0.6, &mut rng).triangle_count(), 0);
            let g = random_two_regular(n, &mut rng);
            assert!((0..n).all(|v| g.degree(v) == 2));
        }
        let g = random_cubic(8, &mut rng).unwrap();
        assert!((0..8).all(|v| g.degree(v) == 3));
        let g = random_gnm(7, 9, &mut rng);
        assert_eq!(g.edge_count(), 9);
    }
}
