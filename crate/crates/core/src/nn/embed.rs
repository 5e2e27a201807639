use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::layer::{gin_layer_forward, nc_gnn_layer_forward, NcGnnLayerParams};
use super::matrix::Matrix;
use super::NnError;
use crate::graph::Graph;

/// Row `v` is the one-hot vector of `g.label(v)`.
pub fn one_hot_features(g: &Graph, num_labels: usize) -> Result<Matrix, NnError> {
    let mut m = Matrix::zeros(g.node_count(), num_labels);
    for v in 0..g.node_count() {
        let label = g.label(v) as usize;
        if label >= num_labels {
            return Err(NnError::LabelOutOfRange {
                node: v,
                label: g.label(v),
                num_labels,
            });
        }
        m.set(v, label, 1.0);
    }
    Ok(m)
}

/// Column-wise sum over rows, accumulated top to bottom.
pub fn readout_sum(h: &Matrix) -> Vec<f64> {
    let mut out = vec![0.0; h.cols()];
    for r in 0..h.rows() {
        for (o, &x) in out.iter_mut().zip(h.row(r)) {
            *o += x;
        }
    }
    out
}

/// Gradient of `readout_sum` pulled back to every row.
pub fn readout_sum_backward(upstream: &[f64], rows: usize) -> Matrix {
    Matrix::from_fn(rows, upstream.len(), |_, c| upstream[c])
}

fn check_chain(layers: &[NcGnnLayerParams], num_labels: usize) -> Result<(), NnError> {
    let mut dim = num_labels;
    for layer in layers {
        if layer.input_dim() != dim {
            return Err(NnError::DimensionMismatch {
                what: "layer input",
                expected: dim,
                got: layer.input_dim(),
            });
        }
        dim = layer.output_dim();
    }
    Ok(())
}

/// One-hot features, then each NC-GNN layer in turn, then sum readout.
pub fn embed_graph(g: &Graph, layers: &[NcGnnLayerParams], num_labels: usize) -> Result<Vec<f64>, NnError> {
    check_chain(layers, num_labels)?;
    let mut h = one_hot_features(g, num_labels)?;
    for layer in layers {
        h = nc_gnn_layer_forward(g, &h, layer)?;
    }
    Ok(readout_sum(&h))
}

/// Same as [`embed_graph`] with GIN layers (each layer's `mlp2` is ignored).
pub fn embed_graph_gin(g: &Graph, layers: &[NcGnnLayerParams], num_labels: usize) -> Result<Vec<f64>, NnError> {
    check_chain(layers, num_labels)?;
    let mut h = one_hot_features(g, num_labels)?;
    for layer in layers {
        h = gin_layer_forward(g, &h, &layer.mlp1, layer.epsilon)?;
    }
    Ok(readout_sum(&h))
}

/// `count` seeded layers: the first reads `num_labels` features, all map to
/// `dim` outputs through `dim` hidden units.
pub fn random_layers(num_labels: usize, dim: usize, count: usize, seed: u64) -> Vec<NcGnnLayerParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut input = num_labels;
    (0..count)
        .map(|_| {
            let layer = NcGnnLayerParams::random(input, dim, dim, &mut rng);
            input = dim;
            layer
        })
        .collect()
}

pub fn linf_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Relabels both graphs so node ids follow their converged joint NC-1-WL
/// color (ties keep the original order). Equal-color nodes then sit at the
/// same positions in both graphs, making floating-point summation orders
/// comparable across the pair.
pub fn canonical_pair_order(g1: &Graph, g2: &Graph) -> (Graph, Graph) {
    let (union, offset) = crate::graph::disjoint_union(g1, g2);
    let history = crate::wl::refine_nc1wl(&union);
    let colors = history.last().expect("non-empty history").colors();
    let relabel = |g: &Graph, base: usize| {
        let mut order: Vec<usize> = (0..g.node_count()).collect();
        order.sort_by_key(|&v| (colors[base + v], v));
        let mut perm = vec![0; g.node_count()];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        g.permute(&perm)
    };
    (relabel(g1, 0), relabel(g2, offset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, repeat};

    #[test]
    fn one_hot_rows() {
        let m = one_hot_features(&complete(3), 1).unwrap();
        assert_eq!(m.data(), &[1.0, 1.0, 1.0]);
        let p3 = path(3).with_labels(vec![0, 1, 0]).unwrap();
        let m = one_hot_features(&p3, 2).unwrap();
        assert_eq!(m.data(), &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0]);
        assert_eq!(
            one_hot_features(&p3, 1).unwrap_err(),
            NnError::LabelOutOfRange { node: 1, label: 1, num_labels: 1 }
        );
    }

    #[test]
    fn readout_examples() {
        assert_eq!(readout_sum(&Matrix::from_fn(3, 2, |_, _| 1.0)), vec![3.0, 3.0]);
        assert_eq!(readout_sum(&Matrix::zeros(0, 4)), vec![0.0; 4]);
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 5.0]]);
        assert_eq!(readout_sum(&m), readout_sum(&m.permute_rows(&[1, 0])));
    }

    #[test]
    fn zero_layers_give_label_histogram() {
        let g = path(4).with_labels(vec![2, 0, 2, 2]).unwrap();
        assert_eq!(embed_graph(&g, &[], 3).unwrap(), vec![1.0, 0.0, 3.0]);
    }

    #[test]
    fn layer_chain_checked() {
        let layers = random_layers(2, 4, 2, 0);
        assert!(embed_graph(&complete(3), &layers, 3).is_err());
        assert!(embed_graph(&complete(3), &layers, 2).is_ok());
    }

    #[test]
    fn hexagon_and_two_triangles_separate_under_nc_only() {
        let (a, b) = (cycle(6), repeat(&complete(3), 2));
        let layers = random_layers(1, 8, 2, 5);
        let ea = embed_graph(&a, &layers, 1).unwrap();
        let eb = embed_graph(&b, &layers, 1).unwrap();
        assert!(linf_distance(&ea, &eb) > 1e-6);
        let ga = embed_graph_gin(&a, &layers, 1).unwrap();
        let gb = embed_graph_gin(&b, &layers, 1).unwrap();
        assert!(linf_distance(&ga, &gb) < 1e-9);
    }

    #[test]
    fn canonical_order_groups_colors() {
        let g = path(3);
        let (a, _) = canonical_pair_order(&g, &g);
        // middle node has its own class; the endpoints share one
        let c = crate::wl::refine_1wl(&a);
        let last = c.last().unwrap().colors();
        assert!(last[0] == last[1] || last[1] == last[2]);
    }
}
