//! NC-GNN and GIN layers, with and without edge features.
//!
//! NC-GNN, for node `v` with neighbors `N(v)`:
//!
//! ```text
//! h'_v = MLP1( (1 + eps) h_v + sum_{u in N(v)} h_u
//!              + sum_{u1 < u2 in N(v), (u1, u2) in E} MLP2(h_u1 + h_u2) )
//! ```
//!
//! GIN is the same without the last sum. The edge-featured variants replace
//! `h_u` by `relu(h_u + e_uv)` and feed `h_u1 + h_u2 + e_u1u2` to `MLP2`.
//! Sums are accumulated in ascending node / neighbor-edge order, so the
//! result is bit-reproducible and a GIN layer and an NC layer agree exactly
//! on triangle-free graphs.

use rand::Rng;

use super::matrix::{add_assign, Matrix};
use super::mlp::{relu, MlpParams};
use super::NnError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct NcGnnLayerParams {
    pub mlp1: MlpParams,
    pub mlp2: MlpParams,
    pub epsilon: f64,
}

impl NcGnnLayerParams {
    pub fn new(mlp1: MlpParams, mlp2: MlpParams, epsilon: f64) -> Result<Self, NnError> {
        let d = mlp1.input_dim();
        for (what, got) in [
            ("mlp2 input", mlp2.input_dim()),
            ("mlp2 output", mlp2.output_dim()),
        ] {
            if got != d {
                return Err(NnError::DimensionMismatch {
                    what,
                    expected: d,
                    got,
                });
            }
        }
        Ok(NcGnnLayerParams {
            mlp1,
            mlp2,
            epsilon,
        })
    }

    /// Seeded layer with `epsilon = 0`. `MLP2` maps `input -> hidden -> input`,
    /// `MLP1` maps `input -> hidden -> output`.
    pub fn random<R: Rng + ?Sized>(input: usize, hidden: usize, output: usize, rng: &mut R) -> Self {
        let mlp1 = MlpParams::random(input, hidden, output, rng);
        let mlp2 = MlpParams::random(input, hidden, input, rng);
        NcGnnLayerParams {
            mlp1,
            mlp2,
            epsilon: 0.0,
        }
    }

    pub fn input_dim(&self) -> usize {
        self.mlp1.input_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.mlp1.output_dim()
    }

    /// `mlp1`, then `mlp2`, then `epsilon`.
    pub fn flat(&self) -> Vec<f64> {
        let mut out = self.mlp1.flat();
        out.extend(self.mlp2.flat());
        out.push(self.epsilon);
        out
    }

    pub fn set_flat(&mut self, values: &[f64]) {
        let rest = self.mlp1.set_flat(values);
        let rest = self.mlp2.set_flat(rest);
        assert_eq!(rest.len(), 1, "flat parameter length mismatch");
        self.epsilon = rest[0];
    }
}

/// One feature vector per undirected edge; row `i` belongs to `g.edges()[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFeatures {
    features: Matrix,
}

impl EdgeFeatures {
    pub fn new(g: &Graph, features: Matrix) -> Result<Self, NnError> {
        if features.rows() != g.edge_count() {
            return Err(NnError::MissingEdgeFeatures {
                expected: g.edge_count(),
                got: features.rows(),
            });
        }
        Ok(EdgeFeatures { features })
    }

    pub fn zeros(g: &Graph, dim: usize) -> Self {
        EdgeFeatures {
            features: Matrix::zeros(g.edge_count(), dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.features.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.features
    }

    fn of(&self, g: &Graph, u: usize, v: usize) -> &[f64] {
        let idx = g.edge_index(u, v).expect("edge present in graph");
        self.features.row(idx)
    }
}

/// Gradients of a scalar loss with respect to one layer's inputs and
/// parameters. `mlp2` is `None` for GIN layers, `d_edges` for layers
/// without edge features.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerGradients {
    pub d_input: Matrix,
    pub mlp1: MlpParams,
    pub mlp2: Option<MlpParams>,
    pub epsilon: f64,
    pub d_edges: Option<Matrix>,
}

#[derive(Clone, Copy)]
struct LayerSpec<'a> {
    mlp1: &'a MlpParams,
    mlp2: Option<&'a MlpParams>,
    epsilon: f64,
    edges: Option<&'a EdgeFeatures>,
}

fn mismatch(what: &'static str, expected: usize, got: usize) -> Result<(), NnError> {
    if expected == got {
        Ok(())
    } else {
        Err(NnError::DimensionMismatch { what, expected, got })
    }
}

impl LayerSpec<'_> {
    fn validate(&self, g: &Graph, h: &Matrix) -> Result<(), NnError> {
        mismatch("feature rows", g.node_count(), h.rows())?;
        mismatch("mlp1 input", h.cols(), self.mlp1.input_dim())?;
        if let Some(mlp2) = self.mlp2 {
            mismatch("mlp2 input", h.cols(), mlp2.input_dim())?;
            mismatch("mlp2 output", h.cols(), mlp2.output_dim())?;
        }
        if let Some(e) = self.edges {
            if e.features.rows() != g.edge_count() {
                return Err(NnError::MissingEdgeFeatures {
                    expected: g.edge_count(),
                    got: e.features.rows(),
                });
            }
            mismatch("edge feature dim", h.cols(), e.dim())?;
        }
        Ok(())
    }

    /// Input of `MLP2` for the neighbor edge `(u1, u2)`.
    fn pair_input(&self, g: &Graph, h: &Matrix, u1: usize, u2: usize) -> Vec<f64> {
        let mut p = h.row(u1).to_vec();
        add_assign(&mut p, h.row(u2));
        if let Some(e) = self.edges {
            add_assign(&mut p, e.of(g, u1, u2));
        }
        p
    }

    /// Pre-`MLP1` aggregate for every node.
    fn aggregate(&self, g: &Graph, h: &Matrix) -> Matrix {
        let d = h.cols();
        let mut z = Matrix::zeros(g.node_count(), d);
        let scale = 1.0 + self.epsilon;
        for v in 0..g.node_count() {
            let mut acc: Vec<f64> = h.row(v).iter().map(|x| scale * x).collect();
            for &u in g.neighbors(v) {
                match self.edges {
                    None => add_assign(&mut acc, h.row(u)),
                    Some(e) => {
                        let ev = e.of(g, u, v);
                        for ((a, &x), &y) in acc.iter_mut().zip(h.row(u)).zip(ev) {
                            *a += relu(x + y);
                        }
                    }
                }
            }
            if let Some(mlp2) = self.mlp2 {
                g.for_each_neighbor_edge(v, |u1, u2| {
                    let msg = mlp2.forward(&self.pair_input(g, h, u1, u2));
                    add_assign(&mut acc, &msg);
                });
            }
            z.row_mut(v).copy_from_slice(&acc);
        }
        z
    }

    fn forward(&self, g: &Graph, h: &Matrix) -> Result<Matrix, NnError> {
        self.validate(g, h)?;
        let z = self.aggregate(g, h);
        let rows: Vec<Vec<f64>> = (0..z.rows()).map(|v| self.mlp1.forward(z.row(v))).collect();
        if rows.is_empty() {
            return Ok(Matrix::zeros(0, self.mlp1.output_dim()));
        }
        Ok(Matrix::from_rows(&rows))
    }

    fn backward(&self, g: &Graph, h: &Matrix, upstream: &Matrix) -> Result<LayerGradients, NnError> {
        self.validate(g, h)?;
        mismatch("upstream rows", g.node_count(), upstream.rows())?;
        mismatch("upstream cols", self.mlp1.output_dim(), upstream.cols())?;

        let z = self.aggregate(g, h);
        let mut d_input = Matrix::zeros(h.rows(), h.cols());
        let mut g_mlp1 = self.mlp1.zeros_like();
        let mut g_mlp2 = self.mlp2.map(MlpParams::zeros_like);
        let mut d_edges = self
            .edges
            .map(|e| Matrix::zeros(e.features.rows(), e.features.cols()));
        let mut d_eps = 0.0;
        let scale = 1.0 + self.epsilon;

        for v in 0..g.node_count() {
            let dz = self.mlp1.backward(z.row(v), upstream.row(v), &mut g_mlp1);

            d_eps += dz.iter().zip(h.row(v)).map(|(a, b)| a * b).sum::<f64>();
            for (d, &x) in d_input.row_mut(v).iter_mut().zip(&dz) {
                *d += scale * x;
            }

            for &u in g.neighbors(v) {
                match self.edges {
                    None => add_assign(d_input.row_mut(u), &dz),
                    Some(e) => {
                        let idx = g.edge_index(u, v).expect("edge present");
                        let ev = e.features.row(idx);
                        let d_e = d_edges.as_mut().expect("edge grads").row_mut(idx);
                        let d_u = d_input.row_mut(u);
                        for (j, (&x, &y)) in h.row(u).iter().zip(ev).enumerate() {
                            if x + y > 0.0 {
                                d_e[j] += dz[j];
                                d_u[j] += dz[j];
                            }
                        }
                    }
                }
            }

            if let (Some(mlp2), Some(grads2)) = (self.mlp2, g_mlp2.as_mut()) {
                let mut pairs = Vec::new();
                g.for_each_neighbor_edge(v, |u1, u2| pairs.push((u1, u2)));
                for (u1, u2) in pairs {
                    let p = self.pair_input(g, h, u1, u2);
                    let dp = mlp2.backward(&p, &dz, grads2);
                    add_assign(d_input.row_mut(u1), &dp);
                    add_assign(d_input.row_mut(u2), &dp);
                    if let Some(de) = d_edges.as_mut() {
                        let idx = g.edge_index(u1, u2).expect("edge present");
                        add_assign(de.row_mut(idx), &dp);
                    }
                }
            }
        }

        Ok(LayerGradients {
            d_input,
            mlp1: g_mlp1,
            mlp2: g_mlp2,
            epsilon: d_eps,
            d_edges,
        })
    }
}

pub fn nc_gnn_layer_forward(g: &Graph, h: &Matrix, params: &NcGnnLayerParams) -> Result<Matrix, NnError> {
    LayerSpec {
        mlp1: &params.mlp1,
        mlp2: Some(&params.mlp2),
        epsilon: params.epsilon,
        edges: None,
    }
    .forward(g, h)
}

pub fn gin_layer_forward(g: &Graph, h: &Matrix, mlp1: &MlpParams, epsilon: f64) -> Result<Matrix, NnError> {
    LayerSpec {
        mlp1,
        mlp2: None,
        epsilon,
        edges: None,
    }
    .forward(g, h)
}

pub fn nc_gnn_layer_forward_edgefeat(
    g: &Graph,
    h: &Matrix,
    edges: &EdgeFeatures,
    params: &NcGnnLayerParams,
) -> Result<Matrix, NnError> {
    LayerSpec {
        mlp1: &params.mlp1,
        mlp2: Some(&params.mlp2),
        epsilon: params.epsilon,
        edges: Some(edges),
    }
    .forward(g, h)
}

pub fn gin_layer_forward_edgefeat(
    g: &Graph,
    h: &Matrix,
    edges: &EdgeFeatures,
    mlp1: &MlpParams,
    epsilon: f64,
) -> Result<Matrix, NnError> {
    LayerSpec {
        mlp1,
        mlp2: None,
        epsilon,
        edges: Some(edges),
    }
    .forward(g, h)
}

/// Reverse-mode gradients of an NC-GNN layer given `upstream = dL/d(output)`.
pub fn backward(
    g: &Graph,
    h: &Matrix,
    params: &NcGnnLayerParams,
    upstream: &Matrix,
) -> Result<LayerGradients, NnError> {
    LayerSpec {
        mlp1: &params.mlp1,
        mlp2: Some(&params.mlp2),
        epsilon: params.epsilon,
        edges: None,
    }
    .backward(g, h, upstream)
}

pub fn backward_edgefeat(
    g: &Graph,
    h: &Matrix,
    edges: &EdgeFeatures,
    params: &NcGnnLayerParams,
    upstream: &Matrix,
) -> Result<LayerGradients, NnError> {
    LayerSpec {
        mlp1: &params.mlp1,
        mlp2: Some(&params.mlp2),
        epsilon: params.epsilon,
        edges: Some(edges),
    }
    .backward(g, h, upstream)
}

pub fn gin_backward(
    g: &Graph,
    h: &Matrix,
    mlp1: &MlpParams,
    epsilon: f64,
    upstream: &Matrix,
) -> Result<LayerGradients, NnError> {
    LayerSpec {
        mlp1,
        mlp2: None,
        epsilon,
        edges: None,
    }
    .backward(g, h, upstream)
}

pub fn gin_backward_edgefeat(
    g: &Graph,
    h: &Matrix,
    edges: &EdgeFeatures,
    mlp1: &MlpParams,
    epsilon: f64,
    upstream: &Matrix,
) -> Result<LayerGradients, NnError> {
    LayerSpec {
        mlp1,
        mlp2: None,
        epsilon,
        edges: Some(edges),
    }
    .backward(g, h, upstream)
}
