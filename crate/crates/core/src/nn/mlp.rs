use rand::Rng;

use super::matrix::{add_assign, Matrix};
use super::NnError;

/// Two affine layers with a rectifier between them:
/// `y = relu(x W1 + b1) W2 + b2` for a row vector `x`.
///
/// Also used as the gradient container for its own parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpParams {
    pub w1: Matrix,
    pub b1: Vec<f64>,
    pub w2: Matrix,
    pub b2: Vec<f64>,
}

impl MlpParams {
    pub fn new(w1: Matrix, b1: Vec<f64>, w2: Matrix, b2: Vec<f64>) -> Result<Self, NnError> {
        let check = |what, expected, got| {
            if expected == got {
                Ok(())
            } else {
                Err(NnError::DimensionMismatch { what, expected, got })
            }
        };
        check("mlp hidden bias", w1.cols(), b1.len())?;
        check("mlp second layer input", w1.cols(), w2.rows())?;
        check("mlp output bias", w2.cols(), b2.len())?;
        Ok(MlpParams { w1, b1, w2, b2 })
    }

    /// Identity map on non-negative inputs: both weights are `I`, biases zero.
    pub fn identity(dim: usize) -> Self {
        MlpParams {
            w1: Matrix::identity(dim),
            b1: vec![0.0; dim],
            w2: Matrix::identity(dim),
            b2: vec![0.0; dim],
        }
    }

    /// Weights and biases uniform in `[-1/sqrt(fan_in), 1/sqrt(fan_in)]`.
    pub fn random<R: Rng + ?Sized>(input: usize, hidden: usize, output: usize, rng: &mut R) -> Self {
        let bound1 = 1.0 / (input.max(1) as f64).sqrt();
        let bound2 = 1.0 / (hidden.max(1) as f64).sqrt();
        let w1 = Matrix::from_fn(input, hidden, |_, _| rng.random_range(-bound1..=bound1));
        let b1 = (0..hidden).map(|_| rng.random_range(-bound1..=bound1)).collect();
        let w2 = Matrix::from_fn(hidden, output, |_, _| rng.random_range(-bound2..=bound2));
        let b2 = (0..output).map(|_| rng.random_range(-bound2..=bound2)).collect();
        MlpParams { w1, b1, w2, b2 }
    }

    pub fn zeros_like(&self) -> Self {
        MlpParams {
            w1: Matrix::zeros(self.w1.rows(), self.w1.cols()),
            b1: vec![0.0; self.b1.len()],
            w2: Matrix::zeros(self.w2.rows(), self.w2.cols()),
            b2: vec![0.0; self.b2.len()],
        }
    }

    pub fn input_dim(&self) -> usize {
        self.w1.rows()
    }

    pub fn hidden_dim(&self) -> usize {
        self.w1.cols()
    }

    pub fn output_dim(&self) -> usize {
        self.w2.cols()
    }

    fn hidden_pre(&self, x: &[f64]) -> Vec<f64> {
        let mut pre = self.w1.left_mul(x);
        add_assign(&mut pre, &self.b1);
        pre
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        let hidden: Vec<f64> = self.hidden_pre(x).into_iter().map(relu).collect();
        let mut out = self.w2.left_mul(&hidden);
        add_assign(&mut out, &self.b2);
        out
    }

    /// Accumulates parameter gradients for one input row into `grads` and
    /// returns the gradient with respect to `x`.
    pub fn backward(&self, x: &[f64], d_out: &[f64], grads: &mut MlpParams) -> Vec<f64> {
        let pre = self.hidden_pre(x);
        let hidden: Vec<f64> = pre.iter().copied().map(relu).collect();

        add_assign(&mut grads.b2, d_out);
        for (i, &h) in hidden.iter().enumerate() {
            if h != 0.0 {
                for (g, &d) in grads.w2.row_mut(i).iter_mut().zip(d_out) {
                    *g += h * d;
                }
            }
        }

        let mut d_pre = self.w2.left_mul_transposed(d_out);
        for (d, &p) in d_pre.iter_mut().zip(&pre) {
            if p <= 0.0 {
                *d = 0.0;
            }
        }
        add_assign(&mut grads.b1, &d_pre);
        for (i, &xi) in x.iter().enumerate() {
            for (g, &d) in grads.w1.row_mut(i).iter_mut().zip(&d_pre) {
                *g += xi * d;
            }
        }
        self.w1.left_mul_transposed(&d_pre)
    }

    /// All parameters in a fixed order: `w1, b1, w2, b2`.
    pub fn flat(&self) -> Vec<f64> {
        [self.w1.data(), &self.b1, self.w2.data(), &self.b2].concat()
    }

    /// Inverse of [`MlpParams::flat`]; returns the unused tail of `values`.
    pub fn set_flat<'a>(&mut self, values: &'a [f64]) -> &'a [f64] {
        let mut rest = values;
        for slot in [
            self.w1.data_mut(),
            self.b1.as_mut_slice(),
            self.w2.data_mut(),
            self.b2.as_mut_slice(),
        ] {
            let (head, tail) = rest.split_at(slot.len());
            slot.copy_from_slice(head);
            rest = tail;
        }
        rest
    }

    pub fn param_count(&self) -> usize {
        self.w1.data().len() + self.b1.len() + self.w2.data().len() + self.b2.len()
    }
}

pub(crate) fn relu(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_passes_non_negative_rows() {
        let mlp = MlpParams::identity(3);
        assert_eq!(mlp.forward(&[1.0, 0.0, 2.5]), vec![1.0, 0.0, 2.5]);
        assert_eq!(mlp.forward(&[-1.0, 0.0, 0.0]), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn init_respects_fan_in_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mlp = MlpParams::random(4, 9, 2, &mut rng);
        assert!(mlp.w1.data().iter().chain(&mlp.b1).all(|w| w.abs() <= 0.5));
        assert!(mlp.w2.data().iter().chain(&mlp.b2).all(|w| w.abs() <= 1.0 / 3.0));
        assert_eq!(mlp.param_count(), 4 * 9 + 9 + 9 * 2 + 2);
    }

    #[test]
    fn flat_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = MlpParams::random(3, 4, 2, &mut rng);
        let mut b = a.zeros_like();
        assert!(b.set_flat(&a.flat()).is_empty());
        assert_eq!(a, b);
    }

    #[test]
    fn shape_validation() {
        let err = MlpParams::new(Matrix::zeros(2, 3), vec![0.0; 2], Matrix::zeros(3, 1), vec![0.0]);
        assert!(matches!(err, Err(NnError::DimensionMismatch { .. })));
    }
}
