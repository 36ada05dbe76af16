//! The echo state network: leaky state update, readout scores and ridge
//! training of the readout.

use crate::codec::{OneHot, ALPHABET};
use crate::error::{Error, Result};
use crate::linalg::{dot, Cholesky, CsrMatrix, DenseMatrix};

#[inline]
pub fn logistic(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// The fixed part of the network: input weights, recurrent weights and the
/// leaking rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Reservoir {
    leak: f64,
    /// `W_in` stored transposed (256 × n_r): row `b` is the column of `W_in`
    /// selected by a one-hot input `b`.
    input_columns: DenseMatrix,
    recurrent: CsrMatrix,
}

impl Reservoir {
    /// `input` is `W_in` in its natural `n_r × 256` orientation.
    pub fn new(leak: f64, input: &DenseMatrix, recurrent: CsrMatrix) -> Result<Self> {
        let n = recurrent.rows();
        if recurrent.cols() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: recurrent.cols(),
            });
        }
        if input.rows() != n {
            return Err(Error::DimensionMismatch {
                context: "input weight rows",
                expected: n,
                found: input.rows(),
            });
        }
        if input.cols() != ALPHABET {
            return Err(Error::DimensionMismatch {
                context: "input weight columns",
                expected: ALPHABET,
                found: input.cols(),
            });
        }
        if !(0.0..=1.0).contains(&leak) {
            return Err(Error::InvalidParams(format!("leaking rate {leak} outside [0, 1]")));
        }
        Ok(Self {
            leak,
            input_columns: input.transpose(),
            recurrent,
        })
    }

    pub fn size(&self) -> usize {
        self.recurrent.rows()
    }

    pub fn leak(&self) -> f64 {
        self.leak
    }

    pub fn recurrent(&self) -> &CsrMatrix {
        &self.recurrent
    }

    /// `W_in` as `n_r × 256`.
    pub fn input_weights(&self) -> DenseMatrix {
        self.input_columns.transpose()
    }

    pub(crate) fn input_column(&self, input: OneHot) -> &[f64] {
        self.input_columns.row(input.index())
    }

    /// One step in place: `state <- (1-α)·state + α·σ(W_r·state + W_in·x)`.
    /// `scratch` must have length n_r.
    #[inline]
    pub(crate) fn step(&self, state: &mut [f64], input: OneHot, scratch: &mut [f64]) {
        self.recurrent.matvec_into(state, scratch);
        let column = self.input_column(input);
        let a = self.leak;
        for ((s, pre), w) in state.iter_mut().zip(scratch.iter()).zip(column) {
            *s = (1.0 - a) * *s + a * logistic(pre + w);
        }
    }
}

/// The reservoir activation vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ReservoirState(Vec<f64>);

impl ReservoirState {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn from_vec(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Recorded states, one per driven input. Stored column-wise: `column(t)` is
/// the state after the `t`-th input.
#[derive(Debug, Clone, PartialEq)]
pub struct StateMatrix {
    n: usize,
    columns: Vec<f64>,
}

impl StateMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.columns.len() / self.n.max(1)
    }

    pub fn column(&self, t: usize) -> &[f64] {
        &self.columns[t * self.n..(t + 1) * self.n]
    }

    /// Builds a state matrix from explicit columns.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let n = columns.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::EmptyInput("state matrix"));
        }
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch {
                context: "state matrix column",
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self {
            n,
            columns: columns.concat(),
        })
    }
}

/// Trained readout `W_o`, 256 × n_r.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadoutMatrix(DenseMatrix);

impl ReadoutMatrix {
    pub fn new(weights: DenseMatrix) -> Result<Self> {
        if weights.rows() != ALPHABET {
            return Err(Error::DimensionMismatch {
                context: "readout rows",
                expected: ALPHABET,
                found: weights.rows(),
            });
        }
        Ok(Self(weights))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DenseMatrix::zeros(ALPHABET, n))
    }

    pub fn weights(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn into_weights(self) -> DenseMatrix {
        self.0
    }

    pub fn reservoir_size(&self) -> usize {
        self.0.cols()
    }

    /// Indices of rows with at least one nonzero weight.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..ALPHABET)
            .filter(|&i| self.0.row(i).iter().any(|&v| v != 0.0))
            .collect()
    }
}

fn check_state(state: &[f64], reservoir: &Reservoir) -> Result<()> {
    if state.len() != reservoir.size() {
        return Err(Error::DimensionMismatch {
            context: "reservoir state",
            expected: reservoir.size(),
            found: state.len(),
        });
    }
    Ok(())
}

pub fn update_state(
    prev: &ReservoirState,
    input: OneHot,
    reservoir: &Reservoir,
) -> Result<ReservoirState> {
    check_state(prev.values(), reservoir)?;
    let mut next = prev.0.clone();
    let mut scratch = vec![0.0; reservoir.size()];
    reservoir.step(&mut next, input, &mut scratch);
    Ok(ReservoirState(next))
}

/// Feeds `inputs` through the reservoir starting at `initial`, recording
/// every state.
pub fn drive(
    reservoir: &Reservoir,
    inputs: &[OneHot],
    initial: &ReservoirState,
) -> Result<StateMatrix> {
    if inputs.is_empty() {
        return Err(Error::EmptyInput("no inputs to drive the reservoir with"));
    }
    check_state(initial.values(), reservoir)?;
    let n = reservoir.size();
    let mut columns = Vec::with_capacity(n * inputs.len());
    let mut state = initial.0.clone();
    let mut scratch = vec![0.0; n];
    for &x in inputs {
        reservoir.step(&mut state, x, &mut scratch);
        columns.extend_from_slice(&state);
    }
    Ok(StateMatrix { n, columns })
}

/// Ridge regression of one-hot targets on recorded states:
/// `W_o = Y·Rᵀ·(R·Rᵀ + β·I)⁻¹`, solved through a Cholesky factorization of
/// `R·Rᵀ + β·I`.
///
/// Rows of `W_o` whose byte never appears among `targets` come out exactly
/// zero; they are never touched by the solve.
pub fn train_readout(states: &StateMatrix, targets: &[OneHot], beta: f64) -> Result<ReadoutMatrix> {
    let (n, t_len) = (states.size(), states.width());
    if t_len == 0 {
        return Err(Error::EmptyInput("no states to train on"));
    }
    if targets.len() != t_len {
        return Err(Error::DimensionMismatch {
            context: "training targets",
            expected: t_len,
            found: targets.len(),
        });
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParams(format!("ridge constant {beta} must be finite and >= 0")));
    }

    // Gram matrix R·Rᵀ + βI, lower triangle only.
    let mut gram = DenseMatrix::zeros(n, n);
    for t in 0..t_len {
        let r = states.column(t);
        for i in 0..n {
            let ri = r[i];
            if ri == 0.0 {
                continue;
            }
            let row = gram.row_mut(i);
            for (g, &rj) in row[..=i].iter_mut().zip(r) {
                *g += ri * rj;
            }
        }
    }
    for i in 0..n {
        gram[(i, i)] += beta;
    }
    let chol = Cholesky::factor(&gram)?;

    // Y·Rᵀ: row v is the sum of the states whose target is byte v.
    let mut w = DenseMatrix::zeros(ALPHABET, n);
    let mut present = [false; ALPHABET];
    for (t, target) in targets.iter().enumerate() {
        let v = target.index();
        present[v] = true;
        for (acc, &r) in w.row_mut(v).iter_mut().zip(states.column(t)) {
            *acc += r;
        }
    }
    // Gram is symmetric, so row v of W_o solves Gram · w_vᵀ = (Y·Rᵀ)_vᵀ.
    for (v, _) in present.iter().enumerate().filter(|(_, &p)| p) {
        chol.solve_in_place(w.row_mut(v));
    }
    ReadoutMatrix::new(w)
}

/// Linear readout `W_o · r`. No softmax: argmax is unchanged by it.
pub fn readout_scores(w: &ReadoutMatrix, state: &ReservoirState) -> Result<Vec<f64>> {
    if state.len() != w.reservoir_size() {
        return Err(Error::DimensionMismatch {
            context: "readout vs state",
            expected: w.reservoir_size(),
            found: state.len(),
        });
    }
    Ok((0..ALPHABET).map(|i| dot(w.0.row(i), state.values())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_reservoir(leak: f64, wr: f64, wi_first: f64) -> Reservoir {
        let mut input = DenseMatrix::zeros(1, ALPHABET);
        input[(0, 0)] = wi_first;
        let rec = CsrMatrix::from_dense(&DenseMatrix::from_rows(&[vec![wr]]));
        Reservoir::new(leak, &input, rec).unwrap()
    }

    fn zero_reservoir(n: usize, leak: f64) -> Reservoir {
        Reservoir::new(
            leak,
            &DenseMatrix::zeros(n, ALPHABET),
            CsrMatrix::from_dense(&DenseMatrix::zeros(n, n)),
        )
        .unwrap()
    }

    #[test]
    fn zero_weights_give_half() {
        let res = zero_reservoir(7, 1.0);
        let s = update_state(&ReservoirState::zeros(7), OneHot::new(3), &res).unwrap();
        assert!(s.values().iter().all(|&v| v == 0.5));
    }

    #[test]
    fn zero_leak_keeps_state() {
        let res = scalar_reservoir(0.0, 2.0, 1.0);
        let prev = ReservoirState::from_vec(vec![0.123]);
        let s = update_state(&prev, OneHot::new(0), &res).unwrap();
        assert_eq!(s, prev);
    }

    #[test]
    fn scalar_hand_evaluation() {
        // 0.5*0.5 + 0.5*logistic(2*0.5 + 1) = 0.25 + 0.5/(1+e^-2)
        let res = scalar_reservoir(0.5, 2.0, 1.0);
        let s = update_state(&ReservoirState::from_vec(vec![0.5]), OneHot::new(0), &res).unwrap();
        assert!((s.values()[0] - 0.690_398_538_988_941_1).abs() < 1e-15, "{:?}", s);
    }

    #[test]
    fn state_length_checked() {
        let res = zero_reservoir(3, 0.5);
        let err = update_state(&ReservoirState::zeros(4), OneHot::new(0), &res).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 3, found: 4, .. }));
    }

    #[test]
    fn drive_composes_updates() {
        let res = scalar_reservoir(0.3, 0.7, -0.4);
        let r0 = ReservoirState::zeros(1);
        let xs = [OneHot::new(0), OneHot::new(9)];
        let m = drive(&res, &xs, &r0).unwrap();
        assert_eq!(m.width(), 2);
        let s1 = update_state(&r0, xs[0], &res).unwrap();
        let s2 = update_state(&s1, xs[1], &res).unwrap();
        assert_eq!(m.column(0), s1.values());
        assert_eq!(m.column(1), s2.values());
        assert!(matches!(drive(&res, &[], &r0), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn one_by_one_training() {
        let states = StateMatrix::from_columns(&[vec![1.0]]).unwrap();
        let w = train_readout(&states, &[OneHot::new(5)], 0.0).unwrap();
        assert_eq!(w.nonzero_rows(), vec![5]);
        assert_eq!(w.weights()[(5, 0)], 1.0);

        let w = train_readout(&states, &[OneHot::new(5)], 1.0).unwrap();
        assert!((w.weights()[(5, 0)] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn singular_unregularized_system_rejected() {
        // Two identical states in a 2-neuron reservoir: rank 1 Gram matrix.
        let states = StateMatrix::from_columns(&[vec![0.3, 0.6], vec![0.3, 0.6]]).unwrap();
        let err = train_readout(&states, &[OneHot::new(1), OneHot::new(2)], 0.0).unwrap_err();
        assert!(matches!(err, Error::Untrainable));
        // Regularization makes it solvable.
        assert!(train_readout(&states, &[OneHot::new(1), OneHot::new(2)], 1e-6).is_ok());
    }

    #[test]
    fn zero_state_scores_are_zero() {
        let mut w = DenseMatrix::zeros(ALPHABET, 4);
        w.as_mut_slice().iter_mut().enumerate().for_each(|(i, v)| *v = i as f64);
        let w = ReadoutMatrix::new(w).unwrap();
        let s = readout_scores(&w, &ReservoirState::zeros(4)).unwrap();
        assert!(s.iter().all(|&v| v == 0.0));
        assert!(readout_scores(&w, &ReservoirState::zeros(5)).is_err());
    }

    #[test]
    fn identity_padded_readout() {
        let n = 6;
        let mut w = DenseMatrix::zeros(ALPHABET, n);
        for j in 0..n {
            w[(j, j)] = 1.0;
        }
        let w = ReadoutMatrix::new(w).unwrap();
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let s = readout_scores(&w, &ReservoirState::from_vec(e)).unwrap();
            for (i, v) in s.iter().enumerate() {
                assert_eq!(*v, if i == j { 1.0 } else { 0.0 });
            }
        }
    }
}
