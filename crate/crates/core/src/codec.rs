//! Bytes to one-hot inputs and back.
//!
//! A one-hot vector is kept as its active index. The reservoir expands it
//! lazily: `W_in · e_b` is just column `b` of `W_in`.

use crate::error::{Error, Result};

/// Input/output dimension: one neuron per byte value.
pub const ALPHABET: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneHot(u8);

impl OneHot {
    pub const fn new(byte: u8) -> Self {
        Self(byte)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn byte(self) -> u8 {
        self.0
    }

    /// The full 256-length binary vector.
    pub fn to_dense(self) -> [f64; ALPHABET] {
        let mut v = [0.0; ALPHABET];
        v[self.index()] = 1.0;
        v
    }

    /// Parses a dense 0/1 vector with exactly one active entry.
    pub fn from_dense(v: &[f64]) -> Result<Self> {
        if v.len() != ALPHABET {
            return Err(Error::DimensionMismatch {
                context: "one-hot vector",
                expected: ALPHABET,
                found: v.len(),
            });
        }
        let mut active = None;
        for (i, &x) in v.iter().enumerate() {
            match x {
                0.0 => {}
                1.0 if active.is_none() => active = Some(i),
                _ => {
                    return Err(Error::InvalidArgument(
                        "not a one-hot vector: entries must be 0 with a single 1".into(),
                    ))
                }
            }
        }
        active
            .map(|i| Self(i as u8))
            .ok_or_else(|| Error::InvalidArgument("not a one-hot vector: no active entry".into()))
    }
}

pub fn encode_byte(b: u8) -> OneHot {
    OneHot(b)
}

pub fn encode_bytes(bytes: &[u8]) -> Vec<OneHot> {
    bytes.iter().copied().map(OneHot).collect()
}

/// Hard decision on readout scores: index of the largest entry, lowest index
/// on ties.
pub fn decode_scores(scores: &[f64]) -> Result<u8> {
    if scores.len() != ALPHABET {
        return Err(Error::DimensionMismatch {
            context: "score vector",
            expected: ALPHABET,
            found: scores.len(),
        });
    }
    argmax(scores).map(|i| i as u8).ok_or(Error::NumericalBlowUp { step: 0 })
}

/// Lowest index of the maximum; `None` if any entry is NaN.
#[inline]
pub(crate) fn argmax(scores: &[f64]) -> Option<usize> {
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, &s) in scores.iter().enumerate() {
        if s.is_nan() {
            return None;
        }
        if s > best_val {
            best_val = s;
            best = i;
        }
    }
    Some(best)
}

/// Shifted input/target sequences for memorizing one chunk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingPair {
    pub inputs: Vec<OneHot>,
    pub targets: Vec<OneHot>,
}

impl TrainingPair {
    /// The chunk the pair encodes.
    pub fn chunk(&self) -> Vec<u8> {
        self.targets.iter().map(|h| h.byte()).collect()
    }
}

/// Inputs are the chunk delayed by one step behind the dummy byte `b0`;
/// targets are the chunk itself.
pub fn build_training_pair(chunk: &[u8], b0: u8) -> Result<TrainingPair> {
    if chunk.is_empty() {
        return Err(Error::EmptyInput("cannot memorize an empty chunk"));
    }
    let inputs = std::iter::once(b0)
        .chain(chunk[..chunk.len() - 1].iter().copied())
        .map(OneHot)
        .collect();
    Ok(TrainingPair {
        inputs,
        targets: encode_bytes(chunk),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encode_extremes() {
        assert_eq!(encode_byte(0x00).index(), 0);
        assert_eq!(encode_byte(0xFF).index(), 255);
    }

    #[test]
    fn bijection_over_all_bytes() {
        for b in 0..=255u8 {
            let dense = encode_byte(b).to_dense();
            assert_eq!(dense.iter().filter(|&&x| x == 1.0).count(), 1);
            assert_eq!(decode_scores(&dense).unwrap(), b);
            assert_eq!(OneHot::from_dense(&dense).unwrap().byte(), b);
        }
    }

    #[test]
    fn decode_rules() {
        assert_eq!(decode_scores(&encode_byte(65).to_dense()).unwrap(), 65);
        assert_eq!(decode_scores(&[0.3; ALPHABET]).unwrap(), 0);
        let mut s = [0.0; ALPHABET];
        s[200] = 1e-300;
        s[13] = 5e-301;
        assert_eq!(decode_scores(&s).unwrap(), 200);
        s[7] = f64::NAN;
        assert!(matches!(decode_scores(&s), Err(Error::NumericalBlowUp { .. })));
    }

    #[test]
    fn malformed_dense_rejected() {
        let mut v = [0.0; ALPHABET];
        assert!(OneHot::from_dense(&v).is_err());
        v[1] = 1.0;
        v[2] = 1.0;
        assert!(OneHot::from_dense(&v).is_err());
        assert!(OneHot::from_dense(&[1.0]).is_err());
    }

    #[test]
    fn training_pair_examples() {
        let p = build_training_pair(&[0x41], 0).unwrap();
        assert_eq!(p.inputs, vec![OneHot(0)]);
        assert_eq!(p.targets, vec![OneHot(65)]);

        let p = build_training_pair(&[1, 2, 3], 0).unwrap();
        assert_eq!(p.inputs.iter().map(|h| h.byte()).collect::<Vec<_>>(), [0, 1, 2]);
        assert_eq!(p.targets.iter().map(|h| h.byte()).collect::<Vec<_>>(), [1, 2, 3]);

        assert!(matches!(build_training_pair(&[], 0), Err(Error::EmptyInput(_))));
    }

    proptest! {
        #[test]
        fn shift_property(chunk in proptest::collection::vec(any::<u8>(), 1..300), b0 in any::<u8>()) {
            let p = build_training_pair(&chunk, b0).unwrap();
            prop_assert_eq!(p.inputs.len(), chunk.len());
            prop_assert_eq!(p.inputs[0], OneHot(b0));
            for t in 0..chunk.len() - 1 {
                prop_assert_eq!(p.inputs[t + 1], p.targets[t]);
            }
            let mut shifted: Vec<OneHot> = p.inputs[1..].to_vec();
            shifted.push(*p.targets.last().unwrap());
            prop_assert_eq!(shifted, encode_bytes(&chunk));
            prop_assert_eq!(p.chunk(), chunk);
        }

        #[test]
        fn argmax_permutation_equivariant(
            scores in proptest::collection::vec(-1e6f64..1e6, ALPHABET),
            rot in 0usize..ALPHABET,
        ) {
            // Skip score vectors with ties at the maximum.
            let max = scores.iter().cloned().fold(f64::MIN, f64::max);
            prop_assume!(scores.iter().filter(|&&s| s == max).count() == 1);
            let i = decode_scores(&scores).unwrap() as usize;
            let mut rotated = vec![0.0; ALPHABET];
            for (k, &s) in scores.iter().enumerate() {
                rotated[(k + rot) % ALPHABET] = s;
            }
            prop_assert_eq!(decode_scores(&rotated).unwrap() as usize, (i + rot) % ALPHABET);
        }

        #[test]
        fn argmax_ignores_softmax(scores in proptest::collection::vec(-50f64..50.0, ALPHABET)) {
            let max = scores.iter().cloned().fold(f64::MIN, f64::max);
            let exp: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
            let total: f64 = exp.iter().sum();
            let soft: Vec<f64> = exp.iter().map(|e| e / total).collect();
            let max_soft = soft.iter().cloned().fold(f64::MIN, f64::max);
            // Softmax can collapse near-ties into exact ties; only compare when it does not.
            prop_assume!(soft.iter().filter(|&&s| s == max_soft).count() == 1);
            prop_assert_eq!(decode_scores(&scores).unwrap(), decode_scores(&soft).unwrap());
        }
    }
}
