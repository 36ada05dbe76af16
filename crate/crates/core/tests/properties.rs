use esncrypt::analysis::CorpusKind;
use esncrypt::cipher::{decrypt, encrypt};
use esncrypt::codec::{encode_byte, encode_bytes, OneHot};
use esncrypt::esn::{train_readout, update_state, ReservoirState, StateMatrix};
use esncrypt::keygen::{generate_key, EsnKey, KeyParams};
use esncrypt::linalg::DenseMatrix;
use proptest::prelude::*;
use std::sync::OnceLock;

fn small_key() -> &'static EsnKey {
    static KEY: OnceLock<EsnKey> = OnceLock::new();
    KEY.get_or_init(|| {
        generate_key(&KeyParams {
            chunk_size: 40,
            ..KeyParams::with_seed(77)
        })
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Each coordinate of the next state lies between the previous value and
    /// the logistic activation, in proportion α.
    #[test]
    fn leaky_update_interpolates(
        prev in prop::collection::vec(-2.0f64..2.0, 38),
        byte in any::<u8>(),
    ) {
        let key = small_key();
        let res = key.reservoir();
        let alpha = res.leak();
        let prev_state = ReservoirState::from_vec(prev.clone());
        let next = update_state(&prev_state, encode_byte(byte), res).unwrap();

        let pre = res.recurrent().matvec(&prev).unwrap();
        let w_in = res.input_weights();
        for i in 0..prev.len() {
            let act = esncrypt::esn::logistic(pre[i] + w_in[(i, byte as usize)]);
            let expected = (1.0 - alpha) * prev[i] + alpha * act;
            prop_assert!((next.values()[i] - expected).abs() <= 1e-12);
            let (lo, hi) = if prev[i] < act { (prev[i], act) } else { (act, prev[i]) };
            prop_assert!(next.values()[i] >= lo - 1e-12 && next.values()[i] <= hi + 1e-12);
        }
    }

    /// The trained readout satisfies `W·(R·Rᵀ + β·I) = Y·Rᵀ`.
    #[test]
    fn readout_solves_normal_equations(
        n in 1usize..12,
        targets in prop::collection::vec(any::<u8>(), 1..30),
        seed in any::<u64>(),
    ) {
        let mut rng = esncrypt::rng::SplitMix64::new(seed);
        let columns: Vec<Vec<f64>> = targets
            .iter()
            .map(|_| (0..n).map(|_| rng.next_f64()).collect())
            .collect();
        let beta = 1e-3;
        let states = StateMatrix::from_columns(&columns).unwrap();
        let w = train_readout(&states, &encode_bytes(&targets), beta).unwrap();
        let w = w.weights();

        let mut gram = DenseMatrix::zeros(n, n);
        for c in &columns {
            for i in 0..n {
                for j in 0..n {
                    gram[(i, j)] += c[i] * c[j];
                }
            }
        }
        for i in 0..n {
            gram[(i, i)] += beta;
        }
        for row in 0..256 {
            for j in 0..n {
                let lhs: f64 = (0..n).map(|k| w[(row, k)] * gram[(k, j)]).sum();
                let rhs: f64 = columns
                    .iter()
                    .zip(&targets)
                    .filter(|(_, &t)| t as usize == row)
                    .map(|(c, _)| c[j])
                    .sum();
                prop_assert!((lhs - rhs).abs() <= 1e-8, "row {row} col {j}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn one_hot_round_trip(b in any::<u8>()) {
        let v = OneHot::new(b).to_dense();
        prop_assert_eq!(v.iter().sum::<f64>(), 1.0);
        prop_assert_eq!(OneHot::from_dense(&v).unwrap().byte(), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip_fuzz(
        len in 1usize..400,
        kind in prop::sample::select(CorpusKind::ALL.to_vec()),
        seed in any::<u64>(),
    ) {
        let key = small_key();
        let plain = kind.generate(len, seed);
        let ct = encrypt(key, &plain).unwrap();
        prop_assert_eq!(ct.chunks.len(), len.div_ceil(40));
        prop_assert_eq!(decrypt(key, &ct).unwrap(), plain);
    }
}
