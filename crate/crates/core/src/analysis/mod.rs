//! Security and performance experiments: key sensitivity, plaintext
//! avalanche, ciphertext statistics, recall capacity and runtime scaling.
//!
//! Every experiment is reproducible from its seed; only wall-clock fields in
//! [`benchmark`] vary between runs.

pub mod corpus;
pub mod report;
pub mod stats;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::cipher::{decrypt_chunks, encrypt_chunk, encrypt_with, Ciphertext};
use crate::error::{Error, Result};
use crate::keygen::{generate_key, EsnKey, KeyParams};
use crate::parallel::Executor;
use crate::rng::SplitMix64;

pub use corpus::CorpusKind;
pub use report::{AnalysisReport, Series};
use stats::{byte_histogram, jensen_shannon, linear_fit, median, Histogram};

/// Default threshold above which two ciphertext elements count as different.
pub const DEFAULT_EPSILON: f64 = 1e-12;

/// A small change to one key parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    Identity,
    LeakingRate(f64),
    SpectralRadius(f64),
    InputScale(f64),
    InputConnectivity(f64),
    ReservoirConnectivity(f64),
    Seed(i64),
}

impl Perturbation {
    pub fn apply(&self, params: &KeyParams) -> KeyParams {
        let mut p = *params;
        match *self {
            Self::Identity => {}
            Self::LeakingRate(d) => p.leaking_rate += d,
            Self::SpectralRadius(d) => p.spectral_radius += d,
            Self::InputScale(d) => p.input_scale += d,
            Self::InputConnectivity(d) => p.input_connectivity += d,
            Self::ReservoirConnectivity(d) => p.reservoir_connectivity += d,
            Self::Seed(d) => p.seed = p.seed.wrapping_add_signed(d),
        }
        p
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, delta) = match *self {
            Self::Identity => return f.write_str("identity"),
            Self::Seed(d) => return write!(f, "seed{d:+}"),
            Self::LeakingRate(d) => ("alpha", d),
            Self::SpectralRadius(d) => ("rho", d),
            Self::InputScale(d) => ("input-scale", d),
            Self::InputConnectivity(d) => ("input-conn", d),
            Self::ReservoirConnectivity(d) => ("reservoir-conn", d),
        };
        if delta < 0.0 {
            write!(f, "{name}{delta}")
        } else {
            write!(f, "{name}+{delta}")
        }
    }
}

impl FromStr for Perturbation {
    type Err = String;

    /// `identity`, or `<param>+<delta>` / `<param>-<delta>` with param one of
    /// `alpha`, `rho`, `input-scale`, `input-conn`, `reservoir-conn`, `seed`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "identity" {
            return Ok(Self::Identity);
        }
        const NAMES: [&str; 6] = ["alpha", "rho", "input-scale", "input-conn", "reservoir-conn", "seed"];
        let (name, delta) = NAMES
            .iter()
            .find_map(|&n| {
                s.strip_prefix(n)
                    .filter(|rest| rest.starts_with(['+', '-']))
                    .map(|rest| (n, rest))
            })
            .ok_or_else(|| {
                format!("perturbation `{s}` must be `identity` or <param>±<delta>, e.g. alpha+0.001")
            })?;
        let bad = |e: &dyn fmt::Display| format!("bad delta in `{s}`: {e}");
        if name == "seed" {
            return delta.parse::<i64>().map(Self::Seed).map_err(|e| bad(&e));
        }
        let d: f64 = delta.parse().map_err(|e| bad(&e))?;
        Ok(match name {
            "alpha" => Self::LeakingRate(d),
            "rho" => Self::SpectralRadius(d),
            "input-scale" => Self::InputScale(d),
            "input-conn" => Self::InputConnectivity(d),
            _ => Self::ReservoirConnectivity(d),
        })
    }
}

fn match_rate(a: &[u8], b: &[u8]) -> f64 {
    let same = a.iter().zip(b).filter(|(x, y)| x == y).count();
    same as f64 / a.len().max(1) as f64
}

/// Decrypts the true ciphertext of `plaintext` under perturbed keys and
/// reports how many bytes still come out right. The identity perturbation is
/// always included first as a control.
pub fn key_sensitivity(
    key: &EsnKey,
    plaintext: &[u8],
    perturbations: &[Perturbation],
    exec: &Executor,
) -> Result<AnalysisReport> {
    let ct = encrypt_with(key, plaintext, exec)?;
    let mut list = vec![Perturbation::Identity];
    list.extend(perturbations.iter().filter(|p| **p != Perturbation::Identity));

    let mut report = AnalysisReport::new("key_sensitivity");
    report
        .param("plaintext_len", plaintext.len())
        .param("chunk_size", key.chunk_size())
        .param("reservoir_size", key.reservoir_size())
        .param("perturbations", list.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "));
    let mut series = Series::new("match_rates", &["perturbation", "match_rate"]);
    for p in &list {
        let perturbed = if *p == Perturbation::Identity {
            key.clone()
        } else {
            generate_key(&p.apply(key.params()))?
        };
        // Wrong-key decryption on purpose: skip the fingerprint check.
        let recovered = decrypt_chunks(&perturbed, &ct.chunks, 0, exec)?.concat();
        let rate = match_rate(plaintext, &recovered);
        report.metric(&format!("match_rate[{p}]"), rate);
        series.push([p.to_string(), rate.to_string()]);
    }
    report.series.push(series);
    Ok(report)
}

/// Fraction of element pairs differing by more than `epsilon`.
pub fn difference_fraction(a: &Ciphertext, b: &Ciphertext, epsilon: f64) -> Result<f64> {
    if a.chunks.len() != b.chunks.len() || a.header.reservoir_size != b.header.reservoir_size {
        return Err(Error::InvalidArgument("ciphertexts have different shapes".into()));
    }
    let mut total = 0u64;
    let mut differ = 0u64;
    for (x, y) in a.elements().zip(b.elements()) {
        total += 1;
        if (x - y).abs() > epsilon {
            differ += 1;
        }
    }
    Ok(differ as f64 / total.max(1) as f64)
}

/// Alters `round(flip_fraction · N)` distinct bytes to a different random
/// value, re-encrypts, and measures the fraction of ciphertext elements that
/// moved by more than `epsilon`, averaged over `trials`.
pub fn plaintext_avalanche(
    key: &EsnKey,
    plaintext: &[u8],
    flip_fraction: f64,
    trials: usize,
    epsilon: f64,
    seed: u64,
    exec: &Executor,
) -> Result<AnalysisReport> {
    if !(flip_fraction > 0.0 && flip_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "flip fraction {flip_fraction} outside (0, 1)"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} must be >= 0")));
    }
    let flips = (flip_fraction * plaintext.len() as f64).round() as usize;
    if flips == 0 {
        return Err(Error::InvalidArgument(format!(
            "flip fraction {flip_fraction} of {} bytes alters no byte; at least one is required",
            plaintext.len()
        )));
    }

    let base = encrypt_with(key, plaintext, exec)?;
    let control = difference_fraction(&base, &encrypt_with(key, plaintext, exec)?, epsilon)?;

    let mut rng = SplitMix64::new(seed);
    let mut series = Series::new("trials", &["trial", "changed_bytes", "difference_fraction"]);
    let mut fractions = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut modified = plaintext.to_vec();
        let mut positions: Vec<usize> = (0..plaintext.len()).collect();
        for i in 0..flips {
            let j = i + rng.below((positions.len() - i) as u64) as usize;
            positions.swap(i, j);
            let pos = positions[i];
            modified[pos] = modified[pos].wrapping_add(1 + rng.below(255) as u8);
        }
        let ct = encrypt_with(key, &modified, exec)?;
        let frac = difference_fraction(&base, &ct, epsilon)?;
        fractions.push(frac);
        series.push([trial.to_string(), flips.to_string(), frac.to_string()]);
    }

    let mean = fractions.iter().sum::<f64>() / trials as f64;
    let mut report = AnalysisReport::new("plaintext_avalanche");
    report
        .param("plaintext_len", plaintext.len())
        .param("flip_fraction", flip_fraction)
        .param("trials", trials)
        .param("epsilon", epsilon)
        .param("seed", seed)
        .metric("changed_bytes", flips as f64)
        .metric("difference_fraction", mean)
        .metric("difference_fraction_min", fractions.iter().copied().fold(f64::INFINITY, f64::min))
        .metric("difference_fraction_max", fractions.iter().copied().fold(0.0, f64::max))
        .metric("control_difference_fraction", control);
    report.series.push(series);
    Ok(report)
}

/// Element statistics of a ciphertext: exact zero fraction, histogram of the
/// nonzero values over their range, and chi-square against uniform.
pub fn ciphertext_histogram(ct: &Ciphertext, bins: usize) -> Result<AnalysisReport> {
    if bins < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 bins, got {bins}")));
    }
    let (mut zeros, mut total) = (0u64, 0u64);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in ct.elements() {
        total += 1;
        if v == 0.0 {
            zeros += 1;
        } else {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    let nonzero = total - zeros;
    if nonzero == 0 {
        lo = 0.0;
        hi = 0.0;
    }
    let mut hist = Histogram::new(lo, hi, bins);
    for v in ct.elements().filter(|&v| v != 0.0) {
        hist.add(v);
    }

    let mut report = AnalysisReport::new("ciphertext_histogram");
    report
        .param("bins", bins)
        .param("chunks", ct.chunks.len())
        .param("reservoir_size", ct.header.reservoir_size)
        .metric("elements", total as f64)
        .metric("zero_elements", zeros as f64)
        .metric("zero_fraction", zeros as f64 / total.max(1) as f64)
        .metric("nonzero_min", lo)
        .metric("nonzero_max", hi)
        .metric("chi_square_uniform", hist.chi_square_uniform())
        .metric("chi_square_dof", (bins - 1) as f64);
    let mut series = Series::new("histogram", &["bin_lo", "bin_hi", "count"]);
    for (i, &c) in hist.counts.iter().enumerate() {
        let (a, b) = hist.edges(i);
        series.push([a.to_string(), b.to_string(), c.to_string()]);
    }
    report.series.push(series);
    Ok(report)
}

/// Compares two plaintexts and their ciphertexts: Jensen-Shannon divergence
/// of the byte histograms and of the nonzero ciphertext-element histograms
/// over a shared range.
pub fn compare_distributions(
    plain_a: &[u8],
    ct_a: &Ciphertext,
    plain_b: &[u8],
    ct_b: &Ciphertext,
    bins: usize,
) -> Result<AnalysisReport> {
    if bins < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 bins, got {bins}")));
    }
    let plain_jsd = jensen_shannon(
        &byte_histogram(plain_a).probabilities(),
        &byte_histogram(plain_b).probabilities(),
    );
    let nonzero = |ct: &Ciphertext| ct.elements().filter(|&v| v != 0.0).collect::<Vec<_>>();
    let (va, vb) = (nonzero(ct_a), nonzero(ct_b));
    let lo = va.iter().chain(&vb).copied().fold(f64::INFINITY, f64::min);
    let hi = va.iter().chain(&vb).copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (0.0, 0.0) };
    let hist = |v: &[f64]| {
        let mut h = Histogram::new(lo, hi, bins);
        v.iter().for_each(|&x| h.add(x));
        h
    };
    let (ha, hb) = (hist(&va), hist(&vb));
    let zero_frac = |ct: &Ciphertext, nz: usize| {
        let total = ct.elements().count();
        (total - nz) as f64 / total.max(1) as f64
    };

    let mut report = AnalysisReport::new("distribution_comparison");
    report
        .param("bins", bins)
        .metric("plaintext_jsd", plain_jsd)
        .metric("ciphertext_jsd", jensen_shannon(&ha.probabilities(), &hb.probabilities()))
        .metric("zero_fraction_a", zero_frac(ct_a, va.len()))
        .metric("zero_fraction_b", zero_frac(ct_b, vb.len()));
    let mut series = Series::new("histograms", &["bin_lo", "bin_hi", "count_a", "count_b"]);
    for i in 0..bins {
        let (a, b) = ha.edges(i);
        series.push([a.to_string(), b.to_string(), ha.counts[i].to_string(), hb.counts[i].to_string()]);
    }
    report.series.push(series);
    Ok(report)
}

/// For each parameter set, the fraction of random full-size chunks whose
/// readout passes recall verification.
pub fn recall_capacity(
    sweep: &[KeyParams],
    trials: usize,
    seed: u64,
    exec: &Executor,
) -> Result<AnalysisReport> {
    if sweep.is_empty() {
        return Err(Error::InvalidArgument("capacity sweep is empty".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let mut report = AnalysisReport::new("recall_capacity");
    report.param("trials", trials).param("seed", seed);
    let mut series = Series::new(
        "capacity",
        &["chunk_size", "reservoir_size", "reservoir_ratio", "trials", "passed", "pass_fraction"],
    );
    for params in sweep {
        let m = params.chunk_size as usize;
        let n = params.reservoir_size();
        let passed = match generate_key(params) {
            Ok(key) => {
                let chunk_seeds: Vec<u64> = (0..trials as u64)
                    .map(|t| seed ^ (t << 32) ^ u64::from(params.chunk_size))
                    .collect();
                exec.map(&chunk_seeds, |_, &s| {
                    encrypt_chunk(&key, &corpus::random_bytes(m, s)).is_ok()
                })
                .into_iter()
                .filter(|&ok| ok)
                .count()
            }
            Err(e @ (Error::DegenerateReservoir | Error::NoConvergence { .. })) => {
                log::warn!("m={m} n_r={n}: no usable key ({e}); counting every trial as failed");
                0
            }
            Err(e) => return Err(e),
        };
        let fraction = passed as f64 / trials as f64;
        report.metric(&format!("pass_fraction[m={m},n_r={n}]"), fraction);
        series.push([
            m.to_string(),
            n.to_string(),
            params.reservoir_ratio.to_string(),
            trials.to_string(),
            passed.to_string(),
            fraction.to_string(),
        ]);
    }
    report.series.push(series);
    Ok(report)
}

/// Median encrypt/decrypt wall-clock time per message size and a linear fit
/// of time against size.
pub fn benchmark(
    key: &EsnKey,
    sizes: &[usize],
    repeats: usize,
    seed: u64,
    exec: &Executor,
) -> Result<AnalysisReport> {
    let mut distinct = sizes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 || distinct[0] == 0 {
        return Err(Error::InvalidArgument(
            "benchmark needs at least two distinct nonzero sizes".into(),
        ));
    }
    if repeats == 0 {
        return Err(Error::InvalidArgument("need at least one repeat".into()));
    }

    let mut enc_medians = Vec::new();
    let mut dec_medians = Vec::new();
    for &size in sizes {
        let msg = corpus::random_bytes(size, seed ^ size as u64);
        let mut enc = Vec::with_capacity(repeats);
        let mut dec = Vec::with_capacity(repeats);
        for _ in 0..repeats {
            let t = Instant::now();
            let ct = encrypt_with(key, &msg, exec)?;
            enc.push(t.elapsed().as_secs_f64());
            let t = Instant::now();
            let back = decrypt_chunks(key, &ct.chunks, 0, exec)?;
            dec.push(t.elapsed().as_secs_f64());
            debug_assert_eq!(back.concat(), msg);
        }
        enc_medians.push(median(&enc));
        dec_medians.push(median(&dec));
    }

    let xs: Vec<f64> = sizes.iter().map(|&s| s as f64).collect();
    let enc_fit = linear_fit(&xs, &enc_medians).expect("two distinct sizes");
    let dec_fit = linear_fit(&xs, &dec_medians).expect("two distinct sizes");

    let mut report = AnalysisReport::new("benchmark");
    report
        .param("sizes", sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
        .param("repeats", repeats)
        .param("jobs", exec.jobs())
        .param("chunk_size", key.chunk_size())
        .param("reservoir_size", key.reservoir_size())
        .metric("encrypt_slope_s_per_byte", enc_fit.slope)
        .metric("encrypt_intercept_s", enc_fit.intercept)
        .metric("encrypt_r_squared", enc_fit.r_squared)
        .metric("decrypt_slope_s_per_byte", dec_fit.slope)
        .metric("decrypt_intercept_s", dec_fit.intercept)
        .metric("decrypt_r_squared", dec_fit.r_squared);

    // Ratios between sizes where one is exactly double another.
    let mut ratios = Vec::new();
    for (i, &a) in sizes.iter().enumerate() {
        if let Some(j) = sizes.iter().position(|&b| b == 2 * a) {
            ratios.push(enc_medians[j] / enc_medians[i]);
        }
    }
    if !ratios.is_empty() {
        report
            .metric("encrypt_doubling_ratio_min", ratios.iter().copied().fold(f64::INFINITY, f64::min))
            .metric("encrypt_doubling_ratio_max", ratios.iter().copied().fold(0.0, f64::max));
    }

    let mut timings = Series::new(
        "timings",
        &["size_bytes", "encrypt_median_s", "decrypt_median_s", "encrypt_fit_s", "decrypt_fit_s"],
    );
    for (i, &s) in sizes.iter().enumerate() {
        timings.push([
            s.to_string(),
            enc_medians[i].to_string(),
            dec_medians[i].to_string(),
            enc_fit.predict(s as f64).to_string(),
            dec_fit.predict(s as f64).to_string(),
        ]);
    }
    let mut fit = Series::new("fit", &["operation", "slope_s_per_byte", "intercept_s", "r_squared"]);
    for (name, f) in [("encrypt", enc_fit), ("decrypt", dec_fit)] {
        fit.push([name.to_string(), f.slope.to_string(), f.intercept.to_string(), f.r_squared.to_string()]);
    }
    report.series.push(timings);
    report.series.push(fit);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_key(seed: u64) -> EsnKey {
        generate_key(&KeyParams {
            chunk_size: 40,
            seed,
            ..KeyParams::default()
        })
        .unwrap()
    }

    #[test]
    fn perturbation_parsing() {
        let cases = [
            ("identity", Perturbation::Identity),
            ("alpha+0.001", Perturbation::LeakingRate(0.001)),
            ("rho-0.01", Perturbation::SpectralRadius(-0.01)),
            ("input-scale+1e-6", Perturbation::InputScale(1e-6)),
            ("input-conn-0.02", Perturbation::InputConnectivity(-0.02)),
            ("reservoir-conn+0.01", Perturbation::ReservoirConnectivity(0.01)),
            ("seed+1", Perturbation::Seed(1)),
            ("seed-3", Perturbation::Seed(-3)),
        ];
        for (text, p) in cases {
            assert_eq!(text.parse::<Perturbation>().unwrap(), p, "{text}");
            assert_eq!(p.to_string().parse::<Perturbation>().unwrap(), p);
        }
        for bad in ["alpha", "beta+1", "seed+0.5", "alpha+x", ""] {
            assert!(bad.parse::<Perturbation>().is_err(), "{bad}");
        }
    }

    #[test]
    fn key_sensitivity_control_is_exact() {
        let key = small_key(3);
        let msg = corpus::random_bytes(400, 1);
        let r = key_sensitivity(&key, &msg, &[Perturbation::Seed(1)], &Executor::sequential()).unwrap();
        assert_eq!(r.get_metric("match_rate[identity]"), Some(1.0));
        assert!(r.get_metric("match_rate[seed+1]").unwrap() < 0.2);
        assert_eq!(r.get_series("match_rates").unwrap().rows.len(), 2);
    }

    #[test]
    fn avalanche_preconditions_and_control() {
        let key = small_key(4);
        let msg = corpus::image_like(400, 2);
        let exec = Executor::sequential();
        assert!(plaintext_avalanche(&key, &msg, 0.001, 1, 1e-12, 0, &exec).is_err());
        assert!(plaintext_avalanche(&key, &msg, 0.0, 1, 1e-12, 0, &exec).is_err());
        assert!(plaintext_avalanche(&key, &msg, 1.0, 1, 1e-12, 0, &exec).is_err());
        let r = plaintext_avalanche(&key, &msg, 0.01, 2, 1e-12, 0, &exec).unwrap();
        assert_eq!(r.get_metric("control_difference_fraction"), Some(0.0));
        assert_eq!(r.get_metric("changed_bytes"), Some(4.0));
        let d = r.get_metric("difference_fraction").unwrap();
        assert!(d > 0.0 && d <= 1.0);
        let again = plaintext_avalanche(&key, &msg, 0.01, 2, 1e-12, 0, &exec).unwrap();
        assert_eq!(again.metrics, r.metrics);
    }

    #[test]
    fn histogram_zero_fraction_matches_count() {
        let key = small_key(5);
        let msg = corpus::text_like(300, 3);
        let ct = encrypt_with(&key, &msg, &Executor::sequential()).unwrap();
        let r = ciphertext_histogram(&ct, 16).unwrap();
        let zeros = ct.elements().filter(|&v| v == 0.0).count();
        assert_eq!(r.get_metric("zero_elements"), Some(zeros as f64));
        let counts: u64 = r.get_series("histogram").unwrap().rows.iter().map(|row| row[2].parse::<u64>().unwrap()).sum();
        assert_eq!(counts as usize, ct.elements().count() - zeros);
        assert!(ciphertext_histogram(&ct, 1).is_err());
    }

    #[test]
    fn constant_message_is_mostly_zero() {
        let key = small_key(6);
        let ct = encrypt_with(&key, &[9u8; 200], &Executor::sequential()).unwrap();
        let r = ciphertext_histogram(&ct, 8).unwrap();
        assert!(r.get_metric("zero_fraction").unwrap() >= 255.0 / 256.0);
    }

    #[test]
    fn capacity_extremes() {
        let exec = Executor::sequential();
        let full = KeyParams { chunk_size: 50, reservoir_ratio: 1.0, seed: 1, ..KeyParams::default() };
        let starved = KeyParams {
            chunk_size: 200,
            reservoir_ratio: 0.005,
            reservoir_connectivity: 1.0,
            seed: 1,
            ..KeyParams::default()
        };
        let r = recall_capacity(&[full, starved], 10, 7, &exec).unwrap();
        assert_eq!(r.get_metric("pass_fraction[m=50,n_r=50]"), Some(1.0));
        assert_eq!(r.get_metric("pass_fraction[m=200,n_r=1]"), Some(0.0));
        assert!(recall_capacity(&[], 10, 7, &exec).is_err());
    }

    #[test]
    fn benchmark_shape() {
        let key = small_key(7);
        let exec = Executor::sequential();
        let r = benchmark(&key, &[200, 400, 800], 1, 1, &exec).unwrap();
        assert_eq!(r.get_series("timings").unwrap().rows.len(), 3);
        assert!(r.get_metric("encrypt_r_squared").is_some());
        assert!(r.get_metric("encrypt_doubling_ratio_min").is_some());
        assert!(benchmark(&key, &[200, 200], 1, 1, &exec).is_err());
    }

    #[test]
    fn distributions_compare() {
        let key = small_key(8);
        let exec = Executor::sequential();
        let a = corpus::text_like(400, 1);
        let b = corpus::image_like(400, 1);
        let ca = encrypt_with(&key, &a, &exec).unwrap();
        let cb = encrypt_with(&key, &b, &exec).unwrap();
        let r = compare_distributions(&a, &ca, &b, &cb, 32).unwrap();
        let pj = r.get_metric("plaintext_jsd").unwrap();
        let cj = r.get_metric("ciphertext_jsd").unwrap();
        assert!((0.0..=1.0).contains(&pj) && (0.0..=1.0).contains(&cj));
        assert!(pj > 0.5);
    }
}
