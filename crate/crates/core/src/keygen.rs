//! Secret keys: a reservoir regenerated deterministically from its parameters
//! and seed.
//!
//! Generation order is part of the key definition. One [`SplitMix64`] stream
//! seeded with `seed` is consumed as follows:
//!
//! 1. `W_in`, row-major over `n_r × 256`: for each entry draw a weight
//!    uniform on `[-a, a)`, then a mask draw; the weight is kept when the mask
//!    draw is below `input_connectivity`.
//! 2. `W_res`, row-major over `n_r × n_r`: weight uniform on `[-1, 1)`, then
//!    mask draw against `reservoir_connectivity`.
//! 3. `W_res` is scaled by `ρ / spectral_radius(W_res)`.

use crate::codec::ALPHABET;
use crate::error::{Error, Result};
use crate::esn::Reservoir;
use crate::linalg::{spectral_radius, CsrMatrix, DenseMatrix, SPECTRAL_TOLERANCE};
use crate::rng::SplitMix64;

pub const KEY_MAGIC: [u8; 4] = *b"ESNK";
pub const KEY_VERSION: u16 = 1;
/// Serialized key length in bytes.
pub const KEY_LEN: usize = 4 + 2 + 4 + 8 * 7 + 8 + 1;
/// Largest accepted chunk size.
pub const MAX_CHUNK_SIZE: u32 = 1 << 16;
/// The dummy byte that precedes every chunk.
pub const DUMMY_BYTE: u8 = 0x00;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyParams {
    /// Chunk size `m` in bytes.
    pub chunk_size: u32,
    /// `n_r = round(reservoir_ratio · m)`.
    pub reservoir_ratio: f64,
    pub leaking_rate: f64,
    pub spectral_radius: f64,
    /// Half-width `a` of the input weight interval.
    pub input_scale: f64,
    pub input_connectivity: f64,
    pub reservoir_connectivity: f64,
    /// Ridge constant used when training readouts.
    pub beta: f64,
    pub seed: u64,
}

impl Default for KeyParams {
    fn default() -> Self {
        Self {
            chunk_size: 200,
            reservoir_ratio: 0.95,
            leaking_rate: 0.07,
            spectral_radius: 1.0,
            input_scale: 0.5,
            input_connectivity: 0.30,
            reservoir_connectivity: 0.30,
            beta: 1e-10,
            seed: 0,
        }
    }
}

impl KeyParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn reservoir_size(&self) -> usize {
        (self.reservoir_ratio * f64::from(self.chunk_size)).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if self.chunk_size < 2 || self.chunk_size > MAX_CHUNK_SIZE {
            return fail(format!(
                "chunk size {} outside [2, {MAX_CHUNK_SIZE}]",
                self.chunk_size
            ));
        }
        if !(self.reservoir_ratio > 0.0 && self.reservoir_ratio <= 1.0) {
            return fail(format!("reservoir ratio {} outside (0, 1]", self.reservoir_ratio));
        }
        if self.reservoir_size() < 1 {
            return fail("reservoir ratio yields an empty reservoir".into());
        }
        if !(0.0..=1.0).contains(&self.leaking_rate) {
            return fail(format!("leaking rate {} outside [0, 1]", self.leaking_rate));
        }
        for (name, v) in [
            ("spectral radius", self.spectral_radius),
            ("input scale", self.input_scale),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return fail(format!("{name} {v} must be positive and finite"));
            }
        }
        for (name, v) in [
            ("input connectivity", self.input_connectivity),
            ("reservoir connectivity", self.reservoir_connectivity),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return fail(format!("{name} {v} outside (0, 1]"));
            }
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return fail(format!("beta {} must be finite and >= 0", self.beta));
        }
        Ok(())
    }
}

/// The shared secret: parameters plus the reservoir they generate.
#[derive(Debug, Clone, PartialEq)]
pub struct EsnKey {
    params: KeyParams,
    reservoir: Reservoir,
    dummy_byte: u8,
}

impl EsnKey {
    pub fn params(&self) -> &KeyParams {
        &self.params
    }

    pub fn reservoir(&self) -> &Reservoir {
        &self.reservoir
    }

    pub fn dummy_byte(&self) -> u8 {
        self.dummy_byte
    }

    pub fn chunk_size(&self) -> usize {
        self.params.chunk_size as usize
    }

    pub fn reservoir_size(&self) -> usize {
        self.reservoir.size()
    }

    pub fn beta(&self) -> f64 {
        self.params.beta
    }

    pub fn fingerprint(&self) -> [u8; 16] {
        key_fingerprint(self)
    }
}

pub fn generate_key(params: &KeyParams) -> Result<EsnKey> {
    params.validate()?;
    let n = params.reservoir_size();
    let mut rng = SplitMix64::new(params.seed);

    let mut w_in = DenseMatrix::zeros(n, ALPHABET);
    for v in w_in.as_mut_slice() {
        let w = rng.symmetric(params.input_scale);
        if rng.next_f64() < params.input_connectivity {
            *v = w;
        }
    }

    let mut w_res = DenseMatrix::zeros(n, n);
    for v in w_res.as_mut_slice() {
        let w = rng.symmetric(1.0);
        if rng.next_f64() < params.reservoir_connectivity {
            *v = w;
        }
    }
    let mut w_res = CsrMatrix::from_dense(&w_res);
    let raw = spectral_radius(&w_res, SPECTRAL_TOLERANCE)?;
    let max_entry = w_res.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(raw > 1e-8 * max_entry) || raw == 0.0 {
        return Err(Error::DegenerateReservoir);
    }
    w_res.scale(params.spectral_radius / raw);

    Ok(EsnKey {
        params: *params,
        reservoir: Reservoir::new(params.leaking_rate, &w_in, w_res)?,
        dummy_byte: DUMMY_BYTE,
    })
}

/// Compact key form; the matrices are regenerated from the seed on load.
pub fn serialize_key(key: &EsnKey) -> Vec<u8> {
    encode_params(&key.params, key.dummy_byte)
}

fn encode_params(p: &KeyParams, dummy: u8) -> Vec<u8> {
    let mut out = Vec::with_capacity(KEY_LEN);
    out.extend_from_slice(&KEY_MAGIC);
    out.extend_from_slice(&KEY_VERSION.to_le_bytes());
    out.extend_from_slice(&p.chunk_size.to_le_bytes());
    for v in [
        p.reservoir_ratio,
        p.leaking_rate,
        p.spectral_radius,
        p.input_scale,
        p.input_connectivity,
        p.reservoir_connectivity,
        p.beta,
    ] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&p.seed.to_le_bytes());
    out.push(dummy);
    debug_assert_eq!(out.len(), KEY_LEN);
    out
}

/// Parses only the parameter block of a key file.
pub fn decode_params(bytes: &[u8]) -> Result<KeyParams> {
    if bytes.len() < 4 || bytes[..4] != KEY_MAGIC {
        return Err(Error::NotAKeyFile);
    }
    if bytes.len() < 6 {
        return Err(Error::CorruptKey("truncated before version".into()));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != KEY_VERSION {
        return Err(Error::UnsupportedKeyVersion(version));
    }
    if bytes.len() < KEY_LEN {
        return Err(Error::CorruptKey(format!(
            "truncated: {} of {KEY_LEN} bytes",
            bytes.len()
        )));
    }
    if bytes.len() > KEY_LEN {
        return Err(Error::CorruptKey(format!(
            "{} bytes of trailing data",
            bytes.len() - KEY_LEN
        )));
    }
    let f = |i: usize| {
        let at = 10 + 8 * i;
        f64::from_le_bytes(bytes[at..at + 8].try_into().unwrap())
    };
    let params = KeyParams {
        chunk_size: u32::from_le_bytes(bytes[6..10].try_into().unwrap()),
        reservoir_ratio: f(0),
        leaking_rate: f(1),
        spectral_radius: f(2),
        input_scale: f(3),
        input_connectivity: f(4),
        reservoir_connectivity: f(5),
        beta: f(6),
        seed: u64::from_le_bytes(bytes[66..74].try_into().unwrap()),
    };
    if bytes[74] != DUMMY_BYTE {
        return Err(Error::CorruptKey(format!(
            "dummy byte {:#04x}, expected {DUMMY_BYTE:#04x}",
            bytes[74]
        )));
    }
    params.validate().map_err(|e| match e {
        Error::InvalidParams(msg) => Error::CorruptKey(msg),
        other => other,
    })?;
    Ok(params)
}

pub fn deserialize_key(bytes: &[u8]) -> Result<EsnKey> {
    generate_key(&decode_params(bytes)?)
}

/// FNV-1a, 128-bit variant.
fn fnv1a_128(bytes: &[u8]) -> u128 {
    const OFFSET: u128 = 0x6c62_272e_07bb_0142_62b8_2175_6295_c58d;
    const PRIME: u128 = 0x0000_0000_0100_0000_0000_0000_0000_013b;
    bytes
        .iter()
        .fold(OFFSET, |h, &b| (h ^ u128::from(b)).wrapping_mul(PRIME))
}

/// Digest of the serialized key, stored in ciphertext headers to catch
/// wrong-key decryption. Not a MAC.
pub fn key_fingerprint(key: &EsnKey) -> [u8; 16] {
    params_fingerprint(&key.params)
}

/// Fingerprint computed from parameters alone, without building matrices.
pub fn params_fingerprint(params: &KeyParams) -> [u8; 16] {
    fnv1a_128(&encode_params(params, DUMMY_BYTE)).to_le_bytes()
}
