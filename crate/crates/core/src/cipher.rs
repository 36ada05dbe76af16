//! Encryption engine: memorize each chunk into a readout, recall it back.
//!
//! A message is cut into chunks of `m` bytes (the last one may be shorter).
//! Every chunk is memorized by its own readout starting from the zero
//! reservoir state, so chunks are independent and can be processed in any
//! order or in parallel.

use crate::codec::{argmax, build_training_pair, OneHot, ALPHABET};
use crate::error::{Error, Result};
use crate::esn::{drive, train_readout, ReadoutMatrix, ReservoirState};
use crate::keygen::{key_fingerprint, EsnKey};
use crate::linalg::dot;
use crate::parallel::Executor;

/// One memorized chunk: the trained readout and the chunk's true length.
#[derive(Debug, Clone, PartialEq)]
pub struct ChunkCiphertext {
    pub readout: ReadoutMatrix,
    pub plain_len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CiphertextHeader {
    pub version: u16,
    pub key_fingerprint: [u8; 16],
    pub chunk_size: u32,
    pub reservoir_size: u32,
    pub total_len: u64,
    pub chunk_count: u32,
}

impl CiphertextHeader {
    pub fn for_key(key: &EsnKey, total_len: u64) -> Result<Self> {
        let chunk_count = chunk_count(total_len, key.chunk_size() as u64);
        let chunk_count = u32::try_from(chunk_count).map_err(|_| {
            Error::InvalidArgument(format!("{total_len} bytes need more than 2^32 chunks"))
        })?;
        Ok(Self {
            version: crate::container::CIPHERTEXT_VERSION,
            key_fingerprint: key_fingerprint(key),
            chunk_size: key.params().chunk_size,
            reservoir_size: key.reservoir_size() as u32,
            total_len,
            chunk_count,
        })
    }

    /// Length of chunk `index` implied by the header.
    pub fn chunk_len(&self, index: u32) -> usize {
        let m = u64::from(self.chunk_size);
        let start = u64::from(index) * m;
        (self.total_len - start).min(m) as usize
    }

    pub fn matches_key(&self, key: &EsnKey) -> bool {
        self.key_fingerprint == key_fingerprint(key)
    }

    /// Dimension checks that must pass before any chunk can be recalled.
    pub fn check_dimensions(&self, key: &EsnKey) -> Result<()> {
        if self.reservoir_size as usize != key.reservoir_size() {
            return Err(Error::KeyMismatch(format!(
                "ciphertext reservoir size {} vs key {}",
                self.reservoir_size,
                key.reservoir_size()
            )));
        }
        if self.chunk_size as usize != key.chunk_size() {
            return Err(Error::KeyMismatch(format!(
                "ciphertext chunk size {} vs key {}",
                self.chunk_size,
                key.chunk_size()
            )));
        }
        Ok(())
    }
}

pub fn chunk_count(total_len: u64, chunk_size: u64) -> u64 {
    total_len.div_ceil(chunk_size)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ciphertext {
    pub header: CiphertextHeader,
    pub chunks: Vec<ChunkCiphertext>,
}

impl Ciphertext {
    /// Every readout element across all chunks, chunk by chunk, row-major.
    pub fn elements(&self) -> impl Iterator<Item = f64> + '_ {
        self.chunks
            .iter()
            .flat_map(|c| c.readout.weights().as_slice().iter().copied())
    }
}

/// Memorizes one chunk and checks that it recalls exactly.
pub fn encrypt_chunk(key: &EsnKey, chunk: &[u8]) -> Result<ChunkCiphertext> {
    if chunk.len() > key.chunk_size() {
        return Err(Error::InvalidArgument(format!(
            "chunk of {} bytes exceeds chunk size {}",
            chunk.len(),
            key.chunk_size()
        )));
    }
    let pair = build_training_pair(chunk, key.dummy_byte())?;
    let initial = ReservoirState::zeros(key.reservoir_size());
    let states = drive(key.reservoir(), &pair.inputs, &initial)?;
    let readout = train_readout(&states, &pair.targets, key.beta())?;
    let ct = ChunkCiphertext {
        readout,
        plain_len: chunk.len(),
    };

    let recalled = decrypt_chunk(key, &ct).map_err(|e| match e {
        Error::NumericalBlowUp { step } => Error::Unmemorizable { position: step },
        other => other,
    })?;
    if let Some(position) = recalled.iter().zip(chunk).position(|(a, b)| a != b) {
        return Err(Error::Unmemorizable { position });
    }
    Ok(ct)
}

/// Free-runs the network from the zero state and the dummy byte, feeding each
/// decided byte back as the next input.
pub fn decrypt_chunk(key: &EsnKey, ct: &ChunkCiphertext) -> Result<Vec<u8>> {
    let n = key.reservoir_size();
    if ct.readout.reservoir_size() != n {
        return Err(Error::KeyMismatch(format!(
            "readout has {} columns, key reservoir has {n} neurons",
            ct.readout.reservoir_size()
        )));
    }
    let w = ct.readout.weights();
    let active = ct.readout.nonzero_rows();
    let reservoir = key.reservoir();

    let mut state = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    let mut scores = [0.0; ALPHABET];
    let mut input = OneHot::new(key.dummy_byte());
    let mut out = Vec::with_capacity(ct.plain_len);
    for step in 0..ct.plain_len {
        reservoir.step(&mut state, input, &mut scratch);
        // Inactive rows are all-zero, so their score is exactly 0.
        for &row in &active {
            scores[row] = dot(w.row(row), &state);
        }
        let byte = argmax(&scores).ok_or(Error::NumericalBlowUp { step })? as u8;
        out.push(byte);
        input = OneHot::new(byte);
    }
    Ok(out)
}

pub fn encrypt(key: &EsnKey, plaintext: &[u8]) -> Result<Ciphertext> {
    encrypt_with(key, plaintext, &Executor::sequential())
}

pub fn encrypt_with(key: &EsnKey, plaintext: &[u8], exec: &Executor) -> Result<Ciphertext> {
    if plaintext.is_empty() {
        return Err(Error::EmptyInput("cannot encrypt an empty message"));
    }
    let header = CiphertextHeader::for_key(key, plaintext.len() as u64)?;
    let pieces: Vec<&[u8]> = plaintext.chunks(key.chunk_size()).collect();
    let chunks = encrypt_chunks(key, &pieces, 0, exec)?;
    Ok(Ciphertext { header, chunks })
}

/// Encrypts a batch of chunks; `first_index` numbers them in error reports.
pub(crate) fn encrypt_chunks(
    key: &EsnKey,
    pieces: &[&[u8]],
    first_index: usize,
    exec: &Executor,
) -> Result<Vec<ChunkCiphertext>> {
    exec.map(pieces, |i, piece| {
        encrypt_chunk(key, piece).map_err(|e| e.in_chunk(first_index + i))
    })
    .into_iter()
    .collect()
}

pub(crate) fn decrypt_chunks(
    key: &EsnKey,
    chunks: &[ChunkCiphertext],
    first_index: usize,
    exec: &Executor,
) -> Result<Vec<Vec<u8>>> {
    exec.map(chunks, |i, ct| {
        decrypt_chunk(key, ct).map_err(|e| e.in_chunk(first_index + i))
    })
    .into_iter()
    .collect()
}

/// Decrypts with whatever key is given. A fingerprint mismatch is logged as a
/// warning and decryption proceeds; callers that must refuse wrong keys check
/// [`CiphertextHeader::matches_key`] first.
pub fn decrypt(key: &EsnKey, ct: &Ciphertext) -> Result<Vec<u8>> {
    decrypt_with(key, ct, &Executor::sequential())
}

pub fn decrypt_with(key: &EsnKey, ct: &Ciphertext, exec: &Executor) -> Result<Vec<u8>> {
    ct.header.check_dimensions(key)?;
    if !ct.header.matches_key(key) {
        log::warn!("key fingerprint does not match ciphertext; output will not be the plaintext");
    }
    let parts = decrypt_chunks(key, &ct.chunks, 0, exec)?;
    Ok(parts.concat())
}
