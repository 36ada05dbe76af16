//! Ciphertext container format and streaming encrypt/decrypt.
//!
//! All integers and reals are little-endian.
//!
//! | field             | type                |
//! |-------------------|---------------------|
//! | magic `"ESNC"`    | 4 bytes             |
//! | version = 1       | u16                 |
//! | key fingerprint   | 16 bytes            |
//! | chunk size `m`    | u32                 |
//! | reservoir `n_r`   | u32                 |
//! | total length `N`  | u64                 |
//! | chunk count       | u32                 |
//!
//! followed by `chunk count` records of `plain_len: u32` and the readout as
//! `256 · n_r` f64 values in row-major order. Nothing may follow the last
//! chunk.

use std::io::{self, Read, Write};

use crate::cipher::{
    chunk_count, decrypt_chunks, encrypt_chunks, ChunkCiphertext, Ciphertext, CiphertextHeader,
};
use crate::codec::ALPHABET;
use crate::error::{Error, FormatErrorKind, Result};
use crate::esn::ReadoutMatrix;
use crate::keygen::{EsnKey, MAX_CHUNK_SIZE};
use crate::linalg::DenseMatrix;
use crate::parallel::Executor;

pub const CIPHERTEXT_MAGIC: [u8; 4] = *b"ESNC";
pub const CIPHERTEXT_VERSION: u16 = 1;
pub const HEADER_LEN: usize = 4 + 2 + 16 + 4 + 4 + 8 + 4;

/// Bytes taken by one chunk record.
pub fn chunk_record_len(reservoir_size: usize) -> usize {
    4 + 8 * ALPHABET * reservoir_size
}

/// Exact serialized size; depends only on `N`, `m` and `n_r`.
pub fn serialized_len(total_len: u64, chunk_size: u32, reservoir_size: u32) -> u64 {
    HEADER_LEN as u64
        + chunk_count(total_len, u64::from(chunk_size))
            * chunk_record_len(reservoir_size as usize) as u64
}

fn encode_header(h: &CiphertextHeader) -> [u8; HEADER_LEN] {
    let mut out = [0u8; HEADER_LEN];
    out[0..4].copy_from_slice(&CIPHERTEXT_MAGIC);
    out[4..6].copy_from_slice(&h.version.to_le_bytes());
    out[6..22].copy_from_slice(&h.key_fingerprint);
    out[22..26].copy_from_slice(&h.chunk_size.to_le_bytes());
    out[26..30].copy_from_slice(&h.reservoir_size.to_le_bytes());
    out[30..38].copy_from_slice(&h.total_len.to_le_bytes());
    out[38..42].copy_from_slice(&h.chunk_count.to_le_bytes());
    out
}

fn write_chunk<W: Write>(mut w: W, chunk: &ChunkCiphertext) -> io::Result<()> {
    w.write_all(&(chunk.plain_len as u32).to_le_bytes())?;
    let values = chunk.readout.weights().as_slice();
    let mut buf = Vec::with_capacity(8 * values.len());
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)
}

pub fn write_ciphertext<W: Write>(mut w: W, ct: &Ciphertext) -> io::Result<()> {
    w.write_all(&encode_header(&ct.header))?;
    for chunk in &ct.chunks {
        write_chunk(&mut w, chunk)?;
    }
    Ok(())
}

pub fn serialize_ciphertext(ct: &Ciphertext) -> Vec<u8> {
    let mut out = Vec::with_capacity(serialized_len(
        ct.header.total_len,
        ct.header.chunk_size,
        ct.header.reservoir_size,
    ) as usize);
    write_ciphertext(&mut out, ct).expect("writing to a Vec cannot fail");
    out
}

pub fn deserialize_ciphertext(bytes: &[u8]) -> Result<Ciphertext> {
    let mut reader = ChunkReader::new(bytes)?;
    let mut chunks = Vec::with_capacity(reader.header().chunk_count as usize);
    while let Some(chunk) = reader.next_chunk()? {
        chunks.push(chunk);
    }
    let header = *reader.header();
    reader.finish()?;
    Ok(Ciphertext { header, chunks })
}

fn format_error(offset: u64, kind: FormatErrorKind) -> Error {
    Error::Format { offset, kind }
}

/// Reads a container chunk by chunk, validating as it goes.
pub struct ChunkReader<R> {
    inner: R,
    header: CiphertextHeader,
    offset: u64,
    next_index: u32,
    buf: Vec<u8>,
}

impl<R: Read> ChunkReader<R> {
    pub fn new(mut inner: R) -> Result<Self> {
        let mut raw = [0u8; HEADER_LEN];
        let got = read_full(&mut inner, &mut raw)?;
        if got < 4 || raw[..4] != CIPHERTEXT_MAGIC {
            return Err(format_error(0, FormatErrorKind::BadMagic));
        }
        if got < 6 {
            return Err(format_error(got as u64, FormatErrorKind::Truncated));
        }
        let version = u16::from_le_bytes([raw[4], raw[5]]);
        if version != CIPHERTEXT_VERSION {
            return Err(format_error(4, FormatErrorKind::UnsupportedVersion(version)));
        }
        if got < HEADER_LEN {
            return Err(format_error(got as u64, FormatErrorKind::Truncated));
        }
        let header = CiphertextHeader {
            version,
            key_fingerprint: raw[6..22].try_into().unwrap(),
            chunk_size: u32::from_le_bytes(raw[22..26].try_into().unwrap()),
            reservoir_size: u32::from_le_bytes(raw[26..30].try_into().unwrap()),
            total_len: u64::from_le_bytes(raw[30..38].try_into().unwrap()),
            chunk_count: u32::from_le_bytes(raw[38..42].try_into().unwrap()),
        };
        let inconsistent = |offset, msg: String| format_error(offset, FormatErrorKind::Inconsistent(msg));
        if header.chunk_size < 2 || header.chunk_size > MAX_CHUNK_SIZE {
            return Err(inconsistent(22, format!("chunk size {}", header.chunk_size)));
        }
        if header.reservoir_size == 0 || header.reservoir_size > header.chunk_size {
            return Err(inconsistent(
                26,
                format!("reservoir size {} for chunk size {}", header.reservoir_size, header.chunk_size),
            ));
        }
        if header.total_len == 0 {
            return Err(inconsistent(30, "empty message".into()));
        }
        let expected = chunk_count(header.total_len, u64::from(header.chunk_size));
        if u64::from(header.chunk_count) != expected {
            return Err(inconsistent(
                38,
                format!(
                    "{} chunks declared, {} bytes at chunk size {} need {expected}",
                    header.chunk_count, header.total_len, header.chunk_size
                ),
            ));
        }
        Ok(Self {
            inner,
            header,
            offset: HEADER_LEN as u64,
            next_index: 0,
            buf: vec![0u8; 8 * ALPHABET * header.reservoir_size as usize],
        })
    }

    pub fn header(&self) -> &CiphertextHeader {
        &self.header
    }

    /// Next chunk, or `None` once all declared chunks have been read.
    pub fn next_chunk(&mut self) -> Result<Option<ChunkCiphertext>> {
        if self.next_index == self.header.chunk_count {
            return Ok(None);
        }
        let start = self.offset;
        let mut len_raw = [0u8; 4];
        let got = read_full(&mut self.inner, &mut len_raw)?;
        if got < 4 {
            return Err(format_error(start + got as u64, FormatErrorKind::Truncated));
        }
        let plain_len = u32::from_le_bytes(len_raw) as usize;
        let expected = self.header.chunk_len(self.next_index);
        if plain_len != expected {
            return Err(format_error(
                start,
                FormatErrorKind::Inconsistent(format!(
                    "chunk {} declares {plain_len} bytes, expected {expected}",
                    self.next_index
                )),
            ));
        }
        let got = read_full(&mut self.inner, &mut self.buf)?;
        if got < self.buf.len() {
            return Err(format_error(start + 4 + got as u64, FormatErrorKind::Truncated));
        }
        let values: Vec<f64> = self
            .buf
            .chunks_exact(8)
            .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
            .collect();
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(format_error(
                start + 4 + 8 * bad as u64,
                FormatErrorKind::Inconsistent("non-finite readout weight".into()),
            ));
        }
        let n = self.header.reservoir_size as usize;
        let readout = ReadoutMatrix::new(DenseMatrix::from_vec(ALPHABET, n, values)?)?;
        self.offset = start + chunk_record_len(n) as u64;
        self.next_index += 1;
        Ok(Some(ChunkCiphertext { readout, plain_len }))
    }

    /// Confirms that nothing follows the last chunk.
    pub fn finish(mut self) -> Result<()> {
        if self.next_index != self.header.chunk_count {
            return Err(format_error(self.offset, FormatErrorKind::Truncated));
        }
        let mut probe = [0u8; 1];
        if read_full(&mut self.inner, &mut probe)? != 0 {
            return Err(format_error(self.offset, FormatErrorKind::TrailingData));
        }
        Ok(())
    }
}

/// Reads until `buf` is full or EOF; returns the number of bytes read.
fn read_full<R: Read>(r: &mut R, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match r.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(k) => filled += k,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}

/// Chunks handed to the executor at once when streaming.
fn batch_len(exec: &Executor) -> usize {
    4 * exec.jobs().max(1)
}

/// Encrypts exactly `total_len` bytes from `input` into a container written
/// to `output`, holding only one batch of chunks in memory.
pub fn encrypt_stream<R: Read, W: Write>(
    key: &EsnKey,
    mut input: R,
    total_len: u64,
    mut output: W,
    exec: &Executor,
) -> Result<CiphertextHeader> {
    if total_len == 0 {
        return Err(Error::EmptyInput("cannot encrypt an empty message"));
    }
    let header = CiphertextHeader::for_key(key, total_len)?;
    output.write_all(&encode_header(&header))?;

    let m = key.chunk_size();
    let batch = batch_len(exec);
    let mut remaining = total_len;
    let mut index = 0usize;
    let mut buf = Vec::with_capacity(batch * m);
    while remaining > 0 {
        let take = remaining.min((batch * m) as u64) as usize;
        buf.resize(take, 0);
        input.read_exact(&mut buf)?;
        let pieces: Vec<&[u8]> = buf.chunks(m).collect();
        let chunks = encrypt_chunks(key, &pieces, index, exec)?;
        for chunk in &chunks {
            write_chunk(&mut output, chunk)?;
        }
        index += pieces.len();
        remaining -= take as u64;
    }
    let mut probe = [0u8; 1];
    if read_full(&mut input, &mut probe)? != 0 {
        return Err(Error::InvalidArgument(format!(
            "input is longer than the declared {total_len} bytes"
        )));
    }
    output.flush()?;
    Ok(header)
}

/// Decrypts every chunk of `reader` into `output`, then checks for trailing
/// data. Fingerprint policy is the caller's; see [`crate::cipher::decrypt`].
pub fn decrypt_stream<R: Read, W: Write>(
    key: &EsnKey,
    mut reader: ChunkReader<R>,
    mut output: W,
    exec: &Executor,
) -> Result<u64> {
    reader.header().check_dimensions(key)?;
    let batch = batch_len(exec);
    let mut written = 0u64;
    let mut index = 0usize;
    loop {
        let mut chunks = Vec::with_capacity(batch);
        while chunks.len() < batch {
            match reader.next_chunk()? {
                Some(c) => chunks.push(c),
                None => break,
            }
        }
        if chunks.is_empty() {
            break;
        }
        for part in decrypt_chunks(key, &chunks, index, exec)? {
            output.write_all(&part)?;
            written += part.len() as u64;
        }
        index += chunks.len();
    }
    reader.finish()?;
    output.flush()?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::{decrypt, encrypt};
    use crate::keygen::{generate_key, KeyParams};
    use crate::rng::SplitMix64;

    fn key() -> EsnKey {
        generate_key(&KeyParams {
            chunk_size: 32,
            seed: 99,
            ..KeyParams::default()
        })
        .unwrap()
    }

    fn message(len: usize) -> Vec<u8> {
        let mut m = vec![0u8; len];
        SplitMix64::new(len as u64).fill_bytes(&mut m);
        m
    }

    #[test]
    fn roundtrip_and_exact_size() {
        let k = key();
        let msg = message(100);
        let ct = encrypt(&k, &msg).unwrap();
        let bytes = serialize_ciphertext(&ct);
        let n_r = k.reservoir_size();
        assert_eq!(bytes.len(), HEADER_LEN + 4 * (4 + 8 * 256 * n_r));
        assert_eq!(bytes.len() as u64, serialized_len(100, 32, n_r as u32));
        assert_eq!(&bytes[..4], b"ESNC");
        let back = deserialize_ciphertext(&bytes).unwrap();
        assert_eq!(back, ct);
        assert_eq!(serialize_ciphertext(&back), bytes);
        assert_eq!(decrypt(&k, &back).unwrap(), msg);
    }

    #[test]
    fn corruption_cases() {
        let k = key();
        let bytes = serialize_ciphertext(&encrypt(&k, &message(40)).unwrap());
        let kind = |b: &[u8]| match deserialize_ciphertext(b) {
            Err(Error::Format { offset, kind }) => (offset, kind),
            other => panic!("expected format error, got {other:?}"),
        };

        let mut bad = bytes.clone();
        bad[1] = b'X';
        assert_eq!(kind(&bad), (0, FormatErrorKind::BadMagic));

        let mut bad = bytes.clone();
        bad[4] = 9;
        assert_eq!(kind(&bad), (4, FormatErrorKind::UnsupportedVersion(9)));

        assert_eq!(kind(&bytes[..20]), (20, FormatErrorKind::Truncated));
        let cut = bytes.len() - 10;
        assert_eq!(kind(&bytes[..cut]).1, FormatErrorKind::Truncated);
        assert_eq!(kind(&bytes[..cut]).0, cut as u64);

        let mut long = bytes.clone();
        long.push(0);
        assert_eq!(kind(&long), (bytes.len() as u64, FormatErrorKind::TrailingData));

        let mut bad = bytes.clone();
        bad[38] = 5; // chunk count
        assert!(matches!(kind(&bad).1, FormatErrorKind::Inconsistent(_)));

        let mut bad = bytes.clone();
        bad[HEADER_LEN] = 7; // first chunk plain_len
        assert_eq!(kind(&bad).0, HEADER_LEN as u64);

        let mut bad = bytes;
        bad[HEADER_LEN + 4..HEADER_LEN + 12].copy_from_slice(&f64::NAN.to_le_bytes());
        assert_eq!(kind(&bad).0, HEADER_LEN as u64 + 4);
    }

    #[test]
    fn streaming_matches_in_memory() {
        let k = key();
        let msg = message(1000);
        let mut streamed = Vec::new();
        let exec = Executor::new(2).unwrap();
        encrypt_stream(&k, &msg[..], msg.len() as u64, &mut streamed, &exec).unwrap();
        assert_eq!(streamed, serialize_ciphertext(&encrypt(&k, &msg).unwrap()));

        let mut out = Vec::new();
        let n = decrypt_stream(&k, ChunkReader::new(&streamed[..]).unwrap(), &mut out, &exec).unwrap();
        assert_eq!(n, 1000);
        assert_eq!(out, msg);
    }

    #[test]
    fn streaming_rejects_length_mismatch() {
        let k = key();
        let msg = message(50);
        let exec = Executor::sequential();
        assert!(matches!(
            encrypt_stream(&k, &msg[..], 60, Vec::new(), &exec),
            Err(Error::Io(_))
        ));
        assert!(encrypt_stream(&k, &msg[..], 40, Vec::new(), &exec).is_err());
    }

    #[test]
    fn truncated_stream_fails_decrypt() {
        let k = key();
        let bytes = serialize_ciphertext(&encrypt(&k, &message(100)).unwrap());
        let cut = &bytes[..bytes.len() - 1];
        let err = decrypt_stream(&k, ChunkReader::new(cut).unwrap(), Vec::new(), &Executor::sequential())
            .unwrap_err();
        assert!(matches!(err, Error::Format { kind: FormatErrorKind::Truncated, .. }));
    }
}
