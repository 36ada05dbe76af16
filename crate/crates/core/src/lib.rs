//! Symmetric encryption with echo state networks.
//!
//! The secret key is a randomly generated reservoir ([`keygen::EsnKey`]). To
//! encrypt, each chunk of the message is memorized by training a linear
//! readout on the reservoir's response to the chunk; the trained readout is
//! the ciphertext. To decrypt, the readout is plugged into the same reservoir
//! and the network free-runs, feeding each recalled byte back as its next
//! input.
//!
//! ```
//! use esncrypt::{cipher, keygen::{generate_key, KeyParams}};
//!
//! let key = generate_key(&KeyParams { chunk_size: 32, seed: 7, ..KeyParams::default() })?;
//! let ct = cipher::encrypt(&key, b"attack at dawn")?;
//! assert_eq!(cipher::decrypt(&key, &ct)?, b"attack at dawn");
//! # Ok::<(), esncrypt::Error>(())
//! ```
//!
//! With the default `parallel` feature, chunks can be processed on a rayon
//! pool through [`parallel::Executor`]; output is identical to the sequential
//! path.

pub mod analysis;
pub mod cipher;
pub mod codec;
pub mod container;
pub mod error;
pub mod esn;
pub mod keygen;
pub mod linalg;
pub mod parallel;
pub mod rng;

pub use error::{Error, ErrorClass, Result};
