//! Synthetic byte corpora standing in for real files.

use std::fmt;
use std::str::FromStr;

use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    Random,
    Text,
    Image,
    Constant,
}

impl CorpusKind {
    pub const ALL: [CorpusKind; 4] = [Self::Random, Self::Text, Self::Image, Self::Constant];

    pub fn generate(self, len: usize, seed: u64) -> Vec<u8> {
        match self {
            Self::Random => random_bytes(len, seed),
            Self::Text => text_like(len, seed),
            Self::Image => image_like(len, seed),
            Self::Constant => constant(len, (seed % 256) as u8),
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Random => "random",
            Self::Text => "text",
            Self::Image => "image",
            Self::Constant => "constant",
        })
    }
}

impl FromStr for CorpusKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(Self::Random),
            "text" => Ok(Self::Text),
            "image" => Ok(Self::Image),
            "constant" => Ok(Self::Constant),
            _ => Err(format!("unknown corpus `{s}` (random, text, image, constant)")),
        }
    }
}

pub fn random_bytes(len: usize, seed: u64) -> Vec<u8> {
    let mut out = vec![0u8; len];
    SplitMix64::new(seed).fill_bytes(&mut out);
    out
}

pub fn constant(len: usize, value: u8) -> Vec<u8> {
    vec![value; len]
}

const WORDS: &[&str] = &[
    "the", "of", "and", "to", "in", "a", "is", "that", "for", "it", "as", "was", "with", "be",
    "by", "on", "not", "he", "this", "are", "or", "his", "from", "at", "which", "but", "have",
    "an", "had", "they", "you", "were", "their", "one", "all", "we", "can", "her", "has",
    "there", "been", "if", "more", "when", "will", "would", "who", "so", "no", "network",
    "reservoir", "message", "memory", "signal", "weights", "echo", "state", "secret", "channel",
];

/// English-looking prose: words, spaces, punctuation, line breaks.
pub fn text_like(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(len + 16);
    let mut start_of_sentence = true;
    while out.len() < len {
        let word = WORDS[rng.below(WORDS.len() as u64) as usize].as_bytes();
        if start_of_sentence {
            out.push(word[0].to_ascii_uppercase());
            out.extend_from_slice(&word[1..]);
            start_of_sentence = false;
        } else {
            out.extend_from_slice(word);
        }
        match rng.below(20) {
            0 => {
                out.extend_from_slice(b".");
                start_of_sentence = true;
                out.push(if rng.below(4) == 0 { b'\n' } else { b' ' });
            }
            1 => out.extend_from_slice(b", "),
            _ => out.push(b' '),
        }
    }
    out.truncate(len);
    out
}

/// Grayscale raster, 256 pixels wide: smooth gradients plus uniform noise.
pub fn image_like(len: usize, seed: u64) -> Vec<u8> {
    const WIDTH: usize = 256;
    let mut rng = SplitMix64::new(seed);
    let phase = rng.next_f64() * std::f64::consts::TAU;
    (0..len)
        .map(|i| {
            let (x, y) = ((i % WIDTH) as f64, (i / WIDTH) as f64);
            let smooth = 128.0
                + 60.0 * (x / 37.0 + phase).sin()
                + 40.0 * (y / 23.0 - 0.5 * phase).cos()
                + 0.1 * (x - 128.0);
            let noise = rng.symmetric(40.0);
            (smooth + noise).round().clamp(0.0, 255.0) as u8
        })
        .collect()
}
