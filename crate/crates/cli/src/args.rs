use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use esncrypt::analysis::{CorpusKind, Perturbation};
use esncrypt::keygen::KeyParams;

#[derive(Debug, Parser)]
#[command(name = "esncrypt", version, about = "Echo state network encryption")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key file
    Keygen(KeygenArgs),
    /// Encrypt a file
    Encrypt(EncryptArgs),
    /// Decrypt a file
    Decrypt(DecryptArgs),
    /// Run a security analysis experiment
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Measure encryption and decryption time against message size
    Bench(BenchArgs),
}

/// Key parameter overrides; names mirror the key file fields.
#[derive(Debug, Clone, Args)]
pub struct KeyParamArgs {
    /// Chunk size m in bytes
    #[arg(long)]
    pub chunk_size: Option<u32>,
    /// Reservoir size as a fraction of the chunk size
    #[arg(long)]
    pub reservoir_ratio: Option<f64>,
    /// Leaking rate, in [0, 1]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Spectral radius of the reservoir matrix
    #[arg(long)]
    pub rho: Option<f64>,
    /// Input weight scale
    #[arg(long)]
    pub input_scale: Option<f64>,
    /// Fraction of nonzero input weights
    #[arg(long)]
    pub input_conn: Option<f64>,
    /// Fraction of nonzero reservoir weights
    #[arg(long)]
    pub reservoir_conn: Option<f64>,
    /// Ridge regularization constant
    #[arg(long)]
    pub beta: Option<f64>,
    /// Key seed (key material; drawn from the OS when omitted)
    #[arg(long)]
    pub seed: Option<u64>,
}

impl KeyParamArgs {
    /// Defaults overridden by whatever flags were given; `seed` falls back
    /// to `default_seed`.
    pub fn to_params(&self, default_seed: u64) -> KeyParams {
        let d = KeyParams::default();
        KeyParams {
            chunk_size: self.chunk_size.unwrap_or(d.chunk_size),
            reservoir_ratio: self.reservoir_ratio.unwrap_or(d.reservoir_ratio),
            leaking_rate: self.alpha.unwrap_or(d.leaking_rate),
            spectral_radius: self.rho.unwrap_or(d.spectral_radius),
            input_scale: self.input_scale.unwrap_or(d.input_scale),
            input_connectivity: self.input_conn.unwrap_or(d.input_connectivity),
            reservoir_connectivity: self.reservoir_conn.unwrap_or(d.reservoir_connectivity),
            beta: self.beta.unwrap_or(d.beta),
            seed: self.seed.unwrap_or(default_seed),
        }
    }

    pub fn any_set(&self) -> bool {
        self.chunk_size.is_some()
            || self.reservoir_ratio.is_some()
            || self.alpha.is_some()
            || self.rho.is_some()
            || self.input_scale.is_some()
            || self.input_conn.is_some()
            || self.reservoir_conn.is_some()
            || self.beta.is_some()
            || self.seed.is_some()
    }
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    /// Output key file
    #[arg(short, long)]
    pub output: PathBuf,
    /// Overwrite an existing file
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub params: KeyParamArgs,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    /// Key file
    #[arg(short, long)]
    pub key: PathBuf,
    /// Plaintext file
    #[arg(short, long)]
    pub input: PathBuf,
    /// Ciphertext file to write
    #[arg(short, long)]
    pub output: PathBuf,
    /// Worker threads for chunk processing (0 = all cores)
    #[arg(short, long, default_value_t = 1)]
    pub jobs: usize,
    /// Overwrite an existing output file
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    /// Key file
    #[arg(short, long)]
    pub key: PathBuf,
    /// Ciphertext file
    #[arg(short, long)]
    pub input: PathBuf,
    /// Plaintext file to write
    #[arg(short, long)]
    pub output: PathBuf,
    /// Worker threads for chunk processing (0 = all cores)
    #[arg(short, long, default_value_t = 1)]
    pub jobs: usize,
    /// Overwrite an existing output file
    #[arg(long)]
    pub force: bool,
    /// Decrypt even if the key fingerprint does not match the ciphertext
    #[arg(long)]
    pub force_wrong_key: bool,
}

/// Which key an experiment runs under.
#[derive(Debug, Clone, Args)]
pub struct KeySource {
    /// Key file; when omitted a key is generated from the parameter flags
    #[arg(short, long)]
    pub key: Option<PathBuf>,
    #[command(flatten)]
    pub params: KeyParamArgs,
}

/// Message an experiment runs on.
#[derive(Debug, Clone, Args)]
pub struct InputSource {
    /// Input file; overrides --corpus
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Built-in corpus to generate when no input file is given
    #[arg(long, default_value = "image")]
    pub corpus: CorpusKind,
    /// Size of the generated corpus in bytes
    #[arg(long, default_value_t = 20_480)]
    pub size: usize,
    /// Seed for the generated corpus
    #[arg(long, default_value_t = 1)]
    pub corpus_seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Directory for the report and CSV files
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// File stem for the report (defaults to the experiment name)
    #[arg(long)]
    pub name: Option<String>,
    /// Worker threads (0 = all cores)
    #[arg(short, long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCommand {
    /// Decrypt with slightly modified keys and report byte match rates
    Keysens {
        #[command(flatten)]
        key: KeySource,
        #[command(flatten)]
        input: InputSource,
        /// Comma-separated perturbations: identity, alpha+0.001, rho-0.01, seed+1, ...
        #[arg(long, value_delimiter = ',', default_value = "identity,seed+1,alpha+0.001,alpha+0.03,rho+0.1")]
        perturb: Vec<Perturbation>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Alter a fraction of plaintext bytes and measure ciphertext change
    Avalanche {
        #[command(flatten)]
        key: KeySource,
        #[command(flatten)]
        input: InputSource,
        /// Fraction of plaintext bytes to alter
        #[arg(long, default_value_t = 0.01)]
        flip: f64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Elements differing by more than this count as changed
        #[arg(long, default_value_t = 1e-12)]
        epsilon: f64,
        /// Seed for choosing altered bytes
        #[arg(long, default_value_t = 1)]
        experiment_seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Ciphertext element statistics; with a second input, compare distributions
    Histogram {
        #[command(flatten)]
        key: KeySource,
        #[command(flatten)]
        input: InputSource,
        /// Second input file to compare against
        #[arg(long)]
        compare: Option<PathBuf>,
        /// Built-in corpus to compare against when no --compare file is given
        #[arg(long)]
        compare_corpus: Option<CorpusKind>,
        #[arg(long, default_value_t = 64)]
        bins: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fraction of random chunks that memorize, per (chunk size, reservoir ratio)
    Capacity {
        #[command(flatten)]
        key: KeyParamArgs,
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        chunk_sizes: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.8,0.95,1.0")]
        ratios: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Seed for the random chunks
        #[arg(long, default_value_t = 1)]
        experiment_seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub key: KeySource,
    /// Message sizes in bytes
    #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096,8192")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    /// Seed for the random messages
    #[arg(long, default_value_t = 1)]
    pub experiment_seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}
