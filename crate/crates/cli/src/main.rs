mod args;
mod commands;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use esncrypt::ErrorClass;

use args::{Cli, Command};

/// Process exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FORMAT: u8 = 2;
pub const EXIT_CRYPTO: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// Fingerprint of the key does not match the ciphertext header.
    WrongKey { key: String, ciphertext: String },
    Io { path: PathBuf, source: std::io::Error },
    Lib(esncrypt::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::WrongKey { .. } => EXIT_CRYPTO,
            CliError::Io { .. } => EXIT_IO,
            CliError::Lib(e) => match e.class() {
                ErrorClass::Usage => EXIT_USAGE,
                ErrorClass::Format => EXIT_FORMAT,
                ErrorClass::Crypto => EXIT_CRYPTO,
                ErrorClass::Io => EXIT_IO,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::WrongKey { key, ciphertext } => write!(
                f,
                "key fingerprint {key} does not match ciphertext fingerprint {ciphertext}; \
                 pass --force-wrong-key to decrypt anyway"
            ),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<esncrypt::Error> for CliError {
    fn from(e: esncrypt::Error) -> Self {
        CliError::Lib(e)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };

    let result = match cli.command {
        Command::Keygen(a) => commands::keygen(a),
        Command::Encrypt(a) => commands::encrypt(a),
        Command::Decrypt(a) => commands::decrypt(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Bench(a) => commands::bench(a),
    };
    match result {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("esncrypt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
