use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use esncrypt::analysis::{self, AnalysisReport};
use esncrypt::container::{decrypt_stream, encrypt_stream, ChunkReader};
use esncrypt::keygen::{deserialize_key, generate_key, serialize_key, EsnKey, KeyParams};
use esncrypt::parallel::Executor;
use esncrypt::cipher;
use tempfile::NamedTempFile;

use crate::args::{
    AnalyzeCommand, BenchArgs, DecryptArgs, EncryptArgs, InputSource, KeySource, KeygenArgs,
    OutputArgs,
};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn check_overwrite(path: &Path, force: bool) -> Result<()> {
    if !force && path.exists() {
        return Err(CliError::Usage(format!(
            "{} already exists; pass --force to overwrite",
            path.display()
        )));
    }
    Ok(())
}

/// Temporary file beside `path`, so the final rename stays on one filesystem.
fn temp_beside(path: &Path) -> Result<NamedTempFile> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    NamedTempFile::new_in(dir).map_err(io_err(path))
}

/// Moves a finished temporary file into place. Without `force` an existing
/// file is never replaced, even one created while we were working.
fn commit(tmp: NamedTempFile, path: &Path, force: bool) -> Result<()> {
    let persisted = if force {
        tmp.persist(path)
    } else {
        tmp.persist_noclobber(path)
    };
    persisted.map_err(|e| io_err(path)(e.error))?;
    Ok(())
}

fn write_atomically(path: &Path, force: bool, bytes: &[u8]) -> Result<()> {
    check_overwrite(path, force)?;
    let mut tmp = temp_beside(path)?;
    tmp.write_all(bytes).and_then(|_| tmp.as_file().sync_all()).map_err(io_err(path))?;
    commit(tmp, path, force)
}

fn read_key(path: &Path) -> Result<EsnKey> {
    let bytes = std::fs::read(path).map_err(io_err(path))?;
    Ok(deserialize_key(&bytes)?)
}

fn os_seed() -> Result<u64> {
    getrandom::u64().map_err(|e| CliError::Io {
        path: PathBuf::from("<os entropy>"),
        source: std::io::Error::other(e.to_string()),
    })
}

pub fn keygen(a: KeygenArgs) -> Result<()> {
    check_overwrite(&a.output, a.force)?;
    let seed = match a.params.seed {
        Some(s) => s,
        None => os_seed()?,
    };
    let key = generate_key(&a.params.to_params(seed))?;
    write_atomically(&a.output, a.force, &serialize_key(&key))?;
    println!("wrote {}", a.output.display());
    println!("fingerprint {}", hex(&key.fingerprint()));
    Ok(())
}

pub fn encrypt(a: EncryptArgs) -> Result<()> {
    check_overwrite(&a.output, a.force)?;
    let key = read_key(&a.key)?;
    let exec = Executor::new(a.jobs)?;
    let input = File::open(&a.input).map_err(io_err(&a.input))?;
    let total = input.metadata().map_err(io_err(&a.input))?.len();
    let mut tmp = temp_beside(&a.output)?;
    let header = {
        let mut w = BufWriter::new(tmp.as_file_mut());
        let header = encrypt_stream(&key, BufReader::new(input), total, &mut w, &exec)?;
        w.flush().map_err(io_err(&a.output))?;
        header
    };
    tmp.as_file().sync_all().map_err(io_err(&a.output))?;
    commit(tmp, &a.output, a.force)?;
    log::info!("{} bytes in {} chunks", header.total_len, header.chunk_count);
    Ok(())
}

pub fn decrypt(a: DecryptArgs) -> Result<()> {
    check_overwrite(&a.output, a.force)?;
    let key = read_key(&a.key)?;
    let exec = Executor::new(a.jobs)?;
    let input = File::open(&a.input).map_err(io_err(&a.input))?;
    let reader = ChunkReader::new(BufReader::new(input))?;
    let header = reader.header();
    if !header.matches_key(&key) {
        let (k, c) = (hex(&key.fingerprint()), hex(&header.key_fingerprint));
        if !a.force_wrong_key {
            return Err(CliError::WrongKey { key: k, ciphertext: c });
        }
        log::warn!("key fingerprint {k} does not match ciphertext fingerprint {c}; output will be garbage");
    }
    let mut tmp = temp_beside(&a.output)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        decrypt_stream(&key, reader, &mut w, &exec)?;
        w.flush().map_err(io_err(&a.output))?;
    }
    tmp.as_file().sync_all().map_err(io_err(&a.output))?;
    commit(tmp, &a.output, a.force)
}

/// Key for an experiment: the file if given, otherwise generated from the
/// flags with seed 0 unless one was passed.
fn experiment_key(src: &KeySource) -> Result<EsnKey> {
    match &src.key {
        Some(path) => {
            if src.params.any_set() {
                return Err(CliError::Usage(
                    "key parameter flags cannot be combined with --key".into(),
                ));
            }
            read_key(path)
        }
        None => Ok(generate_key(&src.params.to_params(KeyParams::default().seed))?),
    }
}

fn experiment_input(src: &InputSource) -> Result<(String, Vec<u8>)> {
    match &src.input {
        Some(path) => {
            let bytes = std::fs::read(path).map_err(io_err(path))?;
            Ok((path.display().to_string(), bytes))
        }
        None => Ok((
            format!("{} corpus, {} bytes, seed {}", src.corpus, src.size, src.corpus_seed),
            src.corpus.generate(src.size, src.corpus_seed),
        )),
    }
}

fn finish(mut report: AnalysisReport, out: &OutputArgs, source: Option<&str>) -> Result<()> {
    if let Some(s) = source {
        report.param("input", s);
    }
    let stem = out.name.clone().unwrap_or_else(|| report.experiment.clone());
    let written = report.write_files(&out.out_dir, &stem).map_err(io_err(&out.out_dir))?;
    print!("{}", report.to_text());
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

pub fn analyze(cmd: AnalyzeCommand) -> Result<()> {
    match cmd {
        AnalyzeCommand::Keysens { key, input, perturb, out } => {
            let key = experiment_key(&key)?;
            let (source, msg) = experiment_input(&input)?;
            let exec = Executor::new(out.jobs)?;
            let report = analysis::key_sensitivity(&key, &msg, &perturb, &exec)?;
            finish(report, &out, Some(&source))
        }
        AnalyzeCommand::Avalanche { key, input, flip, trials, epsilon, experiment_seed, out } => {
            let key = experiment_key(&key)?;
            let (source, msg) = experiment_input(&input)?;
            let exec = Executor::new(out.jobs)?;
            let report = analysis::plaintext_avalanche(
                &key,
                &msg,
                flip,
                trials,
                epsilon,
                experiment_seed,
                &exec,
            )?;
            finish(report, &out, Some(&source))
        }
        AnalyzeCommand::Histogram { key, input, compare, compare_corpus, bins, out } => {
            let key = experiment_key(&key)?;
            let (source, msg) = experiment_input(&input)?;
            let exec = Executor::new(out.jobs)?;
            let ct = cipher::encrypt_with(&key, &msg, &exec)?;
            let mut report = analysis::ciphertext_histogram(&ct, bins)?;
            let other = match (compare, compare_corpus) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage(
                        "--compare and --compare-corpus are mutually exclusive".into(),
                    ))
                }
                (Some(path), None) => {
                    Some((path.display().to_string(), std::fs::read(&path).map_err(io_err(&path))?))
                }
                (None, Some(kind)) => Some((
                    format!("{kind} corpus, {} bytes, seed {}", input.size, input.corpus_seed),
                    kind.generate(input.size, input.corpus_seed),
                )),
                (None, None) => None,
            };
            if let Some((other_source, other_msg)) = other {
                let other_ct = cipher::encrypt_with(&key, &other_msg, &exec)?;
                let cmp = analysis::compare_distributions(&msg, &ct, &other_msg, &other_ct, bins)?;
                report.param("compare", other_source);
                report.parameters.extend(cmp.parameters);
                report.metrics.extend(cmp.metrics);
                report.series.extend(cmp.series);
            }
            finish(report, &out, Some(&source))
        }
        AnalyzeCommand::Capacity { key, chunk_sizes, ratios, trials, experiment_seed, out } => {
            let base = key.to_params(KeyParams::default().seed);
            let mut sweep = Vec::new();
            for &m in &chunk_sizes {
                for &r in &ratios {
                    let p = KeyParams {
                        chunk_size: m,
                        reservoir_ratio: r,
                        ..base
                    };
                    p.validate()?;
                    sweep.push(p);
                }
            }
            let exec = Executor::new(out.jobs)?;
            let report = analysis::recall_capacity(&sweep, trials, experiment_seed, &exec)?;
            finish(report, &out, None)
        }
    }
}

pub fn bench(a: BenchArgs) -> Result<()> {
    let key = experiment_key(&a.key)?;
    let exec = Executor::new(a.out.jobs)?;
    let report = analysis::benchmark(&key, &a.sizes, a.repeats, a.experiment_seed, &exec)?;
    finish(report, &a.out, None)
}
