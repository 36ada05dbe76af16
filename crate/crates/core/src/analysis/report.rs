use std::fmt::{self, Write as _};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// A named table destined for a CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Series {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Panics if the row width differs from the header.
    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        assert_eq!(row.len(), self.columns.len(), "row width for series {}", self.name);
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out).expect("in-memory write");
        String::from_utf8(out).expect("CSV cells are UTF-8")
    }
}

/// Result of one experiment: what was run, what came out, and the per-sample
/// data behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub experiment: String,
    pub parameters: Vec<(String, String)>,
    pub metrics: Vec<(String, f64)>,
    pub series: Vec<Series>,
    pub environment: String,
}

impl AnalysisReport {
    pub fn new(experiment: &str) -> Self {
        Self {
            experiment: experiment.to_string(),
            parameters: Vec::new(),
            metrics: Vec::new(),
            series: Vec::new(),
            environment: environment(),
        }
    }

    pub fn param(&mut self, name: &str, value: impl fmt::Display) -> &mut Self {
        self.parameters.push((name.to_string(), value.to_string()));
        self
    }

    pub fn metric(&mut self, name: &str, value: f64) -> &mut Self {
        self.metrics.push((name.to_string(), value));
        self
    }

    pub fn get_metric(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn get_series(&self, name: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.name == name)
    }

    /// Line-oriented text form: `section.name = value`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "experiment = {}", self.experiment).unwrap();
        for (k, v) in &self.parameters {
            writeln!(out, "param.{k} = {v}").unwrap();
        }
        for (k, v) in &self.metrics {
            writeln!(out, "metric.{k} = {v}").unwrap();
        }
        for s in &self.series {
            writeln!(out, "series.{} = {} rows [{}]", s.name, s.rows.len(), s.columns.join(","))
                .unwrap();
        }
        writeln!(out, "environment = {}", self.environment).unwrap();
        out
    }

    /// Writes `<stem>.txt` plus one `<stem>.<series>.csv` per series and
    /// returns the paths written.
    pub fn write_files(&self, dir: &Path, stem: &str) -> io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let txt = dir.join(format!("{stem}.txt"));
        std::fs::write(&txt, self.to_text())?;
        written.push(txt);
        for s in &self.series {
            let path = dir.join(format!("{stem}.{}.csv", s.name));
            std::fs::write(&path, s.to_csv())?;
            written.push(path);
        }
        Ok(written)
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn environment() -> String {
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!(
        "{} {} / {} cores / esncrypt {}{}",
        std::env::consts::OS,
        std::env::consts::ARCH,
        cores,
        env!("CARGO_PKG_VERSION"),
        if cfg!(feature = "parallel") { " +parallel" } else { "" },
    )
}
