use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::AggregateResult;
use crate::env::{ArmMeans, GENERATOR_NAME};
use crate::error::{Error, Result};

/// Column order of `results.csv`.
pub const CSV_COLUMNS: [&str; 7] = [
    "algorithm",
    "checkpoint_t",
    "regret_mean",
    "regret_stderr",
    "pseudo_regret_mean",
    "pseudo_regret_stderr",
    "abs_gap_mean",
];

pub const RESULTS_FILE: &str = "results.csv";
pub const METADATA_FILE: &str = "metadata.json";

/// One parsed row of `results.csv`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct CsvRow {
    pub algorithm: String,
    pub checkpoint_t: u64,
    pub regret_mean: f64,
    pub regret_stderr: f64,
    pub pseudo_regret_mean: f64,
    pub pseudo_regret_stderr: f64,
    pub abs_gap_mean: f64,
}

/// Renders `v` with 12 significant digits in the shortest of fixed or
/// exponent notation, trailing zeros removed (C's `%.12g`).
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let fixed = format!("{:.*}", (11 - exp) as usize, v);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Serialize)]
struct Metadata<'a> {
    artifact: &'static str,
    version: &'static str,
    generator: &'static str,
    master_seed: u64,
    instance_seeds: &'a [u64],
    stream_layout: &'static str,
    csv_columns: [&'static str; 7],
    stderr: &'static str,
    config: &'a super::ExperimentConfig,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

/// Writes `results.csv` and `metadata.json` into `dir`, creating it if needed.
pub fn write_results(res: &AggregateResult, dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let csv_path = dir.join(RESULTS_FILE);
    let mut writer = csv::Writer::from_path(&csv_path).map_err(|source| Error::Csv {
        path: csv_path.clone(),
        source,
    })?;
    let csv_err = |source| Error::Csv { path: csv_path.clone(), source };
    writer.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for series in &res.series {
        for p in &series.points {
            writer
                .write_record([
                    series.algorithm.clone(),
                    p.t.to_string(),
                    format_sig12(p.regret_mean),
                    format_sig12(p.regret_stderr),
                    format_sig12(p.pseudo_regret_mean),
                    format_sig12(p.pseudo_regret_stderr),
                    format_sig12(p.abs_gap_mean),
                ])
                .map_err(|source| Error::Csv { path: csv_path.clone(), source })?;
        }
    }
    writer.flush().map_err(io_err(&csv_path))?;

    let meta_path = dir.join(METADATA_FILE);
    let meta = Metadata {
        artifact: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        generator: GENERATOR_NAME,
        master_seed: res.config.master_seed,
        instance_seeds: &res.instance_seeds,
        stream_layout: "noise stream of algorithm a in repetition r: seed = master_seed, stream = (r << 16) | (a + 1)",
        csv_columns: CSV_COLUMNS,
        stderr: "sample standard deviation / sqrt(reps)",
        config: &res.config,
    };
    let mut file = File::create(&meta_path).map_err(io_err(&meta_path))?;
    serde_json::to_writer_pretty(&mut file, &meta).map_err(|source| Error::Json {
        path: meta_path.clone(),
        source,
    })?;
    file.write_all(b"\n").map_err(io_err(&meta_path))?;
    Ok(csv_path)
}

pub fn read_results_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let csv_err = |source| Error::Csv { path: path.to_path_buf(), source };
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let headers = reader.headers().map_err(csv_err)?.clone();
    if headers.iter().ne(CSV_COLUMNS) {
        return Err(Error::Config(format!("{}: unexpected header {headers:?}", path.display())));
    }
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<CsvRow>, _>>()
        .map_err(|source| Error::Csv { path: path.to_path_buf(), source })
}

/// Reads a headerless `D × K` means matrix.
pub fn read_means_csv(path: &Path) -> Result<ArmMeans> {
    let csv_err = |source| Error::Csv { path: path.to_path_buf(), source };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|source| Error::Csv { path: path.to_path_buf(), source })?;
        let row = record
            .iter()
            .map(|v| {
                v.parse::<f64>().map_err(|e| {
                    Error::InvalidParameter(format!("{}: cannot parse {v:?}: {e}", path.display()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    ArmMeans::from_rows(&rows)
}
