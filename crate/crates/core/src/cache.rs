//! On-disk series cache: one text file per named series per order.
//!
//! Format: header line `qseries-cache v1 name=<id> order=<N>` followed by
//! `N + 1` lines, each the decimal value of one coefficient in index order.
//! Readers reject unknown versions; writes go through a temp file and an
//! atomic rename.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::TruncSeries;

const HEADER_PREFIX: &str = "qseries-cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad cache header: {0:?}")]
    BadHeader(String),
    #[error("cached series {name} has order {have}, need {want}")]
    InsufficientOrder {
        name: String,
        have: usize,
        want: usize,
    },
    #[error("line {line}: not a decimal integer: {text:?}")]
    BadCoefficient { line: usize, text: String },
    #[error("expected {expected} coefficient lines, found {found}")]
    Truncated { expected: usize, found: usize },
}

/// Cache file path for a named series; names must be filename-safe.
pub fn cache_path(dir: &Path, name: &str, order: usize) -> PathBuf {
    assert!(
        name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-'),
        "series name must be filename-safe"
    );
    dir.join(format!("{name}-{order}.qs"))
}

pub fn write_series(dir: &Path, name: &str, series: &TruncSeries) -> Result<PathBuf, CacheError> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, name, series.order());
    let tmp = path.with_extension("qs.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        writeln!(f, "{HEADER_PREFIX} name={name} order={}", series.order())?;
        for c in series.coeffs() {
            writeln!(f, "{c}")?;
        }
        f.sync_all()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

pub fn read_series(path: &Path, expect_name: &str) -> Result<TruncSeries, CacheError> {
    let mut lines = BufReader::new(fs::File::open(path)?).lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    let order = parse_header(&header, expect_name)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    for (i, line) in lines.enumerate() {
        let line = line?;
        let c = BigInt::from_str(line.trim()).map_err(|_| CacheError::BadCoefficient {
            line: i + 2,
            text: line.clone(),
        })?;
        coeffs.push(c);
    }
    if coeffs.len() != order + 1 {
        return Err(CacheError::Truncated {
            expected: order + 1,
            found: coeffs.len(),
        });
    }
    Ok(TruncSeries::from_coeffs(coeffs))
}

fn parse_header(header: &str, expect_name: &str) -> Result<usize, CacheError> {
    let bad = || CacheError::BadHeader(header.to_string());
    let rest = header.strip_prefix(HEADER_PREFIX).ok_or_else(bad)?;
    let rest = rest
        .trim_start()
        .strip_prefix("name=")
        .ok_or_else(bad)?;
    let (name, rest) = rest.split_once(' ').ok_or_else(bad)?;
    if name != expect_name {
        return Err(bad());
    }
    rest.strip_prefix("order=")
        .and_then(|o| o.trim().parse().ok())
        .ok_or_else(bad)
}

/// Load a series at the requested order, slicing a same-or-higher-order
/// cache file if one exists; otherwise compute it and cache the result.
pub fn load_or_compute<F>(
    dir: &Path,
    name: &str,
    order: usize,
    compute: F,
) -> Result<TruncSeries, CacheError>
where
    F: FnOnce(usize) -> TruncSeries,
{
    if let Some(series) = best_cached(dir, name, order) {
        return Ok(series.truncated(order));
    }
    let series = compute(order);
    write_series(dir, name, &series)?;
    Ok(series)
}

/// Smallest cached order `>= order` for the named series, if any is readable.
fn best_cached(dir: &Path, name: &str, order: usize) -> Option<TruncSeries> {
    let prefix = format!("{name}-");
    let mut best: Option<usize> = None;
    for entry in fs::read_dir(dir).ok()? {
        let fname = entry.ok()?.file_name().into_string().ok()?;
        let Some(rest) = fname.strip_prefix(&prefix) else {
            continue;
        };
        let Some(cached_order) = rest.strip_suffix(".qs").and_then(|o| o.parse().ok()) else {
            continue;
        };
        if cached_order >= order && best.map_or(true, |b| cached_order < b) {
            best = Some(cached_order);
        }
    }
    read_series(&cache_path(dir, name, best?), name).ok()
}
