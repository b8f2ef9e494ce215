//! CSV and JSON persistence for every artifact the toolkit emits, plus the
//! matching readers so all files round-trip.
//!
//! Series CSV accepts a single `value` column or `index,value` (header row
//! required, `.` decimal separator); row order defines sample order.
//! Everything user-facing is 1-based.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::align::{AlignedPair, MatrixTrace, WarpPath};
use crate::distance::CrossoverReport;
use crate::error::{FarmError, Result};
use crate::relevance::{GlobalForm, Ranking, RelevanceReport};
use crate::series::TimeSeries;
use crate::synth::WarpTruth;

fn parse_err(path: &Path, row: Option<u64>, message: impl Into<String>) -> FarmError {
    FarmError::Parse {
        file: path.display().to_string(),
        row,
        message: message.into(),
    }
}

/// Write `content` to `path` atomically: a temp file in the same directory
/// is renamed over the target, so partial runs never leave corrupt files.
pub fn atomic_write(path: &Path, content: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => {
            fs::create_dir_all(d)?;
            tempfile::NamedTempFile::new_in(d)?
        }
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(content)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| FarmError::Io(e.error))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Series CSV
// ---------------------------------------------------------------------------

/// Read one series from a CSV file; the series name is the file stem.
pub fn read_series_csv(path: &Path) -> Result<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| parse_err(path, None, e.to_string()))?;
    let headers = reader
        .headers()
        .map_err(|e| parse_err(path, Some(1), e.to_string()))?
        .clone();
    let value_col = match headers.len() {
        1 if &headers[0] == "value" => 0,
        2 if &headers[0] == "index" && &headers[1] == "value" => 1,
        _ => {
            return Err(parse_err(
                path,
                Some(1),
                format!("expected header `value` or `index,value`, got {headers:?}"),
            ))
        }
    };

    let mut values = Vec::new();
    for record in reader.records() {
        let record =
            record.map_err(|e| parse_err(path, e.position().map(|p| p.line()), e.to_string()))?;
        let line = record.position().map(|p| p.line());
        if record.len() != headers.len() {
            return Err(parse_err(
                path,
                line,
                format!("expected {} columns, got {}", headers.len(), record.len()),
            ));
        }
        let raw = &record[value_col];
        let v: f64 = raw
            .parse()
            .map_err(|_| parse_err(path, line, format!("not a number: {raw:?}")))?;
        values.push(v);
    }

    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".into());
    TimeSeries::new(values).map(|s| s.with_name(name))
}

/// Write a series as the two-column `index,value` form, 1-based.
pub fn write_series_csv(path: &Path, series: &TimeSeries) -> Result<()> {
    let mut out = String::from("index,value\n");
    for (i, v) in series.values().iter().enumerate() {
        out.push_str(&format!("{},{v}\n", i + 1));
    }
    atomic_write(path, out.as_bytes())
}

// ---------------------------------------------------------------------------
// Warp paths and traces
// ---------------------------------------------------------------------------

pub fn write_path_json(path: &Path, warp: &WarpPath) -> Result<()> {
    atomic_write(path, serde_json::to_string_pretty(warp)?.as_bytes())
}

pub fn read_path_json(path: &Path) -> Result<WarpPath> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, Some(e.line() as u64), e.to_string()))
}

pub fn write_path_csv(path: &Path, warp: &WarpPath) -> Result<()> {
    let mut out = String::from("step,ref_idx,qry_idx\n");
    for (i, (r, q)) in warp.steps.iter().enumerate() {
        out.push_str(&format!("{},{r},{q}\n", i + 1));
    }
    atomic_write(path, out.as_bytes())
}

pub fn read_path_csv_steps(path: &Path) -> Result<Vec<(usize, usize)>> {
    let mut reader =
        csv::Reader::from_path(path).map_err(|e| parse_err(path, None, e.to_string()))?;
    let mut steps = Vec::new();
    for record in reader.records() {
        let record =
            record.map_err(|e| parse_err(path, e.position().map(|p| p.line()), e.to_string()))?;
        let line = record.position().map(|p| p.line());
        let parse = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| parse_err(path, line, format!("not an index: {s:?}")))
        };
        steps.push((parse(&record[1])?, parse(&record[2])?));
    }
    Ok(steps)
}

/// Plot-data CSV for a matrix trace: the path points plus the diagonal bound
/// as metadata comment-free columns (point rows carry `kind=path`).
pub fn write_trace_csv(path: &Path, trace: &MatrixTrace) -> Result<()> {
    let mut out = String::from("kind,ref_idx,qry_idx\n");
    for (r, q) in &trace.points {
        out.push_str(&format!("path,{r},{q}\n"));
    }
    for d in 1..=trace.diagonal_max {
        out.push_str(&format!("diagonal,{d},{d}\n"));
    }
    atomic_write(path, out.as_bytes())
}

// ---------------------------------------------------------------------------
// Aligned pairs
// ---------------------------------------------------------------------------

pub fn write_aligned_csv(path: &Path, pair: &AlignedPair) -> Result<()> {
    let mut out = String::from("position,ref_value,ref_inserted,qry_value,qry_inserted\n");
    let rv = pair.ref_aligned.values();
    let qv = pair.qry_aligned.values();
    for i in 0..pair.len() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            i + 1,
            rv[i],
            pair.inserted_ref[i],
            qv[i],
            pair.inserted_qry[i]
        ));
    }
    atomic_write(path, out.as_bytes())
}

/// Rows of an aligned-pair CSV, for round-trip checks and downstream tools.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignedRow {
    pub position: usize,
    pub ref_value: f64,
    pub ref_inserted: bool,
    pub qry_value: f64,
    pub qry_inserted: bool,
}

pub fn read_aligned_csv(path: &Path) -> Result<Vec<AlignedRow>> {
    let mut reader =
        csv::Reader::from_path(path).map_err(|e| parse_err(path, None, e.to_string()))?;
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        let row: AlignedRow =
            record.map_err(|e| parse_err(path, e.position().map(|p| p.line()), e.to_string()))?;
        rows.push(row);
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Relevance reports and rankings
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct LocalJson {
    center: usize,
    coefficient: Option<f64>,
}

/// The report's JSON schema; local centers are 1-based here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub global: f64,
    pub global_form: GlobalForm,
    pub full_correlation: f64,
    pub window: usize,
    pub denominator_clamped: bool,
    pub degenerate_windows: usize,
    local: Vec<LocalJson>,
}

impl ReportJson {
    pub fn from_report(report: &RelevanceReport) -> Self {
        Self {
            global: report.global_value,
            global_form: report.global_form,
            full_correlation: report.full_correlation,
            window: report.window,
            denominator_clamped: report.denominator_clamped,
            degenerate_windows: report.degenerate_windows,
            local: report
                .local
                .iter()
                .map(|c| LocalJson {
                    center: c.center + 1,
                    coefficient: c.value,
                })
                .collect(),
        }
    }
}

pub fn write_report_json(path: &Path, report: &RelevanceReport) -> Result<()> {
    let json = ReportJson::from_report(report);
    atomic_write(path, serde_json::to_string_pretty(&json)?.as_bytes())
}

pub fn read_report_json(path: &Path) -> Result<ReportJson> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, Some(e.line() as u64), e.to_string()))
}

/// Local coefficient series as CSV; undefined coefficients are empty cells.
pub fn write_local_csv(path: &Path, report: &RelevanceReport) -> Result<()> {
    let mut out = String::from("center_index,coefficient\n");
    for c in &report.local {
        match c.value {
            Some(v) => out.push_str(&format!("{},{v}\n", c.center + 1)),
            None => out.push_str(&format!("{},\n", c.center + 1)),
        }
    }
    atomic_write(path, out.as_bytes())
}

pub fn read_local_csv(path: &Path) -> Result<Vec<(usize, Option<f64>)>> {
    let mut reader =
        csv::Reader::from_path(path).map_err(|e| parse_err(path, None, e.to_string()))?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record =
            record.map_err(|e| parse_err(path, e.position().map(|p| p.line()), e.to_string()))?;
        let line = record.position().map(|p| p.line());
        let center: usize = record[0]
            .parse()
            .map_err(|_| parse_err(path, line, format!("not an index: {:?}", &record[0])))?;
        let coefficient =
            if record[1].is_empty() {
                None
            } else {
                Some(record[1].parse().map_err(|_| {
                    parse_err(path, line, format!("not a number: {:?}", &record[1]))
                })?)
            };
        rows.push((center, coefficient));
    }
    Ok(rows)
}

pub fn write_ranking_csv(path: &Path, ranking: &Ranking) -> Result<()> {
    let mut out = String::from("rank,name,global,full_correlation\n");
    for (i, entry) in ranking.entries.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            i + 1,
            entry.name,
            entry.report.global_value,
            entry.report.full_correlation
        ));
    }
    atomic_write(path, out.as_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingRow {
    pub rank: usize,
    pub name: String,
    pub global: f64,
    pub full_correlation: f64,
}

pub fn read_ranking_csv(path: &Path) -> Result<Vec<RankingRow>> {
    let mut reader =
        csv::Reader::from_path(path).map_err(|e| parse_err(path, None, e.to_string()))?;
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        let row: RankingRow =
            record.map_err(|e| parse_err(path, e.position().map(|p| p.line()), e.to_string()))?;
        rows.push(row);
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Crossover reports and warp truths
// ---------------------------------------------------------------------------

pub fn write_crossover_json(path: &Path, report: &CrossoverReport) -> Result<()> {
    atomic_write(path, serde_json::to_string_pretty(report)?.as_bytes())
}

pub fn read_crossover_json(path: &Path) -> Result<CrossoverReport> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, Some(e.line() as u64), e.to_string()))
}

pub fn write_crossover_csv(path: &Path, report: &CrossoverReport) -> Result<()> {
    let mut out = String::from("angular_gap,exp_minus_sine\n");
    for s in &report.margin_curve {
        out.push_str(&format!("{},{}\n", s.angular_gap, s.exp_minus_sine));
    }
    atomic_write(path, out.as_bytes())
}

pub fn write_truth_json(path: &Path, truth: &WarpTruth) -> Result<()> {
    atomic_write(path, serde_json::to_string_pretty(truth)?.as_bytes())
}

pub fn read_truth_json(path: &Path) -> Result<WarpTruth> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, Some(e.line() as u64), e.to_string()))
}

impl From<serde_json::Error> for FarmError {
    fn from(e: serde_json::Error) -> Self {
        FarmError::Parse {
            file: "<json>".into(),
            row: None,
            message: e.to_string(),
        }
    }
}
