//! Reading series, probe files and horizon lists.

use std::path::Path;

use super::CliError;
use crate::diagnostics::ProbeEvaluation;
use crate::series::TimeSeries;

fn records(text: &str) -> Result<Vec<Vec<String>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| CliError::Usage(format!("malformed CSV: {e}")))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        rows.push(rec.iter().map(str::to_owned).collect());
    }
    Ok(rows)
}

fn is_header(row: &[String]) -> bool {
    row.iter().any(|f| f.parse::<f64>().is_err())
}

/// A single value column or `(index, value)` pairs, optional header.
pub fn parse_series(text: &str) -> Result<TimeSeries, CliError> {
    let mut rows = records(text)?;
    if rows.first().is_some_and(|r| is_header(r)) {
        rows.remove(0);
    }
    let mut values = Vec::with_capacity(rows.len());
    for (line, row) in rows.iter().enumerate() {
        let field = match row.len() {
            1 => &row[0],
            2 => &row[1],
            n => {
                return Err(CliError::Usage(format!(
                    "data row {} has {n} columns; expected value or index,value",
                    line + 1
                )))
            }
        };
        let v: f64 = field.parse().map_err(|_| {
            CliError::Usage(format!(
                "data row {}: cannot parse {field:?} as a number",
                line + 1
            ))
        })?;
        values.push(v);
    }
    Ok(TimeSeries::new(values)?)
}

pub fn read_series(path: &Path) -> Result<(TimeSeries, String), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;
    let series = parse_series(&text)?;
    Ok((series, text))
}

/// Columns `t_index, horizon, log_density`, grouped by horizon in
/// ascending order. Header optional.
pub fn parse_probe(text: &str, series_len: usize) -> Result<Vec<ProbeEvaluation>, CliError> {
    let mut rows = records(text)?;
    if rows.first().is_some_and(|r| is_header(r)) {
        rows.remove(0);
    }
    let mut grouped: std::collections::BTreeMap<usize, (Vec<usize>, Vec<f64>)> = Default::default();
    for (line, row) in rows.iter().enumerate() {
        if row.len() != 3 {
            return Err(CliError::Usage(format!(
                "probe row {} has {} columns; expected t_index,horizon,log_density",
                line + 1,
                row.len()
            )));
        }
        let bad = |what: &str| CliError::Usage(format!("probe row {}: invalid {what}", line + 1));
        let t: usize = row[0].parse().map_err(|_| bad("t_index"))?;
        let h: usize = row[1].parse().map_err(|_| bad("horizon"))?;
        let ld: f64 = row[2].parse().map_err(|_| bad("log_density"))?;
        if h == 0 {
            return Err(bad("horizon"));
        }
        if t + h >= series_len {
            return Err(CliError::Usage(format!(
                "probe row {}: t_index {t} + horizon {h} is outside a series of length {series_len}",
                line + 1
            )));
        }
        let entry = grouped.entry(h).or_default();
        entry.0.push(t);
        entry.1.push(ld);
    }
    if grouped.is_empty() {
        return Err(CliError::Usage("probe file has no rows".into()));
    }
    grouped
        .into_iter()
        .map(|(h, (t, ld))| ProbeEvaluation::new(h, t, ld).map_err(CliError::from))
        .collect()
}

/// `"1..10"`, `"1..=10"`, `"1,2,5"` or mixtures like `"1..5,12,24"`.
pub fn parse_horizons(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("invalid horizon list {spec:?}"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let lo: usize = a.trim().parse().map_err(|_| bad())?;
            let hi: usize = b.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() || out[0] == 0 {
        return Err(bad());
    }
    Ok(out)
}
