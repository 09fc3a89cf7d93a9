//! CSV reading/writing for fields and estimates. Numeric columns use 17
//! significant digits so reruns round-trip bit-exactly.

use fractel_core::field::fmt_g17;
use fractel_core::stochastic::McField;
use fractel_core::{CoreError, Result};
use std::path::Path;

/// A parsed field file: x column, value column, optional stderr column.
pub struct CsvField {
    #[allow(dead_code)]
    pub header: String,
    pub x: Vec<f64>,
    pub value: Vec<f64>,
    pub stderr: Option<Vec<f64>>,
}

pub fn read_field(path: &Path) -> Result<CsvField> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    let mut header = String::new();
    let mut x = Vec::new();
    let mut value = Vec::new();
    let mut stderr: Option<Vec<f64>> = None;
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            header.push_str(line);
            header.push('\n');
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols[0].parse::<f64>().is_err() {
            // column-name row
            if cols.len() >= 3 && stderr.is_none() {
                stderr = Some(Vec::new());
            }
            continue;
        }
        if cols.len() < 2 {
            return Err(CoreError::InvalidConfig(format!(
                "{}:{}: expected at least 2 columns",
                path.display(),
                ln + 1
            )));
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|e| {
                CoreError::InvalidConfig(format!("{}:{}: bad number: {e}", path.display(), ln + 1))
            })
        };
        x.push(parse(cols[0])?);
        value.push(parse(cols[1])?);
        if cols.len() >= 3 {
            stderr.get_or_insert_with(Vec::new).push(parse(cols[2])?);
        }
    }
    if x.len() < 2 {
        return Err(CoreError::InvalidConfig(format!(
            "{}: no data rows",
            path.display()
        )));
    }
    if let Some(se) = &stderr {
        if se.len() != x.len() {
            return Err(CoreError::InvalidConfig(format!(
                "{}: ragged stderr column",
                path.display()
            )));
        }
    }
    Ok(CsvField {
        header,
        x,
        value,
        stderr,
    })
}

pub fn estimate_to_csv(est: &McField, meta: &str) -> String {
    let mut out = format!("# {meta}\n");
    out.push_str("x,mean,stderr\n");
    for i in 0..est.grid.len() {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_g17(est.grid[i]),
            fmt_g17(est.mean[i]),
            fmt_g17(est.stderr[i])
        ));
    }
    out
}

pub fn histogram_to_csv(
    hist: &fractel_core::stochastic::Histogram,
    meta: &str,
) -> String {
    let mut out = format!("# {meta}\n");
    out.push_str("bin_center,density,stderr\n");
    for i in 0..hist.bins() {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_g17(hist.bin_center(i)),
            fmt_g17(hist.density(i)),
            fmt_g17(hist.density_stderr(i))
        ));
    }
    out
}
