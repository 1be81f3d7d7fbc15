//! Weight files: JSON `{"offset", "u", "v"}` or CSV with header `n,u,v`.

use std::fs;
use std::path::Path;

use hardy_core::{Exponents, WeightedInterval};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightFile {
    pub offset: i64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl WeightFile {
    pub fn from_interval(w: &WeightedInterval) -> Self {
        Self { offset: w.first(), u: w.u().to_vec(), v: w.v().to_vec() }
    }

    pub fn interval(&self, e: &Exponents) -> hardy_core::Result<WeightedInterval> {
        WeightedInterval::new(self.offset, self.u.clone(), self.v.clone(), e)
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv"))
}

/// Reads a weight file; the format follows the extension (`.csv`, anything
/// else is JSON).
pub fn read_weights(path: &Path) -> Result<WeightFile> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let file = if is_csv(path) { parse_csv(path, &text)? } else { parse_json(path, &text)? };
    if file.u.is_empty() {
        return Err(CliError::bad_file(path, "no weights"));
    }
    if file.u.len() != file.v.len() {
        return Err(CliError::bad_file(path, format!("u has {} entries but v has {}", file.u.len(), file.v.len())));
    }
    Ok(file)
}

fn parse_json(path: &Path, text: &str) -> Result<WeightFile> {
    serde_json::from_str(text).map_err(|e| CliError::bad_file(path, format!("malformed JSON: {e}")))
}

fn parse_csv(path: &Path, text: &str) -> Result<WeightFile> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| CliError::bad_file(path, format!("row 1: {e}")))?.clone();
    let column = |name: &str| headers.iter().position(|h| h == name);
    let (Some(cn), Some(cu)) = (column("n"), column("u")) else {
        return Err(CliError::bad_file(path, "row 1: header must be n,u,v"));
    };
    let Some(cv) = column("v") else {
        return Err(CliError::bad_file(path, "row 1: missing v column"));
    };
    let mut file = WeightFile { offset: 0, u: Vec::new(), v: Vec::new() };
    for (k, record) in reader.records().enumerate() {
        let row = k + 2;
        let record = record.map_err(|e| CliError::bad_file(path, format!("row {row}: {e}")))?;
        let field = |i: usize, name: &str| -> Result<&str> {
            match record.get(i) {
                Some(s) if !s.is_empty() => Ok(s),
                _ => Err(CliError::bad_file(path, format!("row {row}: missing {name} value"))),
            }
        };
        let n: i64 = field(cn, "n")?.parse().map_err(|_| CliError::bad_file(path, format!("row {row}: n is not an integer")))?;
        let number = |i: usize, name: &str| -> Result<f64> {
            field(i, name)?.parse().map_err(|_| CliError::bad_file(path, format!("row {row}: {name} is not a number")))
        };
        let (u, v) = (number(cu, "u")?, number(cv, "v")?);
        if k == 0 {
            file.offset = n;
        } else if n != file.offset + k as i64 {
            return Err(CliError::bad_file(path, format!("row {row}: expected n = {}, found {n}", file.offset + k as i64)));
        }
        file.u.push(u);
        file.v.push(v);
    }
    Ok(file)
}

/// Writes `file` as JSON or CSV, chosen by extension.
pub fn write_weights(path: &Path, file: &WeightFile) -> Result<()> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let text = if is_csv(path) {
        let mut out = String::from("n,u,v\n");
        for (i, (u, v)) in file.u.iter().zip(&file.v).enumerate() {
            out.push_str(&format!("{},{u:?},{v:?}\n", file.offset + i as i64));
        }
        out
    } else {
        let mut s = serde_json::to_string_pretty(file).expect("weights serialise");
        s.push('\n');
        s
    };
    fs::write(path, text).map_err(io)
}
