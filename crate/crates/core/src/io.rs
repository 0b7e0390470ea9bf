//! CSV and JSON emission of measures.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::evolution::Measure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Serialize)]
struct Row {
    x: i64,
    value: f64,
}

#[derive(Serialize)]
struct Document<'a> {
    params: &'a Value,
    command: &'a str,
    rows: Vec<Row>,
}

/// `x,value` rows, positions ascending. Floats use the shortest
/// representation that parses back to the same value.
pub fn measure_to_csv(m: &Measure) -> String {
    let mut out = String::from("x,value\n");
    for (x, v) in m.iter() {
        writeln!(out, "{x},{v}").unwrap();
    }
    out
}

pub fn measure_to_json(m: &Measure, command: &str, params: &Value) -> String {
    let doc = Document {
        params,
        command,
        rows: m.iter().map(|(x, value)| Row { x, value }).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("measure serializes");
    s.push('\n');
    s
}

/// Render a measure in the given format.
pub fn render_measure(m: &Measure, format: Format, command: &str, params: &Value) -> String {
    match format {
        Format::Csv => measure_to_csv(m),
        Format::Json => measure_to_json(m, command, params),
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Write `m` to `path`.
pub fn emit_measure(
    m: &Measure,
    format: Format,
    path: &Path,
    command: &str,
    params: &Value,
) -> Result<()> {
    write_file(path, &render_measure(m, format, command, params))
}

/// Parse the `x,value` CSV written by [`measure_to_csv`]. Rows must be
/// contiguous and ascending.
pub fn parse_csv(text: &str) -> Result<Measure> {
    let mut lines = text.lines();
    match lines.next() {
        Some("x,value") => {}
        other => {
            return Err(Error::InvalidArgument(format!(
                "expected header `x,value`, found {other:?}"
            )))
        }
    }
    let mut start = None;
    let mut mass = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let (xs, vs) = line
            .split_once(',')
            .ok_or_else(|| Error::InvalidArgument(format!("malformed row `{line}`")))?;
        let x = parse_field::<i64>(xs, line)?;
        let v = parse_field::<f64>(vs, line)?;
        let lo = *start.get_or_insert(x);
        if x != lo + mass.len() as i64 {
            return Err(Error::InvalidArgument(format!(
                "non-contiguous row `{line}`"
            )));
        }
        mass.push(v);
    }
    Ok(Measure::new(start.unwrap_or(0), mass))
}

fn parse_field<T: FromStr>(s: &str, line: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("malformed row `{line}`")))
}

pub fn read_csv(path: &Path) -> Result<Measure> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_csv() {
        assert_eq!(measure_to_csv(&Measure::delta0()), "x,value\n0,1\n");
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let m = Measure::from_fn(-4, 3, |x| (x as f64 * 0.37).sin().powi(2) / 3.0);
        assert_eq!(parse_csv(&measure_to_csv(&m)).unwrap(), m);
    }

    #[test]
    fn symmetric_measure_reverses_onto_itself() {
        let m = Measure::from_fn(-3, 3, |x| 1.0 / (1 + x.abs()) as f64);
        let csv = measure_to_csv(&m);
        let rows: Vec<(i64, String)> = csv
            .lines()
            .skip(1)
            .map(|l| {
                let (x, v) = l.split_once(',').unwrap();
                (x.parse().unwrap(), v.to_string())
            })
            .collect();
        let mirrored: Vec<(i64, String)> =
            rows.iter().rev().map(|(x, v)| (-x, v.clone())).collect();
        assert_eq!(rows, mirrored);
    }

    #[test]
    fn json_schema() {
        let params = serde_json::json!({"sigma_plus": 0.0});
        let text = measure_to_json(&Measure::delta0(), "limit", &params);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["command"], "limit");
        assert_eq!(v["rows"][0]["x"], 0);
        assert_eq!(v["rows"][0]["value"], 1.0);
        assert_eq!(v["params"]["sigma_plus"], 0.0);
    }

    #[test]
    fn bad_header_rejected() {
        assert!(parse_csv("pos,val\n0,1\n").is_err());
        assert!(parse_csv("x,value\n0,1\n2,1\n").is_err());
    }

    #[test]
    fn io_error_carries_path() {
        let err = write_file(Path::new("/nonexistent-dir/out.csv"), "x").unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/out.csv"));
    }
}
