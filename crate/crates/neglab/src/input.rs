//! Distribution input: inline lists, JSON and CSV files.
//!
//! A distribution is written as comma-separated entries, each a decimal
//! (`0.25`, `1e-3`) or a rational `a/b`, or as the shorthand `uniform:n`.

use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::error::CliError;

/// Parses one entry: a decimal or a rational `a/b`.
pub fn parse_value(token: &str) -> Result<f64, CliError> {
    let token = token.trim();
    let number = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| CliError::parse(token, e.to_string()))
    };
    match token.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (number(a)?, number(b)?);
            if b == 0.0 {
                return Err(CliError::parse(token, "zero denominator"));
            }
            Ok(a / b)
        }
        None => number(token),
    }
}

/// Parses an inline distribution such as `1/3,1/6,1/6,1/3` or `uniform:6`.
pub fn parse_dist(spec: &str) -> Result<Vec<f64>, CliError> {
    let spec = spec.trim();
    if let Some(n) = spec.strip_prefix("uniform:") {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| CliError::parse(spec, "expected uniform:<n>"))?;
        if n == 0 {
            return Err(CliError::parse(spec, "uniform needs n >= 1"));
        }
        return Ok(vec![1.0 / n as f64; n]);
    }
    if spec.is_empty() {
        return Err(CliError::parse(spec, "empty distribution"));
    }
    spec.split(',').map(parse_value).collect()
}

/// Reads distributions from a file. `.csv` files hold one distribution per
/// row; anything else is read as JSON: an array of distributions, or a
/// document previously emitted by this tool (its `input` field).
pub fn read_file(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let parsed = if is_csv {
        parse_csv(&text)
    } else {
        parse_json(&text)
    };
    parsed.map_err(|e| CliError::FileFormat {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

pub fn parse_csv(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::parse("csv", e.to_string()))?;
        let cells: Vec<&str> = record.iter().filter(|c| !c.is_empty()).collect();
        match cells.as_slice() {
            [] => continue,
            [single] if single.starts_with("uniform:") => out.push(parse_dist(single)?),
            _ => out.push(
                cells
                    .iter()
                    .map(|c| parse_value(c))
                    .collect::<Result<_, _>>()?,
            ),
        }
    }
    Ok(out)
}

pub fn parse_json(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::parse("json", e.to_string()))?;
    let list = match &value {
        Value::Object(map) => map
            .get("input")
            .ok_or_else(|| CliError::parse("json", "object without an `input` field"))?,
        other => other,
    };
    let Value::Array(items) = list else {
        return Err(CliError::parse(
            "json",
            "expected an array of distributions",
        ));
    };
    items.iter().map(json_dist).collect()
}

fn json_dist(item: &Value) -> Result<Vec<f64>, CliError> {
    match item {
        Value::String(s) => parse_dist(s),
        Value::Array(entries) => entries.iter().map(json_entry).collect(),
        other => Err(CliError::parse(
            &other.to_string(),
            "expected a list or a string",
        )),
    }
}

fn json_entry(entry: &Value) -> Result<f64, CliError> {
    match entry {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| CliError::parse(&n.to_string(), "not representable as f64")),
        Value::String(s) => parse_value(s),
        other => Err(CliError::parse(&other.to_string(), "expected a number")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(parse_value("0.25").unwrap(), 0.25);
        assert_eq!(parse_value(" 1/3 ").unwrap(), 1.0 / 3.0);
        assert_eq!(parse_value("1e-3").unwrap(), 1e-3);
        assert!(parse_value("1/0").is_err());
        assert!(parse_value("abc").is_err());
        assert!(parse_value("").is_err());
    }

    #[test]
    fn inline() {
        assert_eq!(
            parse_dist("1/3,1/6,1/6,1/3").unwrap(),
            vec![1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0]
        );
        assert_eq!(parse_dist("uniform:4").unwrap(), vec![0.25; 4]);
        assert!(parse_dist("uniform:x").is_err());
        assert!(parse_dist("").is_err());
        assert!(parse_dist("0.5,,0.5").is_err());
    }

    #[test]
    fn csv_rows() {
        let rows = parse_csv("# comment\n0.5,0.5\n1/3, 1/3, 1/3\n\nuniform:2\n").unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1], vec![1.0 / 3.0; 3]);
        assert_eq!(rows[2], vec![0.5, 0.5]);
    }

    #[test]
    fn json_forms() {
        let rows = parse_json(r#"[[0.5, 0.5], ["1/3", "2/3"], "uniform:3"]"#).unwrap();
        assert_eq!(rows[1], vec![1.0 / 3.0, 2.0 / 3.0]);
        assert_eq!(rows[2].len(), 3);
        let rows = parse_json(r#"{"command": "negate", "input": [[0.9, 0.1]]}"#).unwrap();
        assert_eq!(rows, vec![vec![0.9, 0.1]]);
        assert!(parse_json("{}").is_err());
        assert!(parse_json("[1, 2]").is_err());
    }
}
