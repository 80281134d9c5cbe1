//! Batch input: lines `a,b,c` (header optional) or a JSON array of
//! `{a, b, c}` objects.

use num_bigint::BigInt;
use quadval::QuadraticPoly;

use crate::parse_int;

pub struct Entry {
    /// Line number, or 1-based position in the JSON array.
    pub record: u64,
    pub input: String,
    pub poly: Result<QuadraticPoly, String>,
}

fn make_poly(fields: &[&str]) -> Result<QuadraticPoly, String> {
    if fields.len() != 3 {
        return Err(format!("expected 3 fields a,b,c, got {}", fields.len()));
    }
    let a = parse_int(fields[0])?;
    let b = parse_int(fields[1])?;
    let c = parse_int(fields[2])?;
    QuadraticPoly::new(a, b, c).map_err(|e| e.to_string())
}

fn is_header(fields: &[&str]) -> bool {
    fields.len() == 3
        && fields
            .iter()
            .zip(["a", "b", "c"])
            .all(|(f, h)| f.eq_ignore_ascii_case(h))
}

pub fn parse_csv(text: &str) -> Vec<Entry> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if entries.is_empty() && is_header(&fields) {
            continue;
        }
        entries.push(Entry {
            record: i as u64 + 1,
            input: line.to_string(),
            poly: make_poly(&fields),
        });
    }
    entries
}

fn json_int(obj: &serde_json::Map<String, serde_json::Value>, key: &str) -> Result<BigInt, String> {
    match obj.get(key) {
        Some(serde_json::Value::Number(n)) => parse_int(&n.to_string()),
        Some(serde_json::Value::String(s)) => parse_int(s),
        Some(other) => Err(format!("field {key} is not an integer: {other}")),
        None => Err(format!("missing field {key}")),
    }
}

pub fn parse_json(text: &str) -> Result<Vec<Entry>, String> {
    let items: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    Ok(items
        .into_iter()
        .enumerate()
        .map(|(i, item)| {
            let poly = match &item {
                serde_json::Value::Object(obj) => json_int(obj, "a").and_then(|a| {
                    let b = json_int(obj, "b")?;
                    let c = json_int(obj, "c")?;
                    QuadraticPoly::new(a, b, c).map_err(|e| e.to_string())
                }),
                other => Err(format!("expected an object, got {other}")),
            };
            Entry {
                record: i as u64 + 1,
                input: item.to_string(),
                poly,
            }
        })
        .collect())
}

/// Dispatches on the first non-blank character.
pub fn parse(text: &str) -> Result<Vec<Entry>, String> {
    if text.trim_start().starts_with('[') {
        parse_json(text)
    } else {
        Ok(parse_csv(text))
    }
}
