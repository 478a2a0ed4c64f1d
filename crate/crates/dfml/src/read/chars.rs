//! Char-mode field extraction: fixed column spans within lines.
//!
//! Column positions count characters, not bytes. String fields keep
//! leading spaces and drop trailing ones; numeric fields are trimmed on
//! both sides before parsing. Bounded spans reaching past the end of a
//! line are clamped; a line shorter than a field's start column is an
//! error.

use crate::error::{DfmlError, Result};
use crate::linearize::{Extent, LinearItem, Payload};
use crate::model::PrimitiveType;

use super::Value;

/// Extract the characters of `[start_col, start_col + length)`; an open
/// length runs to end of line.
pub fn extract_cols(line: &str, start_col: u64, length: Extent, path: &str) -> Result<String> {
    let chars: Vec<char> = line.chars().collect();
    let start = start_col as usize;
    if start > chars.len() {
        return Err(DfmlError::read(
            path,
            format!(
                "line has {} characters, field starts at column {start}",
                chars.len()
            ),
        ));
    }
    let stop = match length {
        Extent::Count(n) => (start + n as usize).min(chars.len()),
        Extent::Open => chars.len(),
    };
    Ok(chars[start..stop].iter().collect())
}

/// Type a raw field string according to its payload.
pub fn type_field(raw: &str, payload: Payload, path: &str) -> Result<Value> {
    match payload {
        Payload::Sep(sep) => Ok(Value::Sep(sep)),
        Payload::Data(dtype) => match dtype {
            PrimitiveType::String | PrimitiveType::Char => {
                Ok(Value::Text(raw.trim_end().to_string()))
            }
            PrimitiveType::Byte
            | PrimitiveType::Short
            | PrimitiveType::Integer
            | PrimitiveType::Long => {
                let trimmed = raw.trim();
                trimmed.parse::<i64>().map(Value::Int).map_err(|_| {
                    DfmlError::read(path, format!("{trimmed:?} is not an integer"))
                })
            }
            PrimitiveType::Float | PrimitiveType::Double => {
                let trimmed = raw.trim();
                trimmed.parse::<f64>().map(Value::Float).map_err(|_| {
                    DfmlError::read(path, format!("{trimmed:?} is not numeric"))
                })
            }
        },
    }
}

/// Read the given same-line items out of one text line, in order.
pub fn read_char_line_fields(line: &str, items: &[&LinearItem]) -> Result<Vec<Value>> {
    items
        .iter()
        .map(|item| {
            let path = item.path_string();
            let col = match item.start {
                crate::linearize::Position::Char { col, .. } => col,
                crate::linearize::Position::Byte(_) => {
                    return Err(DfmlError::read(&path, "not a char-mode item"))
                }
            };
            // Separators never fail on short lines; their content is
            // structural, not data.
            if let Payload::Sep(sep) = item.payload {
                return Ok(Value::Sep(sep));
            }
            let raw = extract_cols(line, col, item.length, &path)?;
            type_field(&raw, item.payload, &path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearize::Position;
    use crate::model::SeparatorType;

    fn item(name: &str, payload: Payload, col: u64, length: Extent) -> LinearItem {
        LinearItem {
            segments: vec![name.to_string()],
            payload,
            start: Position::Char { line: 1, col },
            length,
            levels: vec![],
            byte_order: None,
            expected: None,
        }
    }

    #[test]
    fn fixed_width_real_field() {
        // Area column of a content row: "5.7" left-aligned in [34, 43).
        let mut line = " ".repeat(93);
        line.replace_range(34..37, "5.7");
        let area = item("Area", Payload::Data(PrimitiveType::Double), 34, Extent::Count(9));
        let values = read_char_line_fields(&line, &[&area]).unwrap();
        assert_eq!(values, vec![Value::Float(5.7)]);
    }

    #[test]
    fn all_spaces_span_is_empty_text() {
        let text = item("f", Payload::Data(PrimitiveType::String), 0, Extent::Count(5));
        let values = read_char_line_fields("      x", &[&text]).unwrap();
        assert_eq!(values, vec![Value::Text(String::new())]);
    }

    #[test]
    fn open_span_on_short_line() {
        let spack = item("Spack", Payload::Data(PrimitiveType::String), 87, Extent::Open);
        let mut line = " ".repeat(87);
        line.push_str("sn1");
        let values = read_char_line_fields(&line, &[&spack]).unwrap();
        assert_eq!(values, vec![Value::Text("sn1".to_string())]);
    }

    #[test]
    fn line_shorter_than_start_col_is_an_error() {
        let f = item("f", Payload::Data(PrimitiveType::String), 10, Extent::Open);
        let err = read_char_line_fields("short", &[&f]).unwrap_err();
        assert!(err.to_string().contains("starts at column 10"));
    }

    #[test]
    fn numeric_parse_failure_is_an_error() {
        let f = item("f", Payload::Data(PrimitiveType::Double), 0, Extent::Count(5));
        let err = read_char_line_fields("abc  ", &[&f]).unwrap_err();
        assert!(err.to_string().contains("not numeric"));
    }

    #[test]
    fn leading_spaces_preserved_in_strings() {
        let f = item("f", Payload::Data(PrimitiveType::String), 0, Extent::Count(6));
        let values = read_char_line_fields("  ab  ", &[&f]).unwrap();
        assert_eq!(values, vec![Value::Text("  ab".to_string())]);
    }

    #[test]
    fn separators_never_fail_on_short_lines() {
        let sep = item("space", Payload::Sep(SeparatorType::Space), 92, Extent::Open);
        let values = read_char_line_fields("x", &[&sep]).unwrap();
        assert_eq!(values, vec![Value::Sep(SeparatorType::Space)]);
    }
}
