//! Canonical serializations of extraction results.
//!
//! The text form is the equivalence medium between the interpreter and
//! generated reader programs: one `path = value` line per occurrence,
//! in plan order, with record occurrences numbered. The JSON and CSV
//! forms reshape the same data for consumption.

use serde_json::{json, Map, Number};

use crate::linearize::LinearSequence;
use crate::read::{Field, RecordSet, Value};

/// One `path = value` line per extracted value, following the plan's
/// item order; record groups print each member item across all rows.
pub fn canonical_text(seq: &LinearSequence, rs: &RecordSet) -> String {
    let mut out = String::new();
    let mut printed_scopes: Vec<&str> = Vec::new();

    for idx in 0..seq.items.len() {
        if let Some(column) = rs.columns.iter().find(|c| c.item_index == idx) {
            for field in &column.values {
                push_line(&mut out, field);
            }
            continue;
        }
        let Some(group) = rs
            .groups
            .iter()
            .find(|g| g.item_indices.contains(&idx))
        else {
            continue;
        };
        if printed_scopes.contains(&group.scope.as_str()) {
            continue;
        }
        printed_scopes.push(&group.scope);
        for &member in &group.item_indices {
            for row in &group.rows {
                for field in row.iter().filter(|f| f.item_index == member) {
                    push_line(&mut out, field);
                }
            }
        }
    }
    out
}

/// The same line format for a random-read result.
pub fn random_text(fields: &[Field]) -> String {
    let mut out = String::new();
    for field in fields {
        push_line(&mut out, field);
    }
    out
}

fn push_line(out: &mut String, field: &Field) {
    out.push_str(&field.path);
    out.push_str(" = ");
    out.push_str(&field.value.to_string());
    out.push('\n');
}

fn value_json(value: &Value) -> serde_json::Value {
    match value {
        Value::Int(v) => json!(v),
        Value::Float(v) => Number::from_f64(*v)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null),
        Value::Text(v) => json!(v),
        Value::Sep(s) => json!(s.mark()),
    }
}

/// `{"fields": {...}, "records": [...], "issues": [...]}` with fields
/// keyed by occurrence-qualified path and records keyed by leaf name.
pub fn to_json(seq: &LinearSequence, rs: &RecordSet) -> serde_json::Value {
    let _ = seq;
    let mut fields = Map::new();
    for column in &rs.columns {
        for field in &column.values {
            fields.insert(field.path.clone(), value_json(&field.value));
        }
    }

    let mut records = Vec::new();
    for group in &rs.groups {
        for row in &group.rows {
            let mut object = Map::new();
            for field in row {
                object.insert(row_key(field), value_json(&field.value));
            }
            records.push(serde_json::Value::Object(object));
        }
    }

    let issues: Vec<serde_json::Value> = rs
        .issues
        .iter()
        .map(|i| {
            json!({
                "severity": i.severity.to_string(),
                "path": i.path,
                "message": i.message,
            })
        })
        .collect();

    json!({
        "fields": fields,
        "records": records,
        "issues": issues,
    })
}

/// Key of a record cell within its row: the occurrence-qualified leaf
/// segment.
fn row_key(field: &Field) -> String {
    field
        .path
        .rsplit_once('/')
        .map(|(_, leaf)| leaf.to_string())
        .unwrap_or_else(|| field.path.clone())
}

/// A `field,value` block for non-record items, then one block per
/// record group with a numbered row per occurrence.
pub fn to_csv(seq: &LinearSequence, rs: &RecordSet) -> String {
    let _ = seq;
    let mut out = String::from("field,value\n");
    for column in &rs.columns {
        for field in &column.values {
            out.push_str(&csv_cell(&field.path));
            out.push(',');
            out.push_str(&csv_cell(&field.value.to_string()));
            out.push('\n');
        }
    }
    for group in &rs.groups {
        out.push('\n');
        out.push_str("record");
        if let Some(first) = group.rows.first() {
            for field in first {
                out.push(',');
                out.push_str(&csv_cell(&row_key(field)));
            }
        } else {
            // No rows: derive the header from the plan.
            for &idx in &group.item_indices {
                out.push(',');
                out.push_str(&csv_cell(seq.items[idx].name()));
            }
        }
        out.push('\n');
        for (k, row) in group.rows.iter().enumerate() {
            out.push_str(&(k + 1).to_string());
            for field in row {
                out.push(',');
                out.push_str(&csv_cell(&field.value.to_string()));
            }
            out.push('\n');
        }
    }
    out
}

fn csv_cell(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearize::linearize;
    use crate::model::parse_document;
    use crate::read::read_sequential;

    fn fixture() -> (LinearSequence, RecordSet) {
        let doc = parse_document(
            r#"<dataformat name="x" mode="byte">
                 <integer location="0,4" byteOrder="bigEndian" description="n"></integer>
                 <group location="4,-1" description="R">
                   <short byteOrder="bigEndian" description="a" location="0,2"></short>
                   <short byteOrder="bigEndian" description="b" location="2,4"></short>
                 </group>
               </dataformat>"#,
        )
        .unwrap()
        .document;
        let seq = linearize(&doc).unwrap();
        let data = [0u8, 0, 0, 7, 0, 1, 0, 2, 0, 3, 0, 4];
        let rs = read_sequential(&data, &seq).unwrap();
        (seq, rs)
    }

    #[test]
    fn text_form_is_item_major_with_numbered_records() {
        let (seq, rs) = fixture();
        let text = canonical_text(&seq, &rs);
        assert_eq!(
            text,
            "n = 7\nR[1]/a = 1\nR[2]/a = 3\nR[1]/b = 2\nR[2]/b = 4\n"
        );
    }

    #[test]
    fn json_shape() {
        let (seq, rs) = fixture();
        let v = to_json(&seq, &rs);
        assert_eq!(v["fields"]["n"], 7);
        assert_eq!(v["records"][1]["b"], 4);
        assert_eq!(v["issues"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn csv_shape() {
        let (seq, rs) = fixture();
        let csv = to_csv(&seq, &rs);
        assert_eq!(
            csv,
            "field,value\nn,7\n\nrecord,a,b\n1,1,2\n2,3,4\n"
        );
    }

    #[test]
    fn csv_escaping() {
        assert_eq!(csv_cell("a,b"), "\"a,b\"");
        assert_eq!(csv_cell("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_cell("plain"), "plain");
    }
}
