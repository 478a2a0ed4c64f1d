//! Re-serialization of a document model back to DFML XML.
//!
//! Round-trips structurally: re-parsing the output yields an equal
//! document. `real` leaves come back out as `double` (they are the same
//! type) and attribute order is normalized.

use super::{DfmlDocument, FormatNode, Mode};

pub fn to_xml(doc: &DfmlDocument) -> String {
    let mut out = String::new();
    out.push_str("<dataformat");
    push_attr(&mut out, "name", &doc.name);
    if !doc.namespace.is_empty() {
        push_attr(&mut out, "namespace", &doc.namespace);
    }
    push_attr(&mut out, "mode", &doc.mode.to_string());
    if let Some(d) = &doc.description {
        push_attr(&mut out, "description", d);
    }
    out.push_str(">\n");
    for child in &doc.children {
        write_node(&mut out, child, doc.mode, 1);
    }
    out.push_str("</dataformat>\n");
    out
}

fn write_node(out: &mut String, node: &FormatNode, mode: Mode, depth: usize) {
    let _ = mode;
    let tag = node.kind.tag();
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push('<');
    out.push_str(tag);
    if let Some(loc) = &node.location {
        push_attr(out, "location", &loc.to_string());
    }
    if let Some(n) = &node.number {
        push_attr(out, "number", &n.to_string());
    }
    if let Some(order) = &node.byte_order {
        push_attr(out, "byteOrder", order.as_str());
    }
    if let Some(v) = &node.value {
        push_attr(out, "value", v);
    }
    if let Some(d) = &node.description {
        push_attr(out, "description", d);
    }
    if node.children.is_empty() {
        out.push_str("></");
        out.push_str(tag);
        out.push_str(">\n");
    } else {
        out.push_str(">\n");
        for child in &node.children {
            write_node(out, child, mode, depth + 1);
        }
        for _ in 0..depth {
            out.push_str("  ");
        }
        out.push_str("</");
        out.push_str(tag);
        out.push_str(">\n");
    }
}

fn push_attr(out: &mut String, key: &str, value: &str) {
    out.push(' ');
    out.push_str(key);
    out.push_str("=\"");
    for ch in value.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(ch),
        }
    }
    out.push('"');
}

#[cfg(test)]
mod tests {
    use super::super::parse_document;
    use super::*;

    #[test]
    fn roundtrip_small_document() {
        let xml = r#"<dataformat name="x &amp; y" namespace="ns" mode="byte">
            <integer location="0,4" value="9994" description="File Code" byteOrder="bigEndian"></integer>
            <group location="4,24">
              <integer value="0" byteOrder="bigEndian" description="Unused" number="5"></integer>
            </group>
        </dataformat>"#;
        let first = parse_document(xml).unwrap().document;
        let second = parse_document(&to_xml(&first)).unwrap().document;
        assert_eq!(first, second);
    }
}
