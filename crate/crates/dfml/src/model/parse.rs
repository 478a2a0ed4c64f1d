//! DFML document parsing.

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::error::{DfmlError, Result};
use crate::report::Issue;

use super::{
    ByteEnd, ByteOrder, CharEnd, CharPos, DfmlDocument, FormatNode, Location, Mode, NodeKind,
    PrimitiveType, RepeatCount, SeparatorType,
};

/// Element names reserved by the dialect for reusable, named definitions
/// and document composition. They are recognized but not implemented.
const UNSUPPORTED_ELEMENTS: &[&str] = &["import", "location", "datatype", "separator"];

/// Parse outcome: the document plus non-fatal findings (ignored
/// attributes and stray text).
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedDocument {
    pub document: DfmlDocument,
    pub warnings: Vec<Issue>,
}

/// Parse DFML XML text into a document model.
///
/// Unknown attributes and the `format` attribute produce warnings and
/// are ignored; unknown elements, `import`, and named-reference elements
/// are errors.
pub fn parse_document(xml: &str) -> Result<ParsedDocument> {
    let mut reader = Reader::from_str(xml);
    reader.config_mut().trim_text(false);

    let mut warnings = Vec::new();
    let mut root: Option<DfmlDocument> = None;
    let mut root_closed = false;
    let mut root_self_closed = false;
    // Stack of open group-like containers; the bottom entry stands for
    // the root element itself.
    let mut stack: Vec<FormatNode> = Vec::new();
    let mut name_trail: Vec<String> = Vec::new();

    loop {
        let event = reader
            .read_event()
            .map_err(|e| DfmlError::Syntax(e.to_string()))?;
        match event {
            Event::Decl(_) | Event::Comment(_) | Event::PI(_) | Event::DocType(_) => {}
            Event::Text(t) => {
                let text = t
                    .unescape()
                    .map_err(|e| DfmlError::Syntax(e.to_string()))?;
                if !text.trim().is_empty() {
                    warnings.push(Issue::warning(
                        name_trail.join("/"),
                        format!("stray text {:?} ignored", text.trim()),
                    ));
                }
            }
            Event::CData(_) => {
                warnings.push(Issue::warning(name_trail.join("/"), "CDATA ignored"));
            }
            Event::Start(start) => {
                open_element(
                    &start, false, &mut root, &root_closed, &mut stack, &mut name_trail,
                    &mut warnings,
                )?;
            }
            Event::Empty(start) => {
                if start.name().as_ref() == b"dataformat" && root.is_none() {
                    root = Some(parse_root(&start, &mut warnings)?);
                    root_closed = true;
                    root_self_closed = true;
                    continue;
                }
                open_element(
                    &start, true, &mut root, &root_closed, &mut stack, &mut name_trail,
                    &mut warnings,
                )?;
            }
            Event::End(_) => {
                // quick-xml already checks tag balance.
                if let Some(done) = stack.pop() {
                    name_trail.pop();
                    attach(done, &mut stack, &mut root)?;
                } else if root.is_some() && !root_closed {
                    root_closed = true;
                    name_trail.pop();
                } else {
                    return Err(DfmlError::Syntax("unexpected end tag".into()));
                }
            }
            Event::Eof => break,
        }
    }

    let document = root.ok_or_else(|| DfmlError::Syntax("no <dataformat> root element".into()))?;
    if !root_closed && !root_self_closed {
        return Err(DfmlError::Syntax("unclosed <dataformat> element".into()));
    }
    Ok(ParsedDocument { document, warnings })
}

fn attach(
    node: FormatNode,
    stack: &mut [FormatNode],
    root: &mut Option<DfmlDocument>,
) -> Result<()> {
    if let Some(parent) = stack.last_mut() {
        parent.children.push(node);
    } else if let Some(doc) = root.as_mut() {
        doc.children.push(node);
    } else {
        return Err(DfmlError::Syntax("element outside <dataformat>".into()));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn open_element(
    start: &BytesStart<'_>,
    self_closing: bool,
    root: &mut Option<DfmlDocument>,
    root_closed: &bool,
    stack: &mut Vec<FormatNode>,
    name_trail: &mut Vec<String>,
    warnings: &mut Vec<Issue>,
) -> Result<()> {
    let tag = String::from_utf8_lossy(start.name().as_ref()).into_owned();

    if tag == "dataformat" {
        if root.is_some() {
            return Err(DfmlError::Syntax("nested or repeated <dataformat>".into()));
        }
        let doc = parse_root(start, warnings)?;
        name_trail.push("dataformat".into());
        *root = Some(doc);
        return Ok(());
    }

    if root.is_none() || *root_closed {
        return Err(DfmlError::Syntax(format!(
            "element <{tag}> outside <dataformat>"
        )));
    }

    if UNSUPPORTED_ELEMENTS.contains(&tag.as_str()) {
        return Err(DfmlError::Unsupported(format!(
            "<{tag}> elements (document composition and named definitions) are not supported"
        )));
    }

    let kind = if tag == "group" {
        NodeKind::Group
    } else if let Some(dtype) = PrimitiveType::from_tag(&tag) {
        NodeKind::DataType(dtype)
    } else if let Some(sep) = SeparatorType::from_tag(&tag) {
        NodeKind::Separator(sep)
    } else {
        return Err(DfmlError::UnknownElement(tag));
    };

    // Leaves may not contain child elements; catch `<integer><x/></integer>`.
    if let Some(parent) = stack.last() {
        if !parent.is_group() {
            return Err(DfmlError::invalid(
                "structure",
                format!(
                    "<{}> cannot contain child elements",
                    parent.kind.tag()
                ),
            ));
        }
    }

    let mode = root.as_ref().map(|d| d.mode).unwrap();
    let node = parse_node(start, kind, mode, name_trail, warnings)?;
    name_trail.push(node.display_name().to_string());

    if self_closing {
        name_trail.pop();
        attach(node, stack, root)?;
    } else {
        stack.push(node);
    }
    Ok(())
}

fn attr_pairs(start: &BytesStart<'_>) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for attr in start.attributes() {
        let attr = attr.map_err(|e| DfmlError::Syntax(e.to_string()))?;
        let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
        let value = attr
            .unescape_value()
            .map_err(|e| DfmlError::Syntax(e.to_string()))?
            .into_owned();
        out.push((key, value));
    }
    Ok(out)
}

fn parse_root(start: &BytesStart<'_>, warnings: &mut Vec<Issue>) -> Result<DfmlDocument> {
    let mut name = None;
    let mut namespace = None;
    let mut mode = None;
    let mut description = None;

    for (key, value) in attr_pairs(start)? {
        match key.as_str() {
            "name" => name = Some(value),
            "namespace" => namespace = Some(value),
            "mode" => {
                mode = Some(match value.trim() {
                    "byte" => Mode::Byte,
                    "char" => Mode::Char,
                    other => {
                        return Err(DfmlError::invalid(
                            "mode",
                            format!("expected `byte` or `char`, got {other:?}"),
                        ))
                    }
                })
            }
            "description" => description = Some(value),
            "format" => warnings.push(Issue::warning(
                "dataformat",
                "`format` attribute ignored",
            )),
            other => warnings.push(Issue::warning(
                "dataformat",
                format!("unknown attribute `{other}` ignored"),
            )),
        }
    }

    Ok(DfmlDocument {
        name: name.ok_or_else(|| DfmlError::MissingAttribute {
            element: "dataformat".into(),
            attr: "name".into(),
        })?,
        namespace: namespace.unwrap_or_default(),
        mode: mode.ok_or_else(|| DfmlError::MissingAttribute {
            element: "dataformat".into(),
            attr: "mode".into(),
        })?,
        description,
        children: Vec::new(),
    })
}

fn parse_node(
    start: &BytesStart<'_>,
    kind: NodeKind,
    mode: Mode,
    name_trail: &[String],
    warnings: &mut Vec<Issue>,
) -> Result<FormatNode> {
    let mut node = FormatNode::leaf(kind);
    let here = || {
        let mut p = name_trail.join("/");
        p.push('/');
        p.push_str(kind.tag());
        p
    };

    for (key, value) in attr_pairs(start)? {
        match key.as_str() {
            "location" => node.location = Some(parse_location(&value, mode)?),
            "number" => node.number = Some(parse_number(&value)?),
            "byteOrder" => {
                node.byte_order = Some(ByteOrder::parse(&value).ok_or_else(|| {
                    DfmlError::invalid(
                        "byteOrder",
                        format!("expected `bigEndian` or `littleEndian`, got {value:?}"),
                    )
                })?)
            }
            "value" => node.value = Some(value),
            "description" => node.description = Some(value),
            "name" => {
                return Err(DfmlError::Unsupported(
                    "named elements (`name` attribute) are not supported".into(),
                ))
            }
            "format" => warnings.push(Issue::warning(here(), "`format` attribute ignored")),
            other => warnings.push(Issue::warning(
                here(),
                format!("unknown attribute `{other}` ignored"),
            )),
        }
    }
    Ok(node)
}

fn parse_number(text: &str) -> Result<RepeatCount> {
    let text = text.trim();
    if text == "unknown" {
        return Ok(RepeatCount::Open);
    }
    let n: u64 = text.parse().map_err(|_| {
        DfmlError::invalid(
            "number",
            format!("expected a positive integer or `unknown`, got {text:?}"),
        )
    })?;
    if n == 0 {
        return Err(DfmlError::invalid("number", "repetition must be >= 1"));
    }
    Ok(RepeatCount::Count(n))
}

/// Parse a location attribute for the given mode.
///
/// Byte mode: `"start,end"` with `end = -1` for an open end. Char mode:
/// `"L c,L' c'"` where `-1` as the end column means "to end of line" and
/// `-1 -1` means "to end of section". Spans are half-open and must be
/// non-empty.
pub fn parse_location(text: &str, mode: Mode) -> Result<Location> {
    let bad = |detail: String| DfmlError::invalid("location", detail);
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(bad(format!(
            "expected `start,end`, got {text:?} ({} comma-separated parts)",
            parts.len()
        )));
    }

    match mode {
        Mode::Byte => {
            let start = parse_coord(parts[0], false)
                .map_err(|d| bad(format!("start position: {d}")))?
                .expect("start cannot be open");
            let end = parse_coord(parts[1], true).map_err(|d| bad(format!("end position: {d}")))?;
            let end = match end {
                None => ByteEnd::Open,
                Some(e) => {
                    if e <= start {
                        return Err(bad(format!("empty span: end {e} must exceed start {start}")));
                    }
                    ByteEnd::At(e)
                }
            };
            Ok(Location::Byte { start, end })
        }
        Mode::Char => {
            let (sl, sc) = parse_char_pair(parts[0]).map_err(|d| bad(format!("start: {d}")))?;
            let (el, ec) = parse_char_pair(parts[1]).map_err(|d| bad(format!("end: {d}")))?;
            let start = CharPos {
                line: sl.ok_or_else(|| bad("start line cannot be -1".into()))?,
                col: sc.ok_or_else(|| bad("start column cannot be -1".into()))?,
            };
            let end = match (el, ec) {
                (None, None) => CharEnd::Open,
                (None, Some(_)) => return Err(bad("end line -1 requires end column -1".into())),
                (Some(line), None) => {
                    if line < start.line {
                        return Err(bad("end line precedes start line".into()));
                    }
                    CharEnd::LineEnd { line }
                }
                (Some(line), Some(col)) => {
                    let end = CharPos { line, col };
                    if end <= start {
                        return Err(bad(format!(
                            "empty span: end {line} {col} does not follow start {} {}",
                            start.line, start.col
                        )));
                    }
                    CharEnd::At(end)
                }
            };
            Ok(Location::Char { start, end })
        }
    }
}

/// Parse one integer coordinate; `-1` maps to `None` when permitted.
fn parse_coord(token: &str, open_ok: bool) -> std::result::Result<Option<u64>, String> {
    let token = token.trim();
    let n: i64 = token
        .parse()
        .map_err(|_| format!("non-numeric token {token:?}"))?;
    if n == -1 {
        if open_ok {
            return Ok(None);
        }
        return Err("-1 not allowed here".into());
    }
    if n < 0 {
        return Err(format!("negative value {n} (only -1 has meaning)"));
    }
    Ok(Some(n as u64))
}

fn parse_char_pair(half: &str) -> std::result::Result<(Option<u64>, Option<u64>), String> {
    let tokens: Vec<&str> = half.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(format!(
            "expected `line col`, got {half:?} ({} tokens)",
            tokens.len()
        ));
    }
    Ok((parse_coord(tokens[0], true)?, parse_coord(tokens[1], true)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn location_byte_open_end() {
        let loc = parse_location("100, -1", Mode::Byte).unwrap();
        assert_eq!(
            loc,
            Location::Byte {
                start: 100,
                end: ByteEnd::Open
            }
        );
    }

    #[test]
    fn location_char_line_end() {
        let loc = parse_location("2 0,2 -1", Mode::Char).unwrap();
        assert_eq!(
            loc,
            Location::Char {
                start: CharPos { line: 2, col: 0 },
                end: CharEnd::LineEnd { line: 2 }
            }
        );
    }

    #[test]
    fn location_empty_span_rejected() {
        assert!(parse_location("0,0", Mode::Byte).is_err());
        assert!(parse_location("2 5,2 5", Mode::Char).is_err());
    }

    #[test]
    fn location_bad_tokens() {
        assert!(parse_location("a,b", Mode::Byte).is_err());
        assert!(parse_location("1,2,3", Mode::Byte).is_err());
        assert!(parse_location("-2,4", Mode::Byte).is_err());
        assert!(parse_location("1 2", Mode::Char).is_err());
        assert!(parse_location("100,-1", Mode::Char).is_err());
        assert!(parse_location("2 0,2 1", Mode::Byte).is_err());
        assert!(parse_location("-1 0,2 1", Mode::Char).is_err());
    }

    #[test]
    fn empty_document_parses() {
        let parsed = parse_document(r#"<dataformat name="x" mode="byte"></dataformat>"#).unwrap();
        assert_eq!(parsed.document.name, "x");
        assert_eq!(parsed.document.mode, Mode::Byte);
        assert!(parsed.document.children.is_empty());
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn missing_mode_rejected() {
        let err = parse_document(r#"<dataformat name="x"></dataformat>"#).unwrap_err();
        assert!(matches!(err, DfmlError::MissingAttribute { .. }));
    }

    #[test]
    fn unknown_element_rejected() {
        let err = parse_document(
            r#"<dataformat name="x" mode="byte"><widget location="0,4"></widget></dataformat>"#,
        )
        .unwrap_err();
        assert!(matches!(err, DfmlError::UnknownElement(t) if t == "widget"));
    }

    #[test]
    fn import_rejected_as_unsupported() {
        let err = parse_document(
            r#"<dataformat name="x" mode="byte"><import link="other.xml"></import></dataformat>"#,
        )
        .unwrap_err();
        assert!(matches!(err, DfmlError::Unsupported(_)));
    }

    #[test]
    fn named_element_rejected_as_unsupported() {
        let err = parse_document(
            r#"<dataformat name="x" mode="byte"><integer name="n" location="0,4"></integer></dataformat>"#,
        )
        .unwrap_err();
        assert!(matches!(err, DfmlError::Unsupported(_)));
    }

    #[test]
    fn format_attribute_warns_and_is_ignored() {
        let parsed = parse_document(
            r#"<dataformat name="x" mode="byte"><integer location="0,4" format="hex"></integer></dataformat>"#,
        )
        .unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].message.contains("format"));
    }

    #[test]
    fn unknown_attribute_warns() {
        let parsed = parse_document(
            r#"<dataformat name="x" mode="byte" color="red"></dataformat>"#,
        )
        .unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].message.contains("color"));
    }

    #[test]
    fn real_is_double_alias() {
        let parsed = parse_document(
            r#"<dataformat name="x" mode="byte"><real location="0,8"></real></dataformat>"#,
        )
        .unwrap();
        assert_eq!(
            parsed.document.children[0].kind,
            NodeKind::DataType(PrimitiveType::Double)
        );
    }

    #[test]
    fn number_unknown_maps_to_open() {
        let parsed = parse_document(
            r#"<dataformat name="x" mode="byte"><group number="unknown"><integer></integer></group></dataformat>"#,
        )
        .unwrap();
        assert_eq!(parsed.document.children[0].number, Some(RepeatCount::Open));
    }

    #[test]
    fn leaf_cannot_contain_children() {
        let err = parse_document(
            r#"<dataformat name="x" mode="byte"><integer location="0,4"><byte></byte></integer></dataformat>"#,
        )
        .unwrap_err();
        assert!(matches!(err, DfmlError::Invalid { .. }));
    }

    #[test]
    fn document_order_preserved() {
        let parsed = parse_document(
            r#"<dataformat name="x" mode="byte">
                 <integer location="0,4" description="a"></integer>
                 <group location="4,12" description="g">
                   <short description="b"></short>
                   <short description="c"></short>
                 </group>
               </dataformat>"#,
        )
        .unwrap();
        let doc = parsed.document;
        assert_eq!(doc.children.len(), 2);
        assert_eq!(doc.children[0].display_name(), "a");
        assert_eq!(doc.children[1].children[0].display_name(), "b");
        assert_eq!(doc.children[1].children[1].display_name(), "c");
    }
}
