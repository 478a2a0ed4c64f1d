//! Structural validation of a parsed document.

use crate::report::{Issue, ValidationReport};

use super::{
    ByteEnd, CharEnd, DfmlDocument, FormatNode, Location, Mode, NodeKind, PrimitiveType,
};

/// Check every structural invariant the downstream stages rely on.
///
/// Findings are data: the report is never an error. A document is
/// accepted for linearization iff the report contains no
/// [`Severity::Error`](crate::report::Severity) issues.
pub fn validate_document(doc: &DfmlDocument) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_children(&doc.children, doc.mode, "", &mut report);
    report
}

fn check_children(nodes: &[FormatNode], mode: Mode, parent_path: &str, report: &mut ValidationReport) {
    for (index, node) in nodes.iter().enumerate() {
        let path = join_path(parent_path, &super::segment_name_for(nodes, index));
        check_node(node, mode, &path, report);
        if node.is_group() {
            check_children(&node.children, mode, &path, report);
        }
    }
    check_sibling_spans(nodes, parent_path, report);
}

fn check_node(node: &FormatNode, mode: Mode, path: &str, report: &mut ValidationReport) {
    match node.kind {
        NodeKind::Group => {
            if node.children.is_empty() {
                report.push(Issue::error(path, "group must have at least one child"));
            }
            if node.byte_order.is_some() {
                report.push(Issue::error(path, "byteOrder is not allowed on groups"));
            }
        }
        NodeKind::Separator(_) => {
            if node.byte_order.is_some() {
                report.push(Issue::error(path, "byteOrder is not allowed on separators"));
            }
        }
        NodeKind::DataType(dtype) => {
            if dtype == PrimitiveType::String && node.location.is_none() {
                report.push(Issue::error(path, "string requires an explicit location"));
            }
            if node.byte_order.is_some() && mode == Mode::Char {
                report.push(Issue::error(
                    path,
                    "byteOrder has no meaning in char mode",
                ));
            }
            // In byte mode an explicit span must agree with the type's
            // fixed width; char-mode spans are free-form text widths.
            if mode == Mode::Byte {
                if let (Some(intrinsic), Some(loc)) = (dtype.intrinsic_length(), &node.location) {
                    match loc.bounded_length() {
                        Some(span) if span != intrinsic => report.push(Issue::error(
                            path,
                            format!(
                                "span of {span} conflicts with intrinsic length {intrinsic} of {}",
                                dtype.tag()
                            ),
                        )),
                        None => report.push(Issue::error(
                            path,
                            format!(
                                "open-ended span conflicts with fixed-width {}",
                                dtype.tag()
                            ),
                        )),
                        _ => {}
                    }
                }
            }
        }
    }

    if let Some(loc) = &node.location {
        if loc.mode() != mode {
            report.push(Issue::error(
                path,
                format!("{} location in a {mode}-mode document", loc.mode()),
            ));
        }
    }
}

/// Sibling spans with explicit locations must be ascending by start and
/// non-overlapping.
fn check_sibling_spans(nodes: &[FormatNode], parent_path: &str, report: &mut ValidationReport) {
    let located: Vec<(usize, &Location)> = nodes
        .iter()
        .enumerate()
        .filter_map(|(i, n)| n.location.as_ref().map(|l| (i, l)))
        .collect();

    for pair in located.windows(2) {
        let (ia, a) = pair[0];
        let (ib, b) = pair[1];
        let path_b = join_path(parent_path, &super::segment_name_for(nodes, ib));
        if !starts_ascending(a, b) {
            report.push(Issue::error(
                &path_b,
                format!(
                    "sibling spans out of order: starts after {}",
                    join_path(parent_path, &super::segment_name_for(nodes, ia))
                ),
            ));
        } else if overlaps(a, b) {
            report.push(Issue::error(
                &path_b,
                format!(
                    "overlaps preceding sibling {}",
                    join_path(parent_path, &super::segment_name_for(nodes, ia))
                ),
            ));
        }
    }
}

fn starts_ascending(a: &Location, b: &Location) -> bool {
    match (a, b) {
        (Location::Byte { start: sa, .. }, Location::Byte { start: sb, .. }) => sa <= sb,
        (Location::Char { start: sa, .. }, Location::Char { start: sb, .. }) => sa <= sb,
        // Mixed modes are reported separately.
        _ => true,
    }
}

fn overlaps(a: &Location, b: &Location) -> bool {
    match (a, b) {
        (
            Location::Byte {
                end: ByteEnd::At(ea),
                ..
            },
            Location::Byte { start: sb, .. },
        ) => sb < ea,
        (
            Location::Byte {
                end: ByteEnd::Open, ..
            },
            Location::Byte { .. },
        ) => true,
        (Location::Char { end, .. }, Location::Char { start: sb, .. }) => match end {
            CharEnd::At(ea) => *sb < *ea,
            // An end-of-line span covers through line `line`.
            CharEnd::LineEnd { line } => sb.line <= *line,
            CharEnd::Open => true,
        },
        _ => false,
    }
}

pub(crate) fn join_path(parent: &str, segment: &str) -> String {
    if parent.is_empty() {
        segment.to_string()
    } else {
        format!("{parent}/{segment}")
    }
}
