//! Flattening of a validated document into a linear read plan.
//!
//! Every data-type and separator leaf becomes one [`LinearItem`] carrying
//! its absolute first-occurrence position, unit length, and the stride
//! and repetition of each enclosing repetition level. Items are emitted
//! in ascending order of first-occurrence position.
//!
//! Byte-mode groups derive their repetition from span length divided by
//! the summed child extent; char-mode groups repeat only via an explicit
//! `number` attribute and stride by whole lines. An explicit `number`
//! always wins over a span-derived count.

use crate::error::{DfmlError, Result};
use crate::model::{
    ByteEnd, ByteOrder, CharEnd, DfmlDocument, FormatNode, Location, Mode, NodeKind,
    PrimitiveType, RepeatCount, SeparatorType,
};

/// Column sentinel used for line terminators: they sit past every
/// addressable column of their line.
pub const EOL_COL: u64 = u64::MAX;

/// A count that may be open-ended ("until end of data").
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extent {
    Count(u64),
    Open,
}

impl Extent {
    pub fn known(&self) -> Option<u64> {
        match self {
            Extent::Count(n) => Some(*n),
            Extent::Open => None,
        }
    }
}

impl std::fmt::Display for Extent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extent::Count(n) => write!(f, "{n}"),
            Extent::Open => write!(f, "open"),
        }
    }
}

/// Absolute position of a first occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Position {
    Byte(u64),
    Char { line: u64, col: u64 },
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Position::Byte(b) => write!(f, "{b}"),
            Position::Char { line, col } => {
                if *col == EOL_COL {
                    write!(f, "{line}:$")
                } else {
                    write!(f, "{line}:{col}")
                }
            }
        }
    }
}

/// Stride between consecutive occurrences of a repetition level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stride {
    Bytes(u64),
    Cols(u64),
    Lines(u64),
}

impl std::fmt::Display for Stride {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stride::Bytes(n) => write!(f, "{n}"),
            Stride::Cols(n) => write!(f, "{n}C"),
            Stride::Lines(n) => write!(f, "{n}L"),
        }
    }
}

/// One repetition level an item participates in. `seg_index` names the
/// path segment that owns the repetition (a group, or the leaf itself
/// when it carries its own `number`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepLevel {
    pub seg_index: usize,
    pub stride: Stride,
    pub repetition: Extent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Payload {
    Data(PrimitiveType),
    Sep(SeparatorType),
}

impl Payload {
    pub fn tag(&self) -> &'static str {
        match self {
            Payload::Data(t) => t.tag(),
            Payload::Sep(s) => s.tag(),
        }
    }
}

/// Expected constant derived from a `value` attribute that parses as a
/// literal of the item's type. Values that do not parse are placeholders
/// and carry no expectation.
#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    Int(i64),
    Float(f64),
    Text(String),
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expected::Int(v) => write!(f, "{v}"),
            Expected::Float(v) => write!(f, "{v}"),
            Expected::Text(v) => write!(f, "{v}"),
        }
    }
}

/// One read instruction of the flattened plan.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearItem {
    /// Path segments from the document root to the leaf, disambiguated
    /// among same-named siblings.
    pub segments: Vec<String>,
    pub payload: Payload,
    /// Absolute position of the first occurrence.
    pub start: Position,
    /// Unit length: bytes in byte mode, columns in char mode; for line
    /// terminators, one line ending.
    pub length: Extent,
    /// Repetition levels, outermost first. Empty means one occurrence.
    pub levels: Vec<RepLevel>,
    pub byte_order: Option<ByteOrder>,
    pub expected: Option<Expected>,
}

impl LinearItem {
    pub fn name(&self) -> &str {
        self.segments.last().expect("items have at least one segment")
    }

    pub fn path_string(&self) -> String {
        self.segments.join("/")
    }

    pub fn innermost(&self) -> Option<&RepLevel> {
        self.levels.last()
    }

    /// Stride of the innermost repetition level, in mode units; 0 for
    /// single-occurrence items.
    pub fn interval(&self) -> u64 {
        match self.innermost().map(|l| l.stride) {
            Some(Stride::Bytes(n)) | Some(Stride::Cols(n)) | Some(Stride::Lines(n)) => n,
            None => 0,
        }
    }

    pub fn repetition(&self) -> Extent {
        self.innermost()
            .map(|l| l.repetition)
            .unwrap_or(Extent::Count(1))
    }

    /// Total occurrence count across all levels, when every level is
    /// bounded.
    pub fn total_occurrences(&self) -> Option<u64> {
        let mut total = 1u64;
        for level in &self.levels {
            total = total.checked_mul(level.repetition.known()?)?;
        }
        Some(total)
    }

    /// The open repetition level, if any. Layout resolution guarantees at
    /// most one, and it is always the innermost.
    pub fn open_level(&self) -> Option<&RepLevel> {
        self.levels
            .iter()
            .find(|l| l.repetition == Extent::Open)
    }

    /// Path of the group that owns the open repetition ("record scope").
    pub fn record_scope(&self) -> Option<String> {
        self.open_level()
            .map(|l| self.segments[..=l.seg_index].join("/"))
    }

    pub fn is_line_terminator(&self) -> bool {
        matches!(self.payload, Payload::Sep(s) if s.is_line_terminator())
    }
}

/// The flattened, ordered read plan for a document.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSequence {
    pub name: String,
    pub namespace: String,
    pub mode: Mode,
    pub items: Vec<LinearItem>,
}

impl LinearSequence {
    pub fn find(&self, path: &str) -> Option<(usize, &LinearItem)> {
        self.items
            .iter()
            .enumerate()
            .find(|(_, item)| item.path_string() == path)
    }
}

/// Flatten a validated document into its linear read plan.
///
/// The caller must have run [`validate_document`](crate::model::validate_document)
/// with no errors first; layout contradictions that only appear during
/// flattening (non-divisible group spans, siblings after an open-ended
/// child) are reported here.
pub fn linearize(doc: &DfmlDocument) -> Result<LinearSequence> {
    let mut items = Vec::new();
    match doc.mode {
        Mode::Byte => {
            flatten_byte(&doc.children, 0, None, false, &[], &[], &mut items)?;
        }
        Mode::Char => {
            flatten_char(&doc.children, 1, 0, false, &[], &[], &mut items)?;
        }
    }
    // Ascending by first-occurrence position; document order breaks ties.
    items.sort_by_key(|item| item.start);
    Ok(LinearSequence {
        name: doc.name.clone(),
        namespace: doc.namespace.clone(),
        mode: doc.mode,
        items,
    })
}

fn segment_names(children: &[FormatNode]) -> Vec<String> {
    (0..children.len())
        .map(|i| crate::model::segment_name_for(children, i))
        .collect()
}

fn classify_expected(node: &FormatNode) -> Option<Expected> {
    let raw = node.value.as_deref()?;
    match node.kind {
        NodeKind::DataType(t) => match t {
            PrimitiveType::Byte
            | PrimitiveType::Short
            | PrimitiveType::Integer
            | PrimitiveType::Long => raw.trim().parse::<i64>().ok().map(Expected::Int),
            PrimitiveType::Float | PrimitiveType::Double => {
                raw.trim().parse::<f64>().ok().map(Expected::Float)
            }
            PrimitiveType::String => Some(Expected::Text(raw.to_string())),
            PrimitiveType::Char => {
                (raw.chars().count() == 1).then(|| Expected::Text(raw.to_string()))
            }
        },
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Byte mode
// ---------------------------------------------------------------------------

/// Lay out the children of a byte-mode container and emit their items.
/// Returns the extent, in bytes, of one container occurrence (`None`
/// when open-ended).
fn flatten_byte(
    children: &[FormatNode],
    abs_base: u64,
    container_end: Option<u64>,
    in_group: bool,
    levels: &[RepLevel],
    path: &[String],
    items: &mut Vec<LinearItem>,
) -> Result<Option<u64>> {
    let names = segment_names(children);
    let mut cursor: u64 = 0;
    let mut open_consumed: Option<String> = None;

    for (index, child) in children.iter().enumerate() {
        let mut child_path = path.to_vec();
        child_path.push(names[index].clone());
        let path_str = child_path.join("/");

        if let Some(opened_by) = &open_consumed {
            return Err(DfmlError::UnreachableSuccessors {
                path: opened_by.clone(),
            });
        }

        let rel_start = match &child.location {
            Some(Location::Byte { start, .. }) => *start,
            Some(_) => unreachable!("validation enforces mode-consistent locations"),
            None => cursor,
        };
        if rel_start < cursor {
            return Err(DfmlError::Inconsistent {
                path: path_str,
                detail: format!(
                    "starts at offset {rel_start} before the running layout position {cursor}"
                ),
            });
        }
        let abs_start = abs_base + rel_start;

        // Relative end of the explicit span, if bounded; explicit open
        // ends resolve against the container end when that is known.
        let rel_end: Option<u64> = match &child.location {
            Some(Location::Byte {
                end: ByteEnd::At(e),
                ..
            }) => Some(*e),
            Some(Location::Byte {
                end: ByteEnd::Open, ..
            }) => container_end.map(|ce| ce - abs_base),
            _ => None,
        };
        if let Some(e) = rel_end {
            if e <= rel_start {
                return Err(DfmlError::Inconsistent {
                    path: path_str,
                    detail: format!(
                        "starts at offset {rel_start}, at or past its resolved end {e}"
                    ),
                });
            }
        }

        match child.kind {
            NodeKind::Group => {
                let span: Option<u64> = match rel_end {
                    Some(e) => Some(e - rel_start),
                    None if child.location.is_some() => None, // open-ended span
                    None => {
                        // No location: runs to the next located sibling,
                        // else to the container end.
                        let next = children[index + 1..]
                            .iter()
                            .find_map(|n| match n.location {
                                Some(Location::Byte { start, .. }) => Some(start),
                                _ => None,
                            });
                        let until = match next {
                            Some(next_start) => Some(next_start),
                            None => container_end.map(|ce| ce - abs_base),
                        };
                        match until {
                            Some(until) if until <= rel_start => {
                                return Err(DfmlError::Inconsistent {
                                    path: path_str,
                                    detail: format!(
                                        "no room at offset {rel_start}: layout resumes at {until}"
                                    ),
                                })
                            }
                            Some(until) => Some(until - rel_start),
                            None => None,
                        }
                    }
                };

                // Probe the group body for its per-occurrence extent
                // before deciding repetition.
                let mut probe = Vec::new();
                let interval = flatten_byte(
                    &child.children,
                    abs_start,
                    span.map(|s| abs_start + s),
                    true,
                    &[],
                    &child_path,
                    &mut probe,
                )?;

                let repetition = resolve_group_repetition(
                    child.number,
                    span,
                    interval,
                    &path_str,
                )?;

                let mut inner_levels = levels.to_vec();
                if repetition != Extent::Count(1) {
                    let stride = interval.ok_or_else(|| DfmlError::Inconsistent {
                        path: path_str.clone(),
                        detail: "repeating group has an unresolved per-occurrence extent".into(),
                    })?;
                    inner_levels.push(RepLevel {
                        seg_index: child_path.len() - 1,
                        stride: Stride::Bytes(stride),
                        repetition,
                    });
                }

                flatten_byte(
                    &child.children,
                    abs_start,
                    span.map(|s| abs_start + s),
                    true,
                    &inner_levels,
                    &child_path,
                    items,
                )?;

                let extent = match (span, interval, repetition) {
                    (Some(s), _, _) => Some(s),
                    (None, Some(iv), Extent::Count(n)) => Some(iv * n),
                    _ => None,
                };
                match extent {
                    Some(e) => cursor = rel_start + e,
                    None => open_consumed = Some(path_str),
                }
            }
            NodeKind::DataType(_) | NodeKind::Separator(_) => {
                let unit = unit_length_byte(child)?;
                let length = match (rel_end, unit) {
                    (Some(e), _) => Extent::Count(e - rel_start),
                    (None, Some(u)) => Extent::Count(u),
                    (None, None) => Extent::Open, // open-ended string
                };

                let mut item_levels = levels.to_vec();
                apply_own_number(
                    &mut item_levels,
                    child.number,
                    child_path.len() - 1,
                    length.known().map(Stride::Bytes),
                    &path_str,
                )?;

                items.push(LinearItem {
                    segments: child_path.clone(),
                    payload: payload_of(child),
                    start: Position::Byte(abs_start),
                    length,
                    levels: item_levels,
                    byte_order: child.byte_order,
                    expected: classify_expected(child),
                });

                let copies = match child.number {
                    // Standalone numbered leaves lay out as inline
                    // copies; inside a group the group arithmetic owns
                    // the repetition.
                    Some(RepeatCount::Count(n)) if !in_group => n,
                    _ => 1,
                };
                match length.known() {
                    Some(len) => cursor = rel_start + len * copies,
                    None => open_consumed = Some(path_str),
                }
            }
        }
    }

    match open_consumed {
        Some(_) => Ok(None),
        None => Ok(Some(cursor)),
    }
}

fn unit_length_byte(node: &FormatNode) -> Result<Option<u64>> {
    match node.kind {
        NodeKind::DataType(t) => Ok(t.intrinsic_length()),
        NodeKind::Separator(_) => Ok(Some(1)),
        NodeKind::Group => unreachable!(),
    }
}

fn payload_of(node: &FormatNode) -> Payload {
    match node.kind {
        NodeKind::DataType(t) => Payload::Data(t),
        NodeKind::Separator(s) => Payload::Sep(s),
        NodeKind::Group => unreachable!(),
    }
}

/// Group repetition: an explicit `number` wins; otherwise the bounded
/// span divided by the per-occurrence extent (which must divide
/// exactly); an open span with a known extent repeats until end of
/// data; an unresolved extent pins the group to a single occurrence.
fn resolve_group_repetition(
    number: Option<RepeatCount>,
    span: Option<u64>,
    interval: Option<u64>,
    path: &str,
) -> Result<Extent> {
    if let Some(n) = number {
        return Ok(match n {
            RepeatCount::Count(c) => Extent::Count(c),
            RepeatCount::Open => Extent::Open,
        });
    }
    let Some(interval) = interval else {
        return Ok(Extent::Count(1));
    };
    if interval == 0 {
        return Err(DfmlError::Inconsistent {
            path: path.into(),
            detail: "group occupies no space".into(),
        });
    }
    match span {
        Some(span) => {
            if span % interval != 0 {
                return Err(DfmlError::Inconsistent {
                    path: path.into(),
                    detail: format!(
                        "span of {span} is not a whole multiple of the occurrence extent {interval}"
                    ),
                });
            }
            Ok(Extent::Count(span / interval))
        }
        None => Ok(Extent::Open),
    }
}

/// An explicit `number` on a leaf overrides the repetition it inherited;
/// a numbered leaf outside any repeating context strides by its own
/// length.
fn apply_own_number(
    levels: &mut Vec<RepLevel>,
    number: Option<RepeatCount>,
    leaf_seg: usize,
    own_stride: Option<Stride>,
    path: &str,
) -> Result<()> {
    let Some(number) = number else { return Ok(()) };
    let repetition = match number {
        RepeatCount::Count(n) => Extent::Count(n),
        RepeatCount::Open => Extent::Open,
    };
    // Override the direct parent's derived repetition; a level owned by
    // an outer ancestor is not this leaf's to change.
    if let Some(last) = levels.last_mut() {
        if last.seg_index + 1 == leaf_seg {
            last.repetition = repetition;
            return Ok(());
        }
    }
    if repetition == Extent::Count(1) {
        return Ok(());
    }
    let stride = own_stride.ok_or_else(|| DfmlError::Inconsistent {
        path: path.into(),
        detail: "numbered leaf with open-ended length cannot stride".into(),
    })?;
    levels.push(RepLevel {
        seg_index: leaf_seg,
        stride,
        repetition,
    });
    Ok(())
}

// ---------------------------------------------------------------------------
// Char mode
// ---------------------------------------------------------------------------

struct CharOutcome {
    /// Whole lines consumed by one occurrence, when resolvable.
    lines: Option<u64>,
    /// Columns consumed on the final (unterminated) line.
    trailing_cols: u64,
}

/// Lay out the children of a char-mode container.
///
/// `base_line` is the absolute line of the container's first occurrence;
/// when `relative` is set the children address lines as 0-based offsets
/// from it, otherwise they use absolute line numbers.
fn flatten_char(
    children: &[FormatNode],
    base_line: u64,
    start_line_local: u64,
    relative: bool,
    levels: &[RepLevel],
    path: &[String],
    items: &mut Vec<LinearItem>,
) -> Result<CharOutcome> {
    let names = segment_names(children);
    let mut cursor_line = start_line_local;
    let mut cursor_col: u64 = 0;
    let mut open_consumed: Option<String> = None;

    let to_abs = |line_local: u64| {
        if relative {
            base_line + line_local
        } else {
            line_local
        }
    };

    for (index, child) in children.iter().enumerate() {
        let mut child_path = path.to_vec();
        child_path.push(names[index].clone());
        let path_str = child_path.join("/");

        if open_consumed.is_some() && child.location.is_none() {
            return Err(DfmlError::Inconsistent {
                path: path_str,
                detail: "cannot lay out after an open-ended sibling without an explicit location"
                    .into(),
            });
        }

        let (loc_start, loc_end) = match &child.location {
            Some(Location::Char { start, end }) => (Some(*start), Some(*end)),
            Some(_) => unreachable!("validation enforces mode-consistent locations"),
            None => (None, None),
        };

        match child.kind {
            NodeKind::Separator(sep) if sep.is_line_terminator() => {
                let line_local = loc_start.map(|p| p.line).unwrap_or(cursor_line);
                items.push(LinearItem {
                    segments: child_path,
                    payload: Payload::Sep(sep),
                    start: Position::Char {
                        line: to_abs(line_local),
                        col: EOL_COL,
                    },
                    length: Extent::Count(1),
                    levels: levels.to_vec(),
                    byte_order: None,
                    expected: None,
                });
                cursor_line = line_local + 1;
                cursor_col = 0;
            }
            NodeKind::DataType(_) | NodeKind::Separator(_) => {
                let start = match loc_start {
                    Some(p) => p,
                    // An exhausted line pushes unlocated children onto
                    // the next one.
                    None if cursor_col == EOL_COL => crate::model::CharPos {
                        line: cursor_line + 1,
                        col: 0,
                    },
                    None => crate::model::CharPos {
                        line: cursor_line,
                        col: cursor_col,
                    },
                };
                if start.line < cursor_line {
                    return Err(DfmlError::Inconsistent {
                        path: path_str,
                        detail: format!(
                            "starts on line {} before the running layout line {}",
                            start.line, cursor_line
                        ),
                    });
                }
                let length = match loc_end {
                    Some(CharEnd::At(e)) => {
                        if e.line != start.line {
                            return Err(DfmlError::Inconsistent {
                                path: path_str,
                                detail: "leaf span must stay within one line".into(),
                            });
                        }
                        Extent::Count(e.col - start.col)
                    }
                    Some(CharEnd::LineEnd { line }) => {
                        if line != start.line {
                            return Err(DfmlError::Inconsistent {
                                path: path_str,
                                detail: "leaf span must stay within one line".into(),
                            });
                        }
                        Extent::Open
                    }
                    Some(CharEnd::Open) => Extent::Open,
                    None => match unit_length_char(child) {
                        Some(u) => Extent::Count(u),
                        None => {
                            return Err(DfmlError::Inconsistent {
                                path: path_str,
                                detail: "string requires an explicit location".into(),
                            })
                        }
                    },
                };

                let mut item_levels = levels.to_vec();
                apply_own_number(
                    &mut item_levels,
                    child.number,
                    child_path.len() - 1,
                    length.known().map(Stride::Cols),
                    &path_str,
                )?;

                items.push(LinearItem {
                    segments: child_path,
                    payload: payload_of(child),
                    start: Position::Char {
                        line: to_abs(start.line),
                        col: start.col,
                    },
                    length,
                    levels: item_levels,
                    byte_order: None,
                    expected: classify_expected(child),
                });

                cursor_line = start.line;
                cursor_col = match length {
                    Extent::Count(n) => start.col + n,
                    Extent::Open => EOL_COL,
                };
            }
            NodeKind::Group => {
                // Char-mode groups repeat only via an explicit number;
                // children of a repeating group use 0-based line offsets.
                let group_relative =
                    !matches!(child.number, None | Some(RepeatCount::Count(1)));

                let start_line_local = match loc_start {
                    Some(p) => p.line,
                    None if cursor_col == EOL_COL => cursor_line + 1,
                    None => cursor_line,
                };
                if start_line_local < cursor_line {
                    return Err(DfmlError::Inconsistent {
                        path: path_str,
                        detail: format!(
                            "starts on line {} before the running layout line {}",
                            start_line_local, cursor_line
                        ),
                    });
                }
                let abs_start_line = to_abs(start_line_local);

                let span_lines: Option<u64> = match loc_end {
                    Some(CharEnd::At(e)) => Some(e.line - start_line_local + 1),
                    Some(CharEnd::LineEnd { line }) => Some(line - start_line_local + 1),
                    Some(CharEnd::Open) | None => None,
                };

                let mut probe = Vec::new();
                let inner = flatten_char(
                    &child.children,
                    abs_start_line,
                    if group_relative { 0 } else { abs_start_line },
                    group_relative,
                    &[],
                    &[],
                    &mut probe,
                )?;
                let occurrence_lines = match span_lines {
                    Some(s) => Some(s),
                    None => inner.lines,
                };

                let repetition = match child.number {
                    Some(RepeatCount::Count(n)) => Extent::Count(n),
                    Some(RepeatCount::Open) => Extent::Open,
                    None => Extent::Count(1),
                };

                let mut inner_levels = levels.to_vec();
                if repetition != Extent::Count(1) {
                    let stride = match occurrence_lines {
                        Some(n) if n > 0 => Stride::Lines(n),
                        _ if inner.trailing_cols > 0 && occurrence_lines.unwrap_or(0) == 0 => {
                            Stride::Cols(inner.trailing_cols)
                        }
                        _ => {
                            return Err(DfmlError::Inconsistent {
                                path: path_str.clone(),
                                detail: "repeating group has an unresolved per-occurrence extent"
                                    .into(),
                            })
                        }
                    };
                    inner_levels.push(RepLevel {
                        seg_index: child_path.len() - 1,
                        stride,
                        repetition,
                    });
                }

                flatten_char(
                    &child.children,
                    abs_start_line,
                    if group_relative { 0 } else { abs_start_line },
                    group_relative,
                    &inner_levels,
                    &child_path,
                    items,
                )?;

                let extent_lines = match (occurrence_lines, repetition) {
                    (Some(lines), Extent::Count(n)) => Some(lines * n),
                    _ => None,
                };
                match extent_lines {
                    Some(e) => {
                        cursor_line = start_line_local + e;
                        cursor_col = 0;
                    }
                    None => open_consumed = Some(path_str),
                }
            }
        }
    }

    let lines = if open_consumed.is_some() {
        None
    } else {
        Some(cursor_line - start_line_local)
    };
    Ok(CharOutcome {
        lines,
        trailing_cols: if cursor_col == EOL_COL { 0 } else { cursor_col },
    })
}

fn unit_length_char(node: &FormatNode) -> Option<u64> {
    match node.kind {
        NodeKind::DataType(t) => t.intrinsic_length(),
        NodeKind::Separator(_) => Some(1),
        NodeKind::Group => unreachable!(),
    }
}

// ---------------------------------------------------------------------------
// Summary table
// ---------------------------------------------------------------------------

/// Deterministic tab-separated table of the plan, one row per item.
pub fn sequence_summary(seq: &LinearSequence) -> String {
    let mut out = String::from("path\tkind\tstart\tlength\tinterval\trepetition\torder\texpected\n");
    for item in &seq.items {
        let interval = item
            .innermost()
            .map(|l| l.stride.to_string())
            .unwrap_or_else(|| "0".into());
        let order = item
            .byte_order
            .map(|o| match o {
                ByteOrder::BigEndian => "big",
                ByteOrder::LittleEndian => "little",
            })
            .unwrap_or("-");
        let expected = item
            .expected
            .as_ref()
            .map(|e| e.to_string())
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            item.path_string(),
            item.payload.tag(),
            item.start,
            item.length,
            interval,
            item.repetition(),
            order,
            expected,
        ));
    }
    out
}
