//! Document model for the DFML format-description dialect.
//!
//! A DFML document is an XML tree whose root `<dataformat>` declares a
//! name, a namespace, and an addressing mode (`byte` for binary files,
//! `char` for line/column-addressed text files). Children are data-type
//! leaves (`integer`, `double`/`real`, `string`, `byte`, `short`, `long`,
//! `float`, `char`), separator leaves (`space`, `tab`, `cr`, `lf`,
//! `comma`, `semicolon`), and `group` elements that bundle children and
//! express record repetition.
//!
//! All model types are immutable after construction and safe to share
//! across threads.

mod parse;
mod serialize;
mod validate;

pub use parse::{parse_document, parse_location, ParsedDocument};
pub use serialize::to_xml;
pub use validate::validate_document;

/// Unique display segment for `siblings[index]`: nodes sharing a
/// display name get a 1-based `(k)` suffix. Validation paths and the
/// flattened plan use the same scheme.
pub fn segment_name_for(siblings: &[FormatNode], index: usize) -> String {
    let name = siblings[index].display_name();
    let same: Vec<usize> = siblings
        .iter()
        .enumerate()
        .filter(|(_, n)| n.display_name() == name)
        .map(|(i, _)| i)
        .collect();
    if same.len() == 1 {
        name.to_string()
    } else {
        let k = same.iter().position(|&i| i == index).unwrap() + 1;
        format!("{name}({k})")
    }
}

use std::fmt;

/// Addressing regime of a document: byte offsets or (line, column) spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Byte,
    Char,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Byte => write!(f, "byte"),
            Mode::Char => write!(f, "char"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ByteOrder {
    BigEndian,
    LittleEndian,
}

impl ByteOrder {
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "bigEndian" => Some(ByteOrder::BigEndian),
            "littleEndian" => Some(ByteOrder::LittleEndian),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ByteOrder::BigEndian => "bigEndian",
            ByteOrder::LittleEndian => "littleEndian",
        }
    }
}

/// The eight basic data types. `real` in DFML text is an alias of
/// `double`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitiveType {
    Byte,
    Short,
    Integer,
    Long,
    Float,
    Double,
    String,
    Char,
}

impl PrimitiveType {
    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "byte" => PrimitiveType::Byte,
            "short" => PrimitiveType::Short,
            "integer" => PrimitiveType::Integer,
            "long" => PrimitiveType::Long,
            "float" => PrimitiveType::Float,
            "double" | "real" => PrimitiveType::Double,
            "string" => PrimitiveType::String,
            "char" => PrimitiveType::Char,
            _ => return None,
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            PrimitiveType::Byte => "byte",
            PrimitiveType::Short => "short",
            PrimitiveType::Integer => "integer",
            PrimitiveType::Long => "long",
            PrimitiveType::Float => "float",
            PrimitiveType::Double => "double",
            PrimitiveType::String => "string",
            PrimitiveType::Char => "char",
        }
    }

    /// Fixed width in mode units (bytes or characters). `string` has no
    /// intrinsic length and always needs an explicit location.
    pub fn intrinsic_length(&self) -> Option<u64> {
        match self {
            PrimitiveType::Byte => Some(1),
            PrimitiveType::Short => Some(2),
            PrimitiveType::Integer => Some(4),
            PrimitiveType::Long => Some(8),
            PrimitiveType::Float => Some(4),
            PrimitiveType::Double => Some(8),
            PrimitiveType::Char => Some(1),
            PrimitiveType::String => None,
        }
    }

    pub fn is_numeric(&self) -> bool {
        !matches!(self, PrimitiveType::String | PrimitiveType::Char)
    }
}

/// The six basic separator types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorType {
    Space,
    Tab,
    Cr,
    Lf,
    Comma,
    Semicolon,
}

impl SeparatorType {
    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "space" => SeparatorType::Space,
            "tab" => SeparatorType::Tab,
            "cr" => SeparatorType::Cr,
            "lf" => SeparatorType::Lf,
            "comma" => SeparatorType::Comma,
            "semicolon" => SeparatorType::Semicolon,
            _ => return None,
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            SeparatorType::Space => "space",
            SeparatorType::Tab => "tab",
            SeparatorType::Cr => "cr",
            SeparatorType::Lf => "lf",
            SeparatorType::Comma => "comma",
            SeparatorType::Semicolon => "semicolon",
        }
    }

    /// `cr` and `lf` terminate the current line; the rest occupy
    /// character (or byte) positions within it.
    pub fn is_line_terminator(&self) -> bool {
        matches!(self, SeparatorType::Cr | SeparatorType::Lf)
    }

    /// Canonical mark recorded when the separator is read.
    pub fn mark(&self) -> &'static str {
        match self {
            SeparatorType::Space => "<space>",
            SeparatorType::Tab => "<tab>",
            SeparatorType::Cr => "<cr>",
            SeparatorType::Lf => "<lf>",
            SeparatorType::Comma => "<comma>",
            SeparatorType::Semicolon => "<semicolon>",
        }
    }
}

/// A (line, column) position in char mode. Top-level lines are 1-based;
/// children of a repeating group use 0-based line offsets relative to
/// the occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CharPos {
    pub line: u64,
    pub col: u64,
}

/// End of a byte-mode span; `Open` (`-1` in DFML) means "to end of file".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ByteEnd {
    At(u64),
    Open,
}

/// End of a char-mode span. `LineEnd` (`L -1`) means "to end of line L";
/// `Open` (`-1 -1`) means "to end of section".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharEnd {
    At(CharPos),
    LineEnd { line: u64 },
    Open,
}

/// A half-open span `[start, end)` in the units of the document mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Byte { start: u64, end: ByteEnd },
    Char { start: CharPos, end: CharEnd },
}

impl Location {
    pub fn mode(&self) -> Mode {
        match self {
            Location::Byte { .. } => Mode::Byte,
            Location::Char { .. } => Mode::Char,
        }
    }

    /// Span length in mode units when both ends are bounded.
    pub fn bounded_length(&self) -> Option<u64> {
        match self {
            Location::Byte {
                start,
                end: ByteEnd::At(end),
            } => Some(end - start),
            // Column width only makes sense within a single line.
            Location::Char {
                start,
                end: CharEnd::At(end),
            } if end.line == start.line => Some(end.col - start.col),
            _ => None,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Byte { start, end } => match end {
                ByteEnd::At(e) => write!(f, "{start},{e}"),
                ByteEnd::Open => write!(f, "{start},-1"),
            },
            Location::Char { start, end } => {
                write!(f, "{} {},", start.line, start.col)?;
                match end {
                    CharEnd::At(e) => write!(f, "{} {}", e.line, e.col),
                    CharEnd::LineEnd { line } => write!(f, "{line} -1"),
                    CharEnd::Open => write!(f, "-1 -1"),
                }
            }
        }
    }
}

/// Repetition count; `number="unknown"` maps to `Open`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepeatCount {
    Count(u64),
    Open,
}

impl fmt::Display for RepeatCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepeatCount::Count(n) => write!(f, "{n}"),
            RepeatCount::Open => write!(f, "unknown"),
        }
    }
}

/// What a format node is: a typed data leaf, a separator leaf, or a
/// group bundling children.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    DataType(PrimitiveType),
    Separator(SeparatorType),
    Group,
}

impl NodeKind {
    pub fn tag(&self) -> &'static str {
        match self {
            NodeKind::DataType(t) => t.tag(),
            NodeKind::Separator(s) => s.tag(),
            NodeKind::Group => "group",
        }
    }
}

/// One node of the description tree.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatNode {
    pub kind: NodeKind,
    pub location: Option<Location>,
    pub number: Option<RepeatCount>,
    pub byte_order: Option<ByteOrder>,
    /// Raw `value` attribute. It doubles as an expected constant (when it
    /// parses as a literal of the node's type) and as a free-form
    /// placeholder otherwise.
    pub value: Option<String>,
    pub description: Option<String>,
    pub children: Vec<FormatNode>,
}

impl FormatNode {
    pub fn leaf(kind: NodeKind) -> Self {
        FormatNode {
            kind,
            location: None,
            number: None,
            byte_order: None,
            value: None,
            description: None,
            children: Vec::new(),
        }
    }

    /// Display name: the description when present, else the element tag.
    pub fn display_name(&self) -> &str {
        self.description.as_deref().unwrap_or_else(|| self.kind.tag())
    }

    pub fn is_group(&self) -> bool {
        matches!(self.kind, NodeKind::Group)
    }
}

/// A parsed, attribute-bound format description.
#[derive(Debug, Clone, PartialEq)]
pub struct DfmlDocument {
    pub name: String,
    pub namespace: String,
    pub mode: Mode,
    pub description: Option<String>,
    pub children: Vec<FormatNode>,
}

impl DfmlDocument {
    /// Depth-first walk over all nodes, parents before children.
    pub fn walk<'a>(&'a self, mut visit: impl FnMut(&'a FormatNode, &[usize])) {
        fn go<'a>(
            nodes: &'a [FormatNode],
            trail: &mut Vec<usize>,
            visit: &mut impl FnMut(&'a FormatNode, &[usize]),
        ) {
            for (i, node) in nodes.iter().enumerate() {
                trail.push(i);
                visit(node, trail);
                go(&node.children, trail, visit);
                trail.pop();
            }
        }
        let mut trail = Vec::new();
        go(&self.children, &mut trail, &mut visit);
    }
}
