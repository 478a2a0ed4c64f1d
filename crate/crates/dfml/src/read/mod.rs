//! Direct interpretation of a linear read plan against a data file.
//!
//! Reading is item-major, mirroring the emitted reader programs: every
//! item of the plan is read once per occurrence, striding by its
//! interval. Items under an open-repetition group form records; their
//! occurrence count comes from the data itself (end of file), and a
//! trailing partial record is an error naming the item it cuts short.

mod chars;
mod decode;

pub use chars::{extract_cols, read_char_line_fields, type_field};
pub use decode::{decode_primitive, encode_primitive};

use std::fmt;

use crate::error::{DfmlError, Result};
use crate::linearize::{Extent, LinearItem, LinearSequence, Payload, Position, RepLevel, Stride};
use crate::model::{ByteOrder, Mode, SeparatorType};
use crate::report::{Issue, ValidationReport};

/// A decoded value. Numeric values decode exactly at their declared
/// width and byte order; text keeps leading spaces but not trailing
/// ones in char mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
    Sep(SeparatorType),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Float(v) => write!(f, "{v}"),
            Value::Text(v) => write!(f, "{v}"),
            Value::Sep(s) => write!(f, "{}", s.mark()),
        }
    }
}

/// One extracted value with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub item_index: usize,
    /// Occurrence-qualified path, e.g. `Point[3]/X`.
    pub path: String,
    pub name: String,
    pub location: Position,
    pub value: Value,
}

/// All occurrences of one non-record item.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldColumn {
    pub item_index: usize,
    pub values: Vec<Field>,
}

/// Rows of one open-repetition group.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordGroup {
    pub scope: String,
    pub item_indices: Vec<usize>,
    pub rows: Vec<Vec<Field>>,
    pub count: u64,
}

/// Typed extraction results in plan order.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordSet {
    pub columns: Vec<FieldColumn>,
    pub groups: Vec<RecordGroup>,
    /// Expected-value mismatches; recorded, never fatal.
    pub issues: Vec<Issue>,
    /// Byte mode: highest byte offset read.
    pub consumed: u64,
}

/// Which occurrences of an item a random read addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Occurrence {
    Index(u64),
    All,
}

/// A random-read request: an item path plus an occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub path: String,
    pub occurrence: Occurrence,
}

impl Selection {
    /// Parse `"path#occurrence"`; a missing `#` or `#all` selects every
    /// occurrence.
    pub fn parse(text: &str) -> Result<Self> {
        match text.rsplit_once('#') {
            None => Ok(Selection {
                path: text.to_string(),
                occurrence: Occurrence::All,
            }),
            Some((path, occ)) => {
                let occurrence = if occ.eq_ignore_ascii_case("all") {
                    Occurrence::All
                } else {
                    let n: u64 = occ.parse().map_err(|_| {
                        DfmlError::Selection(format!(
                            "occurrence must be a 1-based index or `all`, got {occ:?}"
                        ))
                    })?;
                    if n == 0 {
                        return Err(DfmlError::Selection("occurrences are 1-based".into()));
                    }
                    Occurrence::Index(n)
                };
                Ok(Selection {
                    path: path.to_string(),
                    occurrence,
                })
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Occurrence arithmetic
// ---------------------------------------------------------------------------

/// Occurrence-qualified path: each repeating segment gets its 1-based
/// index.
pub fn occurrence_path(item: &LinearItem, indices: &[u64]) -> String {
    let mut segments = item.segments.clone();
    for (level, k) in item.levels.iter().zip(indices) {
        let seg = &mut segments[level.seg_index];
        *seg = format!("{seg}[{}]", k + 1);
    }
    segments.join("/")
}

fn occurrence_position(item: &LinearItem, indices: &[u64]) -> Position {
    let mut pos = item.start;
    for (level, k) in item.levels.iter().zip(indices) {
        pos = advance(pos, level.stride, *k);
    }
    pos
}

fn advance(pos: Position, stride: Stride, k: u64) -> Position {
    match (pos, stride) {
        (Position::Byte(b), Stride::Bytes(s)) => Position::Byte(b + k * s),
        (Position::Char { line, col }, Stride::Lines(s)) => Position::Char {
            line: line + k * s,
            col,
        },
        (Position::Char { line, col }, Stride::Cols(s)) => Position::Char {
            line,
            col: col + k * s,
        },
        _ => unreachable!("stride unit matches the document mode"),
    }
}

/// Enumerate index vectors over the given repetition counts,
/// lexicographically with the last position varying fastest. Lazy, so
/// absurd declared counts fail at the first out-of-bounds read instead
/// of materializing the whole set.
fn combos(reps: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let mut state = if reps.contains(&0) {
        None
    } else {
        Some(vec![0u64; reps.len()])
    };
    std::iter::from_fn(move || {
        let out = state.clone()?;
        let exhausted = {
            let current = state.as_mut().expect("cloned above");
            let mut i = current.len();
            loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                current[i] += 1;
                if current[i] < reps[i] {
                    break false;
                }
                current[i] = 0;
            }
        };
        if exhausted {
            state = None;
        }
        Some(out)
    })
}

// ---------------------------------------------------------------------------
// Sequential reading
// ---------------------------------------------------------------------------

struct Source<'a> {
    data: &'a [u8],
    /// Char mode only: decoded lines.
    lines: Vec<&'a str>,
}

impl<'a> Source<'a> {
    fn new(data: &'a [u8], mode: Mode) -> Result<Self> {
        let lines = match mode {
            Mode::Byte => Vec::new(),
            Mode::Char => {
                let text = std::str::from_utf8(data)
                    .map_err(|_| DfmlError::read("<file>", "data is not valid UTF-8 text"))?;
                text.lines().collect()
            }
        };
        Ok(Source { data, lines })
    }

    fn line(&self, line_no: u64, path: &str) -> Result<&'a str> {
        self.lines
            .get(line_no as usize - 1)
            .copied()
            .ok_or_else(|| {
                DfmlError::read(
                    path,
                    format!("premature end of file: line {line_no} of {} available", self.lines.len()),
                )
            })
    }
}

fn resolve_byte_order(item: &LinearItem) -> ByteOrder {
    // Multi-byte numerics without an explicit order default to little
    // endian.
    item.byte_order.unwrap_or(ByteOrder::LittleEndian)
}

/// Read one occurrence of an item at a resolved position. Returns the
/// value and, in byte mode, the end offset of the bytes consumed.
fn read_occurrence(
    source: &Source<'_>,
    item: &LinearItem,
    pos: Position,
    path: &str,
) -> Result<(Value, u64)> {
    match pos {
        Position::Byte(offset) => {
            let len = match item.length {
                Extent::Count(n) => n,
                Extent::Open => (source.data.len() as u64).saturating_sub(offset),
            };
            let end = offset + len;
            if end > source.data.len() as u64 {
                return Err(DfmlError::read(
                    path,
                    format!(
                        "premature end of file: need {len} bytes at offset {offset}, file has {}",
                        source.data.len()
                    ),
                ));
            }
            let bytes = &source.data[offset as usize..end as usize];
            let value = match item.payload {
                Payload::Sep(sep) => Value::Sep(sep),
                Payload::Data(dtype) => decode_primitive(bytes, dtype, resolve_byte_order(item))
                    .map_err(|e| DfmlError::read(path, e.to_string()))?,
            };
            Ok((value, end))
        }
        Position::Char { line, col } => {
            if item.is_line_terminator() {
                if line > source.lines.len() as u64 {
                    return Err(DfmlError::read(
                        path,
                        format!(
                            "premature end of file: line {line} of {} available",
                            source.lines.len()
                        ),
                    ));
                }
                let Payload::Sep(sep) = item.payload else { unreachable!() };
                return Ok((Value::Sep(sep), 0));
            }
            if let Payload::Sep(sep) = item.payload {
                // Structural filler: tolerate short lines.
                let _ = source.line(line, path)?;
                return Ok((Value::Sep(sep), 0));
            }
            let text = source.line(line, path)?;
            let raw = extract_cols(text, col, item.length, path)?;
            let value = type_field(&raw, item.payload, path)?;
            Ok((value, 0))
        }
    }
}

/// Items that repeat until end of data, grouped by owning group path.
struct Scope {
    path: String,
    item_indices: Vec<usize>,
    level: RepLevel,
}

fn collect_scopes(seq: &LinearSequence) -> Vec<Scope> {
    let mut scopes: Vec<Scope> = Vec::new();
    for (idx, item) in seq.items.iter().enumerate() {
        let Some(scope_path) = item.record_scope() else {
            continue;
        };
        match scopes.iter_mut().find(|s| s.path == scope_path) {
            Some(scope) => scope.item_indices.push(idx),
            None => {
                let level = item.open_level().expect("record scope implies open level");
                scopes.push(Scope {
                    path: scope_path,
                    item_indices: vec![idx],
                    level: level.clone(),
                });
            }
        }
    }
    scopes
}

/// Occurrence count of an open scope, derived from end of data. A
/// non-whole trailing remainder is an error naming the first item the
/// cut falls on.
fn scope_count(source: &Source<'_>, seq: &LinearSequence, scope: &Scope) -> Result<u64> {
    // The scope base is the minimum start among member items.
    let base = scope
        .item_indices
        .iter()
        .map(|&i| seq.items[i].start)
        .min()
        .expect("scopes are non-empty");
    match (base, scope.level.stride) {
        (Position::Byte(base), Stride::Bytes(interval)) => {
            let avail = (source.data.len() as u64).saturating_sub(base);
            let count = avail / interval;
            let rem = avail % interval;
            if rem != 0 {
                let failing = scope
                    .item_indices
                    .iter()
                    .map(|&i| &seq.items[i])
                    .find(|it| {
                        let rel = match it.start {
                            Position::Byte(s) => s - base,
                            _ => unreachable!(),
                        };
                        rel + it.length.known().unwrap_or(0) > rem
                    })
                    .expect("remainder cuts some item");
                let mut indices = vec![0; failing.levels.len()];
                if let Some(open_pos) = failing.levels.iter().position(|l| l.repetition == Extent::Open) {
                    indices[open_pos] = count;
                }
                return Err(DfmlError::read(
                    occurrence_path(failing, &indices),
                    format!("truncated record: {rem} trailing bytes do not hold record {}", count + 1),
                ));
            }
            Ok(count)
        }
        (Position::Char { line, .. }, Stride::Lines(interval)) => {
            let total = source.lines.len() as u64;
            let avail = (total + 1).saturating_sub(line);
            let count = avail / interval;
            let rem = avail % interval;
            if rem != 0 {
                let failing = scope
                    .item_indices
                    .iter()
                    .map(|&i| &seq.items[i])
                    .find(|it| {
                        let rel = match it.start {
                            Position::Char { line: l, .. } => l - line,
                            _ => unreachable!(),
                        };
                        rel >= rem
                    })
                    .expect("remainder cuts some item");
                let mut indices = vec![0; failing.levels.len()];
                if let Some(open_pos) = failing.levels.iter().position(|l| l.repetition == Extent::Open) {
                    indices[open_pos] = count;
                }
                return Err(DfmlError::read(
                    occurrence_path(failing, &indices),
                    format!("truncated record: {rem} trailing lines do not hold record {}", count + 1),
                ));
            }
            Ok(count)
        }
        (Position::Char { .. }, Stride::Cols(interval)) => {
            // Sub-line repetition cannot be bounded by end of file in a
            // line-structured source; nothing repeats.
            let _ = interval;
            Ok(0)
        }
        _ => unreachable!("stride unit matches the document mode"),
    }
}

/// Index vectors for one row of a scope: the open level takes `row`,
/// bounded levels (if any) enumerate fully.
fn row_combos(item: &LinearItem, row: u64) -> impl Iterator<Item = Vec<u64>> + '_ {
    let open_pos = item
        .levels
        .iter()
        .position(|l| l.repetition == Extent::Open)
        .expect("scope items have an open level");
    let bounded: Vec<u64> = item
        .levels
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != open_pos)
        .map(|(_, l)| l.repetition.known().expect("only one open level"))
        .collect();
    let total = item.levels.len();
    OwnedCombos::new(bounded).map(move |combo| {
        let mut full = Vec::with_capacity(total);
        let mut rest = combo.into_iter();
        for i in 0..total {
            if i == open_pos {
                full.push(row);
            } else {
                full.push(rest.next().expect("bounded arity"));
            }
        }
        full
    })
}

/// Owning variant of [`combos`] for iterators that outlive a local
/// repetition vector.
struct OwnedCombos {
    reps: Vec<u64>,
    state: Option<Vec<u64>>,
}

impl OwnedCombos {
    fn new(reps: Vec<u64>) -> Self {
        let state = if reps.contains(&0) {
            None
        } else {
            Some(vec![0u64; reps.len()])
        };
        OwnedCombos { reps, state }
    }
}

impl Iterator for OwnedCombos {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.state.clone()?;
        let current = self.state.as_mut().expect("cloned above");
        let mut i = current.len();
        let exhausted = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < self.reps[i] {
                break false;
            }
            current[i] = 0;
        };
        if exhausted {
            self.state = None;
        }
        Some(out)
    }
}

/// Interpret the whole plan against a file.
///
/// Expected-value mismatches are recorded as issues on the result, not
/// errors; truncation and malformed fields are errors.
pub fn read_sequential(data: &[u8], seq: &LinearSequence) -> Result<RecordSet> {
    let source = Source::new(data, seq.mode)?;
    let scopes = collect_scopes(seq);
    let mut consumed = 0u64;

    // Row counts are resolved before any record item is read so that a
    // truncated trailing record fails early, in reading order.
    let mut counts = Vec::with_capacity(scopes.len());
    for scope in &scopes {
        counts.push(scope_count(&source, seq, scope)?);
    }

    let mut columns = Vec::new();
    let mut groups: Vec<RecordGroup> = scopes
        .iter()
        .zip(&counts)
        .map(|(scope, &count)| RecordGroup {
            scope: scope.path.clone(),
            item_indices: scope.item_indices.clone(),
            rows: (0..count).map(|_| Vec::new()).collect(),
            count,
        })
        .collect();

    for (idx, item) in seq.items.iter().enumerate() {
        match item.record_scope() {
            None => {
                let reps: Vec<u64> = item
                    .levels
                    .iter()
                    .map(|l| l.repetition.known().expect("bounded item"))
                    .collect();
                let mut values = Vec::new();
                for indices in combos(&reps) {
                    values.push(read_field(&source, idx, item, &indices, &mut consumed)?);
                }
                columns.push(FieldColumn {
                    item_index: idx,
                    values,
                });
            }
            Some(scope_path) => {
                let (gi, _) = groups
                    .iter()
                    .enumerate()
                    .find(|(_, g)| g.scope == scope_path)
                    .expect("scope collected");
                let count = groups[gi].count;
                for row in 0..count {
                    for indices in row_combos(item, row) {
                        let field = read_field(&source, idx, item, &indices, &mut consumed)?;
                        groups[gi].rows[row as usize].push(field);
                    }
                }
            }
        }
    }

    // Keep row cells in plan order rather than item-major fill order.
    for group in &mut groups {
        for row in &mut group.rows {
            row.sort_by_key(|f| f.item_index);
        }
    }

    let mut rs = RecordSet {
        columns,
        groups,
        issues: Vec::new(),
        consumed,
    };
    rs.issues = check_expected(&rs, seq).issues;
    Ok(rs)
}

fn read_field(
    source: &Source<'_>,
    idx: usize,
    item: &LinearItem,
    indices: &[u64],
    consumed: &mut u64,
) -> Result<Field> {
    let path = occurrence_path(item, indices);
    let pos = occurrence_position(item, indices);
    let (value, end) = read_occurrence(source, item, pos, &path)?;
    *consumed = (*consumed).max(end);
    Ok(Field {
        item_index: idx,
        path,
        name: item.name().to_string(),
        location: pos,
        value,
    })
}

// ---------------------------------------------------------------------------
// Random reading
// ---------------------------------------------------------------------------

/// Read only the selected occurrences, addressing them directly:
/// `position = start + (occurrence - 1) x interval` per level. No other
/// spans are touched.
pub fn read_random(data: &[u8], seq: &LinearSequence, sel: &Selection) -> Result<Vec<Field>> {
    let (idx, item) = seq
        .find(&sel.path)
        .ok_or_else(|| DfmlError::Selection(format!("path {:?} not found in the plan", sel.path)))?;
    let source = Source::new(data, seq.mode)?;
    let open_pos = item
        .levels
        .iter()
        .position(|l| l.repetition == Extent::Open);

    let reps_with = |open_count: u64| -> Vec<u64> {
        item.levels
            .iter()
            .enumerate()
            .map(|(i, l)| match l.repetition {
                Extent::Count(n) => n,
                Extent::Open => {
                    debug_assert_eq!(Some(i), open_pos);
                    open_count
                }
            })
            .collect()
    };

    let mut consumed = 0u64;
    match sel.occurrence {
        Occurrence::All => {
            let open_count = match open_pos {
                None => 0,
                Some(_) => open_occurrences(&source, item)?,
            };
            OwnedCombos::new(reps_with(open_count))
                .map(|indices| read_field(&source, idx, item, &indices, &mut consumed))
                .collect()
        }
        Occurrence::Index(k) => {
            let indices = match open_pos {
                None => {
                    let reps = reps_with(0);
                    let total: u64 = reps.iter().product::<u64>().max(1);
                    if k > total {
                        return Err(DfmlError::Selection(format!(
                            "occurrence {k} exceeds the {total} occurrence(s) of {:?}",
                            sel.path
                        )));
                    }
                    unrank(k - 1, &reps)
                }
                Some(_) => {
                    // Bounded by end of data, checked on the actual read.
                    let open_count = open_occurrences(&source, item)?;
                    let reps = reps_with(open_count.max(k));
                    let indices = unrank(k - 1, &reps);
                    let pos = occurrence_position(item, &indices);
                    if !fits(&source, item, pos) {
                        return Err(DfmlError::read(
                            occurrence_path(item, &indices),
                            format!("occurrence {k} is beyond end of data"),
                        ));
                    }
                    indices
                }
            };
            Ok(vec![read_field(&source, idx, item, &indices, &mut consumed)?])
        }
    }
}

/// How many occurrences of this item's open level the data holds,
/// ignoring any trailing partial record.
fn open_occurrences(source: &Source<'_>, item: &LinearItem) -> Result<u64> {
    let level = item
        .levels
        .iter()
        .find(|l| l.repetition == Extent::Open)
        .expect("caller checked");
    match (item.start, level.stride) {
        (Position::Byte(start), Stride::Bytes(interval)) => {
            let len = item.length.known().unwrap_or(0);
            let data_len = source.data.len() as u64;
            if start + len > data_len {
                return Ok(0);
            }
            Ok((data_len - start - len) / interval + 1)
        }
        (Position::Char { line, .. }, Stride::Lines(interval)) => {
            let total = source.lines.len() as u64;
            if line > total {
                return Ok(0);
            }
            Ok((total - line) / interval + 1)
        }
        _ => Ok(0),
    }
}

fn fits(source: &Source<'_>, item: &LinearItem, pos: Position) -> bool {
    match pos {
        Position::Byte(offset) => {
            let len = item.length.known().unwrap_or(0);
            offset + len <= source.data.len() as u64
        }
        Position::Char { line, .. } => line <= source.lines.len() as u64,
    }
}

/// Mixed-radix decomposition of a flat occurrence rank, last level
/// fastest.
fn unrank(mut rank: u64, reps: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; reps.len()];
    for (i, &rep) in reps.iter().enumerate().rev() {
        let rep = rep.max(1);
        out[i] = rank % rep;
        rank /= rep;
    }
    out
}

// ---------------------------------------------------------------------------
// Expected-value checking
// ---------------------------------------------------------------------------

/// Compare every extracted value against its item's expected constant.
pub fn check_expected(rs: &RecordSet, seq: &LinearSequence) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut check = |field: &Field| {
        let item = &seq.items[field.item_index];
        let Some(expected) = &item.expected else { return };
        if !matches_expected(expected, &field.value) {
            report.push(Issue::error(
                &field.path,
                format!("expected {expected}, found {}", field.value),
            ));
        }
    };
    for column in &rs.columns {
        column.values.iter().for_each(&mut check);
    }
    for group in &rs.groups {
        for row in &group.rows {
            row.iter().for_each(&mut check);
        }
    }
    report
}

fn matches_expected(expected: &crate::linearize::Expected, value: &Value) -> bool {
    use crate::linearize::Expected;
    match (expected, value) {
        (Expected::Int(e), Value::Int(v)) => e == v,
        (Expected::Float(e), Value::Float(v)) => e == v,
        (Expected::Text(e), Value::Text(v)) => text_matches(e, v),
        _ => false,
    }
}

/// A text constant matches exactly, or as a fill: a span holding the
/// constant repeated end to end (the `=` ruler rows of fixed-width
/// tables).
fn text_matches(expected: &str, got: &str) -> bool {
    if expected == got {
        return true;
    }
    if expected.is_empty() || got.is_empty() {
        return false;
    }
    got.len().is_multiple_of(expected.len())
        && got.as_bytes().chunks(expected.len()).all(|c| c == expected.as_bytes())
}
