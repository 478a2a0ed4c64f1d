//! Rust emission target: standalone programs built with a bare `rustc`.

use crate::error::{DfmlError, Result};
use crate::linearize::{Extent, LinearItem, LinearSequence, Payload, Position, Stride};
use crate::model::{ByteOrder, Mode, PrimitiveType};
use crate::read::{Occurrence, Selection};

use super::{ScaffoldPlan, Section, SectionKind};

const HELPERS_SPLICE: &str = "{{reader_helpers}}";
const BODY_SPLICE: &str = "{{reader_body}}";

pub(super) fn scaffold() -> ScaffoldPlan {
    let sections = vec![
        Section {
            kind: SectionKind::Imports,
            content: "use std::env;\nuse std::fs;\nuse std::process::exit;\n".into(),
        },
        Section {
            kind: SectionKind::ContainerDecl,
            content: "/// Collected output lines, one per extracted value.\nstruct Output {\n    lines: Vec<String>,\n}\n".into(),
        },
        Section {
            kind: SectionKind::EntryPoint,
            content: r#"fn main() {
    let args: Vec<String> = env::args().collect();
    if args.len() != 2 {
        eprintln!("usage: {} <data-file>", args[0]);
        exit(2);
    }
    let data = match fs::read(&args[1]) {
        Ok(bytes) => bytes,
        Err(err) => {
            eprintln!("error: cannot read {}: {}", args[1], err);
            exit(1);
        }
    };
    match read_data(&data) {
        Ok(output) => write_output(&output),
        Err(message) => {
            eprintln!("error: {}", message);
            exit(1);
        }
    }
}
"#
            .into(),
        },
        Section {
            kind: SectionKind::ReaderRoutine,
            content: format!(
                "{HELPERS_SPLICE}fn read_data(data: &[u8]) -> Result<Output, String> {{\n    let mut out = Output {{ lines: Vec::new() }};\n{BODY_SPLICE}    Ok(out)\n}}\n"
            ),
        },
        Section {
            kind: SectionKind::OutputRoutine,
            content: "fn write_output(output: &Output) {\n    for line in &output.lines {\n        println!(\"{}\", line);\n    }\n}\n".into(),
        },
    ];
    ScaffoldPlan {
        target: super::RUST_TARGET.into(),
        sections,
    }
}

const TAKE_HELPER: &str = r#"fn take<'a>(data: &'a [u8], at: usize, len: usize, what: &str) -> Result<&'a [u8], String> {
    if at.checked_add(len).map_or(true, |end| end > data.len()) {
        return Err(format!(
            "premature end of file at {}: need {} bytes at offset {}, file has {}",
            what, len, at, data.len()
        ));
    }
    Ok(&data[at..at + len])
}

"#;

const LINE_AT_HELPER: &str = r#"fn line_at<'a>(lines: &[&'a str], number: usize, what: &str) -> Result<&'a str, String> {
    if number == 0 || number > lines.len() {
        return Err(format!(
            "premature end of file at {}: line {} of {} available",
            what, number, lines.len()
        ));
    }
    Ok(lines[number - 1])
}

"#;

const COL_SPAN_HELPER: &str = r#"fn col_span(line: &str, start: usize, len: Option<usize>, what: &str) -> Result<String, String> {
    let chars: Vec<char> = line.chars().collect();
    if start > chars.len() {
        return Err(format!(
            "line has {} characters, field {} starts at column {}",
            chars.len(), what, start
        ));
    }
    let stop = match len {
        Some(n) => (start + n).min(chars.len()),
        None => chars.len(),
    };
    Ok(chars[start..stop].iter().collect())
}

"#;

const PARSE_FLOAT_HELPER: &str = r#"fn parse_float(raw: &str, what: &str) -> Result<f64, String> {
    let trimmed = raw.trim();
    trimmed
        .parse::<f64>()
        .map_err(|_| format!("field {}: {:?} is not numeric", what, trimmed))
}

"#;

const PARSE_INT_HELPER: &str = r#"fn parse_int(raw: &str, what: &str) -> Result<i64, String> {
    let trimmed = raw.trim();
    trimmed
        .parse::<i64>()
        .map_err(|_| format!("field {}: {:?} is not an integer", what, trimmed))
}

"#;

const CHAR_PREAMBLE: &str = r#"    let text = match std::str::from_utf8(data) {
        Ok(text) => text,
        Err(_) => return Err("data is not valid UTF-8 text".to_string()),
    };
    let lines: Vec<&str> = text.lines().collect();
"#;

/// Escape literal text for embedding inside a `format!` template string:
/// Rust string escapes plus doubled braces.
fn fmt_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '{' => out.push_str("{{"),
            '}' => out.push_str("}}"),
            _ => out.push(ch),
        }
    }
    out
}

/// A Rust string literal holding `text`.
fn str_lit(text: &str) -> String {
    format!("{text:?}")
}

/// Build the `format!` template for an item's output line plus the
/// occurrence variables it interpolates, in template order. Bounded
/// occurrence indices known at generation time may be pinned literally.
/// Also returns the raw line text for the interpolation-free case.
fn line_template(item: &LinearItem, pinned: Option<&[u64]>) -> (String, String, Vec<String>) {
    let mut template = String::new();
    let mut raw = String::new();
    let mut args = Vec::new();
    let push_text = |template: &mut String, raw: &mut String, text: &str| {
        template.push_str(&fmt_escape(text));
        raw.push_str(text);
    };
    for (si, segment) in item.segments.iter().enumerate() {
        if si > 0 {
            push_text(&mut template, &mut raw, "/");
        }
        push_text(&mut template, &mut raw, segment);
        for (li, level) in item.levels.iter().enumerate() {
            if level.seg_index == si {
                match pinned {
                    Some(indices) => {
                        push_text(&mut template, &mut raw, &format!("[{}]", indices[li] + 1))
                    }
                    None => {
                        template.push_str("[{}]");
                        args.push(occ_var(li));
                    }
                }
            }
        }
    }
    push_text(&mut template, &mut raw, " = ");
    match item.payload {
        Payload::Sep(sep) => push_text(&mut template, &mut raw, sep.mark()),
        Payload::Data(_) => {
            template.push_str("{}");
            args.push("v".into());
        }
    }
    (template, raw, args)
}

fn occ_var(level: usize) -> String {
    format!("occ_{level}")
}

fn push_line_stmt(item: &LinearItem, pinned: Option<&[u64]>, indent: &str) -> String {
    let (template, raw, args) = line_template(item, pinned);
    if args.is_empty() {
        return format!("{indent}out.lines.push({}.to_string());\n", str_lit(&raw));
    }
    let mut stmt = format!("{indent}out.lines.push(format!(\"{template}\"");
    for arg in args {
        stmt.push_str(", ");
        stmt.push_str(&arg);
    }
    stmt.push_str("));\n");
    stmt
}

/// The statements that bind `v` for one occurrence read, byte mode.
/// `pos` is a Rust expression for the occurrence's byte offset.
fn byte_read_stmts(item: &LinearItem, pos: &str, indent: &str) -> String {
    let path = str_lit(&item.path_string());
    let order = item.byte_order.unwrap_or(ByteOrder::LittleEndian);
    let conv = match order {
        ByteOrder::BigEndian => "from_be_bytes",
        ByteOrder::LittleEndian => "from_le_bytes",
    };
    let fixed = |n: usize, expr: &str| {
        let bytes = (0..n).map(|i| format!("b[{i}]")).collect::<Vec<_>>().join(", ");
        format!(
            "{indent}let b = take(data, {pos}, {n}, {path})?;\n{indent}let v = {};\n",
            expr.replace("{BYTES}", &bytes)
        )
    };
    match item.payload {
        Payload::Sep(_) => format!("{indent}let _ = take(data, {pos}, 1, {path})?;\n"),
        Payload::Data(dtype) => match dtype {
            PrimitiveType::Byte => fixed(1, "b[0] as i8 as i64"),
            PrimitiveType::Short => fixed(2, &format!("i16::{conv}([{{BYTES}}]) as i64")),
            PrimitiveType::Integer => fixed(4, &format!("i32::{conv}([{{BYTES}}]) as i64")),
            PrimitiveType::Long => fixed(8, &format!("i64::{conv}([{{BYTES}}])")),
            PrimitiveType::Float => fixed(4, &format!("f32::{conv}([{{BYTES}}]) as f64")),
            PrimitiveType::Double => fixed(8, &format!("f64::{conv}([{{BYTES}}])")),
            PrimitiveType::Char => format!(
                "{indent}let b = take(data, {pos}, 1, {path})?;\n\
                 {indent}if !b[0].is_ascii() {{\n\
                 {indent}    return Err(format!(\"field {{}}: byte is not ASCII\", {path}));\n\
                 {indent}}}\n\
                 {indent}let v = (b[0] as char).to_string();\n"
            ),
            PrimitiveType::String => {
                let len_expr = match item.length {
                    Extent::Count(n) => n.to_string(),
                    Extent::Open => format!("data.len().saturating_sub({pos})"),
                };
                format!(
                    "{indent}let b = take(data, {pos}, {len_expr}, {path})?;\n\
                     {indent}let v = match std::str::from_utf8(b) {{\n\
                     {indent}    Ok(s) => s.to_string(),\n\
                     {indent}    Err(_) => return Err(format!(\"field {{}}: bytes are not valid UTF-8\", {path})),\n\
                     {indent}}};\n"
                )
            }
        },
    }
}

/// The statements that bind `v` for one occurrence read, char mode.
/// `line` is a Rust expression for the occurrence's 1-based line.
fn char_read_stmts(item: &LinearItem, line: &str, col: &str, indent: &str) -> String {
    let path = str_lit(&item.path_string());
    if item.is_line_terminator() {
        return format!(
            "{indent}if {line} > lines.len() {{\n\
             {indent}    return Err(format!(\"premature end of file at {{}}: line {{}} of {{}} available\", {path}, {line}, lines.len()));\n\
             {indent}}}\n"
        );
    }
    if matches!(item.payload, Payload::Sep(_)) {
        return format!("{indent}let _ = line_at(&lines, {line}, {path})?;\n");
    }
    let len_expr = match item.length {
        Extent::Count(n) => format!("Some({n})"),
        Extent::Open => "None".to_string(),
    };
    let extract = format!(
        "{indent}let raw = col_span(line_at(&lines, {line}, {path})?, {col}, {len_expr}, {path})?;\n"
    );
    let Payload::Data(dtype) = item.payload else { unreachable!() };
    let bind = match dtype {
        PrimitiveType::String | PrimitiveType::Char => {
            format!("{indent}let v = raw.trim_end().to_string();\n")
        }
        PrimitiveType::Float | PrimitiveType::Double => {
            format!("{indent}let v = parse_float(&raw, {path})?;\n")
        }
        _ => format!("{indent}let v = parse_int(&raw, {path})?;\n"),
    };
    format!("{extract}{bind}")
}

/// Wrap per-occurrence statements in the item's repetition loops.
/// `open_count` names the record-count variable of the item's open
/// level, when it has one.
fn emit_item_block(
    item: &LinearItem,
    open_count: Option<&str>,
    body_of: impl Fn(&str, &str, &str) -> String,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("    // {}\n    {{\n", item.path_string()));
    let mut indent = String::from("        ");

    // Position expressions threaded through the loop nest.
    let (mut line_expr, mut col_expr) = match item.start {
        Position::Byte(b) => (b.to_string(), String::new()),
        Position::Char { line, col } => (line.to_string(), col.to_string()),
    };

    for (li, level) in item.levels.iter().enumerate() {
        let rep_expr = match level.repetition {
            Extent::Count(n) => format!("{n}u64"),
            Extent::Open => open_count.expect("open level implies a count variable").to_string(),
        };
        let var = match level.stride {
            Stride::Bytes(_) => format!("pos_{li}"),
            Stride::Lines(_) => format!("ln_{li}"),
            Stride::Cols(_) => format!("col_{li}"),
        };
        let init = match level.stride {
            Stride::Bytes(_) | Stride::Lines(_) => line_expr.clone(),
            Stride::Cols(_) => col_expr.clone(),
        };
        out.push_str(&format!("{indent}let mut {var}: usize = {init};\n"));
        out.push_str(&format!("{indent}for {} in 1..={rep_expr} {{\n", occ_var(li)));
        match level.stride {
            Stride::Bytes(_) | Stride::Lines(_) => line_expr = var.clone(),
            Stride::Cols(_) => col_expr = var.clone(),
        }
        indent.push_str("    ");
    }

    out.push_str(&body_of(&line_expr, &col_expr, &indent));

    for (li, level) in item.levels.iter().enumerate().rev() {
        let (var, stride) = match level.stride {
            Stride::Bytes(s) => (format!("pos_{li}"), s),
            Stride::Lines(s) => (format!("ln_{li}"), s),
            Stride::Cols(s) => (format!("col_{li}"), s),
        };
        out.push_str(&format!("{indent}{var} += {stride};\n"));
        indent.truncate(indent.len() - 4);
        out.push_str(&format!("{indent}}}\n"));
    }

    out.push_str("    }\n");
    out
}

/// Record-count prologue for one open scope.
fn emit_scope_prologue(
    seq: &LinearSequence,
    scope_items: &[&LinearItem],
    ordinal: usize,
) -> Result<String> {
    let first = scope_items[0];
    let level = first.open_level().expect("scope items have an open level");
    let count = format!("count_{ordinal}");
    let scope_name = str_lit(&first.record_scope().unwrap_or_default());
    let base = scope_items
        .iter()
        .map(|i| i.start)
        .min()
        .expect("non-empty scope");

    let mut out = String::new();
    match (base, level.stride, seq.mode) {
        (Position::Byte(base), Stride::Bytes(interval), Mode::Byte) => {
            out.push_str(&format!(
                "    // records: {}\n",
                first.record_scope().unwrap_or_default()
            ));
            out.push_str(&format!(
                "    if data.len() < {base} {{\n        return Err(format!(\"premature end of file: records at {{}} start at byte {base}, file has {{}}\", {scope_name}, data.len()));\n    }}\n"
            ));
            out.push_str(&format!("    let avail_{ordinal} = data.len() - {base};\n"));
            out.push_str(&format!(
                "    let {count}: u64 = (avail_{ordinal} / {interval}) as u64;\n"
            ));
            out.push_str(&format!(
                "    let rem_{ordinal} = avail_{ordinal} % {interval};\n"
            ));
            out.push_str(&format!("    if rem_{ordinal} != 0 {{\n"));
            // Which item does the trailing partial record cut short? The
            // last one always catches whatever earlier arms did not.
            let mut cuts = Vec::new();
            for item in scope_items {
                let rel = match item.start {
                    Position::Byte(s) => s - base,
                    _ => unreachable!(),
                };
                let len = item.length.known().ok_or_else(|| {
                    DfmlError::UnsupportedLayout(format!(
                        "{} has an open length inside records",
                        item.path_string()
                    ))
                })?;
                cuts.push((rel + len, str_lit(&item.path_string())));
            }
            let (_, last) = cuts.pop().expect("scopes are non-empty");
            out.push_str("        let failing = ");
            for (end, path) in &cuts {
                out.push_str(&format!(
                    "if rem_{ordinal} < {end} {{\n            {path}\n        }} else "
                ));
            }
            out.push_str(&format!("{{\n            {last}\n        }};\n"));
            out.push_str(&format!(
                "        return Err(format!(\"truncated record {{}} at {{}}: {{}} trailing bytes\", {count} + 1, failing, rem_{ordinal}));\n    }}\n"
            ));
        }
        (Position::Char { line, .. }, Stride::Lines(interval), Mode::Char) => {
            out.push_str(&format!(
                "    // records: {}\n",
                first.record_scope().unwrap_or_default()
            ));
            out.push_str(&format!(
                "    let avail_{ordinal} = if lines.len() + 1 > {line} {{ lines.len() + 1 - {line} }} else {{ 0 }};\n"
            ));
            out.push_str(&format!(
                "    let {count}: u64 = (avail_{ordinal} / {interval}) as u64;\n"
            ));
            if interval > 1 {
                out.push_str(&format!(
                    "    let rem_{ordinal} = avail_{ordinal} % {interval};\n"
                ));
                let mut cuts = Vec::new();
                for item in scope_items {
                    let rel = match item.start {
                        Position::Char { line: l, .. } => l - line,
                        _ => unreachable!(),
                    };
                    cuts.push((rel, str_lit(&item.path_string())));
                }
                let (_, last) = cuts.pop().expect("scopes are non-empty");
                out.push_str(&format!("    if rem_{ordinal} != 0 {{\n"));
                out.push_str("        let failing = ");
                for (rel, path) in &cuts {
                    out.push_str(&format!(
                        "if rem_{ordinal} <= {rel} {{\n            {path}\n        }} else "
                    ));
                }
                out.push_str(&format!("{{\n            {last}\n        }};\n"));
                out.push_str(&format!(
                    "        return Err(format!(\"truncated record {{}} at {{}}: {{}} trailing lines\", {count} + 1, failing, rem_{ordinal}));\n    }}\n"
                ));
            }
        }
        _ => {
            return Err(DfmlError::UnsupportedLayout(
                "records with sub-line repetition cannot be emitted".into(),
            ))
        }
    }
    Ok(out)
}

fn item_body<'a>(
    mode: Mode,
    item: &'a LinearItem,
    pinned: Option<&[u64]>,
) -> impl Fn(&str, &str, &str) -> String + 'a {
    let pinned: Option<Vec<u64>> = pinned.map(|p| p.to_vec());
    move |line_expr: &str, col_expr: &str, indent: &str| {
        let mut body = match mode {
            Mode::Byte => byte_read_stmts(item, line_expr, indent),
            Mode::Char => char_read_stmts(item, line_expr, col_expr, indent),
        };
        body.push_str(&push_line_stmt(item, pinned.as_deref(), indent));
        body
    }
}

pub(super) fn emit_sequential(seq: &LinearSequence) -> Result<String> {
    let mut body = String::new();
    if seq.mode == Mode::Char && !seq.items.is_empty() {
        body.push_str(CHAR_PREAMBLE);
    }

    let mut emitted_scopes: Vec<String> = Vec::new();
    for item in &seq.items {
        let scope = item.record_scope();
        let count_var = match &scope {
            None => None,
            Some(path) => {
                let ordinal = match emitted_scopes.iter().position(|s| s == path) {
                    Some(i) => i,
                    None => {
                        let ordinal = emitted_scopes.len();
                        let members: Vec<&LinearItem> = seq
                            .items
                            .iter()
                            .filter(|i| i.record_scope().as_deref() == Some(path))
                            .collect();
                        body.push_str(&emit_scope_prologue(seq, &members, ordinal)?);
                        emitted_scopes.push(path.clone());
                        ordinal
                    }
                };
                Some(format!("count_{ordinal}"))
            }
        };
        body.push_str(&emit_item_block(
            item,
            count_var.as_deref(),
            item_body(seq.mode, item, None),
        ));
    }

    Ok(assemble(seq, &body))
}

pub(super) fn emit_random(seq: &LinearSequence, selection: &Selection) -> Result<String> {
    let (_, item) = seq.find(&selection.path).ok_or_else(|| {
        DfmlError::Selection(format!("path {:?} not found in the plan", selection.path))
    })?;

    let mut body = String::new();
    if seq.mode == Mode::Char {
        body.push_str(CHAR_PREAMBLE);
    }

    match selection.occurrence {
        Occurrence::All => {
            let count_var = match item.open_level() {
                None => None,
                Some(level) => {
                    body.push_str(&emit_fit_count(seq.mode, item, level.stride)?);
                    Some("count_0".to_string())
                }
            };
            body.push_str(&emit_item_block(
                item,
                count_var.as_deref(),
                item_body(seq.mode, item, None),
            ));
        }
        Occurrence::Index(k) => {
            let indices = resolve_occurrence(item, k)?;
            let pos = resolved_position(item, &indices);
            if item.open_level().is_some() {
                body.push_str(&emit_bound_check(seq.mode, item, pos, k)?);
            }
            body.push_str(&format!("    // {}\n    {{\n", item.path_string()));
            let (line_expr, col_expr) = match pos {
                Position::Byte(b) => (b.to_string(), String::new()),
                Position::Char { line, col } => (line.to_string(), col.to_string()),
            };
            let stmts = match seq.mode {
                Mode::Byte => byte_read_stmts(item, &line_expr, "        "),
                Mode::Char => char_read_stmts(item, &line_expr, &col_expr, "        "),
            };
            body.push_str(&stmts);
            body.push_str(&push_line_stmt(item, Some(&indices), "        "));
            body.push_str("    }\n");
        }
    }

    Ok(assemble(seq, &body))
}

/// Occurrence count of a single item against end of data, mirroring the
/// direct random reader: how many strides fit.
fn emit_fit_count(mode: Mode, item: &LinearItem, stride: Stride) -> Result<String> {
    match (item.start, stride, mode) {
        (Position::Byte(start), Stride::Bytes(interval), Mode::Byte) => {
            let len = item.length.known().unwrap_or(0);
            Ok(format!(
                "    let count_0: u64 = if data.len() >= {end} {{ ((data.len() - {end}) / {interval}) as u64 + 1 }} else {{ 0 }};\n",
                end = start + len
            ))
        }
        (Position::Char { line, .. }, Stride::Lines(interval), Mode::Char) => Ok(format!(
            "    let count_0: u64 = if lines.len() >= {line} {{ ((lines.len() - {line}) / {interval}) as u64 + 1 }} else {{ 0 }};\n"
        )),
        _ => Err(DfmlError::UnsupportedLayout(
            "sub-line repetition cannot be emitted".into(),
        )),
    }
}

fn emit_bound_check(mode: Mode, item: &LinearItem, pos: Position, k: u64) -> Result<String> {
    let path = str_lit(&item.path_string());
    match (pos, mode) {
        (Position::Byte(offset), Mode::Byte) => {
            let end = offset + item.length.known().unwrap_or(0);
            Ok(format!(
                "    if data.len() < {end} {{\n        return Err(format!(\"occurrence {k} of {{}} is beyond end of data\", {path}));\n    }}\n"
            ))
        }
        (Position::Char { line, .. }, Mode::Char) => Ok(format!(
            "    if lines.len() < {line} {{\n        return Err(format!(\"occurrence {k} of {{}} is beyond end of data\", {path}));\n    }}\n"
        )),
        _ => unreachable!(),
    }
}

/// Map a flat 1-based occurrence rank onto per-level indices; bounded
/// totals are enforced here, open levels at run time.
fn resolve_occurrence(item: &LinearItem, k: u64) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(DfmlError::Selection("occurrences are 1-based".into()));
    }
    let mut rank = k - 1;
    let mut indices = vec![0u64; item.levels.len()];
    for (i, level) in item.levels.iter().enumerate().rev() {
        match level.repetition {
            Extent::Count(n) => {
                indices[i] = rank % n;
                rank /= n;
            }
            Extent::Open => {
                indices[i] = rank;
                rank = 0;
            }
        }
    }
    if rank != 0 {
        let total: u64 = item
            .levels
            .iter()
            .filter_map(|l| l.repetition.known())
            .product();
        return Err(DfmlError::Selection(format!(
            "occurrence {k} exceeds the {} occurrence(s) of {:?}",
            total.max(1),
            item.path_string()
        )));
    }
    Ok(indices)
}

fn resolved_position(item: &LinearItem, indices: &[u64]) -> Position {
    let mut pos = item.start;
    for (level, &k) in item.levels.iter().zip(indices) {
        pos = match (pos, level.stride) {
            (Position::Byte(b), Stride::Bytes(s)) => Position::Byte(b + k * s),
            (Position::Char { line, col }, Stride::Lines(s)) => {
                Position::Char { line: line + k * s, col }
            }
            (Position::Char { line, col }, Stride::Cols(s)) => {
                Position::Char { line, col: col + k * s }
            }
            _ => unreachable!(),
        };
    }
    pos
}

fn assemble(seq: &LinearSequence, body: &str) -> String {
    let _ = seq.mode;
    let mut helpers = String::new();
    for (name, text) in [
        ("take(", TAKE_HELPER),
        ("line_at(", LINE_AT_HELPER),
        ("col_span(", COL_SPAN_HELPER),
        ("parse_float(", PARSE_FLOAT_HELPER),
        ("parse_int(", PARSE_INT_HELPER),
    ] {
        if body.contains(name) {
            helpers.push_str(text);
        }
    }
    let mut source = format!(
        "// Reader for {:?} ({}), emitted from its format description.\n// Usage: pass the data file path as the single argument; values print\n// to standard output, one `path = value` line each.\n\n",
        seq.name, seq.namespace
    );
    for section in scaffold().sections {
        let content = section
            .content
            .replace(HELPERS_SPLICE, &helpers)
            .replace(BODY_SPLICE, body);
        source.push_str(&content);
        source.push('\n');
    }
    source
}
