//! Ground-truth builders for the two shipped corpus formats.
//!
//! The builders write files directly with `std` byte conversions and
//! string layout, independent of the decoding path, so reading back
//! what they produce is a real round-trip check.

use crate::error::{DfmlError, Result};

/// Format description of an ESRI point shapefile main file (.shp),
/// normalized to half-open spans.
pub const SHAPEFILE_POINT_DFML: &str = include_str!("../corpus/esri_point.dfml");

/// Format description of the `[SUBCATCHMENTS]` section of a SWMM .inp
/// input file.
pub const SWMM_SUBCATCHMENTS_DFML: &str = include_str!("../corpus/swmm_subcatchments.dfml");

const HEADER_LEN: usize = 100;
const RECORD_LEN: usize = 28;
/// Record content past the 8-byte record header, in 16-bit words.
const CONTENT_LEN_WORDS: i32 = 10;
const FILE_CODE: i32 = 9994;
const VERSION: i32 = 1000;
const SHAPE_TYPE_POINT: i32 = 1;

/// One point record of the shapefile fixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointRecordSpec {
    pub record_number: i32,
    pub x: f64,
    pub y: f64,
}

/// Build a point shapefile main file: the 100-byte header followed by
/// one 28-byte record per point (total `100 + 28n` bytes). The bounding
/// box covers the points; an empty file keeps it all zeros.
pub fn build_point_shapefile(points: &[PointRecordSpec]) -> Vec<u8> {
    let total = HEADER_LEN + RECORD_LEN * points.len();
    let mut out = Vec::with_capacity(total);

    out.extend_from_slice(&FILE_CODE.to_be_bytes());
    for _ in 0..5 {
        out.extend_from_slice(&0i32.to_be_bytes());
    }
    // File length is expressed in 16-bit words.
    out.extend_from_slice(&((total / 2) as i32).to_be_bytes());
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&SHAPE_TYPE_POINT.to_le_bytes());

    let (x_min, y_min, x_max, y_max) = if points.is_empty() {
        (0.0, 0.0, 0.0, 0.0)
    } else {
        points.iter().fold(
            (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
            |(xn, yn, xx, yx), p| (xn.min(p.x), yn.min(p.y), xx.max(p.x), yx.max(p.y)),
        )
    };
    for bound in [x_min, y_min, x_max, y_max, 0.0, 0.0, 0.0, 0.0] {
        out.extend_from_slice(&bound.to_le_bytes());
    }
    debug_assert_eq!(out.len(), HEADER_LEN);

    for point in points {
        out.extend_from_slice(&point.record_number.to_be_bytes());
        out.extend_from_slice(&CONTENT_LEN_WORDS.to_be_bytes());
        out.extend_from_slice(&SHAPE_TYPE_POINT.to_le_bytes());
        out.extend_from_slice(&point.x.to_le_bytes());
        out.extend_from_slice(&point.y.to_le_bytes());
    }
    out
}

/// Row width of the subcatchments table, columns 0..=92.
const SWMM_WIDTH: usize = 93;

/// Content column spans, half-open.
const SWMM_COLUMNS: [(usize, usize); 9] = [
    (0, 10),  // Name
    (10, 23), // Rgage
    (23, 34), // OutID
    (34, 43), // Area
    (43, 55), // %Imperv
    (55, 65), // Width
    (65, 75), // Slope
    (75, 87), // Clength
    (87, 93), // Spack
];

const SWMM_HEADER_FIELDS: [(&str, usize, usize); 9] = [
    ("Name", 2, 6),
    ("Rgage", 10, 18),
    ("OutID", 23, 29),
    ("Area", 34, 38),
    ("%Imperv", 43, 50),
    ("Width", 55, 60),
    ("Slope", 65, 70),
    ("Clength", 75, 82),
    ("Spack", 87, 92),
];

/// Build a `[SUBCATCHMENTS]` section: the keyword line, the annotated
/// header, the `=` ruler, then one fixed-width line per row. Fields are
/// left-aligned and space-padded inside their column spans; each line is
/// right-trimmed.
pub fn build_swmm_subcatchments<S: AsRef<str>>(rows: &[[S; 9]]) -> Result<String> {
    let mut lines = Vec::with_capacity(3 + rows.len());
    lines.push("[SUBCATCHMENTS]".to_string());

    let mut header = vec![' '; SWMM_WIDTH];
    header[0] = ';';
    header[1] = ';';
    for (text, start, end) in SWMM_HEADER_FIELDS {
        place(&mut header, text, start, end)?;
    }
    lines.push(trimmed(&header));

    let mut ruler = vec!['='; SWMM_WIDTH];
    ruler[0] = ';';
    ruler[1] = ';';
    lines.push(trimmed(&ruler));

    for (row_index, row) in rows.iter().enumerate() {
        let mut line = vec![' '; SWMM_WIDTH];
        for (field, (start, end)) in row.iter().zip(SWMM_COLUMNS) {
            place(&mut line, field.as_ref(), start, end).map_err(|e| {
                DfmlError::invalid("row", format!("row {}: {e}", row_index + 1))
            })?;
        }
        lines.push(trimmed(&line));
    }

    let mut out = lines.join("\n");
    out.push('\n');
    Ok(out)
}

fn place(canvas: &mut [char], text: &str, start: usize, end: usize) -> Result<()> {
    let width = end - start;
    let chars: Vec<char> = text.chars().collect();
    if chars.len() > width {
        return Err(DfmlError::invalid(
            "field",
            format!("{text:?} is {} characters, wider than its {width}-character column", chars.len()),
        ));
    }
    canvas[start..start + chars.len()].copy_from_slice(&chars);
    Ok(())
}

fn trimmed(canvas: &[char]) -> String {
    let s: String = canvas.iter().collect();
    s.trim_end().to_string()
}
