//! Property tests over the model, plan, decoders, and fixture builders.

use proptest::prelude::*;

use dfml::fixtures::{build_point_shapefile, build_swmm_subcatchments, PointRecordSpec};
use dfml::linearize::{linearize, Position};
use dfml::model::{
    parse_document, to_xml, validate_document, ByteEnd, ByteOrder, CharEnd, CharPos,
    DfmlDocument, FormatNode, Location, Mode, NodeKind, PrimitiveType, RepeatCount,
    SeparatorType,
};
use dfml::read::{decode_primitive, encode_primitive, read_sequential, Value};

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

fn arb_primitive() -> impl Strategy<Value = PrimitiveType> {
    prop_oneof![
        Just(PrimitiveType::Byte),
        Just(PrimitiveType::Short),
        Just(PrimitiveType::Integer),
        Just(PrimitiveType::Long),
        Just(PrimitiveType::Float),
        Just(PrimitiveType::Double),
        Just(PrimitiveType::String),
        Just(PrimitiveType::Char),
    ]
}

fn arb_separator() -> impl Strategy<Value = SeparatorType> {
    prop_oneof![
        Just(SeparatorType::Space),
        Just(SeparatorType::Tab),
        Just(SeparatorType::Cr),
        Just(SeparatorType::Lf),
        Just(SeparatorType::Comma),
        Just(SeparatorType::Semicolon),
    ]
}

/// Attribute text with the characters the serializer must escape.
fn arb_attr_text() -> impl Strategy<Value = String> {
    proptest::string::string_regex("[a-zA-Z0-9 <>&\"'_.-]{1,16}").unwrap()
}

fn arb_location(mode: Mode) -> BoxedStrategy<Location> {
    match mode {
        Mode::Byte => (0u64..512, 1u64..64, any::<bool>())
            .prop_map(|(start, len, open)| Location::Byte {
                start,
                end: if open { ByteEnd::Open } else { ByteEnd::At(start + len) },
            })
            .boxed(),
        Mode::Char => (0u64..40, 0u64..80, 1u64..20, 0u8..3)
            .prop_map(|(line, col, len, kind)| Location::Char {
                start: CharPos { line, col },
                end: match kind {
                    0 => CharEnd::At(CharPos { line, col: col + len }),
                    1 => CharEnd::LineEnd { line },
                    _ => CharEnd::Open,
                },
            })
            .boxed(),
    }
}

fn arb_leaf(mode: Mode) -> impl Strategy<Value = FormatNode> {
    let kind = prop_oneof![
        arb_primitive().prop_map(NodeKind::DataType),
        arb_separator().prop_map(NodeKind::Separator),
    ];
    (
        kind,
        proptest::option::of(arb_location(mode)),
        proptest::option::of(prop_oneof![
            (1u64..9).prop_map(RepeatCount::Count),
            Just(RepeatCount::Open)
        ]),
        proptest::option::of(prop_oneof![
            Just(ByteOrder::BigEndian),
            Just(ByteOrder::LittleEndian)
        ]),
        proptest::option::of(arb_attr_text()),
        proptest::option::of(arb_attr_text()),
    )
        .prop_map(|(kind, location, number, byte_order, value, description)| FormatNode {
            kind,
            location,
            number,
            byte_order,
            value,
            description,
            children: Vec::new(),
        })
}

fn arb_node(mode: Mode) -> impl Strategy<Value = FormatNode> {
    arb_leaf(mode).prop_recursive(2, 12, 4, move |inner| {
        (
            proptest::collection::vec(inner, 1..4),
            proptest::option::of(arb_location(mode)),
            proptest::option::of(arb_attr_text()),
        )
            .prop_map(|(children, location, description)| FormatNode {
                kind: NodeKind::Group,
                location,
                number: None,
                byte_order: None,
                value: None,
                description,
                children,
            })
    })
}

fn arb_document() -> impl Strategy<Value = DfmlDocument> {
    prop_oneof![Just(Mode::Byte), Just(Mode::Char)].prop_flat_map(|mode| {
        (
            arb_attr_text(),
            arb_attr_text(),
            proptest::option::of(arb_attr_text()),
            proptest::collection::vec(arb_node(mode), 0..5),
        )
            .prop_map(move |(name, namespace, description, children)| DfmlDocument {
                name,
                namespace,
                mode,
                description,
                children,
            })
    })
}

/// Fully specified, gapless byte-mode documents: leaves laid out
/// sequentially by intrinsic width, groups bounded by explicit counts.
fn arb_gapless_document() -> impl Strategy<Value = DfmlDocument> {
    let fixed_leaf = prop_oneof![
        Just(PrimitiveType::Byte),
        Just(PrimitiveType::Short),
        Just(PrimitiveType::Integer),
        Just(PrimitiveType::Long),
        Just(PrimitiveType::Float),
        Just(PrimitiveType::Double),
    ]
    .prop_map(|t| {
        let mut node = FormatNode::leaf(NodeKind::DataType(t));
        node.byte_order = Some(ByteOrder::LittleEndian);
        node
    });
    let group = (proptest::collection::vec(fixed_leaf.clone(), 1..4), 1u64..5).prop_map(
        |(children, n)| FormatNode {
            kind: NodeKind::Group,
            location: None,
            number: Some(RepeatCount::Count(n)),
            byte_order: None,
            value: None,
            description: None,
            children,
        },
    );
    proptest::collection::vec(prop_oneof![fixed_leaf, group], 1..6).prop_map(|children| {
        DfmlDocument {
            name: "gapless".into(),
            namespace: String::new(),
            mode: Mode::Byte,
            description: None,
            children,
        }
    })
}

// ---------------------------------------------------------------------------
// Model properties
// ---------------------------------------------------------------------------

proptest! {
    /// Re-serializing a parsed document and re-parsing it yields a
    /// structurally equal document.
    #[test]
    fn parse_serialize_identity(doc in arb_document()) {
        let xml = to_xml(&doc);
        let parsed = parse_document(&xml).unwrap_or_else(|e| panic!("{e}\n{xml}"));
        prop_assert_eq!(&parsed.document, &doc);
        let again = parse_document(&to_xml(&parsed.document)).unwrap();
        prop_assert_eq!(&again.document, &doc);
    }

    /// Depth-first leaf order always equals textual element order.
    #[test]
    fn document_order_preserved(doc in arb_document()) {
        let xml = to_xml(&doc);
        let parsed = parse_document(&xml).unwrap().document;
        let mut names = Vec::new();
        parsed.walk(|node, _| names.push(node.display_name().to_string()));
        let mut expected = Vec::new();
        doc.walk(|node, _| expected.push(node.display_name().to_string()));
        prop_assert_eq!(names, expected);
    }
}

// ---------------------------------------------------------------------------
// Plan properties
// ---------------------------------------------------------------------------

proptest! {
    /// Plans of valid documents are ordered by first-occurrence start,
    /// cover their span without gaps, and read back the exact byte
    /// budget.
    #[test]
    fn gapless_documents_cover_their_budget(doc in arb_gapless_document()) {
        let report = validate_document(&doc);
        prop_assert!(report.is_acceptable());
        let seq = linearize(&doc).expect("gapless documents flatten");

        // Ascending starts.
        let starts: Vec<Position> = seq.items.iter().map(|i| i.start).collect();
        let mut sorted = starts.clone();
        sorted.sort();
        prop_assert_eq!(&starts, &sorted);

        // Total bytes described = sum of length x total occurrences.
        let budget: u64 = seq
            .items
            .iter()
            .map(|i| i.length.known().unwrap() * i.total_occurrences().unwrap())
            .sum();

        let data = vec![0u8; budget as usize];
        let rs = read_sequential(&data, &seq).expect("zeroed data reads");
        prop_assert_eq!(rs.consumed, budget);
    }

    /// Byte-equal documents produce equal plans.
    #[test]
    fn linearize_is_deterministic(doc in arb_gapless_document()) {
        let xml = to_xml(&doc);
        let a = linearize(&parse_document(&xml).unwrap().document).unwrap();
        let b = linearize(&parse_document(&xml).unwrap().document).unwrap();
        prop_assert_eq!(a, b);
    }
}

// ---------------------------------------------------------------------------
// Decode properties
// ---------------------------------------------------------------------------

fn int_type_bounds(t: PrimitiveType) -> (i64, i64) {
    match t {
        PrimitiveType::Byte => (i8::MIN as i64, i8::MAX as i64),
        PrimitiveType::Short => (i16::MIN as i64, i16::MAX as i64),
        PrimitiveType::Integer => (i32::MIN as i64, i32::MAX as i64),
        PrimitiveType::Long => (i64::MIN, i64::MAX),
        _ => unreachable!(),
    }
}

proptest! {
    #[test]
    fn integer_decode_encode_roundtrip(
        raw in any::<i64>(),
        t in prop_oneof![
            Just(PrimitiveType::Byte),
            Just(PrimitiveType::Short),
            Just(PrimitiveType::Integer),
            Just(PrimitiveType::Long),
        ],
        big in any::<bool>(),
    ) {
        let (lo, hi) = int_type_bounds(t);
        let value = if t == PrimitiveType::Long {
            raw
        } else {
            lo + (raw.rem_euclid(hi - lo + 1))
        };
        let order = if big { ByteOrder::BigEndian } else { ByteOrder::LittleEndian };
        let bytes = encode_primitive(&Value::Int(value), t, order).unwrap();
        prop_assert_eq!(bytes.len() as u64, t.intrinsic_length().unwrap());
        let back = decode_primitive(&bytes, t, order).unwrap();
        prop_assert_eq!(back, Value::Int(value));
    }

    #[test]
    fn double_decode_encode_roundtrip(bits in any::<u64>(), big in any::<bool>()) {
        let value = f64::from_bits(bits);
        let order = if big { ByteOrder::BigEndian } else { ByteOrder::LittleEndian };
        let bytes = encode_primitive(&Value::Float(value), PrimitiveType::Double, order).unwrap();
        let Value::Float(back) = decode_primitive(&bytes, PrimitiveType::Double, order).unwrap()
        else { panic!() };
        prop_assert_eq!(back.to_bits(), value.to_bits());
    }

    #[test]
    fn float_decode_encode_roundtrip(bits in any::<u32>(), big in any::<bool>()) {
        // NaN payloads are not values of the float64 model.
        prop_assume!(!f32::from_bits(bits).is_nan());
        let value = f32::from_bits(bits) as f64;
        let order = if big { ByteOrder::BigEndian } else { ByteOrder::LittleEndian };
        let bytes = encode_primitive(&Value::Float(value), PrimitiveType::Float, order).unwrap();
        let Value::Float(back) = decode_primitive(&bytes, PrimitiveType::Float, order).unwrap()
        else { panic!() };
        prop_assert_eq!((back as f32).to_bits(), bits);
    }
}

// ---------------------------------------------------------------------------
// Builder/reader closure
// ---------------------------------------------------------------------------

fn shapefile_sequence() -> dfml::linearize::LinearSequence {
    linearize(
        &parse_document(dfml::fixtures::SHAPEFILE_POINT_DFML)
            .unwrap()
            .document,
    )
    .unwrap()
}

fn swmm_sequence() -> dfml::linearize::LinearSequence {
    linearize(
        &parse_document(dfml::fixtures::SWMM_SUBCATCHMENTS_DFML)
            .unwrap()
            .document,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Reading a built shapefile recovers every record bit for bit.
    #[test]
    fn shapefile_closure(
        coords in proptest::collection::vec(
            (any::<f64>(), any::<f64>()).prop_filter("finite", |(x, y)| x.is_finite() && y.is_finite()),
            0..12,
        )
    ) {
        let points: Vec<PointRecordSpec> = coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| PointRecordSpec { record_number: i as i32 + 1, x, y })
            .collect();
        let seq = shapefile_sequence();
        let data = build_point_shapefile(&points);
        prop_assert_eq!(data.len(), 100 + 28 * points.len());

        let rs = read_sequential(&data, &seq).unwrap();
        prop_assert!(rs.issues.is_empty());
        prop_assert_eq!(rs.groups[0].count as usize, points.len());
        for (i, point) in points.iter().enumerate() {
            let row = &rs.groups[0].rows[i];
            prop_assert_eq!(&row[0].value, &Value::Int(point.record_number as i64));
            let Value::Float(x) = row[3].value else { panic!() };
            let Value::Float(y) = row[4].value else { panic!() };
            prop_assert_eq!(x.to_bits(), point.x.to_bits());
            prop_assert_eq!(y.to_bits(), point.y.to_bits());
        }
    }

    /// Reading a built subcatchments section recovers every field after
    /// the fixed-width trim.
    #[test]
    fn swmm_closure(
        rows in proptest::collection::vec(
            (
                "[a-zA-Z][a-zA-Z0-9]{0,7}",
                "[a-zA-Z][a-zA-Z0-9]{0,7}",
                "[a-zA-Z][a-zA-Z0-9]{0,7}",
                (0u32..100_000, 1u32..100),
                (0u32..100_000, 1u32..100),
                (0u32..100_000, 1u32..100),
                (0u32..100_000, 1u32..100),
                (0u32..100_000, 1u32..100),
                "[a-zA-Z][a-zA-Z0-9]{0,4}",
            ),
            0..8,
        )
    ) {
        let formatted: Vec<[String; 9]> = rows
            .iter()
            .map(|(name, rgage, outid, a, b, c, d, e, spack)| {
                let dec = |(n, d): (u32, u32)| format!("{}", f64::from(n) / f64::from(d));
                [
                    name.clone(), rgage.clone(), outid.clone(),
                    dec(*a), dec(*b), dec(*c), dec(*d), dec(*e),
                    spack.clone(),
                ]
            })
            .collect();
        // Numeric text must fit its column; regenerate values that do not.
        for row in &formatted {
            for (i, field) in row.iter().enumerate() {
                let widths = [10, 13, 11, 9, 12, 10, 10, 12, 6];
                prop_assume!(field.chars().count() <= widths[i]);
            }
        }

        let seq = swmm_sequence();
        let text = build_swmm_subcatchments(&formatted).unwrap();
        let rs = read_sequential(text.as_bytes(), &seq).unwrap();
        prop_assert!(rs.issues.is_empty());
        prop_assert_eq!(rs.groups[0].count as usize, formatted.len());

        for (i, row) in formatted.iter().enumerate() {
            let cells = &rs.groups[0].rows[i];
            prop_assert_eq!(&cells[0].value, &Value::Text(row[0].clone()));
            prop_assert_eq!(&cells[1].value, &Value::Text(row[1].clone()));
            prop_assert_eq!(&cells[2].value, &Value::Text(row[2].clone()));
            for (j, cell) in cells[3..8].iter().enumerate() {
                let expected: f64 = row[3 + j].parse().unwrap();
                prop_assert_eq!(&cell.value, &Value::Float(expected));
            }
            prop_assert_eq!(&cells[8].value, &Value::Text(row[8].clone()));
        }
    }
}
