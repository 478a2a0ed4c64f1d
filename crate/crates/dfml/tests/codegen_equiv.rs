//! Generated-reader equivalence: for each corpus and both reading
//! modes, the emitted program's standard output must match the
//! interpreter's canonical text byte for byte.

use std::path::{Path, PathBuf};
use std::process::Command;

use dfml::codegen::{generate_random, generate_sequential, RUST_TARGET};
use dfml::fixtures::{
    build_point_shapefile, build_swmm_subcatchments, PointRecordSpec, SHAPEFILE_POINT_DFML,
    SWMM_SUBCATCHMENTS_DFML,
};
use dfml::linearize::{linearize, LinearSequence};
use dfml::model::parse_document;
use dfml::output::{canonical_text, random_text};
use dfml::read::{read_random, read_sequential, Selection};

fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn compile_and_run(name: &str, source: &str, data: &[u8]) -> (i32, String, String) {
    let dir = workdir(name);
    let src_path = dir.join("reader.rs");
    let bin_path = dir.join("reader");
    let data_path = dir.join("data.bin");
    std::fs::write(&src_path, source).unwrap();
    std::fs::write(&data_path, data).unwrap();

    let compile = Command::new("rustc")
        .arg("--edition")
        .arg("2021")
        .arg("-o")
        .arg(&bin_path)
        .arg(&src_path)
        .output()
        .expect("rustc is available");
    assert!(
        compile.status.success(),
        "generated program failed to compile:\n{}\n--- source ---\n{source}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin_path)
        .arg(&data_path)
        .output()
        .expect("generated program runs");
    (
        run.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&run.stdout).into_owned(),
        String::from_utf8_lossy(&run.stderr).into_owned(),
    )
}

fn sequence(corpus: &str) -> LinearSequence {
    linearize(&parse_document(corpus).unwrap().document).unwrap()
}

fn shapefile_data() -> Vec<u8> {
    let points: Vec<PointRecordSpec> = (1..=3)
        .map(|i| PointRecordSpec {
            record_number: i,
            x: 100.5 + f64::from(i) * 0.25,
            y: -7.0 / f64::from(i),
        })
        .collect();
    build_point_shapefile(&points)
}

fn swmm_data() -> Vec<u8> {
    let rows = [
        ["S1", "RG1", "O1", "5.7", "45.3", "300.5", "0.5", "120", "sn1"],
        ["S2", "RG2", "O2", "12.25", "0.1", "80", "1.75", "0", "sn2"],
    ];
    build_swmm_subcatchments(&rows).unwrap().into_bytes()
}

fn assert_sequential_parity(name: &str, corpus: &str, data: &[u8]) {
    let seq = sequence(corpus);
    let interpreted = canonical_text(&seq, &read_sequential(data, &seq).unwrap());
    let program = generate_sequential(&seq, RUST_TARGET).unwrap();
    let (code, stdout, stderr) = compile_and_run(name, &program.source, data);
    assert_eq!(code, 0, "generated reader failed: {stderr}");
    assert_eq!(stdout, interpreted, "output mismatch for {name}");
}

fn assert_random_parity(name: &str, corpus: &str, data: &[u8], selection: &str) {
    let seq = sequence(corpus);
    let sel = Selection::parse(selection).unwrap();
    let interpreted = random_text(&read_random(data, &seq, &sel).unwrap());
    let program = generate_random(&seq, &sel, RUST_TARGET).unwrap();
    let (code, stdout, stderr) = compile_and_run(name, &program.source, data);
    assert_eq!(code, 0, "generated reader failed: {stderr}");
    assert_eq!(stdout, interpreted, "output mismatch for {name} ({selection})");
}

#[test]
fn shapefile_sequential_parity() {
    assert_sequential_parity("shp_seq", SHAPEFILE_POINT_DFML, &shapefile_data());
}

#[test]
fn swmm_sequential_parity() {
    assert_sequential_parity("swmm_seq", SWMM_SUBCATCHMENTS_DFML, &swmm_data());
}

#[test]
fn shapefile_random_third_point_x() {
    assert_random_parity("shp_rand_x3", SHAPEFILE_POINT_DFML, &shapefile_data(), "Point/X#3");
}

#[test]
fn shapefile_random_header_constant() {
    assert_random_parity("shp_rand_code", SHAPEFILE_POINT_DFML, &shapefile_data(), "File Code#1");
}

#[test]
fn shapefile_random_all_y() {
    assert_random_parity("shp_rand_ally", SHAPEFILE_POINT_DFML, &shapefile_data(), "Point/Y#all");
}

#[test]
fn swmm_random_area_row_two() {
    assert_random_parity(
        "swmm_rand_area2",
        SWMM_SUBCATCHMENTS_DFML,
        &swmm_data(),
        "section body/table content/Area#2",
    );
}

#[test]
fn swmm_random_all_names() {
    assert_random_parity(
        "swmm_rand_names",
        SWMM_SUBCATCHMENTS_DFML,
        &swmm_data(),
        "section body/table content/Name",
    );
}

#[test]
fn empty_document_program_prints_nothing() {
    let seq = sequence(r#"<dataformat name="empty" mode="byte"></dataformat>"#);
    let program = generate_sequential(&seq, RUST_TARGET).unwrap();
    let (code, stdout, _) = compile_and_run("empty_seq", &program.source, b"anything");
    assert_eq!(code, 0);
    assert_eq!(stdout, "");
}

#[test]
fn generated_reader_reports_truncation() {
    let seq = sequence(SHAPEFILE_POINT_DFML);
    let program = generate_sequential(&seq, RUST_TARGET).unwrap();
    let mut data = shapefile_data();
    data.truncate(170);
    let (code, _, stderr) = compile_and_run("shp_trunc", &program.source, &data);
    assert_eq!(code, 1);
    assert!(stderr.contains("Point/X"), "stderr: {stderr}");
}

#[test]
fn generated_random_reader_reports_out_of_range() {
    let seq = sequence(SHAPEFILE_POINT_DFML);
    let sel = Selection::parse("Point/X#4").unwrap();
    let program = generate_random(&seq, &sel, RUST_TARGET).unwrap();
    let (code, _, stderr) = compile_and_run("shp_rand_oob", &program.source, &shapefile_data());
    assert_eq!(code, 1);
    assert!(stderr.contains("beyond end of data"), "stderr: {stderr}");
}

#[test]
fn nested_bounded_groups_parity() {
    let corpus = r#"<dataformat name="nested" mode="byte">
        <group location="0,24" description="A">
            <group location="0,8" description="B">
                <short location="0,2" byteOrder="bigEndian" description="x"></short>
                <short location="2,4" byteOrder="littleEndian" description="y"></short>
            </group>
        </group>
    </dataformat>"#;
    let data: Vec<u8> = (0u8..24).collect();
    assert_sequential_parity("nested_seq", corpus, &data);
}

#[test]
fn nested_bounded_random_parity() {
    let corpus = r#"<dataformat name="nested" mode="byte">
        <group location="0,24" description="A">
            <group location="0,8" description="B">
                <short location="0,2" byteOrder="bigEndian" description="x"></short>
                <short location="2,4" byteOrder="littleEndian" description="y"></short>
            </group>
        </group>
    </dataformat>"#;
    let data: Vec<u8> = (0u8..24).collect();
    // Occurrence 5 of x = outer occurrence 3, inner occurrence 1.
    assert_random_parity("nested_rand", corpus, &data, "A/B/x#5");
}
