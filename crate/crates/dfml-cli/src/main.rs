//! Command-line front end: validate and inspect format descriptions,
//! read data files against them, and emit standalone reader programs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dfml::codegen::{generate_random, generate_sequential};
use dfml::linearize::{linearize, sequence_summary, LinearSequence};
use dfml::model::{parse_document, validate_document};
use dfml::output::{canonical_text, random_text, to_csv, to_json};
use dfml::read::{read_random, read_sequential, Field, Selection};
use dfml::report::Severity;

#[derive(Parser)]
#[command(name = "dfml", version, about = "Schema-driven reader for described file formats")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a format description for structural problems.
    Validate {
        /// Format description document.
        dfml: PathBuf,
    },
    /// Print the flattened read plan, one row per item.
    Inspect {
        /// Format description document.
        dfml: PathBuf,
    },
    /// Read a data file against a format description.
    Read {
        /// Format description document.
        #[arg(long)]
        dfml: PathBuf,
        /// Data file to read.
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value_t = ReadMode::Sequential)]
        mode: ReadMode,
        /// Item to read in random mode: `path#occurrence`, `path#all`,
        /// or a bare path for every occurrence.
        #[arg(long)]
        select: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Emit a standalone reader program.
    Gen {
        /// Format description document.
        #[arg(long)]
        dfml: PathBuf,
        #[arg(long, value_enum, default_value_t = ReadMode::Sequential)]
        mode: ReadMode,
        /// Item to read in random mode (see `read --select`).
        #[arg(long)]
        select: Option<String>,
        /// Emission target.
        #[arg(long, default_value = "rust")]
        target: String,
        /// Write the program here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReadMode {
    Sequential,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Exit codes: 0 success, 1 validation or read failure, 2 usage.
const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate { dfml } => validate(&dfml),
        Command::Inspect { dfml } => {
            let seq = load_plan(&dfml)?;
            print!("{}", sequence_summary(&seq));
            Ok(ExitCode::SUCCESS)
        }
        Command::Read {
            dfml,
            data,
            mode,
            select,
            format,
        } => {
            let seq = load_plan(&dfml)?;
            let bytes =
                std::fs::read(&data).map_err(|e| format!("cannot read {}: {e}", data.display()))?;
            match mode {
                ReadMode::Sequential => {
                    let rs = read_sequential(&bytes, &seq).map_err(|e| e.to_string())?;
                    match format {
                        OutputFormat::Text => print!("{}", canonical_text(&seq, &rs)),
                        OutputFormat::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&to_json(&seq, &rs)).unwrap()
                        ),
                        OutputFormat::Csv => print!("{}", to_csv(&seq, &rs)),
                    }
                    if rs.issues.iter().any(|i| i.severity == Severity::Error) {
                        for issue in &rs.issues {
                            eprintln!("{issue}");
                        }
                        return Ok(ExitCode::from(EXIT_FAILURE));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                ReadMode::Random => {
                    let Some(select) = select else {
                        eprintln!("error: --mode random requires --select");
                        return Ok(ExitCode::from(EXIT_USAGE));
                    };
                    let sel = Selection::parse(&select).map_err(|e| e.to_string())?;
                    let fields = read_random(&bytes, &seq, &sel).map_err(|e| e.to_string())?;
                    match format {
                        OutputFormat::Text => print!("{}", random_text(&fields)),
                        OutputFormat::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&random_json(&fields)).unwrap()
                        ),
                        OutputFormat::Csv => print!("{}", random_csv(&fields)),
                    }
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Gen {
            dfml,
            mode,
            select,
            target,
            out,
        } => {
            let seq = load_plan(&dfml)?;
            let program = match mode {
                ReadMode::Sequential => {
                    generate_sequential(&seq, &target).map_err(|e| e.to_string())?
                }
                ReadMode::Random => {
                    let Some(select) = select else {
                        eprintln!("error: --mode random requires --select");
                        return Ok(ExitCode::from(EXIT_USAGE));
                    };
                    let sel = Selection::parse(&select).map_err(|e| e.to_string())?;
                    generate_random(&seq, &sel, &target).map_err(|e| e.to_string())?
                }
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, &program.source)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    eprintln!("wrote {} ({})", path.display(), program.entry_contract);
                }
                None => print!("{}", program.source),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn validate(path: &Path) -> Result<ExitCode, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let parsed = match parse_document(&text) {
        Ok(parsed) => parsed,
        Err(e) => {
            println!("error: {e}");
            return Ok(ExitCode::from(EXIT_FAILURE));
        }
    };
    let mut report = validate_document(&parsed.document);
    let mut issues = parsed.warnings;
    issues.append(&mut report.issues);
    if issues.is_empty() {
        println!("ok: 0 issues");
        return Ok(ExitCode::SUCCESS);
    }
    for issue in &issues {
        println!("{issue}");
    }
    if issues.iter().any(|i| i.severity == Severity::Error) {
        Ok(ExitCode::from(EXIT_FAILURE))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

/// Parse, validate, and flatten a description; warnings go to the error
/// stream, validation errors abort.
fn load_plan(path: &Path) -> Result<LinearSequence, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let parsed = parse_document(&text).map_err(|e| e.to_string())?;
    for warning in &parsed.warnings {
        eprintln!("{warning}");
    }
    let report = validate_document(&parsed.document);
    if !report.is_acceptable() {
        for issue in &report.issues {
            eprintln!("{issue}");
        }
        return Err(format!(
            "{} rejected: {} validation error(s)",
            path.display(),
            report.error_count()
        ));
    }
    linearize(&parsed.document).map_err(|e| e.to_string())
}

fn random_json(fields: &[Field]) -> serde_json::Value {
    let mut object = serde_json::Map::new();
    for field in fields {
        let value = match &field.value {
            dfml::read::Value::Int(v) => serde_json::json!(v),
            dfml::read::Value::Float(v) => serde_json::json!(v),
            dfml::read::Value::Text(v) => serde_json::json!(v),
            dfml::read::Value::Sep(s) => serde_json::json!(s.mark()),
        };
        object.insert(field.path.clone(), value);
    }
    serde_json::json!({ "fields": object, "records": [], "issues": [] })
}

fn random_csv(fields: &[Field]) -> String {
    let mut out = String::from("field,value\n");
    for field in fields {
        let value = field.value.to_string();
        let quote = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        out.push_str(&format!("{},{}\n", quote(&field.path), quote(&value)));
    }
    out
}
