//! Read files of described formats, and emit programs that do the same.
//!
//! A DFML document is an XML description of how data sits in a file:
//! typed leaves, separators, and repeating groups, addressed by byte
//! offsets (binary files) or line/column spans (text files). This crate
//! turns such a description into results in three steps:
//!
//! 1. [`model`] parses and validates the description.
//! 2. [`linearize`] flattens it into an ordered plan of read
//!    instructions, each with a start position, length, stride, and
//!    repetition count.
//! 3. [`read`] interprets the plan against a data file - the whole file
//!    in order, or single values addressed directly - while [`codegen`]
//!    emits a standalone reader program whose output is byte-identical
//!    to the interpreter's.
//!
//! [`fixtures`] builds ground-truth sample files for the two shipped
//! corpus descriptions (ESRI point shapefiles and SWMM subcatchment
//! sections), and [`output`] renders extraction results as canonical
//! text, JSON, or CSV.

pub mod codegen;
pub mod error;
pub mod fixtures;
pub mod linearize;
pub mod model;
pub mod output;
pub mod read;
pub mod report;

pub use error::{DfmlError, Result};
pub use linearize::{linearize, sequence_summary, LinearItem, LinearSequence};
pub use model::{parse_document, parse_location, validate_document, DfmlDocument};
pub use read::{read_random, read_sequential, RecordSet, Selection, Value};
pub use report::{Issue, Severity, ValidationReport};
