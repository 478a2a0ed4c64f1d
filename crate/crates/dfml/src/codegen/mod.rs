//! Emission of standalone reader programs from a linear read plan.
//!
//! A generated program is self-contained source for one registered
//! target: it embeds the plan's literal offsets, lengths, intervals,
//! repetitions, and type decoders, takes the data file path as its
//! single argument, and prints the same canonical text the interpreter
//! produces. The reference target emits Rust compilable with a bare
//! `rustc` invocation.

mod rust_target;

use crate::error::{DfmlError, Result};
use crate::linearize::LinearSequence;
use crate::read::Selection;

/// Identifier of the reference emission target.
pub const RUST_TARGET: &str = "rust";

/// The section kinds every emitted program is assembled from, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionKind {
    Imports,
    ContainerDecl,
    EntryPoint,
    ReaderRoutine,
    OutputRoutine,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub kind: SectionKind,
    pub content: String,
}

/// Fixed program skeleton of a target; per-item code is spliced into the
/// reader routine's placeholders.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaffoldPlan {
    pub target: String,
    pub sections: Vec<Section>,
}

/// A finished standalone reader.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedProgram {
    pub target: String,
    pub source: String,
    /// How to invoke the program once built.
    pub entry_contract: String,
}

fn lookup(target: &str) -> Result<()> {
    if target == RUST_TARGET {
        Ok(())
    } else {
        Err(DfmlError::UnknownTarget(target.to_string()))
    }
}

/// The fixed skeleton of a registered target.
pub fn plan_scaffold(target: &str) -> Result<ScaffoldPlan> {
    lookup(target)?;
    Ok(rust_target::scaffold())
}

/// Emit a program that reads the whole plan in order.
pub fn generate_sequential(seq: &LinearSequence, target: &str) -> Result<GeneratedProgram> {
    lookup(target)?;
    reject_non_trailing_records(seq)?;
    let source = rust_target::emit_sequential(seq)?;
    Ok(GeneratedProgram {
        target: target.to_string(),
        source,
        entry_contract: ENTRY_CONTRACT.to_string(),
    })
}

/// Emit a program that reads only the selected occurrences, addressing
/// them directly.
pub fn generate_random(
    seq: &LinearSequence,
    selection: &Selection,
    target: &str,
) -> Result<GeneratedProgram> {
    lookup(target)?;
    reject_non_trailing_records(seq)?;
    let source = rust_target::emit_random(seq, selection)?;
    Ok(GeneratedProgram {
        target: target.to_string(),
        source,
        entry_contract: ENTRY_CONTRACT.to_string(),
    })
}

const ENTRY_CONTRACT: &str =
    "takes the data file path as its single argument and prints one `path = value` line per extracted value";

/// Generated readers stride open groups off the end of the file; items
/// laid out after them cannot be reached by straight-line code.
fn reject_non_trailing_records(seq: &LinearSequence) -> Result<()> {
    let Some(first_open) = seq.items.iter().position(|i| i.open_level().is_some()) else {
        return Ok(());
    };
    let scope = seq.items[first_open].record_scope();
    for item in &seq.items[first_open..] {
        if item.record_scope() != scope {
            return Err(DfmlError::UnsupportedLayout(format!(
                "{} follows the open-ended records of {}",
                item.path_string(),
                scope.as_deref().unwrap_or("?"),
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearize::linearize;
    use crate::model::parse_document;

    #[test]
    fn scaffold_has_five_sections_in_order() {
        let plan = plan_scaffold(RUST_TARGET).unwrap();
        let kinds: Vec<SectionKind> = plan.sections.iter().map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            vec![
                SectionKind::Imports,
                SectionKind::ContainerDecl,
                SectionKind::EntryPoint,
                SectionKind::ReaderRoutine,
                SectionKind::OutputRoutine,
            ]
        );
    }

    #[test]
    fn unknown_target_rejected() {
        assert!(matches!(
            plan_scaffold("x").unwrap_err(),
            DfmlError::UnknownTarget(_)
        ));
    }

    #[test]
    fn scaffold_is_deterministic() {
        assert_eq!(plan_scaffold(RUST_TARGET).unwrap(), plan_scaffold(RUST_TARGET).unwrap());
    }

    #[test]
    fn generation_is_deterministic() {
        let seq = linearize(
            &parse_document(
                r#"<dataformat name="x" mode="byte"><integer location="0,4"></integer></dataformat>"#,
            )
            .unwrap()
            .document,
        )
        .unwrap();
        let a = generate_sequential(&seq, RUST_TARGET).unwrap();
        let b = generate_sequential(&seq, RUST_TARGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn char_mode_records_must_be_trailing() {
        // The plan itself allows absolutely-located items after an open
        // table; straight-line readers cannot reach them.
        let seq = linearize(
            &parse_document(
                r#"<dataformat name="x" mode="char">
                     <group description="rows" number="unknown">
                       <string description="f" location="0 0,0 4"></string>
                       <cr></cr>
                     </group>
                     <string description="footer" location="9 0,9 -1"></string>
                   </dataformat>"#,
            )
            .unwrap()
            .document,
        )
        .unwrap();
        let err = generate_sequential(&seq, RUST_TARGET).unwrap_err();
        assert!(matches!(err, DfmlError::UnsupportedLayout(_)), "{err}");
    }

    #[test]
    fn generated_source_has_no_plan_machinery() {
        let seq = linearize(
            &parse_document(
                r#"<dataformat name="x" mode="byte"><integer location="0,4"></integer></dataformat>"#,
            )
            .unwrap()
            .document,
        )
        .unwrap();
        let program = generate_sequential(&seq, RUST_TARGET).unwrap();
        for banned in ["dataformat", "linearize", "dfml", "DFML"] {
            assert!(
                !program.source.contains(banned),
                "generated source mentions {banned:?}"
            );
        }
    }
}
