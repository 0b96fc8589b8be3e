//! The user guide, one module per chapter.
//!
//! Each chapter is the corresponding page of the rendered book (the
//! `book/` directory at the workspace root, built with `mdbook build
//! book`), included verbatim as module documentation.  Because the pages
//! are included here, every Rust code block in the book compiles and runs
//! as a doc-test of this crate — the guide cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/grades.md")]
pub mod grades {}

#[doc = include_str!("../../../book/src/syntax.md")]
pub mod syntax {}

#[doc = include_str!("../../../book/src/spaces.md")]
pub mod spaces {}

#[doc = include_str!("../../../book/src/semantics.md")]
pub mod semantics {}

#[doc = include_str!("../../../book/src/entailment.md")]
pub mod entailment {}

#[doc = include_str!("../../../book/src/proofs.md")]
pub mod proofs {}

#[doc = include_str!("../../../book/src/files-and-cli.md")]
pub mod files_and_cli {}
