//! `approxent` — a reasoning toolkit for graded, similarity-based entailment.
//!
//! The toolkit implements a family of logics in which an implication carries a
//! grade: `phi =>{c} psi` says that wherever `phi` holds, something at least
//! `c`-similar to a `psi`-situation holds. Three variants are supported:
//!
//! - **lae** — plain similarity spaces;
//! - **laec** — chain-ordered spaces, adding the closure operators
//!   `dle`/`dge`;
//! - **laepc** — products of chains over sorted variables, with an optional
//!   pool of unsorted variables.
//!
//! The crate provides, layer by layer:
//!
//! - [`grades`]: finite, exact grade scales with a validated combining
//!   operation;
//! - [`syntax`]: the two-level formula language, parser and printer;
//! - [`spaces`]: finite similarity spaces, chains and products, with
//!   neighborhood and closure operators;
//! - [`semantics`]: evaluations, models and the satisfaction relation;
//! - [`decision`]: a bounded decision procedure for entailment that searches
//!   a canonical family of models and returns verified countermodels;
//! - [`proofs`]: a Hilbert-style proof checker with schema recognition;
//! - [`cli`]: the batch command-line front end.
//!
//! A rendered guide with worked examples lives in the `book/` directory of
//! the repository and is mirrored as doc-tested chapters in [`guide`].

pub mod cli;
pub mod decision;
pub mod gen;
pub mod grades;
pub mod guide;
pub mod laws;
pub mod proofs;
pub mod reference;
pub mod semantics;
pub mod spaces;
pub mod syntax;
pub mod textio;
