//! Command-line layer: input documents, reports, the builtin corpus and the verifier.

pub mod config;
pub mod corpus;
pub mod input;
pub mod report;
pub mod run;
pub mod verify;

pub use config::Config;
pub use corpus::{builtin_corpus, corpus_entry};
pub use input::{InputDocument, Word, SCHEMA};
pub use report::{Check, Report};
pub use run::{parse_mode, run, Command, RunOptions};
pub use verify::{random_document, run_properties, verify, PropertyResult, VerifyOutcome};
