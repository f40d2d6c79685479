//! Host-side tooling for `cog-core`: snapshot files, text formats, corpus
//! and percept generators, reference oracle, benchmarks, REPL and HTTP service.

pub mod bench;
pub mod files;
pub mod gen;
pub mod oracle;
pub mod repl;
pub mod serve;
pub mod snapshot;

pub use cog_core;

/// The lexicon shipped in `data/lexicon.txt`.
pub const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.txt");
/// The mini-ontology shipped in `data/ontology.txt`.
pub const BUNDLED_ONTOLOGY: &str = include_str!("../data/ontology.txt");
