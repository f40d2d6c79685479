//! In-memory cognitive knowledge-graph substrate.
//!
//! One graph holds long-term knowledge (entities, concepts, schema'd feature
//! vectors and relations with provenance). An activation layer over the same
//! graph serves as working memory. On top sit concept formation, a
//! controlled-English front end, belief revision, inheritance-based question
//! answering and metacognitive signals.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod activation;
pub mod cognition;
pub mod concepts;
pub mod language;
pub mod substrate;
pub mod vectors;

pub use activation::{ActivationParams, ActivationState};
pub use cognition::{Answer, Ontology, Reply, Session, Signals, Verdict};
pub use concepts::{abstract_concepts, form_concepts, recognize, ConceptParams, Recognition, RecognitionResult};
pub use language::{Lexicon, Question, Statement};
pub use substrate::{Direction, Edge, EdgeId, Graph, GraphError, Node, NodeId, NodeKind, Polarity, Rel};
pub use vectors::{AttributeSchema, Dim, FeatureVector, SchemaId};
