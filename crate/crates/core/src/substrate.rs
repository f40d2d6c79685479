//! The in-memory typed property graph.
//!
//! Nodes and edges live in dense id-indexed vectors. Labels are indexed by
//! exact match in a hash map, and adjacency is indexed both per node and per
//! `(node, relation)`. Edges are never removed: revising knowledge flips an
//! edge's `valid` flag and leaves the record in place.
//!
//! Reads take `&self` and never lock, so any number of threads may query a
//! shared graph while no writer holds `&mut`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use compact_str::CompactString;
use hashbrown::HashMap;
use smallvec::SmallVec;
use thiserror::Error;

use crate::vectors::{AttributeSchema, Dim, FeatureVector, SchemaId, SchemaRegistry, VectorError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Percept,
    Entity,
    Concept,
    Abstract,
    SchemaDef,
}

impl NodeKind {
    pub const ALL: [NodeKind; 5] = [NodeKind::Percept, NodeKind::Entity, NodeKind::Concept, NodeKind::Abstract, NodeKind::SchemaDef];

    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Percept => "Percept",
            NodeKind::Entity => "Entity",
            NodeKind::Concept => "Concept",
            NodeKind::Abstract => "Abstract",
            NodeKind::SchemaDef => "SchemaDef",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

/// Interned relation label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rel(u32);

impl Rel {
    pub const IS_A: Rel = Rel(0);
    pub const INSTANCE_OF: Rel = Rel(1);
    pub const HAS_ATTRIBUTE: Rel = Rel(2);

    pub fn is_taxonomy(self) -> bool {
        self == Rel::IS_A || self == Rel::INSTANCE_OF
    }
}

pub const RESERVED_RELATIONS: [&str; 3] = ["is-a", "instance-of", "has-attribute"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Affirm,
    Negate,
}

impl Polarity {
    pub fn as_char(self) -> char {
        match self {
            Polarity::Affirm => 'A',
            Polarity::Negate => 'N',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub label: String,
    pub vector: Option<FeatureVector>,
    pub created_seq: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub src: NodeId,
    pub rel: Rel,
    pub dst: NodeId,
    pub valid: bool,
    pub polarity: Polarity,
    pub certainty: f64,
    pub provenance: u64,
}

impl Edge {
    /// The node at the far end when walking in `dir`.
    pub fn other(&self, dir: Direction) -> NodeId {
        match dir {
            Direction::Out => self.dst,
            Direction::In => self.src,
        }
    }

    pub fn is_live_affirm(&self) -> bool {
        self.valid && self.polarity == Polarity::Affirm
    }
}

/// An invalidation event, kept in memory for auditing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Revision {
    pub edge: EdgeId,
    pub provenance: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invalidation {
    Invalidated,
    /// The edge was already invalid; nothing changed.
    AlreadyInvalid,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown schema `{0}`")]
    UnknownSchema(String),
    #[error("unknown schema id {0}")]
    UnknownSchemaId(SchemaId),
    #[error("certainty {0} outside [0, 1]")]
    InvalidCertainty(f64),
    #[error("expected record id {expected}, got {got}")]
    OutOfOrder { expected: u64, got: u64 },
    #[error(transparent)]
    Vector(#[from] VectorError),
}

type LabelSlot = SmallVec<[NodeId; 1]>;
type EdgeList = SmallVec<[EdgeId; 2]>;

#[derive(Debug, Clone)]
pub struct Graph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    labels: HashMap<CompactString, LabelSlot>,
    out_all: Vec<EdgeList>,
    in_all: Vec<EdgeList>,
    out_by_rel: HashMap<(NodeId, Rel), Vec<EdgeId>>,
    in_by_rel: HashMap<(NodeId, Rel), Vec<EdgeId>>,
    rel_names: Vec<String>,
    rel_ids: HashMap<String, Rel>,
    schemas: SchemaRegistry,
    by_schema: HashMap<SchemaId, Vec<NodeId>>,
    seq: u64,
    revisions: Vec<Revision>,
}

impl Default for Graph {
    fn default() -> Self {
        Self::new()
    }
}

impl Graph {
    pub fn new() -> Self {
        let mut g = Graph {
            nodes: Vec::new(),
            edges: Vec::new(),
            labels: HashMap::new(),
            out_all: Vec::new(),
            in_all: Vec::new(),
            out_by_rel: HashMap::new(),
            in_by_rel: HashMap::new(),
            rel_names: Vec::new(),
            rel_ids: HashMap::new(),
            schemas: SchemaRegistry::new(),
            by_schema: HashMap::new(),
            seq: 0,
            revisions: Vec::new(),
        };
        for r in RESERVED_RELATIONS {
            g.rel(r);
        }
        g
    }

    pub fn with_capacity(nodes: usize) -> Self {
        let mut g = Self::new();
        g.nodes.reserve(nodes);
        g.out_all.reserve(nodes);
        g.in_all.reserve(nodes);
        g.labels.reserve(nodes);
        g
    }

    // ---- sequence numbers -------------------------------------------------

    /// The current ingestion sequence number, stamped on new nodes.
    pub fn seq(&self) -> u64 {
        self.seq
    }

    /// Advances the sequence to `seq` if it is ahead of the current value.
    pub fn set_seq(&mut self, seq: u64) {
        self.seq = self.seq.max(seq);
    }

    // ---- relations --------------------------------------------------------

    /// Interns a relation label.
    pub fn rel(&mut self, name: &str) -> Rel {
        if let Some(r) = self.rel_ids.get(name) {
            return *r;
        }
        let r = Rel(self.rel_names.len() as u32);
        self.rel_names.push(name.into());
        self.rel_ids.insert(name.into(), r);
        r
    }

    /// Looks up a relation label without interning it.
    pub fn find_rel(&self, name: &str) -> Option<Rel> {
        self.rel_ids.get(name).copied()
    }

    pub fn rel_name(&self, rel: Rel) -> &str {
        &self.rel_names[rel.0 as usize]
    }

    // ---- schemas ----------------------------------------------------------

    /// Registers a schema and records it as a `SchemaDef` node labelled with its name.
    pub fn define_schema(&mut self, name: &str, dims: Vec<Dim>) -> Result<Arc<AttributeSchema>, GraphError> {
        let schema = self.schemas.define(name, dims)?;
        self.push_node(NodeKind::SchemaDef, name.into(), None);
        Ok(schema)
    }

    /// Finds or defines a schema with exactly `dims`.
    pub fn intern_schema(&mut self, name_hint: &str, dims: Vec<Dim>) -> Result<Arc<AttributeSchema>, GraphError> {
        let before = self.schemas.len();
        let schema = self.schemas.intern(name_hint, dims)?;
        if self.schemas.len() > before {
            self.push_node(NodeKind::SchemaDef, schema.name().into(), None);
        }
        Ok(schema)
    }

    pub fn schemas(&self) -> &SchemaRegistry {
        &self.schemas
    }

    pub fn schema(&self, name: &str) -> Option<&Arc<AttributeSchema>> {
        self.schemas.by_name(name)
    }

    /// Nodes carrying a vector on the given schema, in id order.
    pub fn nodes_with_schema(&self, schema: SchemaId) -> &[NodeId] {
        self.by_schema.get(&schema).map_or(&[], |v| v.as_slice())
    }

    // ---- nodes ------------------------------------------------------------

    pub fn add_node(&mut self, kind: NodeKind, label: &str, vector: Option<FeatureVector>) -> Result<NodeId, GraphError> {
        if let Some(v) = &vector {
            if !self.schemas.contains(v.schema()) {
                return Err(GraphError::UnknownSchema(v.schema().name().into()));
            }
        }
        Ok(self.push_node(kind, label.into(), vector))
    }

    fn push_node(&mut self, kind: NodeKind, label: String, vector: Option<FeatureVector>) -> NodeId {
        let id = NodeId(self.nodes.len() as u64);
        if !label.is_empty() {
            self.labels.entry_ref(label.as_str()).or_default().push(id);
        }
        if let Some(v) = &vector {
            self.by_schema.entry(v.schema().id()).or_default().push(id);
        }
        self.nodes.push(Node { id, kind, label, vector, created_seq: self.seq });
        self.out_all.push(EdgeList::new());
        self.in_all.push(EdgeList::new());
        id
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(id.0 as usize)
    }

    fn check_node(&self, id: NodeId) -> Result<&Node, GraphError> {
        self.node(id).ok_or(GraphError::UnknownNode(id))
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        (id.0 as usize) < self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Exact, case-sensitive label match. Ids come back in ascending order.
    #[inline]
    pub fn find_by_label(&self, label: &str) -> &[NodeId] {
        match self.labels.get(label) {
            Some(ids) => ids.as_slice(),
            None => &[],
        }
    }

    // ---- edges ------------------------------------------------------------

    pub fn add_edge(
        &mut self,
        src: NodeId,
        rel: Rel,
        dst: NodeId,
        polarity: Polarity,
        certainty: f64,
        provenance: u64,
    ) -> Result<EdgeId, GraphError> {
        self.check_node(src)?;
        self.check_node(dst)?;
        if !(0.0..=1.0).contains(&certainty) {
            return Err(GraphError::InvalidCertainty(certainty));
        }
        assert!((rel.0 as usize) < self.rel_names.len(), "relation not interned in this graph");
        let id = EdgeId(self.edges.len() as u64);
        self.edges.push(Edge { id, src, rel, dst, valid: true, polarity, certainty, provenance });
        self.index_edge(id);
        Ok(id)
    }

    fn index_edge(&mut self, id: EdgeId) {
        let e = self.edges[id.0 as usize];
        self.out_all[e.src.0 as usize].push(id);
        self.in_all[e.dst.0 as usize].push(id);
        self.out_by_rel.entry((e.src, e.rel)).or_default().push(id);
        self.in_by_rel.entry((e.dst, e.rel)).or_default().push(id);
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(id.0 as usize)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Marks an edge invalid. The record itself is kept.
    pub fn invalidate_edge(&mut self, id: EdgeId, provenance: u64) -> Result<Invalidation, GraphError> {
        let e = self.edges.get_mut(id.0 as usize).ok_or(GraphError::UnknownEdge(id))?;
        if !e.valid {
            return Ok(Invalidation::AlreadyInvalid);
        }
        e.valid = false;
        self.revisions.push(Revision { edge: id, provenance });
        Ok(Invalidation::Invalidated)
    }

    pub fn set_certainty(&mut self, id: EdgeId, certainty: f64) -> Result<(), GraphError> {
        if !(0.0..=1.0).contains(&certainty) {
            return Err(GraphError::InvalidCertainty(certainty));
        }
        let e = self.edges.get_mut(id.0 as usize).ok_or(GraphError::UnknownEdge(id))?;
        e.certainty = certainty;
        Ok(())
    }

    /// Invalidation history since this graph was built (not persisted in snapshots).
    pub fn revisions(&self) -> &[Revision] {
        &self.revisions
    }

    /// Raw adjacency for `node`, unsorted and including invalid edges.
    pub fn incident(&self, node: NodeId, rel: Option<Rel>, dir: Direction) -> impl Iterator<Item = &Edge> + '_ {
        let ids: &[EdgeId] = match (rel, dir) {
            (None, Direction::Out) => self.out_all.get(node.0 as usize).map_or(&[], |v| v.as_slice()),
            (None, Direction::In) => self.in_all.get(node.0 as usize).map_or(&[], |v| v.as_slice()),
            (Some(r), Direction::Out) => self.out_by_rel.get(&(node, r)).map_or(&[], |v| v.as_slice()),
            (Some(r), Direction::In) => self.in_by_rel.get(&(node, r)).map_or(&[], |v| v.as_slice()),
        };
        ids.iter().map(move |id| &self.edges[id.0 as usize])
    }

    /// Edges touching `node`, ordered by provenance then edge id.
    pub fn neighbors(
        &self,
        node: NodeId,
        rel: Option<Rel>,
        dir: Direction,
        include_invalid: bool,
    ) -> Result<Vec<(Edge, NodeId)>, GraphError> {
        self.check_node(node)?;
        let mut out: Vec<(Edge, NodeId)> =
            self.incident(node, rel, dir).filter(|e| include_invalid || e.valid).map(|e| (*e, e.other(dir))).collect();
        out.sort_by_key(|(e, _)| (e.provenance, e.id));
        Ok(out)
    }

    /// Number of valid outgoing edges.
    pub fn valid_out_degree(&self, node: NodeId) -> usize {
        self.incident(node, None, Direction::Out).filter(|e| e.valid).count()
    }

    /// Finds the valid edge `src -rel-> dst` with the given polarity, if any.
    pub fn find_valid_edge(&self, src: NodeId, rel: Rel, dst: NodeId, polarity: Polarity) -> Option<&Edge> {
        self.incident(src, Some(rel), Direction::Out).find(|e| e.valid && e.dst == dst && e.polarity == polarity)
    }

    // ---- restore (used by snapshot loaders) ------------------------------

    /// Registers a schema record read back from storage. Records must arrive in id order.
    pub fn restore_schema(&mut self, id: SchemaId, name: &str, dims: Vec<Dim>) -> Result<Arc<AttributeSchema>, GraphError> {
        let expected = self.schemas.len() as u64;
        if u64::from(id.0) != expected {
            return Err(GraphError::OutOfOrder { expected, got: id.0.into() });
        }
        Ok(self.schemas.define(name, dims)?)
    }

    /// Inserts a node record read back from storage. Records must arrive in id order.
    pub fn restore_node(&mut self, node: Node) -> Result<NodeId, GraphError> {
        let expected = self.nodes.len() as u64;
        if node.id.0 != expected {
            return Err(GraphError::OutOfOrder { expected, got: node.id.0 });
        }
        if let Some(v) = &node.vector {
            if !self.schemas.contains(v.schema()) {
                return Err(GraphError::UnknownSchema(v.schema().name().into()));
            }
        }
        let seq = self.seq;
        self.seq = node.created_seq;
        let id = self.push_node(node.kind, node.label, node.vector);
        self.seq = seq.max(node.created_seq);
        Ok(id)
    }

    /// Inserts an edge record read back from storage. Records must arrive in id order.
    pub fn restore_edge(&mut self, edge: Edge) -> Result<EdgeId, GraphError> {
        let expected = self.edges.len() as u64;
        if edge.id.0 != expected {
            return Err(GraphError::OutOfOrder { expected, got: edge.id.0 });
        }
        self.check_node(edge.src)?;
        self.check_node(edge.dst)?;
        if !(0.0..=1.0).contains(&edge.certainty) {
            return Err(GraphError::InvalidCertainty(edge.certainty));
        }
        self.edges.push(edge);
        self.index_edge(edge.id);
        self.seq = self.seq.max(edge.provenance);
        Ok(edge.id)
    }

    // ---- consistency ------------------------------------------------------

    /// Rebuilds every index from the node and edge stores and compares them
    /// with the incrementally maintained ones.
    pub fn verify_indexes(&self) -> Result<(), String> {
        let mut labels: HashMap<&str, Vec<NodeId>> = HashMap::new();
        for n in &self.nodes {
            if !n.label.is_empty() {
                labels.entry(n.label.as_str()).or_default().push(n.id);
            }
        }
        if labels.len() != self.labels.len() {
            return Err(alloc::format!("label index has {} keys, store has {}", self.labels.len(), labels.len()));
        }
        for (label, ids) in &labels {
            if self.find_by_label(label) != ids.as_slice() {
                return Err(alloc::format!("label index disagrees for `{label}`"));
            }
        }
        let mut out_all = alloc::vec![Vec::new(); self.nodes.len()];
        let mut in_all = alloc::vec![Vec::new(); self.nodes.len()];
        let mut out_by_rel: HashMap<(NodeId, Rel), Vec<EdgeId>> = HashMap::new();
        let mut in_by_rel: HashMap<(NodeId, Rel), Vec<EdgeId>> = HashMap::new();
        for e in &self.edges {
            out_all[e.src.0 as usize].push(e.id);
            in_all[e.dst.0 as usize].push(e.id);
            out_by_rel.entry((e.src, e.rel)).or_default().push(e.id);
            in_by_rel.entry((e.dst, e.rel)).or_default().push(e.id);
        }
        for i in 0..self.nodes.len() {
            if out_all[i].as_slice() != self.out_all[i].as_slice() || in_all[i].as_slice() != self.in_all[i].as_slice() {
                return Err(alloc::format!("adjacency disagrees for node {i}"));
            }
        }
        if out_by_rel != self.out_by_rel || in_by_rel != self.in_by_rel {
            return Err("relation adjacency disagrees".into());
        }
        Ok(())
    }
}
