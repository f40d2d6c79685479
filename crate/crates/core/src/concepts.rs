//! Percept recognition, online concept formation and abstraction.
//!
//! Recognition matches a vector against stored entities and concepts and
//! falls back to one-shot learning. Concept formation is single-pass leader
//! clustering: each instance joins the most similar existing cluster at or
//! above `tau_cluster`, or seeds a new one. Clusters with at least two members
//! become `Concept` nodes whose prototype is the running mean of the members
//! over the dimensions they all share.

use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;
use thiserror::Error;

use crate::substrate::{Graph, GraphError, NodeId, NodeKind, Polarity, Rel};
use crate::vectors::{intersect_dims, running_mean_step, similarity, similarity_parts, Dim, FeatureVector, VectorError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConceptError {
    #[error("no instances given")]
    EmptyInput,
    #[error("abstraction needs at least two concepts")]
    TooFewConcepts,
    #[error("node {0} has no vector")]
    MissingVector(NodeId),
    #[error("dimension `{0}` has different ranges across instances")]
    Incomparable(String),
    #[error("the concepts share no dimensions")]
    NoCommonDims,
    #[error("threshold {0} outside (0, 1)")]
    InvalidThreshold(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Vector(#[from] VectorError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConceptParams {
    pub tau_match: f64,
    pub tau_cluster: f64,
}

impl Default for ConceptParams {
    fn default() -> Self {
        ConceptParams { tau_match: 0.85, tau_cluster: 0.87 }
    }
}

impl ConceptParams {
    pub fn new(tau_match: f64, tau_cluster: f64) -> Result<Self, ConceptError> {
        for t in [tau_match, tau_cluster] {
            if !(t > 0.0 && t < 1.0) {
                return Err(ConceptError::InvalidThreshold(t));
            }
        }
        Ok(ConceptParams { tau_match, tau_cluster })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Recognition {
    Matched(NodeId, f64),
    CreatedNew(NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecognitionResult {
    pub outcome: Recognition,
    pub candidates_considered: usize,
}

/// Finds the stored entity or concept most similar to `v`, or stores `v` as a
/// new entity when nothing reaches `tau_match`.
pub fn recognize(graph: &mut Graph, v: FeatureVector, params: &ConceptParams) -> Result<RecognitionResult, ConceptError> {
    let mut best: Option<(NodeId, f64)> = None;
    let mut considered = 0;
    let schemas: Vec<_> = graph.schemas().iter().filter(|s| s.shares_dim_with(v.schema())).cloned().collect();
    for schema in schemas {
        for &id in graph.nodes_with_schema(schema.id()) {
            let node = &graph.nodes()[id.0 as usize];
            if !matches!(node.kind, NodeKind::Entity | NodeKind::Concept) {
                continue;
            }
            let Some(stored) = &node.vector else { continue };
            considered += 1;
            let sim = match similarity(&v, stored) {
                Ok(s) => s,
                // Same dim name but different range: not comparable, skip.
                Err(VectorError::RangeMismatch(_)) => continue,
                Err(e) => return Err(e.into()),
            };
            let better = match best {
                None => true,
                Some((bid, bs)) => sim > bs || (sim == bs && id < bid),
            };
            if better {
                best = Some((id, sim));
            }
        }
    }
    let outcome = match best {
        Some((id, sim)) if sim >= params.tau_match => Recognition::Matched(id, sim),
        _ => Recognition::CreatedNew(graph.add_node(NodeKind::Entity, "", Some(v))?),
    };
    Ok(RecognitionResult { outcome, candidates_considered: considered })
}

struct Cluster {
    dims: Vec<Dim>,
    proto: Vec<f64>,
    members: Vec<NodeId>,
}

impl Cluster {
    /// Adds a member, shrinking the shared dimensions if needed. Every
    /// surviving dimension was present in all members, so its running mean
    /// stays exact.
    fn join(&mut self, id: NodeId, v: &FeatureVector) {
        let n = self.members.len() + 1;
        let mut dims = Vec::with_capacity(self.dims.len());
        let mut proto = Vec::with_capacity(self.proto.len());
        for (d, p) in self.dims.iter().zip(&self.proto) {
            if let Some(s) = v.get(&d.name) {
                dims.push(d.clone());
                proto.push(running_mean_step(*p, s, n));
            }
        }
        self.dims = dims;
        self.proto = proto;
        self.members.push(id);
    }
}

fn check_comparable<'a>(vectors: impl Iterator<Item = &'a FeatureVector>) -> Result<(), ConceptError> {
    let mut ranges: HashMap<&str, (f64, f64)> = HashMap::new();
    for v in vectors {
        for d in v.schema().dims() {
            match ranges.get(d.name.as_str()) {
                Some(&(lo, hi)) if lo != d.min || hi != d.max => return Err(ConceptError::Incomparable(d.name.clone())),
                Some(_) => {}
                None => {
                    ranges.insert(d.name.as_str(), (d.min, d.max));
                }
            }
        }
    }
    Ok(())
}

fn vector_of(graph: &Graph, id: NodeId) -> Result<FeatureVector, ConceptError> {
    let node = graph.node(id).ok_or(GraphError::UnknownNode(id))?;
    node.vector.clone().ok_or(ConceptError::MissingVector(id))
}

/// Leader clustering over `instances` in the given order. Returns the ids of
/// the concept nodes created, one per cluster with two or more members, in
/// cluster creation order.
pub fn form_concepts(graph: &mut Graph, instances: &[NodeId], params: &ConceptParams) -> Result<Vec<NodeId>, ConceptError> {
    if instances.is_empty() {
        return Err(ConceptError::EmptyInput);
    }
    let vectors = instances.iter().map(|&id| vector_of(graph, id)).collect::<Result<Vec<_>, _>>()?;
    check_comparable(vectors.iter())?;

    let mut clusters: Vec<Cluster> = Vec::new();
    for (&id, v) in instances.iter().zip(&vectors) {
        let mut best: Option<(usize, f64)> = None;
        for (ci, c) in clusters.iter().enumerate() {
            let sim = similarity_parts(v.schema().dims(), v.values(), &c.dims, &c.proto)?;
            if sim >= params.tau_cluster && best.is_none_or(|(_, b)| sim > b) {
                best = Some((ci, sim));
            }
        }
        match best {
            Some((ci, _)) => clusters[ci].join(id, v),
            None => clusters.push(Cluster { dims: v.schema().dims().to_vec(), proto: v.values().to_vec(), members: alloc::vec![id] }),
        }
    }

    let provenance = graph.seq();
    let mut concepts = Vec::new();
    for c in clusters.into_iter().filter(|c| c.members.len() >= 2) {
        let hint: alloc::string::String = vectors[instances.iter().position(|i| *i == c.members[0]).unwrap()].schema().name().into();
        let schema = graph.intern_schema(&hint, c.dims)?;
        let proto = FeatureVector::new(schema, c.proto)?;
        let concept = graph.add_node(NodeKind::Concept, "", Some(proto))?;
        for m in c.members {
            graph.add_edge(m, Rel::INSTANCE_OF, concept, Polarity::Affirm, 1.0, provenance)?;
        }
        concepts.push(concept);
    }
    Ok(concepts)
}

/// Creates an `Abstract` node over `concepts`: its schema is the dimensions
/// all children share (in the first child's order) and its vector is the mean
/// of the children's prototypes projected onto that schema. Each child gets an
/// `is-a` edge to the new node.
pub fn abstract_concepts(graph: &mut Graph, concepts: &[NodeId], label: &str) -> Result<NodeId, ConceptError> {
    if concepts.len() < 2 {
        return Err(ConceptError::TooFewConcepts);
    }
    let vectors = concepts.iter().map(|&id| vector_of(graph, id)).collect::<Result<Vec<_>, _>>()?;
    let first = vectors[0].schema().dims();
    let dims = intersect_dims(first, vectors[1..].iter().map(|v| v.schema().dims()))?;
    if dims.is_empty() {
        return Err(ConceptError::NoCommonDims);
    }
    let hint = if label.is_empty() { vectors[0].schema().name() } else { label };
    let hint = String::from(hint).replace(char::is_whitespace, "-");
    let schema = graph.intern_schema(&hint, dims)?;
    let mut mean = crate::vectors::project(&vectors[0], &schema)?;
    for (i, v) in vectors.iter().enumerate().skip(1) {
        let p = crate::vectors::project(v, &schema)?;
        mean = crate::vectors::prototype_update(&mean, &p, i + 1)?;
    }
    let provenance = graph.seq();
    let node = graph.add_node(NodeKind::Abstract, label, Some(mean))?;
    for &c in concepts {
        graph.add_edge(c, Rel::IS_A, node, Polarity::Affirm, 1.0, provenance)?;
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substrate::Direction;
    use alloc::sync::Arc;
    use alloc::vec;

    fn motion(g: &mut Graph) -> Arc<crate::vectors::AttributeSchema> {
        g.define_schema("motion", vec![Dim::new("frequency", 0.0, 10.0), Dim::new("amplitude", 0.0, 5.0), Dim::new("speed", 0.0, 20.0)])
            .unwrap()
    }

    fn entity(g: &mut Graph, s: &Arc<crate::vectors::AttributeSchema>, vals: &[f64]) -> NodeId {
        let v = FeatureVector::new(s.clone(), vals.to_vec()).unwrap();
        g.add_node(NodeKind::Entity, "", Some(v)).unwrap()
    }

    #[test]
    fn recognize_empty_graph_creates() {
        let mut g = Graph::new();
        let s = motion(&mut g);
        let before = g.node_count();
        let r = recognize(&mut g, FeatureVector::new(s, vec![1.0, 1.0, 1.0]).unwrap(), &ConceptParams::default()).unwrap();
        assert!(matches!(r.outcome, Recognition::CreatedNew(_)));
        assert_eq!(r.candidates_considered, 0);
        assert_eq!(g.node_count(), before + 1);
    }

    #[test]
    fn recognize_identical_matches() {
        let mut g = Graph::new();
        let s = motion(&mut g);
        let id = entity(&mut g, &s, &[6.0, 3.0, 4.0]);
        let r = recognize(&mut g, FeatureVector::new(s, vec![6.0, 3.0, 4.0]).unwrap(), &ConceptParams::default()).unwrap();
        assert_eq!(r.outcome, Recognition::Matched(id, 1.0));
    }

    #[test]
    fn recognize_prefers_lower_id_on_tie() {
        let mut g = Graph::new();
        let s = motion(&mut g);
        let a = entity(&mut g, &s, &[6.0, 3.0, 4.0]);
        entity(&mut g, &s, &[6.0, 3.0, 4.0]);
        let r = recognize(&mut g, FeatureVector::new(s, vec![6.0, 3.0, 4.0]).unwrap(), &ConceptParams::default()).unwrap();
        assert_eq!(r.outcome, Recognition::Matched(a, 1.0));
    }

    #[test]
    fn two_identical_instances_make_one_concept() {
        let mut g = Graph::new();
        let s = motion(&mut g);
        let a = entity(&mut g, &s, &[1.0, 2.0, 3.0]);
        let b = entity(&mut g, &s, &[1.0, 2.0, 3.0]);
        let cs = form_concepts(&mut g, &[a, b], &ConceptParams::default()).unwrap();
        assert_eq!(cs.len(), 1);
        let proto = g.node(cs[0]).unwrap().vector.clone().unwrap();
        assert_eq!(proto.values(), &[1.0, 2.0, 3.0]);
        assert_eq!(proto.schema().id(), s.id());
        let members = g.neighbors(cs[0], Some(Rel::INSTANCE_OF), Direction::In, false).unwrap();
        assert_eq!(members.len(), 2);
    }

    #[test]
    fn far_apart_instances_stay_singletons() {
        let mut g = Graph::new();
        let s = motion(&mut g);
        let ids = [entity(&mut g, &s, &[0.0, 0.0, 0.0]), entity(&mut g, &s, &[10.0, 5.0, 20.0]), entity(&mut g, &s, &[5.0, 0.0, 20.0])];
        assert!(form_concepts(&mut g, &ids, &ConceptParams::default()).unwrap().is_empty());
    }

    #[test]
    fn form_concepts_errors() {
        let mut g = Graph::new();
        let s = motion(&mut g);
        assert_eq!(form_concepts(&mut g, &[], &ConceptParams::default()), Err(ConceptError::EmptyInput));
        let bare = g.add_node(NodeKind::Entity, "x", None).unwrap();
        assert_eq!(form_concepts(&mut g, &[bare], &ConceptParams::default()), Err(ConceptError::MissingVector(bare)));
        let other = g.define_schema("fast", vec![Dim::new("speed", 0.0, 99.0)]).unwrap();
        let a = entity(&mut g, &s, &[1.0, 1.0, 1.0]);
        let b = entity(&mut g, &other, &[1.0]);
        assert_eq!(form_concepts(&mut g, &[a, b], &ConceptParams::default()), Err(ConceptError::Incomparable("speed".into())));
    }

    #[test]
    fn abstraction_intersects_and_averages() {
        let mut g = Graph::new();
        let full = motion(&mut g);
        let lite = g.define_schema("lite", vec![Dim::new("frequency", 0.0, 10.0), Dim::new("amplitude", 0.0, 5.0)]).unwrap();
        let dog = g.add_node(NodeKind::Concept, "dog", Some(FeatureVector::new(full, vec![4.0, 2.0, 10.0]).unwrap())).unwrap();
        let cat = g.add_node(NodeKind::Concept, "cat", Some(FeatureVector::new(lite, vec![2.0, 1.0]).unwrap())).unwrap();
        let animal = abstract_concepts(&mut g, &[dog, cat], "animal").unwrap();
        let v = g.node(animal).unwrap().vector.clone().unwrap();
        let names: Vec<_> = v.schema().dims().iter().map(|d| d.name.as_str()).collect();
        assert_eq!(names, ["frequency", "amplitude"]);
        assert_eq!(v.values(), &[3.0, 1.5]);
        assert_eq!(g.node(animal).unwrap().kind, NodeKind::Abstract);
        for c in [dog, cat] {
            assert!(g.find_valid_edge(c, Rel::IS_A, animal, Polarity::Affirm).is_some());
        }
    }

    #[test]
    fn abstraction_of_copies_is_identity() {
        let mut g = Graph::new();
        let s = motion(&mut g);
        let v = FeatureVector::new(s, vec![4.0, 2.0, 10.0]).unwrap();
        let a = g.add_node(NodeKind::Concept, "a", Some(v.clone())).unwrap();
        let b = g.add_node(NodeKind::Concept, "b", Some(v.clone())).unwrap();
        let top = abstract_concepts(&mut g, &[a, b], "top").unwrap();
        assert_eq!(g.node(top).unwrap().vector.as_ref().unwrap().values(), v.values());
    }

    #[test]
    fn abstraction_without_common_ground_fails() {
        let mut g = Graph::new();
        let s = motion(&mut g);
        let c = g.define_schema("color", vec![Dim::new("hue", 0.0, 1.0)]).unwrap();
        let a = g.add_node(NodeKind::Concept, "a", Some(FeatureVector::new(s, vec![1.0, 1.0, 1.0]).unwrap())).unwrap();
        let b = g.add_node(NodeKind::Concept, "b", Some(FeatureVector::new(c, vec![0.5]).unwrap())).unwrap();
        assert_eq!(abstract_concepts(&mut g, &[a, b], "x"), Err(ConceptError::NoCommonDims));
        assert_eq!(abstract_concepts(&mut g, &[a], "x"), Err(ConceptError::TooFewConcepts));
    }
}
