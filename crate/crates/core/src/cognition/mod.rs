//! The conversational loop: statements update the graph with belief revision,
//! questions are answered from valid edges and taxonomy inheritance, and every
//! turn reports metacognitive signals.

mod ontology;
mod signals;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

pub use ontology::Ontology;
pub use signals::{normalize_input, RecentInputs, Signals, BOREDOM_WINDOW};

use crate::activation::{ActivationParams, ActivationState};
use crate::language::{
    article, parse, tokenize, Lexicon, Object, ParseError, Pronoun, Question, QuestionForm, Statement, StatementForm, Subject, Utterance,
};
use crate::substrate::{Direction, Edge, EdgeId, Graph, GraphError, NodeId, NodeKind, Polarity, Rel};

/// Certainty given to a freshly asserted edge.
pub const BASE_CERTAINTY: f64 = 0.9;

/// Noisy-OR reinforcement applied when an edge is asserted again.
pub fn reinforce(c: f64, base: f64) -> f64 {
    1.0 - (1.0 - c) * (1.0 - base)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("cannot resolve `{0}`")]
    Unresolved(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    pub seq: u64,
    /// Edges created or reinforced by the statement.
    pub asserted: Vec<EdgeId>,
    pub invalidated: Vec<EdgeId>,
    pub signals: Signals,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rejected {
    pub error: IngestError,
    pub signals: Signals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
    /// Wh- answers, in provenance order.
    Phrases(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Answer {
    pub verdict: Verdict,
    pub text: String,
    pub certainty: f64,
    pub support: Vec<EdgeId>,
    pub signals: Signals,
}

pub const UNKNOWN_TEXT: &str = "I don't know.";

#[derive(Debug, Clone, PartialEq)]
pub enum Reply {
    Ack { text: String, signals: Signals },
    Answer(Answer),
    Error { message: String, offset: Option<usize>, signals: Signals },
}

impl Reply {
    pub fn text(&self) -> &str {
        match self {
            Reply::Ack { text, .. } => text,
            Reply::Answer(a) => &a.text,
            Reply::Error { message, .. } => message,
        }
    }

    pub fn signals(&self) -> Signals {
        match self {
            Reply::Ack { signals, .. } | Reply::Error { signals, .. } => *signals,
            Reply::Answer(a) => a.signals,
        }
    }
}

/// A resolved referent plus the number of candidates that tied for it.
#[derive(Debug, Clone, Copy)]
struct Referent {
    node: NodeId,
    ties: usize,
}

fn tie_confusion(ties: usize) -> f64 {
    if ties > 1 {
        1.0 / ties as f64
    } else {
        0.0
    }
}

#[derive(Debug, Clone)]
pub struct Session {
    graph: Graph,
    activation: ActivationState,
    lexicon: Lexicon,
    seq: u64,
    recent: RecentInputs,
    last: Signals,
}

impl Session {
    pub fn new(lexicon: Lexicon, ontology: &Ontology, params: ActivationParams) -> Self {
        let mut s = Session::from_graph(Graph::new(), lexicon, params);
        s.seed(ontology);
        s
    }

    /// English lexicon, basic ontology, default activation.
    pub fn with_ontology(ontology: &Ontology) -> Self {
        Session::new(Lexicon::english(), ontology, ActivationParams::default())
    }

    /// Wraps an existing graph, e.g. one loaded from a snapshot. The statement
    /// counter continues from the graph's sequence number.
    pub fn from_graph(graph: Graph, lexicon: Lexicon, params: ActivationParams) -> Self {
        Session {
            seq: graph.seq(),
            graph,
            activation: ActivationState::new(params),
            lexicon,
            recent: RecentInputs::default(),
            last: Signals::default(),
        }
    }

    fn seed(&mut self, ontology: &Ontology) {
        for c in &ontology.concepts {
            self.concept_or_create(c);
        }
        for (child, parent) in &ontology.is_a {
            let c = self.concept_or_create(child);
            let p = self.concept_or_create(parent);
            if self.graph.find_valid_edge(c, Rel::IS_A, p, Polarity::Affirm).is_none() {
                self.graph.add_edge(c, Rel::IS_A, p, Polarity::Affirm, 1.0, 0).expect("seed nodes exist");
            }
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn activation(&self) -> &ActivationState {
        &self.activation
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn seq(&self) -> u64 {
        self.seq
    }

    /// Signals from the most recent turn.
    pub fn last_signals(&self) -> Signals {
        self.last
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// Working memory with labels, most active first.
    pub fn working_memory(&self) -> Vec<(NodeId, &str, f64)> {
        self.activation
            .working_set(None, None)
            .into_iter()
            .map(|(n, l)| (n, self.graph.node(n).map_or("", |x| x.label.as_str()), l))
            .collect()
    }

    /// Tokenizes, parses and dispatches one line of input.
    pub fn say(&mut self, text: &str) -> Reply {
        let tokens = tokenize(text);
        match parse(&tokens, &self.lexicon) {
            Ok(Utterance::Statement(st)) => match self.ingest(&st) {
                Ok(done) => Reply::Ack { text: String::from("Ok."), signals: done.signals },
                Err(rej) => Reply::Error { message: format!("{}", rej.error), offset: None, signals: rej.signals },
            },
            Ok(Utterance::Question(q)) => Reply::Answer(self.answer(&q)),
            Err(e) => {
                let signals = self.emit(text, 0.0, 0.0, 1.0);
                Reply::Error { message: describe_parse_error(&e), offset: e.offset(), signals }
            }
        }
    }

    fn emit(&mut self, text: &str, surprise: f64, certainty: f64, confusion: f64) -> Signals {
        let boredom = self.recent.observe(text);
        let s = Signals { surprise, certainty, confusion, boredom };
        self.last = s;
        s
    }

    // ---- referents --------------------------------------------------------

    fn concept(&self, label: &str) -> Option<NodeId> {
        self.graph
            .find_by_label(label)
            .iter()
            .copied()
            .find(|&id| matches!(self.graph.node(id).map(|n| n.kind), Some(NodeKind::Concept | NodeKind::Abstract)))
    }

    fn concept_or_create(&mut self, label: &str) -> NodeId {
        match self.concept(label) {
            Some(id) => id,
            None => self.graph.add_node(NodeKind::Concept, label, None).expect("no vector"),
        }
    }

    /// Picks the most active of `cands`; ties at the top level are counted.
    fn most_active(&self, cands: &[NodeId]) -> Option<Referent> {
        let mut scored: Vec<(NodeId, f64)> = cands.iter().map(|&n| (n, self.activation.level(n))).collect();
        scored.sort_by(|a, b| self.activation.rank(*a, *b));
        let &(node, top) = scored.first()?;
        let ties = scored.iter().filter(|(_, l)| *l == top).count();
        Some(Referent { node, ties })
    }

    fn named(&self, name: &str) -> Option<Referent> {
        let cands: Vec<NodeId> = self
            .graph
            .find_by_label(name)
            .iter()
            .copied()
            .filter(|&id| self.graph.node(id).is_some_and(|n| n.kind == NodeKind::Entity))
            .collect();
        self.most_active(&cands)
    }

    /// `the N`: the most active instance of N, else the most recent one.
    fn definite(&self, noun: &str) -> Option<Referent> {
        let concept = self.concept(noun)?;
        let mut cands: Vec<NodeId> = self
            .graph
            .incident(concept, Some(Rel::INSTANCE_OF), Direction::In)
            .filter(|e| e.is_live_affirm())
            .map(|e| e.src)
            .filter(|&id| self.graph.node(id).is_some_and(|n| n.kind == NodeKind::Entity))
            .collect();
        cands.sort();
        cands.dedup();
        if cands.iter().any(|&n| self.activation.level(n) > 0.0) {
            let active: Vec<NodeId> = cands.iter().copied().filter(|&n| self.activation.level(n) > 0.0).collect();
            return self.most_active(&active);
        }
        let recency = |n: NodeId| self.graph.node(n).map_or(0, |x| x.created_seq);
        let newest = cands.iter().copied().max_by_key(|&n| (recency(n), n))?;
        let ties = cands.iter().filter(|&&n| recency(n) == recency(newest)).count();
        Some(Referent { node: newest, ties })
    }

    fn has_attr(&self, node: NodeId, adjective: &str, polarity: Polarity) -> bool {
        self.concept(adjective).is_some_and(|a| self.graph.find_valid_edge(node, Rel::HAS_ATTRIBUTE, a, polarity).is_some())
    }

    /// Rules out candidates whose recorded gender contradicts the pronoun.
    fn gender_ok(&self, node: NodeId, p: Pronoun) -> bool {
        let (want, other) = match p {
            Pronoun::She => ("female", "male"),
            Pronoun::He => ("male", "female"),
            Pronoun::It | Pronoun::They => return true,
        };
        !(self.has_attr(node, other, Polarity::Affirm) || self.has_attr(node, want, Polarity::Negate))
    }

    fn pronoun(&self, p: Pronoun) -> Option<Referent> {
        let cands: Vec<NodeId> = self
            .activation
            .working_set(None, None)
            .into_iter()
            .map(|(n, _)| n)
            .filter(|&n| self.graph.node(n).is_some_and(|x| x.kind == NodeKind::Entity))
            .filter(|&n| self.gender_ok(n, p))
            .collect();
        // entities stated to have the pronoun's gender beat ungendered ones
        let gendered: Vec<NodeId> = match p {
            Pronoun::She => cands.iter().copied().filter(|&n| self.has_attr(n, "female", Polarity::Affirm)).collect(),
            Pronoun::He => cands.iter().copied().filter(|&n| self.has_attr(n, "male", Polarity::Affirm)).collect(),
            Pronoun::It | Pronoun::They => Vec::new(),
        };
        self.most_active(if gendered.is_empty() { &cands } else { &gendered })
    }

    /// Resolves without creating anything.
    fn lookup_subject(&self, s: &Subject) -> Option<Referent> {
        match s {
            Subject::Named(n) => self.named(n),
            Subject::Definite(n) => self.definite(n),
            Subject::Pronoun(p) => self.pronoun(*p),
        }
    }

    fn lookup_object(&self, o: &Object) -> Option<Referent> {
        match o {
            Object::Indefinite(n) => self.concept(n).map(|node| Referent { node, ties: 1 }),
            Object::Definite(n) => self.definite(n),
            Object::Named(n) => self.named(n),
        }
    }

    fn create_named(&mut self, name: &str) -> NodeId {
        self.graph.add_node(NodeKind::Entity, name, None).expect("no vector")
    }

    fn create_definite(&mut self, noun: &str) -> Result<NodeId, GraphError> {
        let concept = self.concept_or_create(noun);
        let node = self.graph.add_node(NodeKind::Entity, &format!("the {noun}"), None)?;
        self.graph.add_edge(node, Rel::INSTANCE_OF, concept, Polarity::Affirm, BASE_CERTAINTY, self.seq)?;
        Ok(node)
    }

    fn resolve_object(&mut self, o: &Object) -> Result<Referent, GraphError> {
        if let Some(r) = self.lookup_object(o) {
            return Ok(r);
        }
        let node = match o {
            Object::Indefinite(n) => self.concept_or_create(n),
            Object::Definite(n) => self.create_definite(n)?,
            Object::Named(n) => self.create_named(n),
        };
        Ok(Referent { node, ties: 1 })
    }

    // ---- ingest -----------------------------------------------------------

    /// Applies a statement. A statement whose pronoun cannot be resolved is
    /// rejected and leaves the graph untouched.
    pub fn ingest(&mut self, st: &Statement) -> Result<Ingested, Rejected> {
        let subject = match &st.form {
            StatementForm::InstanceIsA { subject, .. }
            | StatementForm::HasAttribute { subject, .. }
            | StatementForm::Relation { subject, .. } => Some(subject),
            StatementForm::ConceptIsA { .. } => None,
        };
        let found = subject.and_then(|s| self.lookup_subject(s));
        if let (Some(Subject::Pronoun(p)), None) = (subject, found) {
            let signals = self.emit(&st.source_text, 0.0, 0.0, 1.0);
            return Err(Rejected { error: IngestError::Unresolved(String::from(p.as_str())), signals });
        }

        self.seq += 1;
        self.graph.set_seq(self.seq);
        let mut turn = Turn::default();
        match self.apply(st, subject, found, &mut turn) {
            Ok(()) => {}
            Err(e) => {
                let signals = self.emit(&st.source_text, 0.0, 0.0, 0.0);
                return Err(Rejected { error: e.into(), signals });
            }
        }

        // Subject and objects only: predicate nouns and adjectives are not
        // stimulated directly.
        for n in &turn.mentioned {
            let _ = self.activation.stimulate(&self.graph, *n, 1.0);
        }
        self.activation.tick(&self.graph);

        let surprise = turn.invalidated_prior.iter().copied().fold(0.0, f64::max);
        let certainty = turn.asserted_certainty.iter().copied().fold(1.0, f64::min);
        let certainty = if turn.asserted.is_empty() { 0.0 } else { certainty };
        let signals = self.emit(&st.source_text, surprise, certainty, turn.confusion);
        Ok(Ingested { seq: self.seq, asserted: turn.asserted, invalidated: turn.invalidated, signals })
    }

    fn apply(&mut self, st: &Statement, subject: Option<&Subject>, found: Option<Referent>, turn: &mut Turn) -> Result<(), GraphError> {
        let subj = match (subject, found) {
            (_, Some(r)) => {
                turn.confusion = turn.confusion.max(tie_confusion(r.ties));
                Some(r.node)
            }
            (Some(Subject::Named(n)), None) => Some(self.create_named(n)),
            (Some(Subject::Definite(n)), None) => Some(self.create_definite(n)?),
            _ => None,
        };
        match &st.form {
            StatementForm::InstanceIsA { noun, .. } => {
                let s = subj.expect("subject resolved");
                let c = self.concept_or_create(noun);
                turn.mentioned.push(s);
                self.assert_edge(s, Rel::INSTANCE_OF, c, Polarity::Affirm, turn)?;
            }
            StatementForm::ConceptIsA { noun, parent } => {
                let c = self.concept_or_create(noun);
                let p = self.concept_or_create(parent);
                turn.mentioned.push(c);
                self.assert_edge(c, Rel::IS_A, p, Polarity::Affirm, turn)?;
            }
            StatementForm::HasAttribute { adjective, polarity, .. } => {
                let s = subj.expect("subject resolved");
                let a = self.concept_or_create(adjective);
                turn.mentioned.push(s);
                self.assert_edge(s, Rel::HAS_ATTRIBUTE, a, *polarity, turn)?;
            }
            StatementForm::Relation { verb, objects, polarity, only, .. } => {
                let s = subj.expect("subject resolved");
                let rel = self.graph.rel(verb);
                turn.mentioned.push(s);
                let mut objs = Vec::with_capacity(objects.len());
                for o in objects {
                    let r = self.resolve_object(o)?;
                    turn.confusion = turn.confusion.max(tie_confusion(r.ties));
                    objs.push(r.node);
                }
                turn.mentioned.extend(objs.iter().copied());
                if *only {
                    let stale: Vec<Edge> =
                        self.graph.incident(s, Some(rel), Direction::Out).filter(|e| e.valid && !objs.contains(&e.dst)).copied().collect();
                    for e in stale {
                        self.invalidate(e, turn)?;
                    }
                }
                for o in objs {
                    self.assert_edge(s, rel, o, *polarity, turn)?;
                }
            }
        }
        Ok(())
    }

    fn invalidate(&mut self, e: Edge, turn: &mut Turn) -> Result<(), GraphError> {
        self.graph.invalidate_edge(e.id, self.seq)?;
        turn.invalidated.push(e.id);
        turn.invalidated_prior.push(e.certainty);
        Ok(())
    }

    /// Records `src -rel-> dst` with `polarity`, retracting any valid edge of
    /// the opposite polarity between the same nodes.
    fn assert_edge(&mut self, src: NodeId, rel: Rel, dst: NodeId, polarity: Polarity, turn: &mut Turn) -> Result<(), GraphError> {
        let opposite = match polarity {
            Polarity::Affirm => Polarity::Negate,
            Polarity::Negate => Polarity::Affirm,
        };
        while let Some(e) = self.graph.find_valid_edge(src, rel, dst, opposite).copied() {
            self.invalidate(e, turn)?;
        }
        let (id, c) = match self.graph.find_valid_edge(src, rel, dst, polarity).copied() {
            Some(e) => {
                let c = reinforce(e.certainty, BASE_CERTAINTY);
                self.graph.set_certainty(e.id, c)?;
                (e.id, c)
            }
            None => (self.graph.add_edge(src, rel, dst, polarity, BASE_CERTAINTY, self.seq)?, BASE_CERTAINTY),
        };
        turn.asserted.push(id);
        turn.asserted_certainty.push(c);
        Ok(())
    }

    // ---- answer -----------------------------------------------------------

    pub fn answer(&mut self, q: &Question) -> Answer {
        let mut mentioned = Vec::new();
        let (verdict, support, confusion) = match self.evaluate(&q.form, &mut mentioned) {
            Ok((v, s, ties)) => (v, s, tie_confusion(ties)),
            Err(()) => (Verdict::Unknown, Vec::new(), 1.0),
        };
        for n in &mentioned {
            let _ = self.activation.stimulate(&self.graph, *n, 1.0);
        }
        self.activation.tick(&self.graph);

        let certainty = match verdict {
            Verdict::Unknown => 0.0,
            _ => support.iter().filter_map(|&e| self.graph.edge(e)).map(|e| e.certainty).fold(1.0, f64::min),
        };
        let text = match &verdict {
            Verdict::Yes => String::from("Yes."),
            Verdict::No => String::from("No."),
            Verdict::Unknown => String::from(UNKNOWN_TEXT),
            Verdict::Phrases(p) => p.join(" and "),
        };
        let signals = self.emit(&q.source_text, 0.0, certainty, confusion);
        Answer { verdict, text, certainty, support, signals }
    }

    /// Noun phrase naming `node` in an answer.
    pub fn phrase(&self, node: NodeId) -> String {
        match self.graph.node(node) {
            Some(n) if matches!(n.kind, NodeKind::Concept | NodeKind::Abstract) && !n.label.is_empty() => {
                format!("{} {}", article(&n.label), n.label)
            }
            Some(n) if !n.label.is_empty() => n.label.clone(),
            _ => format!("#{}", node.0),
        }
    }

    /// `Err` means a referent could not be resolved.
    fn evaluate(&self, form: &QuestionForm, mentioned: &mut Vec<NodeId>) -> Result<(Verdict, Vec<EdgeId>, usize), ()> {
        match form {
            QuestionForm::WhObject { subject, verb } => {
                let s = self.lookup_subject(subject).ok_or(())?;
                mentioned.push(s.node);
                let Some(rel) = self.graph.find_rel(verb) else {
                    return Ok((Verdict::Unknown, Vec::new(), s.ties));
                };
                let edges = self.graph.neighbors(s.node, Some(rel), Direction::Out, false).map_err(|_| ())?;
                Ok(self.phrases(edges, s.ties))
            }
            QuestionForm::WhSubject { verb, object } => {
                let o = match self.lookup_object(object) {
                    Some(o) => o,
                    None if matches!(object, Object::Indefinite(_)) => return Ok((Verdict::Unknown, Vec::new(), 1)),
                    None => return Err(()),
                };
                mentioned.push(o.node);
                let Some(rel) = self.graph.find_rel(verb) else {
                    return Ok((Verdict::Unknown, Vec::new(), o.ties));
                };
                let edges = self.graph.neighbors(o.node, Some(rel), Direction::In, false).map_err(|_| ())?;
                Ok(self.phrases(edges, o.ties))
            }
            QuestionForm::YesNoIsA { subject, noun } => {
                let s = self.lookup_subject(subject).ok_or(())?;
                mentioned.push(s.node);
                let Some(target) = self.concept(noun) else {
                    return Ok((Verdict::Unknown, Vec::new(), s.ties));
                };
                let (v, sup) = self.inherits(s.node, target);
                Ok((v, sup, s.ties))
            }
            QuestionForm::YesNoAttr { subject, adjective } => {
                let s = self.lookup_subject(subject).ok_or(())?;
                mentioned.push(s.node);
                let Some(a) = self.concept(adjective) else {
                    return Ok((Verdict::Unknown, Vec::new(), s.ties));
                };
                let (v, sup) = self.check_edge(s.node, Some(Rel::HAS_ATTRIBUTE), a);
                Ok((v, sup, s.ties))
            }
            QuestionForm::YesNoRel { subject, verb, object } => {
                let s = self.lookup_subject(subject).ok_or(())?;
                mentioned.push(s.node);
                let o = match self.lookup_object(object) {
                    Some(o) => o,
                    None if matches!(object, Object::Indefinite(_)) => return Ok((Verdict::Unknown, Vec::new(), s.ties)),
                    None => return Err(()),
                };
                mentioned.push(o.node);
                let (v, sup) = self.check_edge(s.node, self.graph.find_rel(verb), o.node);
                Ok((v, sup, s.ties.max(o.ties)))
            }
        }
    }

    fn phrases(&self, edges: Vec<(Edge, NodeId)>, ties: usize) -> (Verdict, Vec<EdgeId>, usize) {
        let mut seen: Vec<NodeId> = Vec::new();
        let mut out = Vec::new();
        let mut support = Vec::new();
        for (e, n) in edges {
            if e.polarity != Polarity::Affirm || seen.contains(&n) {
                continue;
            }
            seen.push(n);
            out.push(self.phrase(n));
            support.push(e.id);
        }
        if out.is_empty() {
            (Verdict::Unknown, support, ties)
        } else {
            (Verdict::Phrases(out), support, ties)
        }
    }

    fn check_edge(&self, src: NodeId, rel: Option<Rel>, dst: NodeId) -> (Verdict, Vec<EdgeId>) {
        let Some(rel) = rel else {
            return (Verdict::Unknown, Vec::new());
        };
        if let Some(e) = self.graph.find_valid_edge(src, rel, dst, Polarity::Affirm) {
            return (Verdict::Yes, alloc::vec![e.id]);
        }
        if let Some(e) = self.graph.find_valid_edge(src, rel, dst, Polarity::Negate) {
            return (Verdict::No, alloc::vec![e.id]);
        }
        (Verdict::Unknown, Vec::new())
    }

    /// Breadth-first search up `instance-of` then `is-a*`. The first path found
    /// (shortest, earliest provenance) is the support.
    fn inherits(&self, start: NodeId, target: NodeId) -> (Verdict, Vec<EdgeId>) {
        let mut parent: BTreeMap<NodeId, Option<EdgeId>> = BTreeMap::new();
        let mut queue: VecDeque<NodeId> = VecDeque::new();
        parent.insert(start, None);
        queue.push_back(start);
        let mut found = None;
        while let Some(n) = queue.pop_front() {
            if n == target && n != start {
                found = Some(n);
                break;
            }
            let rel = if n == start { Rel::INSTANCE_OF } else { Rel::IS_A };
            let Ok(next) = self.graph.neighbors(n, Some(rel), Direction::Out, false) else { continue };
            for (e, m) in next {
                if e.polarity == Polarity::Affirm && !parent.contains_key(&m) {
                    parent.insert(m, Some(e.id));
                    queue.push_back(m);
                }
            }
        }
        if let Some(mut n) = found {
            let mut path = Vec::new();
            while let Some(Some(e)) = parent.get(&n) {
                path.push(*e);
                n = self.graph.edge(*e).expect("edge exists").src;
            }
            path.reverse();
            return (Verdict::Yes, path);
        }
        // A recorded negation anywhere on the reachable chain blocks the answer.
        for &n in parent.keys() {
            let rel = if n == start { Rel::INSTANCE_OF } else { Rel::IS_A };
            if let Some(e) = self.graph.find_valid_edge(n, rel, target, Polarity::Negate) {
                return (Verdict::No, alloc::vec![e.id]);
            }
        }
        (Verdict::Unknown, Vec::new())
    }
}

#[derive(Debug, Default)]
struct Turn {
    mentioned: Vec<NodeId>,
    asserted: Vec<EdgeId>,
    asserted_certainty: Vec<f64>,
    invalidated: Vec<EdgeId>,
    invalidated_prior: Vec<f64>,
    confusion: f64,
}

fn describe_parse_error(e: &ParseError) -> String {
    match e {
        ParseError::NoParse { offset, found: Some(w) } => {
            format!("could not parse at offset {offset} near `{w}`; try e.g. `Tina wants a cat.` or `What does Tina want?`")
        }
        ParseError::NoParse { offset, found: None } => {
            format!("sentence ended early at offset {offset}; statements end with `.` and questions with `?`")
        }
        other => format!("{other}"),
    }
}
