//! Label-lookup latency and QA accuracy benchmarks.

use std::fmt;
use std::hint::black_box;
use std::time::Instant;

use cog_core::cognition::{Ontology, Reply, Session};
use cog_core::language::Lexicon;
use cog_core::substrate::{Graph, NodeId, NodeKind};
use cog_core::ActivationParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::files::{normalize_answer, QaCorpus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// The graph's hash label index.
    Integrated,
    /// Linear search over the node list.
    NaiveScan,
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "integrated" => Ok(Backend::Integrated),
            "naive" => Ok(Backend::NaiveScan),
            other => Err(format!("unknown backend `{other}` (integrated, naive)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub calls: usize,
    pub total_ms: f64,
    pub mean_us_per_call: f64,
    pub backend: Backend,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>10} calls  {:>12.3} ms  {:>9.4} us/call  {:?}", self.calls, self.total_ms, self.mean_us_per_call, self.backend)
    }
}

pub const WARMUP_CALLS: usize = 100;

pub fn bench_label(i: usize) -> String {
    format!("node-{i}")
}

/// A graph of `nodes` entities labelled `node-<i>`.
pub fn build_bench_graph(nodes: usize) -> Graph {
    let mut g = Graph::with_capacity(nodes);
    for i in 0..nodes {
        g.add_node(NodeKind::Entity, &bench_label(i), None).expect("no vector");
    }
    g
}

/// Unindexed lookup: every node's label is compared.
pub fn naive_find(g: &Graph, label: &str) -> Vec<NodeId> {
    g.nodes().iter().filter(|n| n.label == label).map(|n| n.id).collect()
}

/// `calls` random existing labels, generated before timing starts.
pub fn bench_queries(nodes: usize, calls: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    (0..calls).map(|_| bench_label(rng.random_range(0..nodes))).collect()
}

fn run_lookups(g: &Graph, queries: &[String], backend: Backend) -> usize {
    let mut found = 0;
    match backend {
        Backend::Integrated => {
            for q in queries {
                found += black_box(g.find_by_label(black_box(q))).len();
            }
        }
        Backend::NaiveScan => {
            for q in queries {
                found += black_box(naive_find(g, black_box(q))).len();
            }
        }
    }
    found
}

/// Times `calls` lookups against an existing graph. Queries are spread over
/// `threads` reader threads when `threads > 1`.
pub fn time_lookups(g: &Graph, calls: usize, backend: Backend, threads: usize, seed: u64) -> BenchRow {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = g.node_count();
    let warm = bench_queries(nodes, WARMUP_CALLS, &mut rng);
    run_lookups(g, &warm, backend);
    let queries = bench_queries(nodes, calls, &mut rng);
    let threads = threads.max(1);
    let start = Instant::now();
    let found = if threads == 1 {
        run_lookups(g, &queries, backend)
    } else {
        let chunk = queries.len().div_ceil(threads).max(1);
        std::thread::scope(|s| {
            let handles: Vec<_> = queries.chunks(chunk).map(|c| s.spawn(move || run_lookups(g, c, backend))).collect();
            handles.into_iter().map(|h| h.join().expect("reader thread")).sum()
        })
    };
    let elapsed = start.elapsed();
    assert_eq!(found, calls, "every generated label exists exactly once");
    let total_ms = elapsed.as_secs_f64() * 1e3;
    BenchRow { calls, total_ms, mean_us_per_call: if calls == 0 { 0.0 } else { total_ms * 1e3 / calls as f64 }, backend }
}

/// Builds a `nodes`-node graph and times each entry of `call_counts`.
pub fn bench_kg(nodes: usize, call_counts: &[usize], backend: Backend, threads: usize, seed: u64) -> Vec<BenchRow> {
    let g = build_bench_graph(nodes);
    call_counts.iter().enumerate().map(|(i, &c)| time_lookups(&g, c, backend, threads, seed + i as u64)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub index: usize,
    pub question: String,
    pub got: String,
    pub expected: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct QaReport {
    pub questions: usize,
    pub correct: usize,
    /// Statements that were rejected or did not parse, with the reason.
    pub rejected_statements: Vec<(usize, String)>,
    pub mismatches: Vec<Mismatch>,
}

impl QaReport {
    pub fn accuracy(&self) -> Option<f64> {
        (self.questions > 0).then(|| self.correct as f64 / self.questions as f64)
    }
}

impl fmt::Display for QaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.accuracy() {
            None => writeln!(f, "0 questions")?,
            Some(a) => writeln!(f, "{}/{} correct ({:.2}%)", self.correct, self.questions, a * 100.0)?,
        }
        for (i, why) in &self.rejected_statements {
            writeln!(f, "statement {}: {why}", i + 1)?;
        }
        for m in &self.mismatches {
            writeln!(f, "Q{} {:?}: got {:?}, expected {:?}", m.index + 1, m.question, m.got, m.expected)?;
        }
        Ok(())
    }
}

/// Ingests the statements into a fresh session, answers every question and
/// scores exact matches after normalisation.
pub fn bench_qa(corpus: &QaCorpus, lexicon: &Lexicon, ontology: &Ontology) -> QaReport {
    let mut s = Session::new(lexicon.clone(), ontology, ActivationParams::default());
    let mut rejected = Vec::new();
    for (i, line) in corpus.statements.iter().enumerate() {
        match s.say(line) {
            Reply::Ack { .. } => {}
            Reply::Answer(_) => rejected.push((i, "is a question".to_string())),
            Reply::Error { message, .. } => rejected.push((i, message)),
        }
    }
    let mut correct = 0;
    let mut mismatches = Vec::new();
    for (i, (q, want)) in corpus.questions.iter().zip(&corpus.expected).enumerate() {
        let got = match s.say(q) {
            Reply::Answer(a) => normalize_answer(&a.text),
            Reply::Ack { .. } => "(statement)".into(),
            Reply::Error { message, .. } => format!("(error: {message})"),
        };
        if got == *want {
            correct += 1;
        } else {
            mismatches.push(Mismatch { index: i, question: q.clone(), got, expected: want.clone() });
        }
    }
    QaReport { questions: corpus.questions.len(), correct, rejected_statements: rejected, mismatches }
}
