use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use cog::bench::{bench_kg, bench_qa, Backend};
use cog::files::{parse_lexicon, parse_ontology, QaCorpus};
use cog::gen::{gen_corpus, gen_percepts, motion_schema, MotionKind};
use cog::serve::AppState;
use cog::{repl, snapshot, BUNDLED_LEXICON, BUNDLED_ONTOLOGY};
use cog_core::cognition::{Ontology, Session};
use cog_core::concepts::{form_concepts, ConceptParams};
use cog_core::language::Lexicon;
use cog_core::substrate::{Graph, NodeKind};
use cog_core::ActivationParams;

#[derive(Parser)]
#[command(name = "cog", version, about = "Cognitive knowledge-graph toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Latency and accuracy benchmarks.
    #[command(subcommand)]
    Bench(BenchCmd),
    /// Generate percepts or QA corpora.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Cluster generated percepts into concepts and print the prototypes.
    Cluster {
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = ConceptParams::default().tau_cluster)]
        tau_cluster: f64,
    },
    /// Interactive conversation.
    Repl {
        #[arg(long)]
        load: Option<PathBuf>,
        #[command(flatten)]
        setup: SessionArgs,
    },
    /// Local HTTP service for the companion UI.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        load: Option<PathBuf>,
        #[command(flatten)]
        setup: SessionArgs,
    },
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Random label lookups on a graph of `node-<i>` entities.
    Kg {
        #[arg(long, default_value_t = 1_000_000)]
        nodes: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000,100000,1000000")]
        calls: Vec<usize>,
        #[arg(long, default_value = "integrated")]
        backend: Backend,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print rows as JSON lines.
        #[arg(long)]
        json: bool,
    },
    /// Score a QA corpus.
    Qa {
        #[arg(long)]
        statements: PathBuf,
        #[arg(long)]
        questions: PathBuf,
        #[arg(long)]
        expected: PathBuf,
        #[command(flatten)]
        setup: SessionArgs,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Noisy motion percepts as CSV.
    Percepts {
        #[arg(long)]
        kind: MotionKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// A QA corpus with oracle answers, written as three files into a directory.
    Corpus {
        #[arg(long, default_value_t = 10)]
        entities: usize,
        #[arg(long, default_value_t = 100)]
        statements: usize,
        #[arg(long, default_value_t = 100)]
        questions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        o: PathBuf,
    },
}

#[derive(Args, Clone)]
struct SessionArgs {
    /// Ontology file (default: bundled mini-ontology).
    #[arg(long)]
    ontology: Option<PathBuf>,
    /// Lexicon file (default: bundled English lexicon).
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long, default_value_t = ActivationParams::default().decay())]
    decay: f64,
    #[arg(long, default_value_t = ActivationParams::default().spread_factor())]
    spread: f64,
    #[arg(long, default_value_t = ActivationParams::default().floor())]
    floor: f64,
    #[arg(long, default_value_t = ActivationParams::default().working_threshold())]
    threshold: f64,
}

impl SessionArgs {
    fn lexicon(&self) -> Result<Lexicon> {
        match &self.lexicon {
            Some(p) => parse_lexicon(&read(p)?).with_context(|| p.display().to_string()),
            None => parse_lexicon(BUNDLED_LEXICON),
        }
    }

    fn ontology(&self) -> Result<Ontology> {
        match &self.ontology {
            Some(p) => parse_ontology(&read(p)?).with_context(|| p.display().to_string()),
            None => parse_ontology(BUNDLED_ONTOLOGY),
        }
    }

    fn params(&self) -> Result<ActivationParams> {
        Ok(ActivationParams::new(self.decay, self.spread, self.floor, self.threshold)?)
    }

    fn session(&self, load: Option<&Path>) -> Result<(Session, Lexicon, Ontology, ActivationParams)> {
        let (lex, onto, params) = (self.lexicon()?, self.ontology()?, self.params()?);
        let session = match load {
            Some(p) => Session::from_graph(snapshot::load_file(p).with_context(|| p.display().to_string())?, lex.clone(), params),
            None => Session::new(lex.clone(), &onto, params),
        };
        Ok((session, lex, onto, params))
    }
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn output(o: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match o {
        Some(p) => Box::new(BufWriter::new(std::fs::File::create(p).with_context(|| p.display().to_string())?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Bench(BenchCmd::Kg { nodes, calls, backend, threads, seed, json }) => {
            let est_mb = nodes.saturating_mul(200) / (1 << 20);
            eprintln!("building {nodes} nodes (roughly {est_mb} MiB)");
            for row in bench_kg(nodes, &calls, backend, threads, seed) {
                if json {
                    println!("{}", serde_json::to_string(&row)?);
                } else {
                    println!("{row}");
                }
            }
        }
        Cmd::Bench(BenchCmd::Qa { statements, questions, expected, setup }) => {
            let corpus = QaCorpus::load(&statements, &questions, &expected)?;
            print!("{}", bench_qa(&corpus, &setup.lexicon()?, &setup.ontology()?));
        }
        Cmd::Gen(GenCmd::Percepts { kind, n, noise, seed, o }) => {
            let schema = motion_schema();
            let mut out = output(&o)?;
            writeln!(out, "{}", schema.dims().iter().map(|d| d.name.as_str()).collect::<Vec<_>>().join(","))?;
            for v in gen_percepts(&schema, kind, n, noise, seed)? {
                writeln!(out, "{}", v.values().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))?;
            }
            out.flush()?;
        }
        Cmd::Gen(GenCmd::Corpus { entities, statements, questions, seed, o }) => {
            gen_corpus(entities, statements, questions, seed)?.save(&o)?;
            eprintln!("wrote {}", o.display());
        }
        Cmd::Cluster { n, noise, seed, tau_cluster } => {
            let params = ConceptParams::new(ConceptParams::default().tau_match, tau_cluster)?;
            let mut g = Graph::new();
            let schema = g.define_schema("motion", cog::gen::motion_dims())?;
            let mut ids = Vec::new();
            for (i, kind) in MotionKind::ALL.into_iter().enumerate() {
                for v in gen_percepts(&schema, kind, n, noise, seed.wrapping_mul(3).wrapping_add(i as u64))? {
                    ids.push(g.add_node(NodeKind::Entity, "", Some(v))?);
                }
            }
            let concepts = form_concepts(&mut g, &ids, &params)?;
            println!("{} concepts", concepts.len());
            for c in concepts {
                let members = g.incident(c, Some(cog_core::Rel::INSTANCE_OF), cog_core::Direction::In).count();
                let v = g.node(c).and_then(|n| n.vector.as_ref()).expect("concepts carry prototypes");
                println!("#{}: {members} members, prototype {:?}", c.0, v.values());
            }
        }
        Cmd::Repl { load, setup } => {
            let (mut session, ..) = setup.session(load.as_deref())?;
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            repl::run(&mut session, stdin.lock(), io::stdout().lock(), prompt)?;
        }
        Cmd::Serve { port, load, setup } => {
            let (session, lex, onto, params) = setup.session(load.as_deref())?;
            let state = Arc::new(AppState::with_session(session, lex, onto, params));
            tokio::runtime::Runtime::new()?.block_on(cog::serve::serve(state, port))?;
        }
    }
    Ok(())
}
