//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cog::bench::{bench_qa, build_bench_graph, time_lookups, Backend};
use cog::files::QaCorpus;
use cog::gen::{gen_corpus, gen_percepts, motion_dims, MotionKind};
use cog::snapshot;
use cog_core::activation::{ActivationParams, ActivationState};
use cog_core::cognition::{Ontology, Reply, Session, Verdict, UNKNOWN_TEXT};
use cog_core::concepts::{abstract_concepts, form_concepts, ConceptParams};
use cog_core::language::{article, parse, parse_question, parse_statement, tokenize, Lexicon, QuestionForm, StatementForm, Subject};
use cog_core::substrate::{Direction, Graph, NodeId, NodeKind, Polarity, Rel};
use cog_core::vectors::{prototype_update, similarity, Dim, FeatureVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);
type Suite = (&'static str, fn() -> Result<(), String>);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lookup_latency() -> Outcome {
    let start = Instant::now();
    let g = build_bench_graph(1_000_000);
    let row = time_lookups(&g, 1_000_000, Backend::Integrated, 1, 0);
    let wall = start.elapsed();
    check(
        row.mean_us_per_call <= 2.0 && row.total_ms <= 2000.0 && wall <= Duration::from_secs(120),
        format!("mean {:.4} us/call, total {:.1} ms, wall {:.1} s", row.mean_us_per_call, row.total_ms, wall.as_secs_f64()),
    )
}

fn scaling_shape() -> Outcome {
    let g = build_bench_graph(1_000_000);
    let totals: Vec<f64> = [1_000, 100_000, 1_000_000].iter().map(|&c| time_lookups(&g, c, Backend::Integrated, 1, 7).total_ms).collect();
    let ratio = totals[2] / totals[1];
    check((5.0..=20.0).contains(&ratio), format!("totals {:.3} / {:.2} / {:.2} ms, 1M/100k = {ratio:.2}", totals[0], totals[1], totals[2]))
}

fn baseline_ratio() -> Outcome {
    let g = build_bench_graph(100_000);
    let fast = time_lookups(&g, 100_000, Backend::Integrated, 1, 3);
    let slow = time_lookups(&g, 100_000, Backend::NaiveScan, 1, 3);
    let speedup = slow.total_ms / fast.total_ms;
    check(speedup >= 100.0, format!("integrated {:.2} ms, naive {:.0} ms, speedup {speedup:.0}x", fast.total_ms, slow.total_ms))
}

fn tina() -> Outcome {
    let start = Instant::now();
    let mut s = Session::with_ontology(&Ontology::basic());
    s.say("Tina wants a dog and a cat.");
    let surprise = s.say("Actually, Tina only wants a cat.").signals().surprise;
    let answer = s.say("What does Tina want?").text().to_string();
    let g = s.graph();
    let want = g.find_rel("want").ok_or("no want relation")?;
    let tina = g.find_by_label("Tina")[0];
    let dog = g.find_by_label("dog")[0];
    let dog_edges: Vec<bool> = g.incident(tina, Some(want), Direction::Out).filter(|e| e.dst == dog).map(|e| e.valid).collect();
    let elapsed = start.elapsed();
    check(
        answer == "a cat" && dog_edges == [false] && surprise >= 0.9 && elapsed < Duration::from_secs(1),
        format!("answer {answer:?}, dog edge valid flags {dog_edges:?}, surprise {surprise:.2}, {:.1} ms", elapsed.as_secs_f64() * 1e3),
    )
}

fn generated_corpora() -> Outcome {
    let start = Instant::now();
    let (lex, onto) = (Lexicon::english(), Ontology::basic());
    let mut right = 0;
    let mut total = 0;
    let mut bad = Vec::new();
    for seed in 0..50 {
        let c = gen_corpus(10, 100, 100, seed).map_err(|e| e.to_string())?;
        let r = bench_qa(&c, &lex, &onto);
        right += r.correct;
        total += r.questions;
        if r.correct != r.questions || !r.rejected_statements.is_empty() {
            bad.push(seed);
        }
    }
    let elapsed = start.elapsed();
    check(
        bad.is_empty() && elapsed < Duration::from_secs(60),
        format!("{right}/{total} answers match, failing seeds {bad:?}, {:.2} s", elapsed.as_secs_f64()),
    )
}

fn bundled_corpus() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus");
    let c = QaCorpus::load_dir(&dir).map_err(|e| e.to_string())?;
    let lex = Lexicon::english();
    let onto = Ontology::basic();
    let mut revisions = 0;
    let mut pronouns = 0;
    for line in &c.statements {
        let st = parse_statement(&tokenize(line), &lex).map_err(|e| format!("{line}: {e}"))?;
        revisions += usize::from(match &st.form {
            StatementForm::Relation { polarity, only, .. } => *only || *polarity == Polarity::Negate,
            StatementForm::HasAttribute { polarity, .. } => *polarity == Polarity::Negate,
            _ => false,
        });
        let subject = match &st.form {
            StatementForm::InstanceIsA { subject, .. }
            | StatementForm::HasAttribute { subject, .. }
            | StatementForm::Relation { subject, .. } => Some(subject),
            StatementForm::ConceptIsA { .. } => None,
        };
        pronouns += usize::from(matches!(subject, Some(Subject::Pronoun(_))));
    }
    // count is-a questions the system proves over two or more hops
    let mut s = Session::new(lex.clone(), &onto, ActivationParams::default());
    for line in &c.statements {
        s.say(line);
    }
    let mut deep = 0;
    for q in &c.questions {
        let is_isa = matches!(parse_question(&tokenize(q), &lex).map(|q| q.form), Ok(QuestionForm::YesNoIsA { .. }));
        if let Reply::Answer(a) = s.say(q) {
            deep += usize::from(is_isa && a.verdict == Verdict::Yes && a.support.len() >= 2);
        }
    }
    let r = bench_qa(&c, &lex, &onto);
    check(
        c.statements.len() == 120 && c.questions.len() == 150 && revisions >= 20 && deep >= 20 && pronouns >= 10 && r.correct == r.questions,
        format!(
            "{} statements, {} questions, {revisions} revisions/negations, {deep} multi-hop is-a, {pronouns} pronoun statements, {}/{} correct",
            c.statements.len(),
            c.questions.len(),
            r.correct,
            r.questions
        ),
    )
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-300)
}

fn concept_formation() -> Outcome {
    let params = ConceptParams::default();
    let mut hits = 0;
    let mut worst_proto = 0.0f64;
    for seed in 0..100u64 {
        let mut g = Graph::new();
        let schema = g.define_schema("motion", motion_dims()).map_err(|e| e.to_string())?;
        let mut ids = Vec::new();
        let mut pts: Vec<Vec<f64>> = Vec::new();
        for (i, kind) in MotionKind::ALL.into_iter().enumerate() {
            for v in gen_percepts(&schema, kind, 30, 0.05, seed * 3 + i as u64).map_err(|e| e.to_string())? {
                pts.push(v.values().to_vec());
                ids.push(g.add_node(NodeKind::Entity, "", Some(v)).map_err(|e| e.to_string())?);
            }
        }
        let concepts = form_concepts(&mut g, &ids, &params).map_err(|e| e.to_string())?;
        hits += usize::from(concepts.len() == 3);
        // prototypes are the batch means of their members
        for &c in &concepts {
            let proto = g.node(c).and_then(|n| n.vector.clone()).ok_or("concept without prototype")?;
            let members: Vec<&Vec<f64>> = ids
                .iter()
                .zip(&pts)
                .filter(|(n, _)| g.incident(**n, Some(Rel::INSTANCE_OF), Direction::Out).any(|e| e.valid && e.dst == c))
                .map(|(_, p)| p)
                .collect();
            for d in 0..3 {
                let batch = members.iter().map(|m| m[d]).sum::<f64>() / members.len() as f64;
                worst_proto = worst_proto.max((proto.values()[d] - batch).abs() / batch.abs().max(1e-300));
            }
        }
        if seed < 10 && concepts.len() >= 2 {
            abstraction_matches_batch(&mut g, &concepts)?;
        }
    }
    check(hits >= 95 && worst_proto <= 1e-9, format!("{hits}/100 seeds gave 3 concepts, worst prototype error {worst_proto:.1e}"))
}

/// Abstraction over every pair of formed concepts, and over a formed concept
/// and a concept on an overlapping schema.
fn abstraction_matches_batch(g: &mut Graph, concepts: &[NodeId]) -> Result<(), String> {
    let proto = |g: &Graph, c: NodeId| g.node(c).and_then(|n| n.vector.clone()).unwrap();
    let gait = g
        .intern_schema("gait", vec![Dim::new("speed", 0.0, 20.0), Dim::new("hue", 0.0, 1.0), Dim::new("amplitude", 0.0, 5.0)])
        .map_err(|e| e.to_string())?;
    let other = g
        .add_node(NodeKind::Concept, "strider", Some(FeatureVector::new(gait, vec![12.5, 0.3, 2.25]).unwrap()))
        .map_err(|e| e.to_string())?;
    let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
    for (i, &a) in concepts.iter().enumerate() {
        for &b in &concepts[i + 1..] {
            pairs.push((a, b));
        }
        pairs.push((a, other));
    }
    for (a, b) in pairs {
        let (pa, pb) = (proto(g, a), proto(g, b));
        let abs = abstract_concepts(g, &[a, b], "").map_err(|e| e.to_string())?;
        let v = proto(g, abs);
        let want_dims: Vec<&str> = pa.schema().dims().iter().map(|d| d.name.as_str()).filter(|n| pb.get(n).is_some()).collect();
        let got_dims: Vec<&str> = v.schema().dims().iter().map(|d| d.name.as_str()).collect();
        if got_dims != want_dims {
            return Err(format!("abstraction dims {got_dims:?}, expected {want_dims:?}"));
        }
        for (d, got) in want_dims.iter().zip(v.values()) {
            let batch = (pa.get(d).unwrap() + pb.get(d).unwrap()) / 2.0;
            if !rel_close(*got, batch) {
                return Err(format!("abstraction {d}: {got} vs {batch}"));
            }
        }
    }
    Ok(())
}

// ---- compact property suites ---------------------------------------------

fn activation_fuzz() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut g = Graph::new();
    let r = g.rel("link");
    let n = 60u64;
    for i in 0..n {
        g.add_node(NodeKind::Entity, &format!("n{i}"), None).unwrap();
    }
    for k in 0..150 {
        g.add_edge(NodeId(rng.random_range(0..n)), r, NodeId(rng.random_range(0..n)), Polarity::Affirm, 1.0, k).unwrap();
    }
    let mut st = ActivationState::new(ActivationParams::default());
    for i in 0..10_000 {
        if rng.random_bool(0.4) {
            st.stimulate(&g, NodeId(rng.random_range(0..n)), rng.random_range(0.01..=1.0)).unwrap();
        } else {
            let pre = st.total();
            st.tick(&g);
            if st.total() > pre + 1e-9 {
                return Err(format!("op {i}: tick raised total {pre} -> {}", st.total()));
            }
        }
        if let Some((node, l)) = st.levels().find(|(_, l)| !(0.0..=1.0).contains(l)) {
            return Err(format!("op {i}: {node} at {l}"));
        }
    }
    for _ in 0..200 {
        st.tick(&g);
    }
    if st.levels().count() != 0 {
        return Err("activity did not die out".into());
    }
    Ok(())
}

fn similarity_axioms() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut g = Graph::new();
    let s = g.define_schema("p", vec![Dim::new("x", -1.0, 1.0), Dim::new("y", 0.0, 100.0), Dim::new("z", 5.0, 6.0)]).unwrap();
    let draw =
        |rng: &mut ChaCha8Rng| FeatureVector::new(s.clone(), s.dims().iter().map(|d| rng.random_range(d.min..=d.max)).collect()).unwrap();
    for _ in 0..2000 {
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        let ab = similarity(&a, &b).unwrap();
        if (similarity(&a, &a).unwrap() - 1.0).abs() > 1e-12 || ab != similarity(&b, &a).unwrap() || !(0.0..=1.0).contains(&ab) {
            return Err(format!("identity/symmetry/range broken for {a:?} {b:?}"));
        }
        // moving b toward a on one dimension never lowers similarity
        let d = rng.random_range(0..3);
        let mut closer = b.values().to_vec();
        closer[d] = (closer[d] + a.values()[d]) / 2.0;
        let closer = FeatureVector::new(s.clone(), closer).unwrap();
        if similarity(&a, &closer).unwrap() < ab - 1e-12 {
            return Err("monotonicity broken".into());
        }
    }
    Ok(())
}

fn incremental_mean() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut g = Graph::new();
    let s = g.define_schema("p", vec![Dim::new("x", 0.0, 1000.0), Dim::new("y", -3.0, 3.0)]).unwrap();
    for _ in 0..200 {
        let n = rng.random_range(1..300);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.random_range(0.0..=1000.0), rng.random_range(-3.0..=3.0)]).collect();
        let mut proto = FeatureVector::new(s.clone(), pts[0].clone()).unwrap();
        for (i, p) in pts.iter().enumerate().skip(1) {
            proto = prototype_update(&proto, &FeatureVector::new(s.clone(), p.clone()).unwrap(), i + 1).unwrap();
        }
        for d in 0..2 {
            let batch = pts.iter().map(|p| p[d]).sum::<f64>() / n as f64;
            if (proto.values()[d] - batch).abs() > 1e-9 * batch.abs().max(1.0) {
                return Err(format!("dim {d}: {} vs {batch}", proto.values()[d]));
            }
        }
    }
    Ok(())
}

fn parser_totality() -> Result<(), String> {
    const VOCAB: [&str; 24] = [
        "a", "an", "the", "is", "not", "does", "only", "and", "Actually", ",", ".", "?", "She", "What", "Who", "Is", "Does", "Tina", "dog",
        "wants", "red", "blorp", "", "1.5",
    ];
    let lex = Lexicon::english();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for i in 0..100_000 {
        let text: String = if i % 10 == 0 {
            (0..rng.random_range(0..40)).map(|_| char::from_u32(rng.random_range(0x20..0x250)).unwrap_or('?')).collect()
        } else {
            (0..rng.random_range(0..12)).map(|_| VOCAB[rng.random_range(0..VOCAB.len())]).collect::<Vec<_>>().join(" ")
        };
        if let Err(e) = parse(&tokenize(&text), &lex) {
            if e.offset().is_some_and(|o| o > text.chars().count()) {
                return Err(format!("offset past end for {text:?}"));
            }
        }
    }
    Ok(())
}

fn snapshot_properties() -> Result<(), String> {
    let lex = Lexicon::english();
    let params = ActivationParams::default();
    for seed in 0..10 {
        let c = gen_corpus(10, 100, 100, seed).map_err(|e| e.to_string())?;
        let mut live = Session::new(lex.clone(), &Ontology::basic(), params);
        for st in &c.statements {
            live.say(st);
        }
        let first = snapshot::to_string(live.graph());
        if snapshot::to_string(live.graph()) != first {
            return Err(format!("seed {seed}: two saves differ"));
        }
        let g = snapshot::load_str(&first).map_err(|e| e.to_string())?;
        if snapshot::to_string(&g) != first {
            return Err(format!("seed {seed}: save after load differs"));
        }
        let mut back = Session::from_graph(g, lex.clone(), params);
        for q in &c.questions {
            if live.say(q).text() != back.say(q).text() {
                return Err(format!("seed {seed}: {q:?} changed after reload"));
            }
        }
    }
    Ok(())
}

fn word(i: usize) -> String {
    let mut s = String::from("q");
    let mut n = i;
    loop {
        s.push((b'a' + (n % 26) as u8) as char);
        n /= 26;
        if n == 0 {
            return s;
        }
    }
}

fn inheritance_bfs() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let concepts = 1000;
    let mut s = Session::with_ontology(&Ontology::empty());
    let mut parents: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for _ in 0..2500 {
        let p = rng.random_range(0..concepts - 1);
        let c = rng.random_range(p + 1..concepts);
        let (cw, pw) = (word(c), word(p));
        s.say(&format!("{} {cw} is {} {pw}.", if article(&cw) == "an" { "An" } else { "A" }, article(&pw)));
        parents.entry(c).or_default().push(p);
    }
    let mut kinds = Vec::new();
    for e in 0..20 {
        let c = rng.random_range(0..concepts);
        s.say(&format!("Xo{} is {} {}.", word(e), article(&word(c)), word(c)));
        kinds.push(c);
    }
    for _ in 0..300 {
        let e = rng.random_range(0..20);
        let t = rng.random_range(0..concepts);
        let mut seen = BTreeSet::from([kinds[e]]);
        let mut q = VecDeque::from([kinds[e]]);
        while let Some(n) = q.pop_front() {
            for &p in parents.get(&n).into_iter().flatten() {
                if seen.insert(p) {
                    q.push_back(p);
                }
            }
        }
        let want = if seen.contains(&t) { "Yes." } else { UNKNOWN_TEXT };
        let got = s.say(&format!("Is Xo{} {} {}?", word(e), article(&word(t)), word(t))).text().to_string();
        if got != want {
            return Err(format!("Xo{} is-a {}: got {got:?}, expected {want:?}", word(e), word(t)));
        }
    }
    Ok(())
}

fn property_suites() -> Outcome {
    let suites: [Suite; 6] = [
        ("activation", activation_fuzz),
        ("similarity", similarity_axioms),
        ("prototype", incremental_mean),
        ("parser", parser_totality),
        ("snapshot", snapshot_properties),
        ("inheritance", inheritance_bfs),
    ];
    let mut failed = Vec::new();
    for (name, f) in suites {
        if let Err(e) = f() {
            failed.push(format!("{name}: {e}"));
        }
    }
    if failed.is_empty() {
        Ok(format!("{} suites green", suites.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Check; 8] = [
        ("lookup latency", lookup_latency),
        ("scaling shape", scaling_shape),
        ("baseline ratio", baseline_ratio),
        ("tina scenario", tina),
        ("oracle equivalence", generated_corpora),
        ("bundled corpus", bundled_corpus),
        ("concept formation", concept_formation),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {}. {name}: {detail}", i + 1);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
