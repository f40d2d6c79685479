//! Seeded generators for percept vectors and QA corpora.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{bail, Result};
use cog_core::cognition::Ontology;
use cog_core::language::{article, Lexicon};
use cog_core::vectors::{AttributeSchema, Dim, FeatureVector, SchemaRegistry};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::files::{normalize_answer, QaCorpus};
use crate::oracle::expected_answers;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotionKind {
    Bouncing,
    Rolling,
    Floating,
}

impl MotionKind {
    pub const ALL: [MotionKind; 3] = [MotionKind::Bouncing, MotionKind::Rolling, MotionKind::Floating];

    pub fn center(self) -> [f64; 3] {
        match self {
            MotionKind::Bouncing => [6.0, 3.0, 4.0],
            MotionKind::Rolling => [1.0, 0.5, 8.0],
            MotionKind::Floating => [0.2, 1.0, 1.0],
        }
    }
}

impl std::str::FromStr for MotionKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bouncing" => MotionKind::Bouncing,
            "rolling" => MotionKind::Rolling,
            "floating" => MotionKind::Floating,
            other => bail!("unknown percept kind `{other}` (bouncing, rolling, floating)"),
        })
    }
}

pub fn motion_dims() -> Vec<Dim> {
    vec![Dim::new("frequency", 0.0, 10.0), Dim::new("amplitude", 0.0, 5.0), Dim::new("speed", 0.0, 20.0)]
}

/// A standalone `motion` schema, for callers without a graph.
pub fn motion_schema() -> Arc<AttributeSchema> {
    SchemaRegistry::new().define("motion", motion_dims()).expect("valid schema")
}

/// `n` noisy samples around the kind's center. `noise_sigma` is a fraction of
/// each dimension's range; samples are clamped into range.
pub fn gen_percepts(schema: &Arc<AttributeSchema>, kind: MotionKind, n: usize, noise_sigma: f64, seed: u64) -> Result<Vec<FeatureVector>> {
    if n == 0 {
        bail!("n must be at least 1");
    }
    if !(noise_sigma >= 0.0 && noise_sigma.is_finite()) {
        bail!("noise must be a finite fraction >= 0");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = kind.center();
    let noise: Vec<Normal<f64>> =
        schema.dims().iter().map(|d| Normal::new(0.0, noise_sigma * d.span()).expect("sigma is finite")).collect();
    (0..n)
        .map(|_| {
            let vals: Vec<f64> =
                center.iter().zip(schema.dims()).zip(&noise).map(|((c, d), z)| (c + z.sample(&mut rng)).clamp(d.min, d.max)).collect();
            Ok(FeatureVector::new(schema.clone(), vals)?)
        })
        .collect()
}

const SYLLABLES: [&str; 12] = ["ka", "lo", "mi", "ra", "te", "no", "vi", "su", "be", "da", "fe", "zo"];

/// Made-up names such as `Kalo`, distinct for distinct `i`.
fn made_up_name(i: usize) -> String {
    let mut s = String::new();
    let mut n = i + SYLLABLES.len();
    while n > 0 {
        s.push_str(SYLLABLES[n % SYLLABLES.len()]);
        n /= SYLLABLES.len();
    }
    let mut c = s.chars();
    let f = c.next().unwrap().to_ascii_uppercase();
    format!("{f}{}", c.as_str())
}

/// Made-up lowercase nouns such as `blikor`.
fn made_up_noun(i: usize) -> String {
    const ON: [&str; 8] = ["bl", "gr", "pl", "tr", "sn", "kr", "fl", "dr"];
    const NU: [&str; 4] = ["ik", "ob", "ax", "um"];
    format!("{}{}{}", ON[i % 8], NU[(i / 8) % 4], ["or", "en", "it", "ap"][(i / 32) % 4]) + &"o".repeat(i / 128)
}

/// Nouns only ever used with `the`; they never get named instances.
const DEFINITE_NOUNS: [&str; 4] = ["ball", "car", "doll", "bone"];

#[derive(Debug, Clone)]
struct Person {
    name: String,
    gender: Option<bool>,
}

struct CorpusGen<'a> {
    rng: ChaCha8Rng,
    lex: &'a Lexicon,
    people: Vec<Person>,
    /// Nouns usable as `a N` objects and instance kinds (never definite).
    nouns: Vec<String>,
    /// Generated nouns in DAG order: a noun may only get parents earlier in the list.
    fresh: Vec<String>,
    adjectives: Vec<String>,
    verbs: Vec<String>,
    /// (subject phrase, verb) pairs with at least one assertion.
    relations: BTreeMap<(String, String), Vec<String>>,
    subjects: Vec<String>,
    /// (subject key, adjective) and (subject key, noun) pairs that were stated.
    attrs: Vec<(String, String)>,
    kinds: Vec<(String, String)>,
    /// Gender of the subject of the previous statement, if it was an entity.
    previous: Option<Option<bool>>,
}

impl CorpusGen<'_> {
    fn object_phrase(&mut self) -> String {
        let n = self.nouns.choose(&mut self.rng).unwrap();
        format!("{} {n}", article(n))
    }

    fn objects(&mut self) -> Vec<String> {
        let k = if self.rng.random_bool(0.3) { 2 } else { 1 };
        (0..k).map(|_| self.object_phrase()).collect()
    }

    /// A subject phrase for a new statement, possibly a pronoun for the
    /// previous subject. Returns (phrase at sentence start, key, gender).
    fn subject(&mut self, allow_pronoun: bool) -> (String, String, Option<bool>) {
        if allow_pronoun {
            if let Some(g) = self.previous {
                if self.rng.random_bool(0.25) {
                    let p = match g {
                        Some(true) => "She",
                        Some(false) => "He",
                        None => "It",
                    };
                    let key = self.subjects.last().cloned().unwrap();
                    return (p.into(), key, g);
                }
            }
        }
        if self.rng.random_bool(0.15) {
            let n = DEFINITE_NOUNS.choose(&mut self.rng).unwrap();
            let key = format!("the {n}");
            return (format!("The {n}"), key, None);
        }
        let p = self.people.choose(&mut self.rng).unwrap().clone();
        (p.name.clone(), p.name, p.gender)
    }

    fn third(&self, verb: &str) -> String {
        self.lex.third_person(verb).unwrap().to_string()
    }

    fn relation(&mut self) -> String {
        let (phrase, key, g) = self.subject(true);
        let verb = self.verbs.choose(&mut self.rng).unwrap().clone();
        let objs = self.objects();
        self.relations.entry((key.clone(), verb.clone())).or_default().extend(objs.iter().cloned());
        self.done(key, Some(g));
        format!("{phrase} {} {}.", self.third(&verb), objs.join(" and "))
    }

    fn revision(&mut self) -> String {
        let known: Vec<(String, String)> = self.relations.keys().cloned().collect();
        let Some((key, verb)) = known.choose(&mut self.rng).cloned() else {
            return self.relation();
        };
        let phrase = key.clone();
        let cap = |s: &str| {
            let mut c = s.chars();
            c.next().map(|f| f.to_uppercase().collect::<String>() + c.as_str()).unwrap_or_default()
        };
        let seen = self.relations[&(key.clone(), verb.clone())].clone();
        let gender = self.people.iter().find(|p| p.name == key).and_then(|p| p.gender);
        let text = if self.rng.random_bool(0.5) {
            let mut keep: Vec<String> = vec![seen.choose(&mut self.rng).unwrap().clone()];
            if self.rng.random_bool(0.3) {
                keep.push(self.object_phrase());
            }
            self.relations.insert((key.clone(), verb.clone()), keep.clone());
            format!("Actually, {phrase} only {} {}.", self.third(&verb), keep.join(" and "))
        } else {
            let obj = if self.rng.random_bool(0.7) { seen.choose(&mut self.rng).unwrap().clone() } else { self.object_phrase() };
            format!("{} does not {verb} {obj}.", cap(&phrase))
        };
        self.done(key, Some(gender));
        text
    }

    fn taxonomy(&mut self) -> String {
        if self.rng.random_bool(0.5) && self.fresh.len() > 1 {
            // a fresh noun gets a parent earlier in the list, or an ontology concept
            let i = self.rng.random_range(1..self.fresh.len());
            let child = self.fresh[i].clone();
            let parent = if self.rng.random_bool(0.6) {
                self.fresh[self.rng.random_range(0..i)].clone()
            } else {
                ["animal", "mammal", "bird", "thing", "toy", "food", "person"].choose(&mut self.rng).unwrap().to_string()
            };
            self.previous = None;
            let a = article(&child);
            format!("{}{} {child} is {} {parent}.", a[..1].to_uppercase(), &a[1..], article(&parent))
        } else {
            let (phrase, key, g) = self.subject(false);
            let noun = if key.starts_with("the ") {
                ["toy", "thing", "animal"].choose(&mut self.rng).unwrap().to_string()
            } else {
                self.nouns.choose(&mut self.rng).unwrap().clone()
            };
            self.kinds.push((key.clone(), noun.clone()));
            self.done(key, Some(g));
            format!("{phrase} is {} {noun}.", article(&noun))
        }
    }

    fn attribute(&mut self) -> String {
        let (phrase, key, g) = self.subject(true);
        let adj = self.adjectives.choose(&mut self.rng).unwrap().clone();
        let not = if self.rng.random_bool(0.3) { "not " } else { "" };
        self.attrs.push((key.clone(), adj.clone()));
        self.done(key, Some(g));
        format!("{phrase} is {not}{adj}.")
    }

    fn done(&mut self, key: String, gender: Option<Option<bool>>) {
        self.subjects.push(key);
        self.previous = gender;
    }

    /// A stated (subject, verb, object) triple, if any.
    fn stated(&mut self) -> Option<(String, String, String)> {
        let known: Vec<(&(String, String), &Vec<String>)> = self.relations.iter().filter(|(_, o)| !o.is_empty()).collect();
        let ((s, v), objs) = known.choose(&mut self.rng)?;
        Some((s.clone(), v.clone(), objs.choose(&mut self.rng)?.clone()))
    }

    fn question(&mut self) -> String {
        let subj = |g: &mut Self| -> String {
            if g.rng.random_bool(0.8) && !g.subjects.is_empty() {
                g.subjects.choose(&mut g.rng).unwrap().clone()
            } else {
                g.people.choose(&mut g.rng).unwrap().name.clone()
            }
        };
        match self.rng.random_range(0..5) {
            0 => {
                let known: Vec<(String, String)> = self.relations.keys().cloned().collect();
                let (s, v) = match known.choose(&mut self.rng) {
                    Some(k) if self.rng.random_bool(0.85) => k.clone(),
                    _ => (subj(self), self.verbs.choose(&mut self.rng).unwrap().clone()),
                };
                format!("What does {s} {v}?")
            }
            1 => {
                let (v, o) = match self.stated() {
                    Some((_, v, o)) if self.rng.random_bool(0.7) => (v, o),
                    _ => (self.verbs.choose(&mut self.rng).unwrap().clone(), self.object_phrase()),
                };
                format!("Who {} {o}?", self.third(&v))
            }
            2 => {
                let known = self.kinds.choose(&mut self.rng).cloned();
                let s = match known {
                    Some((k, _)) if self.rng.random_bool(0.6) => k,
                    _ => subj(self),
                };
                let pool = ["animal", "mammal", "person", "thing", "toy", "food", "bird"];
                let n = if self.rng.random_bool(0.5) {
                    pool.choose(&mut self.rng).unwrap().to_string()
                } else {
                    self.nouns.choose(&mut self.rng).unwrap().clone()
                };
                format!("Is {s} {} {n}?", article(&n))
            }
            3 => {
                let (s, a) = match self.attrs.choose(&mut self.rng).cloned() {
                    Some(sa) if self.rng.random_bool(0.6) => sa,
                    _ => (subj(self), self.adjectives.choose(&mut self.rng).unwrap().clone()),
                };
                format!("Is {s} {a}?")
            }
            _ => {
                let (s, v, o) = match self.stated() {
                    Some(t) if self.rng.random_bool(0.6) => t,
                    _ => (subj(self), self.verbs.choose(&mut self.rng).unwrap().clone(), self.object_phrase()),
                };
                format!("Does {s} {v} {o}?")
            }
        }
    }
}

/// A grammar-conformant corpus with oracle-computed expected answers.
/// Statements mix about 50% relations, 15% revisions and negations, 20%
/// taxonomy and 15% attributes.
pub fn gen_corpus(num_entities: usize, num_statements: usize, num_questions: usize, seed: u64) -> Result<QaCorpus> {
    if num_entities == 0 || num_statements == 0 || num_questions == 0 {
        bail!("counts must be at least 1");
    }
    let lex = Lexicon::english();
    let ontology = Ontology::basic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let people: Vec<Person> = (0..num_entities)
        .map(|i| Person { name: made_up_name(i), gender: [None, Some(true), Some(false)][rng.random_range(0..3)] })
        .collect();
    let fresh: Vec<String> = (0..8).map(made_up_noun).collect();
    let mut nouns: Vec<String> =
        ["dog", "cat", "mammal", "bird", "owl", "apple", "fruit", "horse", "snake", "toy"].iter().map(|s| s.to_string()).collect();
    nouns.extend(fresh.iter().cloned());
    let gendered = ["female", "male"];
    let mut g = CorpusGen {
        rng,
        lex: &lex,
        people,
        nouns,
        fresh,
        adjectives: lex.adjectives().filter(|a| !gendered.contains(a)).map(String::from).collect(),
        verbs: lex.verbs().map(|(b, _)| b.to_string()).collect(),
        relations: BTreeMap::new(),
        subjects: Vec::new(),
        attrs: Vec::new(),
        kinds: Vec::new(),
        previous: None,
    };

    let mut statements = Vec::with_capacity(num_statements);
    // gender facts first so pronoun choice and the system agree
    for p in g.people.clone() {
        if statements.len() + 1 >= num_statements {
            break;
        }
        if let Some(female) = p.gender {
            statements.push(format!("{} is {}.", p.name, if female { "female" } else { "male" }));
            g.done(p.name.clone(), Some(p.gender));
        }
    }
    while statements.len() < num_statements {
        let roll = g.rng.random_range(0..100);
        let s = match roll {
            0..50 => g.relation(),
            50..65 => g.revision(),
            65..85 => g.taxonomy(),
            _ => g.attribute(),
        };
        statements.push(s);
    }
    let questions: Vec<String> = (0..num_questions).map(|_| g.question()).collect();
    let expected = expected_answers(&lex, &ontology, &statements, &questions)?.iter().map(|a| normalize_answer(a)).collect();
    Ok(QaCorpus { statements, questions, expected })
}
