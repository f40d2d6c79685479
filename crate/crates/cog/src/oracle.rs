//! Reference answers computed by replaying a statement list over plain
//! collections, independent of the graph and activation machinery.
//!
//! Referents are resolved by simple rules that hold for generated and bundled
//! corpora: a name is one entity, `the N` is the single entity of kind N, and
//! a pronoun means the subject of the previous statement.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use anyhow::{anyhow, bail, Result};
use cog_core::cognition::{Ontology, UNKNOWN_TEXT};
use cog_core::language::{article, parse, tokenize, Lexicon, Object, QuestionForm, Statement, StatementForm, Subject, Utterance};
use cog_core::Polarity;

/// Something an answer can name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Thing {
    /// A proper name or a `the N` entity (stored as "the N").
    Entity(String),
    Concept(String),
}

impl Thing {
    fn render(&self) -> String {
        match self {
            Thing::Entity(e) => e.clone(),
            Thing::Concept(c) => format!("{} {c}", article(c)),
        }
    }
}

#[derive(Debug, Default)]
pub struct Oracle {
    /// (subject, verb) → live affirmed objects with the step they became live.
    affirmed: BTreeMap<(String, String), Vec<(Thing, u64)>>,
    negated: BTreeMap<(String, String), BTreeSet<Thing>>,
    /// (subject, adjective) → latest polarity.
    attrs: BTreeMap<(String, String), bool>,
    instance_of: BTreeMap<String, BTreeSet<String>>,
    is_a: BTreeMap<String, BTreeSet<String>>,
    last_subject: Option<String>,
    step: u64,
}

fn object_thing(o: &Object) -> Thing {
    match o {
        Object::Indefinite(n) => Thing::Concept(n.clone()),
        Object::Definite(n) => Thing::Entity(format!("the {n}")),
        Object::Named(n) => Thing::Entity(n.clone()),
    }
}

impl Oracle {
    pub fn new(ontology: &Ontology) -> Self {
        let mut o = Oracle::default();
        for (c, p) in &ontology.is_a {
            o.is_a.entry(c.clone()).or_default().insert(p.clone());
        }
        o
    }

    fn subject_key(&self, s: &Subject) -> Option<String> {
        match s {
            Subject::Named(n) => Some(n.clone()),
            Subject::Definite(n) => Some(format!("the {n}")),
            Subject::Pronoun(_) => self.last_subject.clone(),
        }
    }

    fn note_definite(&mut self, key: &str) {
        if let Some(noun) = key.strip_prefix("the ") {
            self.instance_of.entry(key.to_string()).or_default().insert(noun.to_string());
        }
    }

    pub fn apply(&mut self, st: &Statement) -> Result<()> {
        self.step += 1;
        let step = self.step;
        let subject = match &st.form {
            StatementForm::InstanceIsA { subject, .. }
            | StatementForm::HasAttribute { subject, .. }
            | StatementForm::Relation { subject, .. } => {
                let key = self.subject_key(subject).ok_or_else(|| anyhow!("pronoun with no antecedent"))?;
                self.note_definite(&key);
                Some(key)
            }
            StatementForm::ConceptIsA { .. } => None,
        };
        match &st.form {
            StatementForm::InstanceIsA { noun, .. } => {
                self.instance_of.entry(subject.clone().unwrap()).or_default().insert(noun.clone());
            }
            StatementForm::ConceptIsA { noun, parent } => {
                self.is_a.entry(noun.clone()).or_default().insert(parent.clone());
            }
            StatementForm::HasAttribute { adjective, polarity, .. } => {
                self.attrs.insert((subject.clone().unwrap(), adjective.clone()), *polarity == Polarity::Affirm);
            }
            StatementForm::Relation { verb, objects, polarity, only, .. } => {
                let key = (subject.clone().unwrap(), verb.clone());
                let objs: Vec<Thing> = objects.iter().map(object_thing).collect();
                for o in &objs {
                    if let Thing::Entity(e) = o {
                        self.note_definite(&e.clone());
                    }
                }
                let live = self.affirmed.entry(key.clone()).or_default();
                let neg = self.negated.entry(key).or_default();
                if *only {
                    live.retain(|(t, _)| objs.contains(t));
                    neg.retain(|t| objs.contains(t));
                }
                for o in objs {
                    match polarity {
                        Polarity::Affirm => {
                            neg.remove(&o);
                            if !live.iter().any(|(t, _)| *t == o) {
                                live.push((o, step));
                            }
                        }
                        Polarity::Negate => {
                            live.retain(|(t, _)| *t != o);
                            neg.insert(o);
                        }
                    }
                }
            }
        }
        self.last_subject = subject;
        Ok(())
    }

    fn yes_no(v: Option<bool>) -> String {
        match v {
            Some(true) => "Yes.".into(),
            Some(false) => "No.".into(),
            None => UNKNOWN_TEXT.into(),
        }
    }

    fn reaches(&self, entity: &str, target: &str) -> bool {
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut q: VecDeque<&str> = self.instance_of.get(entity).into_iter().flatten().map(String::as_str).collect();
        while let Some(c) = q.pop_front() {
            if c == target {
                return true;
            }
            if seen.insert(c) {
                q.extend(self.is_a.get(c).into_iter().flatten().map(String::as_str));
            }
        }
        false
    }

    /// The expected answer text, before normalisation.
    pub fn answer(&self, q: &QuestionForm) -> String {
        let key = |s: &Subject| match s {
            Subject::Pronoun(_) => self.last_subject.clone(),
            other => self.subject_key(other),
        };
        match q {
            QuestionForm::WhObject { subject, verb } => {
                let objs = key(subject).and_then(|s| self.affirmed.get(&(s, verb.clone())));
                match objs {
                    Some(list) if !list.is_empty() => list.iter().map(|(t, _)| t.render()).collect::<Vec<_>>().join(" and "),
                    _ => UNKNOWN_TEXT.into(),
                }
            }
            QuestionForm::WhSubject { verb, object } => {
                let target = object_thing(object);
                let mut hits: Vec<(u64, &String)> = self
                    .affirmed
                    .iter()
                    .filter(|((_, v), _)| v == verb)
                    .filter_map(|((s, _), list)| list.iter().find(|(t, _)| *t == target).map(|(_, step)| (*step, s)))
                    .collect();
                hits.sort();
                if hits.is_empty() {
                    UNKNOWN_TEXT.into()
                } else {
                    hits.iter().map(|(_, s)| s.as_str()).collect::<Vec<_>>().join(" and ")
                }
            }
            QuestionForm::YesNoIsA { subject, noun } => match key(subject) {
                Some(s) if self.reaches(&s, noun) => "Yes.".into(),
                _ => UNKNOWN_TEXT.into(),
            },
            QuestionForm::YesNoAttr { subject, adjective } => {
                Self::yes_no(key(subject).and_then(|s| self.attrs.get(&(s, adjective.clone())).copied()))
            }
            QuestionForm::YesNoRel { subject, verb, object } => {
                let Some(s) = key(subject) else { return UNKNOWN_TEXT.into() };
                let k = (s, verb.clone());
                let t = object_thing(object);
                if self.affirmed.get(&k).is_some_and(|l| l.iter().any(|(x, _)| *x == t)) {
                    "Yes.".into()
                } else if self.negated.get(&k).is_some_and(|n| n.contains(&t)) {
                    "No.".into()
                } else {
                    UNKNOWN_TEXT.into()
                }
            }
        }
    }
}

/// Replays `statements` and answers `questions`. Every line must parse.
pub fn expected_answers(lex: &Lexicon, ontology: &Ontology, statements: &[String], questions: &[String]) -> Result<Vec<String>> {
    let mut o = Oracle::new(ontology);
    for (i, s) in statements.iter().enumerate() {
        match parse(&tokenize(s), lex) {
            Ok(Utterance::Statement(st)) => o.apply(&st).map_err(|e| anyhow!("statement {}: {e}", i + 1))?,
            Ok(Utterance::Question(_)) => bail!("statement {} is a question: {s}", i + 1),
            Err(e) => bail!("statement {} does not parse: {s}: {e}", i + 1),
        }
    }
    questions
        .iter()
        .enumerate()
        .map(|(i, q)| match parse(&tokenize(q), lex) {
            Ok(Utterance::Question(q)) => Ok(o.answer(&q.form)),
            Ok(Utterance::Statement(_)) => bail!("question {} is a statement: {q}", i + 1),
            Err(e) => bail!("question {} does not parse: {q}: {e}", i + 1),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(st: &[&str], qs: &[&str]) -> Vec<String> {
        let st: Vec<String> = st.iter().map(|s| s.to_string()).collect();
        let qs: Vec<String> = qs.iter().map(|s| s.to_string()).collect();
        expected_answers(&Lexicon::english(), &Ontology::basic(), &st, &qs).unwrap()
    }

    #[test]
    fn tina_pair() {
        let got = run(
            &["Tina wants a dog and a cat.", "Actually, Tina only wants a cat."],
            &["What does Tina want?", "Does Tina want a dog?", "Who wants a cat?"],
        );
        assert_eq!(got, ["a cat", UNKNOWN_TEXT, "Tina"]);
    }

    #[test]
    fn inheritance_and_pronouns() {
        let got = run(
            &["Rover is a puppy.", "It is hungry.", "Tina is a woman.", "She does not want a snake."],
            &["Is Rover an animal?", "Is Rover hungry?", "Does Tina want a snake?", "Is Tina an animal?"],
        );
        assert_eq!(got, ["Yes.", "Yes.", "No.", UNKNOWN_TEXT]);
    }
}
