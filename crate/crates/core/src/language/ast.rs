use alloc::string::String;
use alloc::vec::Vec;

use super::Lexicon;
use crate::substrate::Polarity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pronoun {
    She,
    He,
    It,
    They,
}

impl Pronoun {
    pub fn parse(w: &str) -> Option<Self> {
        Some(match w {
            "she" => Pronoun::She,
            "he" => Pronoun::He,
            "it" => Pronoun::It,
            "they" => Pronoun::They,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Pronoun::She => "she",
            Pronoun::He => "he",
            Pronoun::It => "it",
            Pronoun::They => "they",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Subject {
    /// A proper name, e.g. `Tina`.
    Named(String),
    /// `the <noun>`.
    Definite(String),
    Pronoun(Pronoun),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Object {
    /// `a <noun>` / `an <noun>`: the concept itself.
    Indefinite(String),
    /// `the <noun>`: a particular instance.
    Definite(String),
    Named(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementForm {
    /// `Rover is a dog.`
    InstanceIsA { subject: Subject, noun: String },
    /// `A dog is an animal.`
    ConceptIsA { noun: String, parent: String },
    /// `The ball is red.` / `The ball is not red.`
    HasAttribute { subject: Subject, adjective: String, polarity: Polarity },
    /// `Tina wants a dog and a cat.` / `Tina only wants a cat.` / `Tina does not want a dog.`
    /// `verb` is the base form.
    Relation { subject: Subject, verb: String, objects: Vec<Object>, polarity: Polarity, only: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub form: StatementForm,
    /// Set by a leading `Actually,`.
    pub revision: bool,
    pub source_text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuestionForm {
    /// `What does Tina want?`
    WhObject { subject: Subject, verb: String },
    /// `Who wants a cat?`
    WhSubject { verb: String, object: Object },
    /// `Is Rover an animal?`
    YesNoIsA { subject: Subject, noun: String },
    /// `Is the ball red?`
    YesNoAttr { subject: Subject, adjective: String },
    /// `Does Tina want a dog?`
    YesNoRel { subject: Subject, verb: String, object: Object },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Question {
    pub form: QuestionForm,
    pub source_text: String,
}

/// `a` or `an`, chosen by the first letter of `noun`.
pub fn article(noun: &str) -> &'static str {
    match noun.chars().next() {
        Some('a' | 'e' | 'i' | 'o' | 'u') => "an",
        _ => "a",
    }
}

fn push_subject(out: &mut String, s: &Subject, initial: bool) {
    match s {
        Subject::Named(n) => out.push_str(n),
        Subject::Definite(n) => {
            out.push_str(if initial { "The " } else { "the " });
            out.push_str(n);
        }
        Subject::Pronoun(p) => {
            let w = p.as_str();
            if initial {
                let mut c = w.chars();
                if let Some(f) = c.next() {
                    out.extend(f.to_uppercase());
                    out.push_str(c.as_str());
                }
            } else {
                out.push_str(w);
            }
        }
    }
}

fn push_object(out: &mut String, o: &Object) {
    match o {
        Object::Indefinite(n) => {
            out.push_str(article(n));
            out.push(' ');
            out.push_str(n);
        }
        Object::Definite(n) => {
            out.push_str("the ");
            out.push_str(n);
        }
        Object::Named(n) => out.push_str(n),
    }
}

fn capitalize_first(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

impl StatementForm {
    /// Canonical sentence for this form. Verbs missing from `lex` are
    /// rendered with a plain `s` suffix.
    pub fn render(&self, revision: bool, lex: &Lexicon) -> String {
        let mut out = String::new();
        if revision {
            out.push_str("Actually, ");
        }
        let initial = !revision;
        match self {
            StatementForm::InstanceIsA { subject, noun } => {
                push_subject(&mut out, subject, initial);
                out.push_str(" is ");
                push_object(&mut out, &Object::Indefinite(noun.clone()));
            }
            StatementForm::ConceptIsA { noun, parent } => {
                let a = article(noun);
                out.push_str(&if initial { capitalize_first(a) } else { a.into() });
                out.push(' ');
                out.push_str(noun);
                out.push_str(" is ");
                push_object(&mut out, &Object::Indefinite(parent.clone()));
            }
            StatementForm::HasAttribute { subject, adjective, polarity } => {
                push_subject(&mut out, subject, initial);
                out.push_str(if *polarity == Polarity::Negate { " is not " } else { " is " });
                out.push_str(adjective);
            }
            StatementForm::Relation { subject, verb, objects, polarity, only } => {
                push_subject(&mut out, subject, initial);
                if *polarity == Polarity::Negate {
                    out.push_str(" does not ");
                    out.push_str(verb);
                } else {
                    if *only {
                        out.push_str(" only");
                    }
                    out.push(' ');
                    match lex.third_person(verb) {
                        Some(t) => out.push_str(t),
                        None => {
                            out.push_str(verb);
                            out.push('s');
                        }
                    }
                }
                for (i, o) in objects.iter().enumerate() {
                    out.push_str(if i == 0 { " " } else { " and " });
                    push_object(&mut out, o);
                }
            }
        }
        out.push('.');
        out
    }
}

impl QuestionForm {
    pub fn render(&self, lex: &Lexicon) -> String {
        let mut out = String::new();
        match self {
            QuestionForm::WhObject { subject, verb } => {
                out.push_str("What does ");
                push_subject(&mut out, subject, false);
                out.push(' ');
                out.push_str(verb);
            }
            QuestionForm::WhSubject { verb, object } => {
                out.push_str("Who ");
                match lex.third_person(verb) {
                    Some(t) => out.push_str(t),
                    None => {
                        out.push_str(verb);
                        out.push('s');
                    }
                }
                out.push(' ');
                push_object(&mut out, object);
            }
            QuestionForm::YesNoIsA { subject, noun } => {
                out.push_str("Is ");
                push_subject(&mut out, subject, false);
                out.push(' ');
                push_object(&mut out, &Object::Indefinite(noun.clone()));
            }
            QuestionForm::YesNoAttr { subject, adjective } => {
                out.push_str("Is ");
                push_subject(&mut out, subject, false);
                out.push(' ');
                out.push_str(adjective);
            }
            QuestionForm::YesNoRel { subject, verb, object } => {
                out.push_str("Does ");
                push_subject(&mut out, subject, false);
                out.push(' ');
                out.push_str(verb);
                out.push(' ');
                push_object(&mut out, object);
            }
        }
        out.push('?');
        out
    }
}
